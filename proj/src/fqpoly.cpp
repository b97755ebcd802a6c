#include "arbordyn/fqpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "arbordyn/errors.hpp"

namespace arbordyn {

namespace {
using u64 = uint64_t;

void check_same_field(const FqPoly& a, const FqPoly& b) {
    if (&a.field() != &b.field()) throw std::invalid_argument("FqPoly: field mismatch");
}
}  // namespace

FqPoly::FqPoly(const FqField& F, const std::vector<FqField::Elem>& coeffs) : F_(&F) {
    c_.resize(coeffs.size() * F.d(), 0);
    for (size_t i = 0; i < coeffs.size(); ++i)
        std::copy(coeffs[i].begin(), coeffs[i].end(), c_.begin() + static_cast<long>(i * F.d()));
    normalize();
}

FqPoly FqPoly::x(const FqField& F) {
    FqPoly f(F);
    f.c_.assign(2 * F.d(), 0);
    f.c_[F.d()] = 1;
    return f;
}

FqPoly FqPoly::constant(const FqField& F, const FqField::Elem& v) {
    FqPoly f(F);
    f.c_.assign(v.begin(), v.end());
    f.normalize();
    return f;
}

FqPoly FqPoly::lift(const FqField& F, const FpPoly& f) {
    if (f.modulus() != F.p()) throw std::invalid_argument("FqPoly::lift: characteristic mismatch");
    FqPoly g(F);
    g.c_.assign(static_cast<size_t>(f.degree() + 1) * F.d(), 0);
    for (int i = 0; i <= f.degree(); ++i) g.c_[static_cast<size_t>(i) * F.d()] = f.coeff(static_cast<size_t>(i));
    g.normalize();
    return g;
}

FqField::Elem FqPoly::coeff(size_t i) const {
    const uint32_t d = F_->d();
    FqField::Elem e(d, 0);
    if ((i + 1) * d <= c_.size())
        std::copy(c_.begin() + static_cast<long>(i * d), c_.begin() + static_cast<long>((i + 1) * d), e.begin());
    return e;
}

void FqPoly::set_coeff(size_t i, const FqField::Elem& v) {
    const uint32_t d = F_->d();
    if ((i + 1) * d > c_.size()) c_.resize((i + 1) * d, 0);
    std::copy(v.begin(), v.end(), c_.begin() + static_cast<long>(i * d));
}

void FqPoly::normalize() {
    const uint32_t d = F_->d();
    while (!c_.empty()) {
        bool zero = true;
        for (size_t k = c_.size() - d; k < c_.size(); ++k)
            if (c_[k]) {
                zero = false;
                break;
            }
        if (!zero) break;
        c_.resize(c_.size() - d);
    }
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    check_same_field(a, b);
    const FqField& F = a.field();
    FqPoly r(F);
    size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.assign(n, 0);
    const u64 p = F.p();
    for (size_t i = 0; i < n; ++i) {
        u64 v = (i < a.c_.size() ? a.c_[i] : 0) + (i < b.c_.size() ? b.c_[i] : 0);
        r.c_[i] = v >= p ? v - p : v;
    }
    r.normalize();
    return r;
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    check_same_field(a, b);
    const FqField& F = a.field();
    FqPoly r(F);
    size_t n = std::max(a.c_.size(), b.c_.size());
    r.c_.assign(n, 0);
    const u64 p = F.p();
    for (size_t i = 0; i < n; ++i) {
        u64 x = i < a.c_.size() ? a.c_[i] : 0;
        u64 y = i < b.c_.size() ? b.c_[i] : 0;
        r.c_[i] = x >= y ? x - y : x + p - y;
    }
    r.normalize();
    return r;
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    check_same_field(a, b);
    const FqField& F = a.field();
    if (a.is_zero() || b.is_zero()) return FqPoly(F);
    const uint32_t d = F.d();
    const size_t w = 2 * d - 1;  // Kronecker block width: products of degree-(d-1)
                                 // coefficient polynomials stay inside one block
    size_t na = static_cast<size_t>(a.degree()) + 1, nb = static_cast<size_t>(b.degree()) + 1;
    std::vector<u64> ka(na * w, 0), kb(nb * w, 0);
    for (size_t i = 0; i < na; ++i)
        for (uint32_t j = 0; j < d; ++j) ka[i * w + j] = a.c_[i * d + j];
    for (size_t i = 0; i < nb; ++i)
        for (uint32_t j = 0; j < d; ++j) kb[i * w + j] = b.c_[i * d + j];
    FpPoly pa(F.p(), std::move(ka)), pb(F.p(), std::move(kb));
    FpPoly prod = pa * pb;
    FqPoly r(F);
    size_t nr = na + nb - 1;
    r.c_.assign(nr * d, 0);
    for (size_t i = 0; i < nr; ++i) {
        std::vector<u64> block(w, 0);
        for (size_t j = 0; j < w; ++j) block[j] = prod.coeff(i * w + j);
        FpPoly bp(F.p(), std::move(block));
        FpPoly red = d > 1 ? divrem(bp, F.modulus()).second : FpPoly(F.p());
        if (d == 1) {
            r.c_[i] = bp.coeff(0);
        } else {
            for (uint32_t j = 0; j < d; ++j) r.c_[i * d + j] = red.coeff(j);
        }
    }
    r.normalize();
    return r;
}

FqPoly FqPoly::scaled(const FqField::Elem& s) const {
    FqPoly r(*F_);
    int dg = degree();
    for (int i = 0; i <= dg; ++i) r.set_coeff(static_cast<size_t>(i), F_->mul(coeff(static_cast<size_t>(i)), s));
    r.normalize();
    return r;
}

FqPoly FqPoly::derivative() const {
    FqPoly r(*F_);
    int dg = degree();
    const u64 p = F_->p();
    for (int i = 1; i <= dg; ++i) {
        FqField::Elem e = coeff(static_cast<size_t>(i));
        u64 m = static_cast<u64>(i) % p;
        for (auto& v : e) v = mul_mod_u64(v, m, p);
        r.set_coeff(static_cast<size_t>(i - 1), e);
    }
    r.normalize();
    return r;
}

FqPoly FqPoly::monic() const {
    if (is_zero()) return *this;
    FqField::Elem l = lc();
    if (l == F_->one()) return *this;
    return scaled(F_->inv(l));
}

FqField::Elem FqPoly::eval(const FqField::Elem& v) const {
    FqField::Elem r = F_->zero();
    for (int i = degree(); i >= 0; --i) r = F_->add(F_->mul(r, v), coeff(static_cast<size_t>(i)));
    return r;
}

bool FqPoly::operator<(const FqPoly& other) const {
    if (degree() != other.degree()) return degree() < other.degree();
    for (int i = degree(); i >= 0; --i) {
        u64 a = F_->index(coeff(static_cast<size_t>(i)));
        u64 b = F_->index(other.coeff(static_cast<size_t>(i)));
        if (a != b) return a < b;
    }
    return false;
}

std::pair<FqPoly, FqPoly> divrem(const FqPoly& num, const FqPoly& den) {
    check_same_field(num, den);
    const FqField& F = num.field();
    if (den.is_zero()) throw std::invalid_argument("FqPoly divrem: division by zero");
    if (num.degree() < den.degree()) return {FqPoly(F), num};
    FqField::Elem lcinv = F.inv(den.lc());
    FqPoly q(F), r = num;
    int dn = num.degree(), dm = den.degree();
    q.c_.assign(static_cast<size_t>(dn - dm + 1) * F.d(), 0);
    for (int k = dn - dm; k >= 0; --k) {
        FqField::Elem t = F.mul(r.coeff(static_cast<size_t>(k + dm)), lcinv);
        q.set_coeff(static_cast<size_t>(k), t);
        if (F.is_zero(t)) continue;
        for (int j = 0; j <= dm; ++j) {
            FqField::Elem sub = F.mul(t, den.coeff(static_cast<size_t>(j)));
            r.set_coeff(static_cast<size_t>(k + j),
                        F.sub(r.coeff(static_cast<size_t>(k + j)), sub));
        }
    }
    q.normalize();
    r.normalize();
    return {std::move(q), std::move(r)};
}

FqPoly gcd(const FqPoly& a, const FqPoly& b) {
    check_same_field(a, b);
    FqPoly x = a, y = b;
    while (!y.is_zero()) {
        FqPoly r = divrem(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

FqPoly powmod(const FqPoly& base, const BigInt& e, const FqPoly& mod) {
    if (e < 0) throw std::invalid_argument("FqPoly powmod: negative exponent");
    const FqField& F = base.field();
    FqPoly r = FqPoly::constant(F, F.one());
    if (e == 0) return divrem(r, mod).second;
    FqPoly b = divrem(base, mod).second;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = divrem(r * r, mod).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = divrem(r * b, mod).second;
    }
    return r;
}

FqPoly compose(const FqPoly& f, const FqPoly& g) {
    check_same_field(f, g);
    const FqField& F = f.field();
    FqPoly r(F);
    for (int i = f.degree(); i >= 0; --i)
        r = r * g + FqPoly::constant(F, f.coeff(static_cast<size_t>(i)));
    return r;
}

FqPoly iterate(const FqPoly& f, unsigned n) {
    FqPoly r = FqPoly::x(f.field());
    for (unsigned i = 0; i < n; ++i) r = compose(f, r);
    return r;
}

bool is_irreducible(const FqPoly& f) {
    const FqField& F = f.field();
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    FqPoly fm = f.monic();
    FqPoly x = FqPoly::x(F);
    unsigned m = static_cast<unsigned>(n);
    std::vector<unsigned> prime_divs;
    for (unsigned q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            prime_divs.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) prime_divs.push_back(m);
    BigInt q(static_cast<unsigned long>(F.q()));
    for (unsigned l : prime_divs) {
        BigInt e;
        mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned>(n) / l);
        FqPoly h = powmod(x, e, fm);
        if (gcd(h - x, fm).degree() != 0) return false;
    }
    BigInt e;
    mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned>(n));
    FqPoly h = powmod(x, e, fm);
    return h == x;
}

namespace {

// p-th root of a polynomial whose derivative vanishes: f(x) = g(x^p),
// root coefficient = c^(q/p).
FqPoly pth_root(const FqPoly& f) {
    const FqField& F = f.field();
    const u64 p = F.p();
    std::vector<FqField::Elem> coeffs;
    u64 e = F.q() / p;  // c -> c^(p^(d-1)) is the inverse of c -> c^p
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
        coeffs.push_back(F.pow(f.coeff(static_cast<size_t>(i)), e));
    return FqPoly(F, coeffs);
}

void squarefree_decompose(const FqPoly& f, unsigned outer_mult,
                          std::vector<std::pair<FqPoly, unsigned>>& out) {
    const FqField& F = f.field();
    const u64 p = F.p();
    FqPoly one = FqPoly::constant(F, F.one());
    FqPoly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_decompose(pth_root(f), outer_mult * static_cast<unsigned>(p), out);
        return;
    }
    FqPoly c = gcd(f, fp);
    FqPoly w = divrem(f, c).first;
    unsigned i = 1;
    while (w.degree() > 0) {
        FqPoly y = gcd(w, c);
        FqPoly fac = divrem(w, y).first;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), i * outer_mult);
        w = std::move(y);
        c = divrem(c, w).first;
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose(pth_root(c), outer_mult * static_cast<unsigned>(p), out);
}

void equal_degree_split(const FqPoly& f, int k, std::mt19937_64& rng,
                        std::vector<FqPoly>& out) {
    const FqField& F = f.field();
    if (f.degree() == k) {
        out.push_back(f.monic());
        return;
    }
    BigInt q(static_cast<unsigned long>(F.q()));
    BigInt e;
    mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned>(k));
    e = (e - 1) / 2;
    FqPoly one = FqPoly::constant(F, F.one());
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<FqField::Elem> rc;
        for (int i = 0; i < f.degree(); ++i) {
            u64 idx = rng() % F.q();
            rc.push_back(F.from_index(idx));
        }
        FqPoly r(F, rc);
        if (r.is_zero()) continue;
        FqPoly s = powmod(r, e, f) - one;
        FqPoly g = gcd(s, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, k, rng, out);
            equal_degree_split(divrem(f, g).first, k, rng, out);
            return;
        }
    }
}

}  // namespace

FqFactorization factor_fq(const FqPoly& f, uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("factor_fq: zero polynomial");
    const FqField& F = f.field();
    FqFactorization result;
    result.unit = f.lc();
    if (f.degree() == 0) return result;

    std::mt19937_64 rng(seed);
    std::vector<std::pair<FqPoly, unsigned>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);

    for (auto& [part, mult] : sqf) {
        // distinct-degree splitting
        FqPoly rest = part;
        FqPoly h = FqPoly::x(F);
        FqPoly x = FqPoly::x(F);
        BigInt q(static_cast<unsigned long>(F.q()));
        int k = 0;
        while (rest.degree() > 0 && 2 * (k + 1) <= rest.degree()) {
            ++k;
            h = powmod(h, q, rest);
            FqPoly g = gcd(h - x, rest);
            if (g.degree() > 0) {
                std::vector<FqPoly> eq;
                equal_degree_split(g, k, rng, eq);
                for (auto& fac : eq) result.factors.push_back({fac, mult});
                rest = divrem(rest, g).first;
                h = divrem(h, rest).second;
            }
        }
        if (rest.degree() > 0) result.factors.push_back({rest.monic(), mult});
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const FqFactor& a, const FqFactor& b) { return a.factor < b.factor; });
    return result;
}

}  // namespace arbordyn
