#include "arbordyn/fppoly.hpp"

#include <cassert>
#include <stdexcept>

#include "arbordyn/errors.hpp"
#include "arbordyn/ntt.hpp"

namespace arbordyn {

namespace {
using u64 = uint64_t;
using u128 = unsigned __int128;

void check_same_modulus(const FpPoly& a, const FpPoly& b) {
    if (a.modulus() != b.modulus() || a.modulus() == 0)
        throw std::invalid_argument("FpPoly: modulus mismatch");
}
}  // namespace

FpPoly FpPoly::monomial(uint64_t p, uint64_t coeff, size_t deg) {
    std::vector<uint64_t> c(deg + 1, 0);
    c[deg] = coeff;
    return FpPoly(p, std::move(c));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        u64 v = (i < a.c_.size() ? a.c_[i] : 0) + (i < b.c_.size() ? b.c_[i] : 0);
        c[i] = v >= a.p_ ? v - a.p_ : v;
    }
    return FpPoly(a.p_, std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        u64 x = i < a.c_.size() ? a.c_[i] : 0;
        u64 y = i < b.c_.size() ? b.c_[i] : 0;
        c[i] = x >= y ? x - y : x + a.p_ - y;
    }
    return FpPoly(a.p_, std::move(c));
}

FpPoly mul_schoolbook(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    const u64 p = a.p_;
    std::vector<u64> c(a.c_.size() + b.c_.size() - 1, 0);
    // Products fit u128 accumulators for any word-size p, so each output
    // coefficient reduces once.
    for (size_t k = 0; k < c.size(); ++k) {
        u128 acc = 0;
        size_t lo = k >= b.c_.size() - 1 ? k - (b.c_.size() - 1) : 0;
        size_t hi = std::min(k, a.c_.size() - 1);
        for (size_t i = lo; i <= hi; ++i) acc += static_cast<u128>(a.c_[i]) * b.c_[k - i];
        c[k] = static_cast<u64>(acc % p);
    }
    return FpPoly(p, std::move(c));
}

FpPoly mul_fft(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    return FpPoly(a.p_, ntt::convolve_mod(a.c_, b.c_, a.p_));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (std::min(a.degree(), b.degree()) >= kFftThresholdDeg) return mul_fft(a, b);
    return mul_schoolbook(a, b);
}

FpPoly FpPoly::operator*(uint64_t s) const {
    s %= p_;
    std::vector<u64> c(c_);
    for (auto& v : c) v = mul_mod_u64(v, s, p_);
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return FpPoly(p_);
    std::vector<u64> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = mul_mod_u64(c_[i], i % p_, p_);
    return FpPoly(p_, std::move(c));
}

uint64_t FpPoly::eval(uint64_t v) const {
    v %= p_;
    u64 r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = (mul_mod_u64(r, v, p_) + c_[i]) % p_;
    return r;
}

FpPoly FpPoly::monic() const {
    if (is_zero() || lc() == 1) return *this;
    return *this * inv_mod_u64(lc(), p_);
}

FpPoly FpPoly::shifted(size_t k) const {
    if (is_zero()) return *this;
    std::vector<u64> c(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), c.begin() + static_cast<long>(k));
    return FpPoly(p_, std::move(c));
}

std::optional<size_t> FpPoly::ord_t() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return i;
    return std::nullopt;
}

namespace {

// Series inverse of f (f(0) != 0) to precision k terms, by Newton iteration.
FpPoly inv_series(const FpPoly& f, size_t k) {
    const u64 p = f.modulus();
    FpPoly r = FpPoly::constant(p, inv_mod_u64(f.coeff(0), p));
    size_t prec = 1;
    FpPoly two = FpPoly::constant(p, 2 % p);
    while (prec < k) {
        prec = std::min(2 * prec, k);
        FpPoly ftrunc(p, std::vector<u64>(f.coeffs().begin(),
                                          f.coeffs().begin() +
                                              static_cast<long>(std::min(prec, f.coeffs().size()))));
        FpPoly t = two - ftrunc * r;
        FpPoly rr = r * t;
        std::vector<u64> cc(rr.coeffs().begin(),
                            rr.coeffs().begin() + static_cast<long>(std::min(prec, rr.coeffs().size())));
        r = FpPoly(p, std::move(cc));
    }
    return r;
}

FpPoly reversed(const FpPoly& f, size_t n) {
    std::vector<u64> c(n + 1, 0);
    for (size_t i = 0; i <= n; ++i) c[n - i] = f.coeff(i);
    return FpPoly(f.modulus(), std::move(c));
}

std::pair<FpPoly, FpPoly> divrem_newton(const FpPoly& num, const FpPoly& den) {
    const u64 p = num.modulus();
    size_t n = static_cast<size_t>(num.degree());
    size_t m = static_cast<size_t>(den.degree());
    size_t qlen = n - m + 1;
    FpPoly nr = reversed(num, n), dr = reversed(den, m);
    FpPoly qi = inv_series(dr, qlen);
    FpPoly qr = nr * qi;
    std::vector<u64> qc(qlen, 0);
    for (size_t i = 0; i < qlen; ++i) qc[i] = qr.coeff(i);
    std::reverse(qc.begin(), qc.end());
    FpPoly q(p, std::move(qc));
    FpPoly r = num - q * den;
    return {std::move(q), std::move(r)};
}

std::pair<FpPoly, FpPoly> divrem_schoolbook(const FpPoly& num, const FpPoly& den) {
    const u64 p = num.modulus();
    std::vector<u64> r(num.coeffs());
    int dn = num.degree(), dm = den.degree();
    std::vector<u64> q(static_cast<size_t>(dn - dm + 1), 0);
    u64 lcinv = inv_mod_u64(den.lc(), p);
    for (int k = dn - dm; k >= 0; --k) {
        u64 t = mul_mod_u64(r[static_cast<size_t>(k + dm)], lcinv, p);
        q[static_cast<size_t>(k)] = t;
        if (t == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            u64& rj = r[static_cast<size_t>(k + j)];
            u64 sub = mul_mod_u64(t, den.coeff(static_cast<size_t>(j)), p);
            rj = rj >= sub ? rj - sub : rj + p - sub;
        }
    }
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

}  // namespace

std::pair<FpPoly, FpPoly> divrem(const FpPoly& num, const FpPoly& den) {
    check_same_modulus(num, den);
    if (den.is_zero()) throw std::invalid_argument("FpPoly divrem: division by zero");
    if (num.degree() < den.degree()) return {FpPoly(num.modulus()), num};
    if (den.degree() >= kFftThresholdDeg) return divrem_newton(num, den);
    return divrem_schoolbook(num, den);
}

FpPoly exact_div(const FpPoly& num, const FpPoly& den) {
    auto [q, r] = divrem(num, den);
    if (!r.is_zero()) throw IntegrityError("FpPoly exact_div: nonzero remainder");
    return q;
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = divrem(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

ExtGcd ext_gcd(const FpPoly& a, const FpPoly& b) {
    check_same_modulus(a, b);
    const u64 p = a.modulus();
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(p, 1), s1 = FpPoly(p);
    FpPoly t0 = FpPoly(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        FpPoly s = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s);
        FpPoly t = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (!r0.is_zero() && r0.lc() != 1) {
        u64 inv = inv_mod_u64(r0.lc(), p);
        r0 = r0 * inv;
        s0 = s0 * inv;
        t0 = t0 * inv;
    }
    return {std::move(r0), std::move(s0), std::move(t0)};
}

FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& mod) {
    if (e < 0) throw std::invalid_argument("FpPoly powmod: negative exponent");
    FpPoly r = FpPoly::constant(base.modulus(), 1);
    FpPoly b = divrem(base, mod).second;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return divrem(r, mod).second;
    for (size_t i = bits; i-- > 0;) {
        r = divrem(r * r, mod).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = divrem(r * b, mod).second;
    }
    return r;
}

FpPoly compose(const FpPoly& f, const FpPoly& g) {
    check_same_modulus(f, g);
    FpPoly r(f.modulus());
    for (int i = f.degree(); i >= 0; --i)
        r = r * g + FpPoly::constant(f.modulus(), f.coeff(static_cast<size_t>(i)));
    return r;
}

FpPoly iterate(const FpPoly& f, unsigned n) {
    FpPoly r = FpPoly::x(f.modulus());
    for (unsigned i = 0; i < n; ++i) r = compose(f, r);
    return r;
}

// Rabin irreducibility: x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1
// for every prime l | n.
bool is_irreducible(const FpPoly& f) {
    const u64 p = f.modulus();
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    FpPoly x = FpPoly::x(p);
    std::vector<unsigned> prime_divs;
    {
        unsigned m = static_cast<unsigned>(n);
        for (unsigned q = 2; q * q <= m; ++q)
            if (m % q == 0) {
                prime_divs.push_back(q);
                while (m % q == 0) m /= q;
            }
        if (m > 1) prime_divs.push_back(m);
    }
    for (unsigned q : prime_divs) {
        BigInt e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned>(n) / q);
        FpPoly h = powmod(x, e, f);
        if (gcd(h - x, f).degree() != 0) return false;
    }
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned>(n));
    FpPoly h = powmod(x, e, f);
    return h == x;
}

std::optional<FpPoly> FpPoly::sqrt_exact() const {
    const u64 p = p_;
    if (p == 2) throw std::invalid_argument("sqrt_exact: characteristic 2 excluded");
    if (is_zero()) return FpPoly(p);
    int d = degree();
    if (d % 2 != 0) return std::nullopt;
    auto lcr = sqrt_mod_p(lc(), p);
    if (!lcr) return std::nullopt;
    size_t m = static_cast<size_t>(d) / 2;
    // Determine g top-down from the top half of the coefficients of f = g^2,
    // then verify with one full multiplication.
    std::vector<u64> g(m + 1, 0);  // low -> high
    g[m] = *lcr;
    u64 inv2gm = inv_mod_u64(mul_mod_u64(2 % p, g[m], p), p);
    for (size_t k = 1; k <= m; ++k) {
        // coeff of t^(2m-k) in g^2 = 2 g_m g_{m-k} + sum over known pairs
        u128 acc = 0;
        for (size_t i = m - k + 1, j = m - 1; i < j; ++i, --j) acc += static_cast<u128>(g[i]) * g[j];
        acc *= 2;
        if ((k % 2) == 0) {
            size_t mid = m - k / 2;
            acc += static_cast<u128>(g[mid]) * g[mid];
        }
        u64 known = static_cast<u64>(acc % p);
        u64 fk = coeff(static_cast<size_t>(d) - k);
        u64 diff = fk >= known ? fk - known : fk + p - known;
        g[m - k] = mul_mod_u64(diff, inv2gm, p);
    }
    FpPoly cand(p, std::move(g));
    if (cand * cand == *this) return cand;
    return std::nullopt;
}

bool is_square_poly(const FpPoly& f) { return f.sqrt_exact().has_value(); }

FpTPoly FpTPoly::x(uint64_t p) {
    return FpTPoly(p, {FpPoly(p), FpPoly::constant(p, 1)});
}

FpTPoly operator+(const FpTPoly& a, const FpTPoly& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("FpTPoly: modulus mismatch");
    std::vector<FpPoly> c(std::max(a.c_.size(), b.c_.size()), FpPoly(a.p_));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] = c[i] + a.c_[i];
        if (i < b.c_.size()) c[i] = c[i] + b.c_[i];
    }
    return FpTPoly(a.p_, std::move(c));
}

FpTPoly operator*(const FpTPoly& a, const FpTPoly& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("FpTPoly: modulus mismatch");
    if (a.is_zero() || b.is_zero()) return FpTPoly(a.p_);
    std::vector<FpPoly> c(a.c_.size() + b.c_.size() - 1, FpPoly(a.p_));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return FpTPoly(a.p_, std::move(c));
}

FpPoly FpTPoly::eval(const FpPoly& v) const {
    FpPoly r(p_);
    for (size_t i = c_.size(); i-- > 0;) r = r * v + c_[i];
    return r;
}

FpTPoly compose(const FpTPoly& f, const FpTPoly& g) {
    FpTPoly r(f.modulus());
    for (int i = f.degree(); i >= 0; --i) {
        FpTPoly ci(f.modulus(), {f.coeff(static_cast<size_t>(i))});
        r = r * g + ci;
    }
    return r;
}

FpTPoly iterate(const FpTPoly& f, unsigned n) {
    FpTPoly r = FpTPoly::x(f.modulus());
    for (unsigned i = 0; i < n; ++i) r = compose(f, r);
    return r;
}

}  // namespace arbordyn
