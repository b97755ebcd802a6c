#include "arbordyn/fq.hpp"

#include <stdexcept>

#include "arbordyn/errors.hpp"

namespace arbordyn {

namespace {
using u64 = uint64_t;
using u128 = unsigned __int128;
}  // namespace

FqField::FqField(uint64_t p, uint32_t d) : p_(p), d_(d), modulus_(p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("FqField: p must be an odd prime");
    if (d < 1) throw std::invalid_argument("FqField: d must be >= 1");
    u128 q = 1;
    for (uint32_t i = 0; i < d; ++i) {
        q *= p;
        if (q > (u128(1) << 62)) throw BudgetError("FqField: p^d exceeds the 2^62 element budget");
    }
    q_ = static_cast<u64>(q);

    // Lexicographically smallest monic irreducible of degree d.
    if (d == 1) {
        modulus_ = FpPoly::x(p);
    } else {
        bool found = false;
        for (u64 idx = 0; idx < q_ && !found; ++idx) {
            std::vector<u64> c(d + 1, 0);
            u64 v = idx;
            for (uint32_t i = 0; i < d; ++i) {
                c[i] = v % p;
                v /= p;
            }
            c[d] = 1;
            FpPoly cand(p, std::move(c));
            if (is_irreducible(cand)) {
                modulus_ = cand;
                found = true;
            }
        }
        if (!found) throw IntegrityError("FqField: no irreducible modulus found");
    }

    red_.assign(d_ > 1 ? d_ - 1 : 0, {});
    for (uint32_t j = 0; j + 1 < d_; ++j) {
        FpPoly r = divrem(FpPoly::monomial(p_, 1, d_ + j), modulus_).second;
        std::vector<u64> row(d_, 0);
        for (uint32_t i = 0; i < d_; ++i) row[i] = r.coeff(i);
        red_[j] = std::move(row);
    }
    frob_.assign(d_, {});
    for (uint32_t i = 0; i < d_; ++i) {
        BigInt e = BigInt(static_cast<unsigned long>(p_)) * static_cast<long>(i);
        FpPoly r = powmod(FpPoly::x(p_), e, modulus_);
        std::vector<u64> row(d_, 0);
        for (uint32_t k = 0; k < d_; ++k) row[k] = r.coeff(k);
        frob_[i] = std::move(row);
    }
}

FqField::Elem FqField::one() const {
    Elem e(d_, 0);
    e[0] = 1;
    return e;
}

FqField::Elem FqField::from_u64(uint64_t v) const {
    Elem e(d_, 0);
    e[0] = v % p_;
    return e;
}

FqField::Elem FqField::gen() const {
    Elem e(d_, 0);
    if (d_ == 1)
        e[0] = 0;  // t = 0 mod the degree-1 modulus t
    else
        e[1] = 1;
    return e;
}

FqField::Elem FqField::add(const Elem& a, const Elem& b) const {
    Elem c(d_);
    for (uint32_t i = 0; i < d_; ++i) {
        u64 v = a[i] + b[i];
        c[i] = v >= p_ ? v - p_ : v;
    }
    return c;
}

FqField::Elem FqField::sub(const Elem& a, const Elem& b) const {
    Elem c(d_);
    for (uint32_t i = 0; i < d_; ++i) c[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
    return c;
}

FqField::Elem FqField::neg(const Elem& a) const {
    Elem c(d_);
    for (uint32_t i = 0; i < d_; ++i) c[i] = a[i] == 0 ? 0 : p_ - a[i];
    return c;
}

FqField::Elem FqField::mul(const Elem& a, const Elem& b) const {
    if (d_ == 1) return {mul_mod_u64(a[0], b[0], p_)};
    std::vector<u128> acc(2 * d_ - 1, 0);
    for (uint32_t i = 0; i < d_; ++i) {
        if (a[i] == 0) continue;
        for (uint32_t j = 0; j < d_; ++j) acc[i + j] += static_cast<u128>(a[i]) * b[j];
    }
    Elem c(d_);
    for (uint32_t i = 0; i < d_; ++i) c[i] = static_cast<u64>(acc[i] % p_);
    for (uint32_t j = 0; j + 1 < d_; ++j) {
        u64 hi = static_cast<u64>(acc[d_ + j] % p_);
        if (hi == 0) continue;
        const auto& row = red_[j];
        for (uint32_t i = 0; i < d_; ++i)
            c[i] = (c[i] + mul_mod_u64(hi, row[i], p_)) % p_;
    }
    return c;
}

bool FqField::is_zero(const Elem& a) const {
    for (u64 v : a)
        if (v) return false;
    return true;
}

FqField::Elem FqField::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("FqField::inv: zero element");
    if (d_ == 1) return {inv_mod_u64(a[0], p_)};
    FpPoly ap(p_, std::vector<u64>(a.begin(), a.end()));
    ExtGcd eg = ext_gcd(ap, modulus_);
    if (eg.g.degree() != 0) throw IntegrityError("FqField::inv: modulus not irreducible?");
    FpPoly u = eg.u * inv_mod_u64(eg.g.coeff(0), p_);
    FpPoly r = divrem(u, modulus_).second;
    Elem c(d_, 0);
    for (uint32_t i = 0; i < d_; ++i) c[i] = r.coeff(i);
    return c;
}

FqField::Elem FqField::pow(const Elem& a, uint64_t e) const {
    Elem r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

bool FqField::is_square(const Elem& a) const {
    if (is_zero(a)) return true;
    Elem t = pow(a, (q_ - 1) / 2);
    return t == one();
}

std::optional<FqField::Elem> FqField::sqrt(const Elem& a) const {
    if (is_zero(a)) return zero();
    if (!is_square(a)) return std::nullopt;
    u64 m = q_ - 1;
    u64 s = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++s;
    }
    Elem r;
    if (s == 1) {
        r = pow(a, (q_ + 1) / 4);
    } else {
        // Deterministic non-residue scan in element-index order.
        Elem z = zero();
        for (u64 idx = 2; idx < q_; ++idx) {
            Elem cand = from_index(idx);
            if (!is_square(cand)) {
                z = cand;
                break;
            }
        }
        u64 mm = s;
        Elem c = pow(z, m);
        Elem t = pow(a, m);
        r = pow(a, (m + 1) / 2);
        while (!(t == one())) {
            u64 i = 0;
            Elem tt = t;
            while (!(tt == one())) {
                tt = mul(tt, tt);
                ++i;
            }
            Elem b = c;
            for (u64 j = 0; j + i + 1 < mm; ++j) b = mul(b, b);
            mm = i;
            c = mul(b, b);
            t = mul(t, c);
            r = mul(r, b);
        }
    }
    Elem r2 = neg(r);
    return index(r) <= index(r2) ? r : r2;
}

uint64_t FqField::index(const Elem& a) const {
    u64 idx = 0;
    for (uint32_t i = d_; i-- > 0;) idx = idx * p_ + a[i];
    return idx;
}

FqField::Elem FqField::from_index(uint64_t idx) const {
    Elem e(d_);
    for (uint32_t i = 0; i < d_; ++i) {
        e[i] = idx % p_;
        idx /= p_;
    }
    return e;
}

FqField::Elem FqField::frobenius(const Elem& a) const {
    Elem c(d_, 0);
    for (uint32_t i = 0; i < d_; ++i) {
        if (a[i] == 0) continue;
        const auto& row = frob_[i];
        for (uint32_t k = 0; k < d_; ++k) c[k] = (c[k] + mul_mod_u64(a[i], row[k], p_)) % p_;
    }
    return c;
}

uint32_t FqField::degree_of(const Elem& a) const {
    Elem b = frobenius(a);
    uint32_t e = 1;
    while (!(b == a)) {
        b = frobenius(b);
        ++e;
    }
    return e;
}

FqField::Elem FqField::eval_fp_poly(const FpPoly& f, const Elem& a) const {
    Elem r = zero();
    for (int i = f.degree(); i >= 0; --i) {
        r = mul(r, a);
        r[0] = (r[0] + f.coeff(static_cast<size_t>(i))) % p_;
    }
    return r;
}

}  // namespace arbordyn
