#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arbordyn/arith.hpp"

namespace arbordyn {

// Dense univariate polynomial over F_p, p an odd word-size prime.
// Coefficients lowest degree first, always normalized (no zero leading
// coefficient) and reduced into [0, p). Doubles as an element of F_p[t].
class FpPoly {
  public:
    FpPoly() : p_(0) {}  // null placeholder; usable only as assignment target
    explicit FpPoly(uint64_t p) : p_(p) {}
    FpPoly(uint64_t p, std::vector<uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& v : c_) v %= p_;
        normalize();
    }

    static FpPoly x(uint64_t p) { return FpPoly(p, {0, 1}); }
    static FpPoly constant(uint64_t p, uint64_t v) { return FpPoly(p, {v}); }
    static FpPoly monomial(uint64_t p, uint64_t coeff, size_t deg);

    uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint64_t lc() const { return c_.back(); }
    const std::vector<uint64_t>& coeffs() const { return c_; }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    FpPoly operator*(uint64_t s) const;
    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    FpPoly derivative() const;
    uint64_t eval(uint64_t v) const;
    FpPoly monic() const;
    FpPoly shifted(size_t k) const;  // * t^k

    // t-adic valuation: index of lowest nonzero coefficient; nullopt for 0.
    std::optional<size_t> ord_t() const;

    // Exact square root in F_p[t]; nullopt when no g with g^2 = f exists.
    std::optional<FpPoly> sqrt_exact() const;

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    uint64_t p_;
    std::vector<uint64_t> c_;

    friend FpPoly mul_schoolbook(const FpPoly& a, const FpPoly& b);
    friend FpPoly mul_fft(const FpPoly& a, const FpPoly& b);
};

// Both multiplication routes are exposed so they can be cross-checked; the
// operator picks FFT above kFftThresholdDeg.
inline constexpr int kFftThresholdDeg = 4096;
FpPoly mul_schoolbook(const FpPoly& a, const FpPoly& b);
FpPoly mul_fft(const FpPoly& a, const FpPoly& b);

std::pair<FpPoly, FpPoly> divrem(const FpPoly& num, const FpPoly& den);
FpPoly exact_div(const FpPoly& num, const FpPoly& den);  // IntegrityError on remainder
FpPoly gcd(const FpPoly& a, const FpPoly& b);            // monic
// g = gcd = u*a + v*b.
struct ExtGcd {
    FpPoly g, u, v;
};
ExtGcd ext_gcd(const FpPoly& a, const FpPoly& b);

FpPoly powmod(const FpPoly& base, const BigInt& e, const FpPoly& mod);
FpPoly compose(const FpPoly& f, const FpPoly& g);
FpPoly iterate(const FpPoly& f, unsigned n);

bool is_irreducible(const FpPoly& f);
bool is_square_poly(const FpPoly& f);

// Dense polynomial in x with coefficients in F_p[t]; enough arithmetic for
// composing and iterating maps like x^2 + t symbolically.
class FpTPoly {
  public:
    explicit FpTPoly(uint64_t p) : p_(p) {}
    FpTPoly(uint64_t p, std::vector<FpPoly> coeffs) : p_(p), c_(std::move(coeffs)) { normalize(); }

    static FpTPoly x(uint64_t p);

    uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    FpPoly coeff(size_t i) const { return i < c_.size() ? c_[i] : FpPoly(p_); }

    friend FpTPoly operator+(const FpTPoly& a, const FpTPoly& b);
    friend FpTPoly operator*(const FpTPoly& a, const FpTPoly& b);
    friend bool operator==(const FpTPoly& a, const FpTPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    // Evaluate in x; the result lives in F_p[t].
    FpPoly eval(const FpPoly& v) const;

  private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    uint64_t p_;
    std::vector<FpPoly> c_;
};

FpTPoly compose(const FpTPoly& f, const FpTPoly& g);
FpTPoly iterate(const FpTPoly& f, unsigned n);

}  // namespace arbordyn
