#pragma once

#include <cstdint>
#include <vector>

#include "arbordyn/arith.hpp"

namespace arbordyn {

// Dense univariate polynomial over Z, coefficients lowest degree first.
class ZPoly {
  public:
    ZPoly() = default;
    explicit ZPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }
    ZPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static ZPoly x() { return ZPoly({0, 1}); }
    static ZPoly constant(BigInt v) { return ZPoly(std::vector<BigInt>{std::move(v)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const BigInt& operator[](size_t i) const { return c_[i]; }
    const BigInt& lc() const { return c_.back(); }
    const std::vector<BigInt>& coeffs() const { return c_; }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    ZPoly operator*(const BigInt& s) const;
    ZPoly operator-() const;
    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

    ZPoly derivative() const;
    BigInt eval(const BigInt& v) const;
    BigRat eval(const BigRat& v) const;

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

ZPoly compose(const ZPoly& f, const ZPoly& g);
// n-fold self-composition; n = 0 gives x.
ZPoly iterate(const ZPoly& f, unsigned n);

BigInt resultant(const ZPoly& f, const ZPoly& g);
// (-1)^(d(d-1)/2) Res(f, f') / lc(f); throws on constant input.
BigInt discriminant(const ZPoly& f);

}  // namespace arbordyn
