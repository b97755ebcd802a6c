#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arbordyn/fq.hpp"

namespace arbordyn {

// Dense univariate polynomial over F_{p^d}. Coefficients are stored flat,
// d words each, lowest degree first; the field object must outlive the
// polynomial. Multiplication goes through F_p[z] by Kronecker substitution
// so large products ride the NTT.
class FqPoly {
  public:
    FqPoly() : F_(nullptr) {}
    explicit FqPoly(const FqField& F) : F_(&F) {}
    FqPoly(const FqField& F, const std::vector<FqField::Elem>& coeffs);

    static FqPoly x(const FqField& F);
    static FqPoly constant(const FqField& F, const FqField::Elem& v);
    // Lift a polynomial with F_p coefficients.
    static FqPoly lift(const FqField& F, const FpPoly& f);

    const FqField& field() const { return *F_; }
    int degree() const { return static_cast<int>(c_.size() / F_->d()) - 1; }
    bool is_zero() const { return c_.empty(); }
    FqField::Elem coeff(size_t i) const;
    FqField::Elem lc() const { return coeff(static_cast<size_t>(degree())); }

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
    FqPoly scaled(const FqField::Elem& s) const;
    friend bool operator==(const FqPoly& a, const FqPoly& b) {
        return a.F_ == b.F_ && a.c_ == b.c_;
    }
    bool operator<(const FqPoly& other) const;  // degree, then index order

    FqPoly derivative() const;
    FqPoly monic() const;
    FqField::Elem eval(const FqField::Elem& v) const;

  private:
    void set_coeff(size_t i, const FqField::Elem& v);
    void normalize();
    const FqField* F_;
    std::vector<uint64_t> c_;  // blocks of d words

    friend std::pair<FqPoly, FqPoly> divrem(const FqPoly& num, const FqPoly& den);
};

std::pair<FqPoly, FqPoly> divrem(const FqPoly& num, const FqPoly& den);
FqPoly gcd(const FqPoly& a, const FqPoly& b);  // monic
FqPoly powmod(const FqPoly& base, const BigInt& e, const FqPoly& mod);
FqPoly compose(const FqPoly& f, const FqPoly& g);
FqPoly iterate(const FqPoly& f, unsigned n);
bool is_irreducible(const FqPoly& f);

struct FqFactor {
    FqPoly factor;  // monic irreducible
    unsigned multiplicity;
};
struct FqFactorization {
    FqField::Elem unit;  // leading unit; product of factor^mult times unit = input
    std::vector<FqFactor> factors;
};

// Distinct-degree then randomized equal-degree splitting; the seed fixes the
// RNG so runs reproduce. Factors come back sorted (degree, then coefficient
// index order). Throws on the zero polynomial.
FqFactorization factor_fq(const FqPoly& f, uint64_t seed);

}  // namespace arbordyn
