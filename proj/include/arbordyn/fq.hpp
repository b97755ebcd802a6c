#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "arbordyn/fppoly.hpp"

namespace arbordyn {

// F_{p^d}, p an odd prime, built on the lexicographically smallest monic
// irreducible modulus of degree d (coefficient arrays scanned in base-p
// counting order, constant coefficient least significant). Elements are
// coefficient vectors of length d, lowest degree first.
class FqField {
  public:
    using Elem = std::vector<uint64_t>;

    FqField(uint64_t p, uint32_t d);

    uint64_t p() const { return p_; }
    uint32_t d() const { return d_; }
    uint64_t q() const { return q_; }  // p^d, throws at construction if > 2^62
    const FpPoly& modulus() const { return modulus_; }

    Elem zero() const { return Elem(d_, 0); }
    Elem one() const;
    Elem from_u64(uint64_t v) const;  // image of an integer (prime subfield)
    Elem gen() const;                 // the class of t

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem pow(const Elem& a, uint64_t e) const;
    bool is_zero(const Elem& a) const;

    bool is_square(const Elem& a) const;
    // Square root when it exists; of the two roots returns the one with the
    // smaller element index (see index()).
    std::optional<Elem> sqrt(const Elem& a) const;

    // Base-p encoding sum c_i p^i; a total order on elements.
    uint64_t index(const Elem& a) const;
    Elem from_index(uint64_t idx) const;

    Elem frobenius(const Elem& a) const;  // a -> a^p
    // [F_p(a) : F_p] = size of the Frobenius orbit of a.
    uint32_t degree_of(const Elem& a) const;

    // Evaluate a polynomial with F_p coefficients at a point of this field.
    Elem eval_fp_poly(const FpPoly& f, const Elem& a) const;

  private:
    uint64_t p_;
    uint32_t d_;
    uint64_t q_;
    FpPoly modulus_;
    std::vector<std::vector<uint64_t>> red_;   // t^(d+j) mod modulus, j = 0..d-2
    std::vector<std::vector<uint64_t>> frob_;  // t^(i*p) mod modulus, i = 0..d-1
};

}  // namespace arbordyn
