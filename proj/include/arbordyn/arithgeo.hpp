#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arbordyn/arith.hpp"
#include "arbordyn/density.hpp"

namespace arbordyn::ec {

// Long Weierstrass form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct WeierstrassCurve {
    BigInt a1, a2, a3, a4, a6;

    BigInt b2() const { return a1 * a1 + 4 * a2; }
    BigInt b4() const { return 2 * a4 + a1 * a3; }
    BigInt b6() const { return a3 * a3 + 4 * a6; }
    BigInt b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    BigInt discriminant() const;
};

struct RationalPoint {
    BigRat x, y;
    bool inf = false;
    static RationalPoint infinity() { return {BigRat(0), BigRat(0), true}; }
};

// Group law over Q (exact).
RationalPoint add(const WeierstrassCurve& E, const RationalPoint& P, const RationalPoint& Q);
RationalPoint negate(const WeierstrassCurve& E, const RationalPoint& P);
RationalPoint scalar_mul(const WeierstrassCurve& E, const BigInt& n, const RationalPoint& P);
bool on_curve(const WeierstrassCurve& E, const RationalPoint& P);

// Reduction mod p with word-size arithmetic.
struct CurveFp {
    uint64_t p, a1, a2, a3, a4, a6;
};
struct PointFp {
    uint64_t x = 0, y = 0;
    bool inf = true;
};
// Throws when p divides the discriminant (bad reduction).
CurveFp reduce(const WeierstrassCurve& E, uint64_t p);
std::optional<PointFp> reduce(const RationalPoint& P, uint64_t p);  // nullopt: denominator dies

PointFp add(const CurveFp& E, const PointFp& P, const PointFp& Q);
PointFp negate(const CurveFp& E, const PointFp& P);
PointFp scalar_mul(const CurveFp& E, uint64_t n, const PointFp& P);
bool on_curve(const CurveFp& E, const PointFp& P);
std::vector<PointFp> enumerate_points(const CurveFp& E);  // small p only

// Exact order via baby-step/giant-step in the Hasse interval, then prime
// stripping of the found annihilator.
uint64_t point_order(const CurveFp& E, const PointFp& P);
// Parity shortcut: odd order iff the odd part of an annihilator kills P.
bool has_odd_order(const CurveFp& E, const PointFp& P);

// Fraction of good-reduction primes p <= X (p >= 5, p not dividing the
// discriminant or alpha's denominators) with reduced alpha of odd order.
DensityEstimate odd_order_density(const WeierstrassCurve& E, const RationalPoint& alpha,
                                  uint64_t X, unsigned threads);

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    uint64_t samples = 0;
};
// Monte Carlo average of ell^(-ord_ell det(M - I)) over invertible 2x2
// matrices mod ell^depth, the Haar integral truncated at depth.
McEstimate kummer_integral_mc(uint64_t ell, uint32_t depth, uint64_t samples, uint64_t seed,
                              unsigned threads);

// (l^5 - l^4 - l^3 + l + 1) / (l^5 - l^3 - l^2 + 1), in lowest terms.
BigRat closed_form_density(uint64_t ell);

// Mod-2 image is all of GL2(F_2): the 2-division cubic 4x^3 + b2 x^2 +
// 2 b4 x + b6 is irreducible with non-square discriminant.
bool mod2_surjectivity_check(const WeierstrassCurve& E);

// alpha in ell*E(Q)? Decided against a caller-supplied Mordell-Weil basis
// and torsion list (generators are external knowledge; descent is out of
// scope). search_bound caps the coefficient enumeration.
bool alpha_outside_ellE(const WeierstrassCurve& E, const std::vector<RationalPoint>& basis,
                        const std::vector<RationalPoint>& torsion, const RationalPoint& alpha,
                        uint64_t ell, int search_bound = 24);

}  // namespace arbordyn::ec
