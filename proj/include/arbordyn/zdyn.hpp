#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbordyn/arith.hpp"
#include "arbordyn/zpoly.hpp"

namespace arbordyn::zdyn {

// x -> a x^2 + b x + c over Z, a != 0.
struct QuadraticMap {
    BigInt a, b, c;

    QuadraticMap(BigInt a_, BigInt b_, BigInt c_);

    BigRat critical_point() const;  // -b / 2a
    BigInt disc() const { return b * b - 4 * a * c; }
    BigRat eval(const BigRat& x) const;
    BigInt eval(const BigInt& x) const;
    uint64_t eval_mod(uint64_t x, uint64_t p) const;
    ZPoly to_poly() const;
    bool is_monic_no_linear() const { return a == 1 && b == 0; }
};

// [phi(gamma), ..., phi^N(gamma)], exact rationals.
std::vector<BigRat> critical_orbit(const QuadraticMap& phi, unsigned N);

struct DiscSquareClass {
    bool square;
    bool zero_disc;  // degenerate double root; reported as square-with-warning
};
// Square class of Disc(phi^n): n = 1 directly from b^2 - 4ac, n >= 2 through
// the critical orbit (square class of a * phi^n(gamma)).
DiscSquareClass disc_square_class(const QuadraticMap& phi, unsigned n);

// For phi = x^2 + k only: gcd(c_m, c_n) = c_gcd(m,n) for all m, n <= N, and
// stability of p-adic valuations along multiples for every prime found by
// trial division <= 10^6 (plus completely factored cofactors).
bool rigid_divisibility_check(const QuadraticMap& phi, unsigned N);

enum class IrredStatus { Certified, Unknown, Reducible };
struct IrreducibilityLevel {
    unsigned n;
    IrredStatus status;
};
std::vector<IrreducibilityLevel> iterates_irreducible(const QuadraticMap& phi, unsigned N);

struct MaximalityReport {
    unsigned n = 0;
    enum class Status { CertifiedMaximal, NoCertificate } status = Status::NoCertificate;
    std::optional<BigInt> witness_prime;  // explicit admissible prime, when found
    bool nonsquare_cofactor = false;      // certificate via a stripped non-square cofactor
    BigInt cofactor = 0;                  // the stripped cofactor examined
};
MaximalityReport maximality_certificate(const QuadraticMap& phi, unsigned n);

enum class WieferichStatus { Exists, ExistsNonconstructive, NotFound };
struct WieferichRow {
    unsigned n;
    WieferichStatus status;
    std::optional<BigInt> prime;
};
// Per-level scan for primes with v_p(phi^n(b)) odd and v_p(phi^m(b)) = 0 for
// m < n. b must have 2b integral; preperiodic orbits are rejected.
std::vector<WieferichRow> wieferich_scan(const QuadraticMap& phi, const BigRat& b, unsigned N);

bool stoll_condition(const BigInt& k);

struct FamilyMatch {
    int family;  // 1: x^2-kx+k  2: x^2+kx-1  3: x^2+k  4: x^2-2kx+k
    BigInt k;
    bool excluded;  // parameter is on the family's excluded list
};
std::vector<FamilyMatch> family_classify(const QuadraticMap& phi);

std::string to_json(const MaximalityReport& r);

}  // namespace arbordyn::zdyn
