#pragma once

#include <cstdint>
#include <vector>

#include "arbordyn/density.hpp"
#include "arbordyn/zdyn.hpp"

namespace arbordyn::cheb {

// Does p divide phi^n(a0) for some n >= 1? Decided by iterating mod p with
// cycle detection.
bool orbit_divisor_hit(const zdyn::QuadraticMap& phi, const BigInt& a0, uint64_t p);

// Fraction of all primes <= X dividing some orbit term.
DensityEstimate divisor_density(const zdyn::QuadraticMap& phi, const BigInt& a0, uint64_t X,
                                unsigned threads);

// Fraction of good-reduction primes p <= X such that phi^n has a root mod p,
// via gcd(x^p - x, phi^n). Primes dividing lc(phi) or Disc(phi) are skipped
// and counted separately.
DensityEstimate root_proportion(const zdyn::QuadraticMap& phi, unsigned n, uint64_t X,
                                unsigned threads);

// Fraction of good primes with alpha mod p lying on a cycle of phi mod p.
DensityEstimate periodicity_density(const zdyn::QuadraticMap& phi, const BigInt& alpha, uint64_t X,
                                    unsigned threads);

// The same counts snapshotted at each power of ten up to X, the CLI's
// per-decade rows. The last row equals the plain estimate.
std::vector<DensityEstimate> divisor_density_decades(const zdyn::QuadraticMap& phi,
                                                     const BigInt& a0, uint64_t X,
                                                     unsigned threads);
std::vector<DensityEstimate> root_proportion_decades(const zdyn::QuadraticMap& phi, unsigned n,
                                                     uint64_t X, unsigned threads);
std::vector<DensityEstimate> periodicity_density_decades(const zdyn::QuadraticMap& phi,
                                                         const BigInt& alpha, uint64_t X,
                                                         unsigned threads);

}  // namespace arbordyn::cheb
