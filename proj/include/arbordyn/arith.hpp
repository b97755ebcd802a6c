#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace arbordyn {

using BigInt = mpz_class;
using BigRat = mpq_class;

// All primes <= x, ascending. x < 2 gives an empty list.
std::vector<uint64_t> primes_up_to(uint64_t x);

// p-adic valuation. nullopt encodes v_p(0) = +infinity; it is never a number.
std::optional<long> vp(const BigInt& x, const BigInt& p);
std::optional<long> vp(const BigRat& x, const BigInt& p);

bool is_square(const BigInt& x);
bool is_square(const BigRat& x);
// x = 2*y^2 for some rational/integer y.
bool is_twice_square(const BigInt& x);
bool is_twice_square(const BigRat& x);

// Moebius function, n >= 1.
int moebius(uint64_t n);

// Divisors of n, ascending.
std::vector<uint64_t> divisors(uint64_t n);

struct PartialFactorization {
    std::vector<std::pair<BigInt, unsigned>> factors;  // (prime, exponent)
    BigInt cofactor;                                   // 1 when fully factored
};

// Trial division by primes <= bound; a leftover passing a primality test is
// kept as a factor, anything else lands in cofactor.
PartialFactorization trial_factor(const BigInt& n, uint64_t bound);
PartialFactorization trial_factor(const BigInt& n, const std::vector<uint64_t>& primes);

// Deterministic Tonelli-Shanks mod an odd prime. nullopt when a is a
// non-residue. Returns min(r, p-r).
std::optional<uint64_t> sqrt_mod_p(uint64_t a, uint64_t p);

uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod_u64(uint64_t base, uint64_t exp, uint64_t m);
uint64_t inv_mod_u64(uint64_t a, uint64_t m);

}  // namespace arbordyn
