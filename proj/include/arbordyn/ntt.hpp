#pragma once

#include <cstdint>
#include <vector>

namespace arbordyn::ntt {

// Word-size NTT-friendly primes: 29*2^57 + 1 and 27*2^56 + 1, with
// primitive roots 3 and 5. Transforms up to length 2^56.
inline constexpr uint64_t kPrime0 = 4179340454199820289ULL;
inline constexpr uint64_t kPrime1 = 1945555039024054273ULL;
inline constexpr uint64_t kRoot0 = 3;
inline constexpr uint64_t kRoot1 = 5;

// Cyclic convolution of a and b with coefficients reduced mod p. Result
// coefficients are exact integer convolution values mod p: CRT over one or
// both NTT primes depending on the bound len * (p-1)^2.
std::vector<uint64_t> convolve_mod(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                                   uint64_t p);

}  // namespace arbordyn::ntt
