#include "arbordyn/ntt.hpp"

#include <cassert>
#include <stdexcept>

namespace arbordyn::ntt {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 b, u64 e, u64 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod(r, b, p);
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}

// In-place iterative radix-2 transform, bit-reversed input ordering.
void transform(std::vector<u64>& a, u64 p, u64 primitive_root, bool invert) {
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        u64 w = powmod(primitive_root, (p - 1) / len, p);
        if (invert) w = powmod(w, p - 2, p);
        for (size_t i = 0; i < n; i += len) {
            u64 wk = 1;
            for (size_t j = 0; j < len / 2; ++j) {
                u64 u = a[i + j];
                u64 v = mulmod(a[i + j + len / 2], wk, p);
                a[i + j] = u + v < p ? u + v : u + v - p;
                a[i + j + len / 2] = u >= v ? u - v : u + p - v;
                wk = mulmod(wk, w, p);
            }
        }
    }
    if (invert) {
        u64 ninv = powmod(n % p, p - 2, p);
        for (auto& x : a) x = mulmod(x, ninv, p);
    }
}

std::vector<u64> convolve_one_prime(const std::vector<u64>& a, const std::vector<u64>& b, u64 np,
                                    u64 root) {
    size_t need = a.size() + b.size() - 1;
    size_t n = 1;
    while (n < need) n <<= 1;
    std::vector<u64> fa(n, 0), fb(n, 0);
    for (size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % np;
    for (size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % np;
    transform(fa, np, root, false);
    transform(fb, np, root, false);
    for (size_t i = 0; i < n; ++i) fa[i] = mulmod(fa[i], fb[i], np);
    transform(fa, np, root, true);
    fa.resize(need);
    return fa;
}

}  // namespace

std::vector<uint64_t> convolve_mod(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
                                   uint64_t p) {
    if (a.empty() || b.empty()) return {};
    size_t minlen = std::min(a.size(), b.size());
    // Bound on exact convolution coefficients: minlen * (p-1)^2.
    u128 bound = static_cast<u128>(minlen) * (p - 1) * (p - 1);
    std::vector<u64> r0 = convolve_one_prime(a, b, kPrime0, kRoot0);
    if (bound < kPrime0) {
        for (auto& x : r0) x %= p;
        return r0;
    }
    if (bound >= static_cast<u128>(kPrime0) * kPrime1)
        throw std::overflow_error("convolve_mod: coefficient bound exceeds CRT capacity");
    std::vector<u64> r1 = convolve_one_prime(a, b, kPrime1, kRoot1);
    u64 p0_inv_mod_p1 = powmod(kPrime0 % kPrime1, kPrime1 - 2, kPrime1);
    std::vector<u64> out(r0.size());
    for (size_t i = 0; i < r0.size(); ++i) {
        // x = r0 + P0 * ((r1 - r0) * P0^-1 mod P1), 0 <= x < P0*P1
        u64 d = r1[i] >= r0[i] % kPrime1 ? r1[i] - r0[i] % kPrime1
                                         : r1[i] + kPrime1 - r0[i] % kPrime1;
        u64 t = mulmod(d, p0_inv_mod_p1, kPrime1);
        u128 x = static_cast<u128>(t) * kPrime0 + r0[i];
        out[i] = static_cast<u64>(x % p);
    }
    return out;
}

}  // namespace arbordyn::ntt
