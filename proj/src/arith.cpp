#include "arbordyn/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace arbordyn {

std::vector<uint64_t> primes_up_to(uint64_t x) {
    std::vector<uint64_t> out;
    if (x < 2) return out;
    std::vector<uint8_t> composite(x + 1, 0);
    for (uint64_t i = 2; i <= x; ++i) {
        if (!composite[i]) {
            out.push_back(i);
            if (i <= x / i)
                for (uint64_t j = i * i; j <= x; j += i) composite[j] = 1;
        }
    }
    return out;
}

std::optional<long> vp(const BigInt& x, const BigInt& p) {
    if (x == 0) return std::nullopt;
    mpz_class rest;
    mp_bitcnt_t e = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return static_cast<long>(e);
}

std::optional<long> vp(const BigRat& x, const BigInt& p) {
    if (x == 0) return std::nullopt;
    auto vn = vp(BigInt(x.get_num()), p);
    auto vd = vp(BigInt(x.get_den()), p);
    return *vn - *vd;
}

bool is_square(const BigInt& x) {
    if (x < 0) return false;
    return mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

bool is_square(const BigRat& x) {
    if (x < 0) return false;
    return is_square(BigInt(x.get_num())) && is_square(BigInt(x.get_den()));
}

bool is_twice_square(const BigInt& x) { return is_square(BigRat(x) / 2); }

bool is_twice_square(const BigRat& x) { return is_square(x / 2); }

int moebius(uint64_t n) {
    if (n == 0) throw std::invalid_argument("moebius: n must be >= 1");
    int k = 0;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++k;
        }
    }
    if (n > 1) ++k;
    return (k % 2 == 0) ? 1 : -1;
}

std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

static PartialFactorization trial_factor_impl(const BigInt& n, const std::vector<uint64_t>& primes,
                                              uint64_t bound) {
    PartialFactorization out;
    BigInt rest = abs(n);
    if (rest == 0) {
        out.cofactor = 0;
        return out;
    }
    for (uint64_t p : primes) {
        if (rest == 1) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_class pz(static_cast<unsigned long>(p));
            mpz_class stripped;
            mp_bitcnt_t e = mpz_remove(stripped.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
            out.factors.emplace_back(pz, static_cast<unsigned>(e));
            rest = stripped;
        }
        if (p > bound) break;
    }
    if (rest > 1) {
        // A leftover below bound^2 is prime; otherwise ask a primality test.
        BigInt bsq = BigInt(static_cast<unsigned long>(bound)) * static_cast<unsigned long>(bound);
        if (rest < bsq || mpz_probab_prime_p(rest.get_mpz_t(), 30) > 0) {
            out.factors.emplace_back(rest, 1);
            rest = 1;
        }
    }
    out.cofactor = rest;
    return out;
}

PartialFactorization trial_factor(const BigInt& n, uint64_t bound) {
    return trial_factor_impl(n, primes_up_to(bound), bound);
}

PartialFactorization trial_factor(const BigInt& n, const std::vector<uint64_t>& primes) {
    uint64_t bound = primes.empty() ? 0 : primes.back();
    return trial_factor_impl(n, primes, bound);
}

uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m, b = base % m;
    while (exp) {
        if (exp & 1) r = mul_mod_u64(r, b, m);
        b = mul_mod_u64(b, b, m);
        exp >>= 1;
    }
    return r;
}

uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
    while (newr != 0) {
        int64_t q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::domain_error("inv_mod_u64: not invertible");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

std::optional<uint64_t> sqrt_mod_p(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (pow_mod_u64(a, (p - 1) / 2, p) != 1) return std::nullopt;
    uint64_t s = 0, q = p - 1;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    uint64_t r;
    if (s == 1) {
        r = pow_mod_u64(a, (p + 1) / 4, p);
    } else {
        uint64_t z = 2;
        while (pow_mod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
        uint64_t m = s;
        uint64_t c = pow_mod_u64(z, q, p);
        uint64_t t = pow_mod_u64(a, q, p);
        r = pow_mod_u64(a, (q + 1) / 2, p);
        while (t != 1) {
            uint64_t i = 0, tt = t;
            while (tt != 1) {
                tt = mul_mod_u64(tt, tt, p);
                ++i;
            }
            uint64_t b = c;
            for (uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod_u64(b, b, p);
            m = i;
            c = mul_mod_u64(b, b, p);
            t = mul_mod_u64(t, c, p);
            r = mul_mod_u64(r, b, p);
        }
    }
    return std::min(r, p - r);
}

}  // namespace arbordyn
