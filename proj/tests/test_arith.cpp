#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arbordyn/arith.hpp"

using namespace arbordyn;

namespace {

// Independent oracle: primality by trial division.
bool is_prime_naive(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("primes_up_to basics") {
    CHECK(primes_up_to(10) == std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(primes_up_to(2) == std::vector<uint64_t>{2});
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(0).empty());
}

TEST_CASE("primes_up_to against trial division") {
    auto ps = primes_up_to(100);
    CHECK(ps.size() == 25);
    std::vector<uint64_t> expect;
    for (uint64_t n = 2; n <= 100; ++n)
        if (is_prime_naive(n)) expect.push_back(n);
    CHECK(ps == expect);
}

TEST_CASE("p-adic valuation") {
    CHECK(*vp(BigInt(12), BigInt(2)) == 2);
    CHECK(*vp(BigInt(147), BigInt(7)) == 2);
    CHECK(*vp(BigRat(3, 4), BigInt(2)) == -2);
    CHECK(!vp(BigInt(0), BigInt(5)).has_value());
    // multiplicativity on a few pairs
    for (long a : {6, 28, -50})
        for (long b : {4, 18, 35}) {
            auto va = vp(BigInt(a), BigInt(2)), vb = vp(BigInt(b), BigInt(2));
            CHECK(*vp(BigInt(a * b), BigInt(2)) == *va + *vb);
        }
}

TEST_CASE("square and twice-square tests") {
    CHECK(is_square(BigInt(49)));
    CHECK(!is_square(BigInt(12)));
    CHECK(is_twice_square(BigInt(8)));
    CHECK(!is_square(BigInt(-4)));
    CHECK(is_square(BigRat(9, 16)));
    CHECK(!is_square(BigRat(9, 15)));
    CHECK(is_twice_square(BigRat(2, 9)));
}

TEST_CASE("moebius") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(2) == -1);
    CHECK(moebius(30) == -1);
    // sum over divisors vanishes for n > 1
    for (uint64_t n = 2; n <= 60; ++n) {
        int s = 0;
        for (uint64_t d : divisors(n)) s += moebius(d);
        CHECK(s == 0);
    }
}

TEST_CASE("trial_factor") {
    auto pf = trial_factor(BigInt(147), 1000);
    REQUIRE(pf.factors.size() == 2);
    CHECK(pf.factors[0].first == 3);
    CHECK(pf.factors[0].second == 1);
    CHECK(pf.factors[1].first == 7);
    CHECK(pf.factors[1].second == 2);
    CHECK(pf.cofactor == 1);

    // large prime leftover is recognized
    BigInt n = BigInt(45833) * 4;
    auto pf2 = trial_factor(n, 100);
    CHECK(pf2.cofactor == 1);
    bool saw = false;
    for (auto& [p, e] : pf2.factors)
        if (p == 45833) saw = true;
    CHECK(saw);
}

TEST_CASE("sqrt mod p") {
    CHECK(*sqrt_mod_p(4, 7) == 2);
    CHECK(!sqrt_mod_p(3, 7).has_value());
    for (uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 10007ULL}) {
        for (uint64_t a = 0; a < std::min<uint64_t>(p, 50); ++a) {
            uint64_t sq = mul_mod_u64(a, a, p);
            auto r = sqrt_mod_p(sq, p);
            REQUIRE(r.has_value());
            CHECK(mul_mod_u64(*r, *r, p) == sq);
        }
    }
}
