#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arbordyn/fq.hpp"

using namespace arbordyn;

TEST_CASE("field moduli are the lexicographically smallest irreducibles") {
    CHECK(FqField(3, 2).modulus() == FpPoly(3, {1, 0, 1}));        // t^2 + 1
    CHECK(FqField(3, 3).modulus() == FpPoly(3, {1, 2, 0, 1}));     // t^3 + 2t + 1
    CHECK(FqField(5, 2).modulus() == FpPoly(5, {2, 0, 1}));        // t^2 + 2
    CHECK(FqField(7, 2).modulus() == FpPoly(7, {1, 0, 1}));        // t^2 + 1
    CHECK(FqField(3, 4).modulus() == FpPoly(3, {2, 1, 0, 0, 1}));  // t^4 + t + 2
    CHECK(FqField(5, 3).modulus() == FpPoly(5, {1, 1, 0, 1}));     // t^3 + t + 1
}

TEST_CASE("field axioms on F_9") {
    FqField F(3, 2);
    CHECK(F.q() == 9);
    for (uint64_t i = 0; i < 9; ++i) {
        auto a = F.from_index(i);
        CHECK(F.index(a) == i);
        if (!F.is_zero(a)) {
            CHECK(F.mul(a, F.inv(a)) == F.one());
        }
        for (uint64_t j = 0; j < 9; ++j) {
            auto b = F.from_index(j);
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.index(F.add(a, b)) < 9);
        }
    }
}

TEST_CASE("sqrt over prime fields") {
    FqField F(7, 1);
    CHECK(*F.sqrt(F.from_u64(4)) == F.from_u64(2));
    CHECK(!F.sqrt(F.from_u64(3)).has_value());
    CHECK(*F.sqrt(F.zero()) == F.zero());
}

TEST_CASE("sqrt exhaustive over all fields with p^d <= 343") {
    for (auto [p, d] : std::vector<std::pair<uint64_t, uint32_t>>{
             {3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}, {5, 3}, {3, 4}, {3, 5},
             {11, 1}, {13, 1}, {11, 2}, {13, 2}, {17, 2}}) {
        if (uint64_t(1) << 62 < static_cast<uint64_t>(std::pow(p, d))) continue;
        uint64_t q = 1;
        for (uint32_t i = 0; i < d; ++i) q *= p;
        if (q > 343) continue;
        FqField F(p, d);
        for (uint64_t i = 0; i < q; ++i) {
            auto a = F.from_index(i);
            auto sq = F.mul(a, a);
            auto r = F.sqrt(sq);
            REQUIRE(r.has_value());
            bool ok = (*r == a) || (*r == F.neg(a));
            CHECK(ok);
            CHECK(F.index(*r) <= F.index(F.neg(*r)));
        }
        // exactly (q-1)/2 non-squares
        uint64_t nonsq = 0;
        for (uint64_t i = 0; i < q; ++i)
            if (!F.is_square(F.from_index(i))) ++nonsq;
        CHECK(nonsq == (q - 1) / 2);
    }
}

TEST_CASE("sqrt in F_9 of a generator square") {
    FqField F(3, 2);
    auto g = F.gen();
    auto g2 = F.mul(g, g);
    auto r = F.sqrt(g2);
    REQUIRE(r.has_value());
    bool ok = (*r == g) || (*r == F.neg(g));
    CHECK(ok);
}

TEST_CASE("frobenius and element degree") {
    FqField F(3, 4);
    for (uint64_t i = 0; i < F.q(); ++i) {
        auto a = F.from_index(i);
        CHECK(F.frobenius(a) == F.pow(a, 3));
        uint32_t deg = F.degree_of(a);
        CHECK((deg == 1 || deg == 2 || deg == 4));
    }
    // counts: 3 of degree 1, 6 of degree 2, 72 of degree 4
    uint64_t d1 = 0, d2 = 0, d4 = 0;
    for (uint64_t i = 0; i < F.q(); ++i) {
        switch (F.degree_of(F.from_index(i))) {
            case 1: ++d1; break;
            case 2: ++d2; break;
            case 4: ++d4; break;
        }
    }
    CHECK(d1 == 3);
    CHECK(d2 == 6);
    CHECK(d4 == 72);
}
