#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arbordyn/errors.hpp"
#include "arbordyn/towerff.hpp"

using namespace arbordyn;
using namespace arbordyn::tower;

TEST_CASE("the sequence starts t, t^2+t, t^4+2t^3+t^2+t") {
    Tower T(3);
    CHECK(T.cn(1) == FpPoly::x(3));
    CHECK(T.cn(2) == FpPoly(3, {0, 1, 1}));
    CHECK(T.cn(3) == FpPoly(3, {0, 1, 1, 2, 1}));
    CHECK(T.cn(3).degree() == 4);

    Tower T5(5);
    // frozen symbolic oracle: c_4 over F_5
    CHECK(T5.cn(4) == FpPoly(5, {0, 1, 1, 2, 0, 1, 1, 4, 1}));
    CHECK(T5.cn(4).degree() == 8);
}

TEST_CASE("degrees are 2^(n-1)") {
    Tower T(3);
    for (uint32_t n = 1; n <= 14; ++n) CHECK(T.cn(n).degree() == (1 << (n - 1)));
}

TEST_CASE("primitive parts by exact division") {
    Tower T(3);
    CHECK(T.phi_n(1) == FpPoly::x(3));
    CHECK(T.phi_n(2) == FpPoly(3, {1, 1}));  // t + 1
    CHECK(T.phi_n(6).degree() == 27);
}

TEST_CASE("degree identity: deg Phi_n = sum mu(n/d) 2^(d-1)") {
    Tower T(3);
    for (uint32_t n = 1; n <= 14; ++n) {
        long expect = 0;
        for (uint64_t d : divisors(n)) expect += moebius(n / d) * (1L << (d - 1));
        CHECK(T.phi_n(n).degree() == expect);
    }
}

TEST_CASE("reconstruction: product of Phi_d over d|n equals c_n") {
    for (uint64_t p : {3ULL, 5ULL}) {
        Tower T(p);
        for (uint32_t n = 1; n <= 12; ++n) {
            FpPoly prod = FpPoly::constant(p, 1);
            for (uint64_t d : divisors(n)) prod = prod * T.phi_n(static_cast<uint32_t>(d));
            CHECK(prod == T.cn(n));
        }
    }
}

TEST_CASE("maximality report over F_3") {
    Tower T(3);
    auto report = T.maximality_squarefree_report(12);
    REQUIRE(report.size() == 12);
    for (auto& lvl : report) {
        if (lvl.mu != 0) {  // squarefree levels carry the parity certificate
            CHECK(lvl.deg_phi % 2 == 1);
            CHECK(lvl.parity_certificate);
            CHECK(lvl.maximal == TowerLevel::Status::CertifiedMaximal);
        } else {
            CHECK(lvl.deg_phi % 2 == 0);
            CHECK(lvl.square_test_ran);
            CHECK(!lvl.phi_is_square);
            CHECK(lvl.maximal == TowerLevel::Status::NonSquareCertified);
        }
    }
    // n = 6: mu = 1, degree 27 odd
    CHECK(report[5].mu == 1);
    CHECK(report[5].deg_phi == 27);
    // n = 2: Phi_2 = t + 1, degree 1
    CHECK(report[1].deg_phi == 1);
    // n = 4: square test must have run
    CHECK(report[3].square_test_ran);
}

TEST_CASE("pairwise coprimality") {
    Tower T(3);
    CHECK(gcd(T.phi_n(1), T.phi_n(2)).degree() == 0);  // gcd(t, t+1) = 1
    CHECK(gcd(T.phi_n(2), T.phi_n(3)).degree() == 0);
    auto mat = T.pairwise_coprime_check(10);
    for (auto& row : mat)
        for (uint8_t v : row) CHECK(v == 1);
}

TEST_CASE("rigid divisibility over F_p[t]") {
    Tower T(3);
    CHECK(T.rigid_divisibility_fp_t(10));
    // spot checks with a Euclid oracle
    CHECK(gcd(T.cn(2), T.cn(3)) == FpPoly::x(3));          // c_1 = t
    CHECK(gcd(T.cn(2), T.cn(4)) == T.cn(2));               // c_2
    CHECK(*T.cn(5).ord_t() == 1);
    Tower T5(5);
    CHECK(T5.rigid_divisibility_fp_t(8));
}

TEST_CASE("c_n is never a square (ord_t = 1)") {
    Tower T(3);
    for (uint32_t n = 1; n <= 14; ++n) {
        CHECK(*T.cn(n).ord_t() == 1);
        CHECK(!is_square_poly(T.cn(n)));
    }
}

TEST_CASE("FFT and schoolbook agree on c_n products") {
    Tower T(3);
    for (uint32_t n = 2; n <= 10; ++n) {
        const FpPoly& a = T.cn(n);
        const FpPoly& b = T.cn(n - 1);
        CHECK(mul_fft(a, b) == mul_schoolbook(a, b));
        CHECK(mul_fft(a, a) == mul_schoolbook(a, a));
    }
}

TEST_CASE("budget and precondition errors") {
    Tower T(3);
    CHECK_THROWS_AS(T.cn(21), BudgetError);
    CHECK_THROWS_AS(T.cn(0), std::invalid_argument);
    CHECK_THROWS_AS(Tower(2), std::invalid_argument);
    CHECK_THROWS_AS(T.pairwise_coprime_check(15), BudgetError);
}

TEST_CASE("phi_3 over F_3 is not a square") {
    // Phi_3 = c_3 / c_1 = t^3 + 2t^2 + t + 1
    Tower T(3);
    FpPoly phi3 = T.phi_n(3);
    CHECK(phi3 == FpPoly(3, {1, 1, 2, 1}));
    CHECK(!is_square_poly(phi3));
}
