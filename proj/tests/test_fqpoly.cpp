#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arbordyn/fqpoly.hpp"

using namespace arbordyn;

namespace {

FqPoly random_fqpoly(const FqField& F, int deg, std::mt19937_64& rng) {
    std::vector<FqField::Elem> c;
    for (int i = 0; i <= deg; ++i) c.push_back(F.from_index(rng() % F.q()));
    while (F.is_zero(c.back())) c.back() = F.from_index(rng() % F.q());
    return FqPoly(F, c);
}

FqPoly product_of(const FqFactorization& fac, const FqField& F) {
    FqPoly prod = FqPoly::constant(F, fac.unit);
    for (const auto& f : fac.factors)
        for (unsigned m = 0; m < f.multiplicity; ++m) prod = prod * f.factor;
    return prod;
}

}  // namespace

TEST_CASE("factor x^2+1 over F_5 and F_3") {
    FqField F5(5, 1);
    FqPoly f = FqPoly::lift(F5, FpPoly(5, {1, 0, 1}));
    auto fac = factor_fq(f, 1);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].factor.degree() == 1);
    CHECK(fac.factors[1].factor.degree() == 1);
    // roots are +-2: factors x+2 and x+3
    CHECK(F5.index(fac.factors[0].factor.coeff(0)) == 2);
    CHECK(F5.index(fac.factors[1].factor.coeff(0)) == 3);

    FqField F3(3, 1);
    FqPoly g = FqPoly::lift(F3, FpPoly(3, {1, 0, 1}));
    auto gf = factor_fq(g, 1);
    REQUIRE(gf.factors.size() == 1);
    CHECK(gf.factors[0].factor.degree() == 2);
    CHECK(is_irreducible(g));
}

TEST_CASE("x^4+2x^2+2 irreducible over F_3") {
    FqField F3(3, 1);
    FqPoly f = FqPoly::lift(F3, FpPoly(3, {2, 0, 2, 0, 1}));
    auto fac = factor_fq(f, 7);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].factor.degree() == 4);
    CHECK(is_irreducible(f));
    // cross-check by exhaustive root / quadratic divisor search
    for (uint64_t r = 0; r < 3; ++r) CHECK(!F3.is_zero(f.eval(F3.from_u64(r))));
}

TEST_CASE("factorization recombines exactly: 500 random polynomials") {
    std::mt19937_64 rng(123);
    std::vector<std::pair<uint64_t, uint32_t>> fields{{3, 1}, {5, 1}, {3, 2}};
    std::vector<FqField> Fs;
    for (auto [p, d] : fields) Fs.emplace_back(p, d);
    for (int trial = 0; trial < 500; ++trial) {
        const FqField& F = Fs[static_cast<size_t>(trial) % Fs.size()];
        int deg = 1 + static_cast<int>(rng() % 12);
        FqPoly f = random_fqpoly(F, deg, rng);
        auto fac = factor_fq(f, rng());
        CHECK(product_of(fac, F) == f);
        for (const auto& fi : fac.factors) CHECK(is_irreducible(fi.factor));
    }
}

TEST_CASE("repeated factors get multiplicities") {
    FqField F(3, 1);
    FqPoly x = FqPoly::x(F);
    FqPoly f = x * x * x;  // x^3
    auto fac = factor_fq(f, 3);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].multiplicity == 3);
    // (x^2+1)^2 * x over F_5: x^2+1 splits, each root twice
    FqField F5(5, 1);
    FqPoly g = FqPoly::lift(F5, FpPoly(5, {1, 0, 1}));
    FqPoly h = g * g * FqPoly::x(F5);
    auto hf = factor_fq(h, 9);
    REQUIRE(hf.factors.size() == 3);
    unsigned mults = 0;
    for (auto& ff : hf.factors) mults += ff.multiplicity;
    CHECK(mults == 5);
    CHECK(product_of(hf, F5) == h);
}

TEST_CASE("large products ride the Kronecker/NTT route correctly") {
    std::mt19937_64 rng(555);
    FqField F(3, 2);
    FqPoly a = random_fqpoly(F, 1500, rng);
    FqPoly b = random_fqpoly(F, 1500, rng);
    FqPoly prod = a * b;
    // independent oracle: naive nested-loop convolution over the field
    for (int k : {0, 1, 1500, 2999, 3000}) {
        FqField::Elem acc = F.zero();
        for (int i = std::max(0, k - 1500); i <= std::min(1500, k); ++i)
            acc = F.add(acc, F.mul(a.coeff(static_cast<size_t>(i)),
                                   b.coeff(static_cast<size_t>(k - i))));
        CHECK(prod.coeff(static_cast<size_t>(k)) == acc);
    }
    CHECK(prod.degree() == 3000);
}

TEST_CASE("determinism under a fixed seed") {
    FqField F(5, 1);
    std::mt19937_64 rng(4);
    FqPoly f = random_fqpoly(F, 9, rng);
    auto a = factor_fq(f, 42);
    auto b = factor_fq(f, 42);
    REQUIRE(a.factors.size() == b.factors.size());
    for (size_t i = 0; i < a.factors.size(); ++i) {
        CHECK(a.factors[i].factor == b.factors[i].factor);
        CHECK(a.factors[i].multiplicity == b.factors[i].multiplicity);
    }
}

TEST_CASE("zero polynomial is rejected") {
    FqField F(3, 1);
    CHECK_THROWS_AS(factor_fq(FqPoly(F), 1), std::invalid_argument);
}

TEST_CASE("compose over a bivariate view: (x^2+t)^2 over F_3") {
    // iterate of x^2 + t with coefficients in F_3[t]: x^4 + 2t x^2 + t^2 + t
    FqField F(3, 2);  // F_9 = F_3[t]/(t^2+1): evaluate both sides at x in F_9
    FpPoly fx2t_c0 = FpPoly::x(3);  // t
    // direct symbolic check over F_p[t] is in the tower tests; here check at
    // sample points of an extension: f2(x) = (x^2+t)^2 + t at t := gen
    auto t = F.gen();
    auto f = [&](const FqField::Elem& x) { return F.add(F.mul(x, x), t); };
    for (uint64_t i = 0; i < 9; ++i) {
        auto x = F.from_index(i);
        auto lhs = f(f(x));
        // x^4 + 2 t x^2 + t^2 + t
        auto x2 = F.mul(x, x);
        auto rhs = F.add(F.add(F.mul(x2, x2), F.mul(F.mul(F.from_u64(2), t), x2)),
                         F.add(F.mul(t, t), t));
        CHECK(lhs == rhs);
    }
}
