#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arbordyn/fqdyn.hpp"

using namespace arbordyn;
using namespace arbordyn::fqdyn;

TEST_CASE("functional graph of x^2+1 over F_3") {
    FqField F(3, 1);
    FqPoly f = FqPoly::lift(F, FpPoly(3, {1, 0, 1}));
    auto g = FunctionalGraph::build(F, f);
    // 0 -> 1 -> 2 -> 2
    CHECK(g.succ[0] == 1);
    CHECK(g.succ[1] == 2);
    CHECK(g.succ[2] == 2);
    CHECK(!g.on_cycle[0]);
    CHECK(!g.on_cycle[1]);
    CHECK(g.on_cycle[2]);
    CHECK(g.tail_depth[0] == 2);
    CHECK(g.tail_depth[1] == 1);
    CHECK(g.tail_depth[2] == 0);
}

TEST_CASE("per-density layer fractions by hand graphs") {
    // x^2+1 over F_3, degree 1: periodic set {2} -> 1/3
    auto rows = per_density_profile(FpPoly(3, {1, 0, 1}), 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].periodic == 1);
    CHECK(rows[0].total == 3);
    CHECK(rows[0].layer_fraction == doctest::Approx(1.0 / 3));

    // x^2 over F_3: 0,1 fixed; 2 -> 1: fraction 2/3
    auto rows2 = per_density_profile(FpPoly(3, {0, 0, 1}), 1);
    CHECK(rows2[0].periodic == 2);
    CHECK(rows2[0].layer_fraction == doctest::Approx(2.0 / 3));

    // x^2+1 over F_5: cycle {0,1,2} -> 3/5
    auto rows3 = per_density_profile(FpPoly(5, {1, 0, 1}), 1);
    CHECK(rows3[0].periodic == 3);
    CHECK(rows3[0].layer_fraction == doctest::Approx(3.0 / 5));
}

TEST_CASE("per-density deeper layers are consistent with the graph") {
    auto rows = per_density_profile(FpPoly(3, {1, 0, 1}), 4);
    REQUIRE(rows.size() == 4);
    for (auto& r : rows) {
        CHECK(r.periodic <= r.total);
        CHECK(r.cumulative_delta >= 0.0);
        CHECK(r.cumulative_delta <= 1.0);
    }
    // degree layer totals: # elements of degree exactly d over F_3
    CHECK(rows[0].total == 3);
    CHECK(rows[1].total == 6);
    CHECK(rows[2].total == 24);
    CHECK(rows[3].total == 72);
}

TEST_CASE("settledness: x^2+1 over F_3 is certified f-stable") {
    FqField F(3, 1);
    FqPoly f = FqPoly::lift(F, FpPoly(3, {1, 0, 1}));
    auto reports = settled_report(f, 10, 1);
    REQUIRE(reports.size() == 10);
    for (auto& rep : reports) {
        CHECK(rep.ratio == doctest::Approx(1.0));
        CHECK(rep.certified_degree_total == (uint64_t(1) << rep.n));
        REQUIRE(rep.factors.size() == 1);
        CHECK(rep.factors[0].mark == StableMark::Certified);
    }
    // factor degrees match direct factorization for n <= 6 (single factor 2^n)
    for (unsigned n = 1; n <= 6; ++n) {
        FqPoly fn = iterate(f, n);
        auto fac = factor_fq(fn, 5);
        REQUIRE(fac.factors.size() == 1);
        CHECK(fac.factors[0].factor.degree() == (1 << n));
    }
}

TEST_CASE("settledness: x^2 over F_3 is degenerate, ratio below 1") {
    FqField F(3, 1);
    FqPoly f = FqPoly::lift(F, FpPoly(3, {0, 0, 1}));
    auto reports = settled_report(f, 6, 1);
    for (auto& rep : reports) {
        CHECK(rep.degenerate);
        CHECK(rep.ratio < 1.0);
    }
}

TEST_CASE("settledness: x^2+2 over F_5 mixes certified and heuristic") {
    FqField F(5, 1);
    FqPoly f = FqPoly::lift(F, FpPoly(5, {2, 0, 1}));
    auto reports = settled_report(f, 10, 1);
    REQUIRE(reports.size() == 10);
    // frozen factor-degree spot checks (distinct-degree oracle):
    // f^2 = (x^2+2x+4)(x^2+3x+4); f^3 = two quadratics and a quartic
    std::vector<uint32_t> degs2;
    for (auto& fi : reports[1].factors) degs2.push_back(fi.degree);
    CHECK(degs2 == std::vector<uint32_t>{2, 2});
    std::vector<uint32_t> degs3;
    for (auto& fi : reports[2].factors) degs3.push_back(fi.degree);
    std::sort(degs3.begin(), degs3.end());
    CHECK(degs3 == std::vector<uint32_t>{2, 2, 4});
    CHECK(!reports[0].degenerate);

    // certified-only totals never decrease in proportion terms: a stable
    // factor never splits, so certified degree at least doubles per level
    for (size_t n = 1; n < reports.size(); ++n)
        CHECK(reports[n].certified_degree_total >= 2 * reports[n - 1].certified_degree_total);
}

TEST_CASE("markov transitions") {
    FqField F(3, 1);
    FqPoly stable = FqPoly::lift(F, FpPoly(3, {1, 0, 1}));
    auto rows = markov_transition_estimate(stable, 6, 1);
    for (auto& r : rows) {
        CHECK(r.split == 0);
        CHECK(r.ramified == 0);
        CHECK(r.inert == 1);
    }

    FqField F5(5, 1);
    FqPoly mixed = FqPoly::lift(F5, FpPoly(5, {2, 0, 1}));
    auto rows2 = markov_transition_estimate(mixed, 6, 1);
    uint64_t splits = 0, inerts = 0;
    for (auto& r : rows2) {
        splits += r.split;
        inerts += r.inert;
    }
    CHECK(splits > 0);
    CHECK(inerts > 0);

    auto one = markov_transition_estimate(stable, 1, 1);
    CHECK(one.size() == 1);
}

TEST_CASE("hyperbolic membership by hand orbits mod 5") {
    FqField F(5, 1);
    CHECK(hyperbolic_membership(F, F.from_u64(4)));   // 0 -> 4 -> 20 = 0
    CHECK(hyperbolic_membership(F, F.from_u64(1)));   // 0 -> 1 -> 2 -> 5 = 0
    CHECK(!hyperbolic_membership(F, F.from_u64(2)));  // cycle {1,3} excludes 0
    CHECK(!hyperbolic_membership(F, F.from_u64(3)));
    CHECK(hyperbolic_membership(F, F.zero()));        // 0 fixed under x^2
}

TEST_CASE("mandelbrot I_1 at p=5, degree 1") {
    auto lvl = mandelbrot_In(5, 1, 1);
    REQUIRE(lvl.rows.size() == 1);
    CHECK(lvl.rows[0].members == std::vector<uint64_t>{0, 1, 4});
    CHECK(lvl.rows[0].total == 5);
    CHECK(lvl.delta == doctest::Approx(3.0 / 5));
}

TEST_CASE("I_0 convention: density 1") {
    auto lvl = mandelbrot_In(5, 0, 2);
    CHECK(lvl.delta == doctest::Approx(1.0));
}

TEST_CASE("nesting I_{n+1} inside I_n, exhaustive for p <= 7, d <= 3, n <= 6") {
    for (uint64_t p : {3ULL, 5ULL, 7ULL}) {
        for (uint32_t d = 1; d <= 3; ++d) {
            std::vector<std::vector<uint64_t>> members(7);
            for (uint32_t n = 1; n <= 6; ++n) {
                auto lvl = mandelbrot_In(p, n, d);
                for (auto& row : lvl.rows)
                    if (row.d == d)
                        members[n] = row.members;
            }
            for (uint32_t n = 1; n < 6; ++n)
                for (uint64_t m : members[n + 1])
                    CHECK(std::find(members[n].begin(), members[n].end(), m) != members[n].end());
        }
    }
}

TEST_CASE("density profile non-increasing and intersection equals hyperbolicity") {
    auto prof = hyperbolic_density_profile(5, 6, 3);
    REQUIRE(prof.size() == 7);
    CHECK(prof[0] == doctest::Approx(1.0));
    for (size_t n = 1; n < prof.size(); ++n) CHECK(prof[n] <= prof[n - 1] + 1e-12);

    for (uint64_t p : {3ULL, 5ULL}) {
        for (uint32_t d = 1; d <= 3; ++d) {
            FqField F(p, d);
            for (uint64_t i = 0; i < F.q(); ++i) {
                auto c = F.from_index(i);
                CHECK(in_all_In(F, c) == hyperbolic_membership(F, c));
            }
        }
    }
}

TEST_CASE("galois invariance of Per, I_n and H for p^d <= 625") {
    for (auto [p, d] : std::vector<std::pair<uint64_t, uint32_t>>{{3, 2}, {5, 2}, {3, 4}, {5, 4}, {7, 2}, {3, 5}}) {
        uint64_t q = 1;
        for (uint32_t i = 0; i < d; ++i) q *= p;
        if (q > 625) continue;
        FqField F(p, d);
        // Per(f) for f = x^2 + 1 lifted
        FqPoly f = FqPoly::lift(F, FpPoly(p, {1, 0, 1}));
        auto g = FunctionalGraph::build(F, f);
        for (uint64_t i = 0; i < q; ++i) {
            auto a = F.from_index(i);
            auto conj = F.frobenius(a);
            CHECK(g.on_cycle[i] == g.on_cycle[F.index(conj)]);
            CHECK(hyperbolic_membership(F, a) == hyperbolic_membership(F, conj));
            CHECK(in_all_In(F, a) == in_all_In(F, conj));
        }
    }
}
