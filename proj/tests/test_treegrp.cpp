#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "arbordyn/treegrp.hpp"

using namespace arbordyn;
using namespace arbordyn::tree;

TEST_CASE("identity and root swap fixed leaves") {
    auto id = TreeAut::identity(3);
    CHECK(id.fixed_leaves() == 8);
    std::vector<uint8_t> bits(7, 0);
    bits[0] = 1;
    auto rootswap = TreeAut::from_bits(3, bits);
    CHECK(rootswap.fixed_leaves() == 0);
}

TEST_CASE("group laws on random triples") {
    std::mt19937_64 rng(77);
    for (uint32_t depth = 1; depth <= 8; ++depth) {
        for (int trial = 0; trial < 125; ++trial) {
            auto a = TreeAut::haar_sample(depth, rng());
            auto b = TreeAut::haar_sample(depth, rng());
            auto c = TreeAut::haar_sample(depth, rng());
            CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
            CHECK(compose(a, a.inverse()) == TreeAut::identity(depth));
            CHECK(compose(a.inverse(), a) == TreeAut::identity(depth));
            CHECK(compose(a, TreeAut::identity(depth)) == a);
            // action consistency: (a b)(leaf) = a(b(leaf))
            uint64_t leaf = rng() % (uint64_t(1) << depth);
            CHECK(compose(a, b).apply_leaf(leaf) == a.apply_leaf(b.apply_leaf(leaf)));
        }
    }
}

TEST_CASE("depth mismatch throws") {
    auto a = TreeAut::identity(3);
    auto b = TreeAut::identity(4);
    CHECK_THROWS_AS(compose(a, b), std::invalid_argument);
}

TEST_CASE("adding machine acts as a single cycle on every level") {
    for (uint32_t depth : {2u, 3u, 5u, 8u}) {
        auto odo = TreeAut::adding_machine(depth);
        CHECK(odo.fixed_leaves() == 0);
        for (uint32_t m = 1; m <= depth; ++m) {
            auto perm = odo.level_permutation(m);
            // orbit of 0 covers all 2^m vertices
            uint64_t v = 0, len = 0;
            do {
                v = perm[v];
                ++len;
            } while (v != 0);
            CHECK(len == (uint64_t(1) << m));
        }
    }
    // depth 2: a 4-cycle on leaves
    auto odo2 = TreeAut::adding_machine(2);
    uint64_t leaf = 0, steps = 0;
    do {
        leaf = odo2.apply_leaf(leaf);
        ++steps;
    } while (leaf != 0);
    CHECK(steps == 4);
}

TEST_CASE("truncation projects fixed leaves to fixed vertices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = TreeAut::haar_sample(8, rng());
        for (uint32_t m = 1; m < 8; ++m) {
            auto t = a.truncated(m);
            for (uint64_t leaf = 0; leaf < (uint64_t(1) << 8); ++leaf) {
                if (a.apply_leaf(leaf) != leaf) continue;
                uint64_t prefix = leaf >> (8 - m);
                CHECK(t.apply_leaf(prefix) == prefix);
            }
        }
        // fixed_per_level agrees with apply_leaf counting
        auto per = a.fixed_per_level();
        for (uint32_t m = 1; m <= 8; ++m) {
            auto t = a.truncated(m);
            uint64_t cnt = 0;
            for (uint64_t leaf = 0; leaf < (uint64_t(1) << m); ++leaf)
                if (t.apply_leaf(leaf) == leaf) ++cnt;
            CHECK(per[m - 1] == cnt);
            CHECK(t.fixed_leaves() == cnt);
        }
    }
}

TEST_CASE("exact fixed-point proportions: recursion vs enumeration") {
    CHECK(fix_proportion_exact(1) == BigRat(1, 2));
    CHECK(fix_proportion_exact(2) == BigRat(3, 8));
    CHECK(fix_proportion_exact(3) == BigRat(39, 128));

    // brute-force enumeration of Aut(T_n) for n <= 3
    for (uint32_t n = 1; n <= 3; ++n) {
        size_t nbits = (size_t(1) << n) - 1;
        uint64_t with_fixed = 0, total = uint64_t(1) << nbits;
        for (uint64_t mask = 0; mask < total; ++mask) {
            std::vector<uint8_t> bits(nbits);
            for (size_t i = 0; i < nbits; ++i) bits[i] = (mask >> i) & 1;
            auto a = TreeAut::from_bits(n, bits);
            if (a.fixed_leaves() > 0) ++with_fixed;
        }
        BigRat expect(static_cast<unsigned long>(with_fixed), static_cast<unsigned long>(total));
        expect.canonicalize();
        CHECK(fix_proportion_exact(n) == expect);
    }
}

TEST_CASE("q_n tends to zero: q_20 < 0.12") {
    BigRat q20 = fix_proportion_exact(20);
    CHECK(q20.get_d() < 0.12);
    CHECK(q20.get_d() > 0.0);
}

TEST_CASE("haar sampling is uniform at depth 1 and 2") {
    uint64_t swaps = 0;
    for (uint64_t s = 0; s < 10000; ++s)
        if (TreeAut::haar_sample(1, s).bit(0)) ++swaps;
    CHECK(std::abs(static_cast<double>(swaps) / 10000 - 0.5) < 0.02);

    // depth 2: all 8 portraits roughly uniform (chi^2 with 7 dof below 24)
    std::map<uint64_t, uint64_t> counts;
    for (uint64_t s = 0; s < 16000; ++s) {
        auto a = TreeAut::haar_sample(2, s + 1000000);
        uint64_t key = a.bit(0) | (a.bit(1) << 1) | (a.bit(2) << 2);
        ++counts[key];
    }
    double chi2 = 0;
    for (auto& [k, c] : counts) {
        double e = 2000.0;
        chi2 += (c - e) * (c - e) / e;
    }
    CHECK(counts.size() == 8);
    CHECK(chi2 < 24.0);
}

TEST_CASE("haar sampling is reproducible") {
    auto a = TreeAut::haar_sample(10, 12345);
    auto b = TreeAut::haar_sample(10, 12345);
    CHECK(a == b);
}

TEST_CASE("martingale simulation against the exact recursion") {
    auto stats = martingale_sim(10, 20000, 7);
    REQUIRE(stats.levels.size() == 10);
    for (auto& lvl : stats.levels) {
        // E[X_n] = 1 exactly; allow 4 sigma with Var ~ n
        double sigma = std::sqrt(static_cast<double>(lvl.n) / 20000.0);
        CHECK(std::abs(lvl.mean_fixed - 1.0) < 4 * sigma + 0.01);
        double q = fix_proportion_exact(lvl.n).get_d();
        double qs = std::sqrt(q * (1 - q) / 20000.0);
        CHECK(std::abs(lvl.p_positive - q) < 4 * qs + 0.005);
    }
    // martingale property: E[X_{n+1} | X_n = t] = t within 3 sigma
    for (auto& tr : stats.transitions) {
        if (tr.count < 200 || tr.n > 6) continue;
        if (tr.t != 0 && tr.t != 2 && tr.t != 4) continue;
        double spread = std::sqrt(static_cast<double>(std::max<uint64_t>(tr.t, 1)) * 2.0 /
                                  static_cast<double>(tr.count));
        CHECK(std::abs(tr.mean_next - static_cast<double>(tr.t)) < 4 * spread + 0.05);
        // halving bound for u > 0
        if (tr.t > 0) {
            double stay = static_cast<double>(tr.stayed) / static_cast<double>(tr.count);
            double sigma = std::sqrt(0.25 / static_cast<double>(tr.count));
            CHECK(stay <= 0.5 + 3 * sigma);
        }
    }
    // X_1 at depth 1: equal frequency of 0 and 2
    auto s1 = martingale_sim(1, 20000, 3);
    CHECK(std::abs(s1.levels[0].mean_fixed - 1.0) < 0.05);
    CHECK(std::abs(s1.levels[0].p_positive - 0.5) < 0.02);
}

TEST_CASE("monte carlo matches recursion at depth 20") {
    auto stats = martingale_sim(20, 100000, 7);
    double q20 = fix_proportion_exact(20).get_d();
    CHECK(std::abs(stats.levels[19].p_positive - q20) < 0.01);
}

TEST_CASE("settled truncation: adding machine and identity") {
    auto odo = TreeAut::adding_machine(12);
    for (uint32_t n : {2u, 4u, 8u}) {
        auto st = is_settled_truncated(odo, n);
        REQUIRE(st.cycles.size() == 1);
        CHECK(st.cycles[0].stable);
        CHECK(st.ratio == doctest::Approx(1.0));
    }
    auto id = TreeAut::identity(12);
    auto st = is_settled_truncated(id, 4);
    CHECK(st.ratio == doctest::Approx(0.0));
    for (auto& c : st.cycles) CHECK(!c.stable);

    auto rnd = TreeAut::haar_sample(12, 5);
    auto str = is_settled_truncated(rnd, 4);
    CHECK(str.ratio >= 0.0);
    CHECK(str.ratio <= 1.0);
    CHECK_THROWS_AS(is_settled_truncated(rnd, 12), std::invalid_argument);
}

TEST_CASE("hausdorff profiles") {
    // single-node swap portraits generate the full group
    for (uint32_t depth = 1; depth <= 4; ++depth) {
        std::vector<TreeAut> gens;
        size_t nbits = (size_t(1) << depth) - 1;
        for (size_t i = 0; i < nbits; ++i) {
            std::vector<uint8_t> bits(nbits, 0);
            bits[i] = 1;
            gens.push_back(TreeAut::from_bits(depth, bits));
        }
        auto est = hausdorff_profile(gens, depth);
        REQUIRE(est.level_orders.size() == depth);
        for (uint32_t m = 1; m <= depth; ++m) {
            CHECK(est.level_orders[m - 1] == (uint64_t(1) << ((1u << m) - 1)));
            CHECK(est.dim_profile[m - 1] == doctest::Approx(1.0));
        }
    }

    // adding machine: cyclic closure of order 2^m per level
    auto odo = TreeAut::adding_machine(5);
    auto est = hausdorff_profile({odo}, 5);
    REQUIRE(est.level_orders.size() == 5);
    for (uint32_t m = 1; m <= 5; ++m) {
        CHECK(est.level_orders[m - 1] == (uint64_t(1) << m));
        CHECK(est.dim_profile[m - 1] ==
              doctest::Approx(static_cast<double>(m) / ((1u << m) - 1)));
    }

    // empty generating set: trivial group
    auto trivial = hausdorff_profile({}, 3);
    for (auto v : trivial.level_orders) CHECK(v == 1);
    for (auto v : trivial.dim_profile) CHECK(v == doctest::Approx(0.0));

    // full group at depth 5 blows the closure budget
    std::vector<TreeAut> gens5;
    for (size_t i = 0; i < 31; ++i) {
        std::vector<uint8_t> bits(31, 0);
        bits[i] = 1;
        gens5.push_back(TreeAut::from_bits(5, bits));
    }
    auto part = hausdorff_profile(gens5, 5);
    CHECK(part.truncated);
    CHECK(part.level_orders.size() < 5);
}
