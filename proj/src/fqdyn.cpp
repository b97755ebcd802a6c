#include "arbordyn/fqdyn.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "arbordyn/errors.hpp"
#include "arbordyn/parallel.hpp"

namespace arbordyn::fqdyn {

namespace {
constexpr uint64_t kGraphBudget = 1ULL << 24;
}

FunctionalGraph FunctionalGraph::build(const FqField& F, const FqPoly& map) {
    if (F.q() > kGraphBudget)
        throw BudgetError("FunctionalGraph: field larger than the enumeration budget");
    FunctionalGraph g;
    g.field = &F;
    uint64_t q = F.q();
    g.succ.resize(q);
    for (uint64_t i = 0; i < q; ++i)
        g.succ[i] = static_cast<uint32_t>(F.index(map.eval(F.from_index(i))));

    // Peel nodes of in-degree zero; what survives lies on cycles.
    std::vector<uint32_t> indeg(q, 0);
    for (uint64_t i = 0; i < q; ++i) ++indeg[g.succ[i]];
    std::vector<uint32_t> stack;
    for (uint64_t i = 0; i < q; ++i)
        if (indeg[i] == 0) stack.push_back(static_cast<uint32_t>(i));
    std::vector<uint8_t> peeled(q, 0);
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        peeled[v] = 1;
        uint32_t s = g.succ[v];
        if (--indeg[s] == 0) stack.push_back(s);
    }
    g.on_cycle.resize(q);
    for (uint64_t i = 0; i < q; ++i) g.on_cycle[i] = peeled[i] ? 0 : 1;

    g.tail_depth.assign(q, 0);
    std::vector<uint32_t> path;
    for (uint64_t i = 0; i < q; ++i) {
        if (g.on_cycle[i] || g.tail_depth[i] != 0) continue;
        uint32_t v = static_cast<uint32_t>(i);
        path.clear();
        while (!g.on_cycle[v] && g.tail_depth[v] == 0) {
            path.push_back(v);
            v = g.succ[v];
        }
        uint32_t base = g.tail_depth[v];
        for (size_t k = path.size(); k-- > 0;)
            g.tail_depth[path[k]] = base + static_cast<uint32_t>(path.size() - k);
    }
    return g;
}

std::vector<PerDensityRow> per_density_profile(const FpPoly& f, uint32_t dmax) {
    if (f.degree() != 2) throw std::invalid_argument("per_density_profile: quadratic map required");
    const uint64_t p = f.modulus();
    if (p == 2) throw std::invalid_argument("per_density_profile: characteristic 2 excluded");
    double num_acc = 0.0, den_acc = 0.0;
    std::vector<PerDensityRow> rows;
    for (uint32_t d = 1; d <= dmax; ++d) {
        double qd = 1.0;
        for (uint32_t i = 0; i < d; ++i) qd *= static_cast<double>(p);
        if (qd > static_cast<double>(kGraphBudget))
            throw BudgetError("per_density_profile: p^d exceeds enumeration budget");
        FqField F(p, d);
        FqPoly lifted = FqPoly::lift(F, f);
        FunctionalGraph g = FunctionalGraph::build(F, lifted);
        uint64_t periodic = 0, total = 0;
        for (uint64_t i = 0; i < F.q(); ++i) {
            if (F.degree_of(F.from_index(i)) != d) continue;
            ++total;
            if (g.on_cycle[i]) ++periodic;
        }
        double w = 1.0 / (static_cast<double>(d) * qd);  // (deg a)^-1 N(a)^-1
        num_acc += w * static_cast<double>(periodic);
        den_acc += w * static_cast<double>(total);
        PerDensityRow row;
        row.d = d;
        row.periodic = periodic;
        row.total = total;
        row.layer_fraction = total == 0 ? 0.0 : static_cast<double>(periodic) / static_cast<double>(total);
        row.cumulative_delta = den_acc == 0.0 ? 0.0 : num_acc / den_acc;
        rows.push_back(row);
    }
    return rows;
}

namespace {

// Forward critical orbit { f^n(c0) : n >= 1 } computed to closure.
std::vector<FqField::Elem> critical_orbit_fq(const FqField& F, const FqPoly& f) {
    FqField::Elem two_inv = F.inv(F.from_u64(2));
    FqField::Elem a = f.coeff(2), b = f.coeff(1);
    FqField::Elem c0 = F.neg(F.mul(F.mul(b, two_inv), F.inv(a)));
    std::vector<FqField::Elem> orbit;
    FqField::Elem v = c0;
    for (;;) {
        v = f.eval(v);
        if (std::find(orbit.begin(), orbit.end(), v) != orbit.end()) break;
        orbit.push_back(v);
    }
    return orbit;
}

bool degenerate_conjugate(const FqPoly& f, const std::vector<FqField::Elem>& orbit) {
    // Conjugates of x^2 have a critical orbit of size 1; conjugates of
    // x^2 - 2 one of size 2 ending in a fixed point. (A 2-cycle, as for
    // x^2 - 1, is neither.)
    if (orbit.size() > 2) return false;
    const FqField::Elem& last = orbit.back();
    return f.eval(last) == last;
}

struct LineageNode {
    FqPoly h;
    unsigned multiplicity = 1;
    bool certified = false;
    int parent = -1;       // index into previous level, -1 at level 1
    bool split_here = false;  // the parent's h o f did not stay irreducible
};

}  // namespace

std::vector<SettlednessReport> settled_report(const FqPoly& f, uint32_t N, uint64_t seed) {
    const FqField& F = f.field();
    if (F.p() == 2) throw std::invalid_argument("settled_report: characteristic 2 excluded");
    if (f.degree() != 2) throw std::invalid_argument("settled_report: quadratic map required");
    if (N > 14) throw BudgetError("settled_report: N <= 14");

    auto orbit = critical_orbit_fq(F, f);
    bool degen = degenerate_conjugate(f, orbit);
    auto certified_stable = [&](const FqPoly& h) {
        for (const auto& a : orbit)
            if (F.is_square(h.eval(a))) return false;
        return true;
    };

    // Level-by-level factor lineage: children of a factor h at level n are
    // the factors of h o f at level n+1.
    std::vector<std::vector<LineageNode>> levels;
    {
        auto base = factor_fq(f, seed);
        std::vector<LineageNode> lvl;
        for (auto& fac : base.factors) {
            LineageNode node;
            node.h = fac.factor;
            node.multiplicity = fac.multiplicity;
            node.certified = certified_stable(fac.factor);
            node.parent = -1;
            node.split_here = false;
            lvl.push_back(std::move(node));
        }
        levels.push_back(std::move(lvl));
    }
    for (uint32_t n = 1; n < N; ++n) {
        std::vector<LineageNode> next;
        for (size_t i = 0; i < levels.back().size(); ++i) {
            const LineageNode& node = levels.back()[i];
            FqPoly comp = compose(node.h, f);
            auto fac = factor_fq(comp, mix_seed(seed, (static_cast<uint64_t>(n) << 32) | i));
            bool split = fac.factors.size() > 1 || fac.factors[0].multiplicity > 1;
            for (auto& child : fac.factors) {
                LineageNode cn;
                cn.h = child.factor;
                cn.multiplicity = child.multiplicity * node.multiplicity;
                cn.certified = node.certified || certified_stable(child.factor);
                cn.parent = static_cast<int>(i);
                cn.split_here = split;
                next.push_back(std::move(cn));
            }
        }
        levels.push_back(std::move(next));
    }

    // A node is heuristically stable when its lineage reaches level N without
    // any split below it.
    std::vector<std::vector<uint8_t>> persists(levels.size());
    persists.back().assign(levels.back().size(), 1);
    for (size_t lev = levels.size(); lev-- > 1;) {
        persists[lev - 1].assign(levels[lev - 1].size(), 0);
        for (size_t j = 0; j < levels[lev].size(); ++j) {
            const LineageNode& child = levels[lev][j];
            if (!child.split_here && persists[lev][j]) persists[lev - 1][static_cast<size_t>(child.parent)] = 1;
        }
    }

    std::vector<SettlednessReport> out;
    for (uint32_t n = 1; n <= N; ++n) {
        const auto& lvl = levels[n - 1];
        SettlednessReport rep;
        rep.n = n;
        rep.lookahead = N - n;
        rep.degenerate = degen;
        rep.stable_degree_total = 0;
        rep.certified_degree_total = 0;
        for (size_t i = 0; i < lvl.size(); ++i) {
            StableMark mark = StableMark::Unstable;
            if (lvl[i].certified)
                mark = StableMark::Certified;
            else if (persists[n - 1][i])
                mark = StableMark::Heuristic;
            rep.factors.push_back({static_cast<uint32_t>(lvl[i].h.degree()), lvl[i].multiplicity, mark});
            if (mark == StableMark::Certified)
                rep.certified_degree_total += static_cast<uint64_t>(lvl[i].h.degree());
            if (mark != StableMark::Unstable)
                rep.stable_degree_total += static_cast<uint64_t>(lvl[i].h.degree());
        }
        rep.ratio = static_cast<double>(rep.stable_degree_total) / static_cast<double>(1ULL << n);
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<MarkovRow> markov_transition_estimate(const FqPoly& f, uint32_t N, uint64_t seed) {
    const FqField& F = f.field();
    if (F.p() == 2) throw std::invalid_argument("markov: characteristic 2 excluded");
    if (f.degree() != 2) throw std::invalid_argument("markov: quadratic map required");
    if (N > 14) throw BudgetError("markov: N <= 14");

    std::map<std::pair<uint32_t, uint32_t>, MarkovRow> table;
    std::vector<FqPoly> current;
    {
        auto base = factor_fq(f, seed);
        for (auto& fac : base.factors) current.push_back(fac.factor);
    }
    for (uint32_t n = 1; n <= N; ++n) {
        std::vector<FqPoly> next;
        for (size_t i = 0; i < current.size(); ++i) {
            const FqPoly& h = current[i];
            FqPoly comp = compose(h, f);
            auto fac = factor_fq(comp, mix_seed(seed, (static_cast<uint64_t>(n) << 32) | i));
            auto key = std::make_pair(n, static_cast<uint32_t>(h.degree()));
            auto& row = table[key];
            row.n = n;
            row.degree = static_cast<uint32_t>(h.degree());
            if (fac.factors.size() == 1 && fac.factors[0].multiplicity == 1)
                ++row.inert;
            else if (fac.factors.size() == 2)
                ++row.split;
            else
                ++row.ramified;
            for (auto& child : fac.factors) next.push_back(child.factor);
        }
        current = std::move(next);
    }
    std::vector<MarkovRow> rows;
    for (auto& [k, v] : table) rows.push_back(v);
    return rows;
}

bool hyperbolic_membership(const FqField& F, const FqField::Elem& c) {
    // Iterate 0 under x^2 + c; 0 is periodic iff it reappears.
    FqField::Elem v = F.zero();
    std::vector<FqField::Elem> seen;
    for (;;) {
        v = F.add(F.mul(v, v), c);
        if (F.is_zero(v)) return true;
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
        seen.push_back(v);
    }
}

namespace {

// Level sets of the backward orbit of 0 under x^2 + c. Returns the first n
// with S_n empty, or 0 when the walk provably never dies (set repeat).
uint64_t first_empty_level(const FqField& F, const FqField::Elem& c) {
    std::set<std::vector<uint64_t>> seen_sets;
    std::set<uint64_t> level{F.index(F.zero())};
    uint64_t n = 0;
    for (;;) {
        std::vector<uint64_t> key(level.begin(), level.end());
        if (!seen_sets.insert(key).second) return 0;  // cycles forever
        std::set<uint64_t> next;
        for (uint64_t idx : level) {
            FqField::Elem y = F.from_index(idx);
            auto r = F.sqrt(F.sub(y, c));
            if (r) {
                next.insert(F.index(*r));
                next.insert(F.index(F.neg(*r)));
            }
        }
        ++n;
        if (next.empty()) return n;
        level = std::move(next);
    }
}

}  // namespace

bool in_all_In(const FqField& F, const FqField::Elem& c) { return first_empty_level(F, c) == 0; }

MandelbrotLevel mandelbrot_In(uint64_t p, uint32_t n, uint32_t D) {
    if (p == 2) throw std::invalid_argument("mandelbrot_In: characteristic 2 excluded");
    MandelbrotLevel out;
    out.n = n;
    double num = 0.0, den = 0.0;
    for (uint32_t d = 1; d <= D; ++d) {
        double qb = 1.0;
        for (uint32_t i = 0; i < d; ++i) qb *= static_cast<double>(p);
        if (qb > static_cast<double>(1ULL << 20))
            throw BudgetError("mandelbrot_In: p^d exceeds enumeration budget");
        FqField F(p, d);
        MandelbrotRow row;
        row.d = d;
        row.total = 0;
        for (uint64_t i = 0; i < F.q(); ++i) {
            FqField::Elem c = F.from_index(i);
            if (F.degree_of(c) != d) continue;
            ++row.total;
            uint64_t e = first_empty_level(F, c);
            bool member = (n == 0) || (e == 0) || (e > n);
            if (member) row.members.push_back(i);
        }
        row.layer_fraction =
            row.total == 0 ? 0.0
                           : static_cast<double>(row.members.size()) / static_cast<double>(row.total);
        double qd = 1.0;
        for (uint32_t i = 0; i < d; ++i) qd *= static_cast<double>(p);
        double w = 1.0 / (static_cast<double>(d) * qd);
        num += w * static_cast<double>(row.members.size());
        den += w * static_cast<double>(row.total);
        out.rows.push_back(std::move(row));
    }
    out.delta = den == 0.0 ? 0.0 : num / den;
    return out;
}

std::vector<double> hyperbolic_density_profile(uint64_t p, uint32_t n_max, uint32_t D) {
    if (p == 2) throw std::invalid_argument("hyperbolic_density_profile: characteristic 2 excluded");
    // One pass per degree layer; every level density falls out of the
    // first-empty-level statistic.
    std::vector<double> num(n_max + 1, 0.0);
    double den = 0.0;
    for (uint32_t d = 1; d <= D; ++d) {
        double qb = 1.0;
        for (uint32_t i = 0; i < d; ++i) qb *= static_cast<double>(p);
        if (qb > static_cast<double>(1ULL << 20))
            throw BudgetError("hyperbolic_density_profile: p^d exceeds enumeration budget");
        FqField F(p, d);
        double qd = 1.0;
        for (uint32_t i = 0; i < d; ++i) qd *= static_cast<double>(p);
        double w = 1.0 / (static_cast<double>(d) * qd);
        for (uint64_t i = 0; i < F.q(); ++i) {
            FqField::Elem c = F.from_index(i);
            if (F.degree_of(c) != d) continue;
            den += w;
            uint64_t e = first_empty_level(F, c);
            for (uint32_t n = 0; n <= n_max; ++n) {
                bool member = (n == 0) || (e == 0) || (e > n);
                if (member) num[n] += w;
            }
        }
    }
    std::vector<double> out(n_max + 1);
    for (uint32_t n = 0; n <= n_max; ++n) out[n] = den == 0.0 ? 0.0 : num[n] / den;
    return out;
}

}  // namespace arbordyn::fqdyn
