#pragma once

#include <cstdint>
#include <vector>

#include "arbordyn/fqpoly.hpp"

namespace arbordyn::fqdyn {

// The action of a polynomial map on all q = p^d elements of a field, as a
// functional graph: out-degree one, cycles flagged, tail depths measured to
// the nearest cycle node. Node ids are element indices (FqField::index).
struct FunctionalGraph {
    const FqField* field = nullptr;
    std::vector<uint32_t> succ;
    std::vector<uint8_t> on_cycle;
    std::vector<uint32_t> tail_depth;  // 0 on cycles

    static FunctionalGraph build(const FqField& F, const FqPoly& map);
};

struct PerDensityRow {
    uint32_t d;
    uint64_t periodic;  // periodic elements of degree exactly d
    uint64_t total;     // all elements of degree exactly d
    double layer_fraction;
    double cumulative_delta;  // Eq-style weights (1/d) q^-d summed through d
};
// Truncated density profile of Per(f) for quadratic f over F_p, one row per
// extension degree d <= dmax.
std::vector<PerDensityRow> per_density_profile(const FpPoly& f, uint32_t dmax);

enum class StableMark { Certified, Heuristic, Unstable };

struct SettledFactorInfo {
    uint32_t degree;
    unsigned multiplicity;
    StableMark mark;
};
struct SettlednessReport {
    uint32_t n;
    uint32_t lookahead;                           // N - n levels of splitting evidence;
                                                  // Heuristic marks at lookahead 0 are vacuous
    std::vector<SettledFactorInfo> factors;       // sorted by (degree, order)
    uint64_t stable_degree_total;                 // Certified + Heuristic
    uint64_t certified_degree_total;
    double ratio;                                 // stable_degree_total / 2^n
    bool degenerate;                              // conjugate of x^2 or x^2 - 2
};
// Factor f^n for n <= N. A factor h is Certified stable when h(a) is a
// non-square at every point a of the forward critical orbit of f; factors
// whose lineage persists to level N without splitting are Heuristic.
std::vector<SettlednessReport> settled_report(const FqPoly& f, uint32_t N, uint64_t seed);

struct MarkovRow {
    uint32_t n;        // transition from level n to n+1
    uint32_t degree;   // degree of the level-n factor
    uint64_t inert;    // h o f stayed irreducible
    uint64_t split;    // h o f split into two distinct factors
    uint64_t ramified; // h o f became a square of one factor
};
std::vector<MarkovRow> markov_transition_estimate(const FqPoly& f, uint32_t N, uint64_t seed);

// Is 0 periodic under x^2 + c inside the field containing c?
bool hyperbolic_membership(const FqField& F, const FqField::Elem& c);

struct MandelbrotRow {
    uint32_t d;
    std::vector<uint64_t> members;  // element indices of degree exactly d in I_n
    uint64_t total;                 // elements of degree exactly d
    double layer_fraction;
};
struct MandelbrotLevel {
    uint32_t n;
    std::vector<MandelbrotRow> rows;
    double delta;  // truncated density of I_n through degree D
};
// I_n = { c : the n-th inverse image of 0 under x^2+c meets F_p(c) },
// computed by breadth-first square-root preimage search per degree layer.
MandelbrotLevel mandelbrot_In(uint64_t p, uint32_t n, uint32_t D);

// delta(I_n) for n = 0..n_max at fixed truncation degree D; index n.
std::vector<double> hyperbolic_density_profile(uint64_t p, uint32_t n_max, uint32_t D);

// Membership in every I_n simultaneously (the stabilized intersection):
// level sets of the preimage walk either die out or repeat.
bool in_all_In(const FqField& F, const FqField::Elem& c);

}  // namespace arbordyn::fqdyn
