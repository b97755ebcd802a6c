#pragma once

#include <cstdint>
#include <vector>

#include "arbordyn/arith.hpp"

namespace arbordyn::tree {

// Automorphism of the depth-n rooted binary tree as a portrait of 2^n - 1
// swap bits, indexed by internal node in breadth-first order (root 0,
// children of i at 2i+1 and 2i+2). The image of a path u_1..u_k is
// w_j = u_j xor bit(u_1..u_{j-1}).
class TreeAut {
  public:
    static TreeAut identity(uint32_t depth);
    static TreeAut from_bits(uint32_t depth, std::vector<uint8_t> bits);
    // Each bit an independent fair coin from mt19937_64(seed), BFS order.
    static TreeAut haar_sample(uint32_t depth, uint64_t seed);
    // Binary odometer: acts as a single 2^m-cycle on every level m.
    static TreeAut adding_machine(uint32_t depth);

    uint32_t depth() const { return depth_; }
    const std::vector<uint8_t>& bits() const { return bits_; }
    uint8_t bit(size_t node) const { return bits_[node]; }

    TreeAut truncated(uint32_t m) const;  // prefix portrait
    uint64_t apply_leaf(uint64_t leaf) const;

    uint64_t fixed_leaves() const;
    // Fixed vertices per level, index m-1 for level m.
    std::vector<uint64_t> fixed_per_level() const;
    // Permutation of the 2^m vertices at depth m (path bits packed MSB-first
    // so vertex v's children are 2v and 2v+1 at the next level).
    std::vector<uint64_t> level_permutation(uint32_t m) const;

    friend TreeAut compose(const TreeAut& sigma, const TreeAut& tau);  // sigma after tau
    TreeAut inverse() const;
    friend bool operator==(const TreeAut& a, const TreeAut& b) {
        return a.depth_ == b.depth_ && a.bits_ == b.bits_;
    }

  private:
    TreeAut(uint32_t depth, std::vector<uint8_t> bits) : depth_(depth), bits_(std::move(bits)) {}
    uint32_t depth_ = 0;
    std::vector<uint8_t> bits_;
};

// Exact q_n = P(X_n > 0) over the full automorphism group:
// q_1 = 1/2, q_{n+1} = (1 - (1 - q_n)^2) / 2.
BigRat fix_proportion_exact(uint32_t n);

struct MartingaleLevel {
    uint32_t n;
    double mean_fixed;       // mean X_n
    double p_positive;       // P(X_n > 0)
    double frac_constant_from_here;  // trajectories constant from this level on
};
struct MartingaleTransition {
    uint32_t n;       // conditioning level
    uint64_t t;       // X_n value
    uint64_t count;   // trials with X_n = t
    uint64_t stayed;  // of those, X_{n+1} = t
    double mean_next; // E[X_{n+1} | X_n = t]
};
struct MartingaleStats {
    std::vector<MartingaleLevel> levels;
    std::vector<MartingaleTransition> transitions;  // for t in a small window
    uint64_t trials;
};
// Fixed-leaf counts of one Haar element observed at successive truncations;
// per-trial seeds derived from the master seed by counter. Only the portrait
// bits on the fixed-vertex frontier are ever drawn, so depth 20+ is cheap.
MartingaleStats martingale_sim(uint32_t n_max, uint64_t trials, uint64_t seed);

struct StableCycle {
    uint64_t length;
    bool stable;  // preimage at every level r <= N is a single doubled cycle
};
struct SettledTruncation {
    uint32_t level;      // n
    uint32_t lookahead;  // N = depth of the element
    std::vector<StableCycle> cycles;
    uint64_t stable_length_total;
    double ratio;  // stable_length_total / 2^n
};
SettledTruncation is_settled_truncated(const TreeAut& sigma, uint32_t n);

struct SubgroupEstimate {
    std::vector<uint64_t> level_orders;  // #G_m for m = 1..levels_done
    std::vector<double> dim_profile;     // log2 #G_m / (2^m - 1)
    bool truncated = false;              // closure budget hit before n_max
};
// Breadth-first closure of the generated group at each truncation level.
// Aborts a level beyond 2^20 elements and flags the profile as partial.
SubgroupEstimate hausdorff_profile(const std::vector<TreeAut>& generators, uint32_t n_max);

}  // namespace arbordyn::tree
