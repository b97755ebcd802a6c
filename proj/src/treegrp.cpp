#include "arbordyn/treegrp.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "arbordyn/errors.hpp"
#include "arbordyn/parallel.hpp"

namespace arbordyn::tree {

namespace {

size_t portrait_size(uint32_t depth) { return (size_t(1) << depth) - 1; }

void check_depth(uint32_t depth) {
    if (depth < 1 || depth > 28) throw std::invalid_argument("TreeAut: depth must be in [1, 28]");
}

}  // namespace

TreeAut TreeAut::identity(uint32_t depth) {
    check_depth(depth);
    return TreeAut(depth, std::vector<uint8_t>(portrait_size(depth), 0));
}

TreeAut TreeAut::from_bits(uint32_t depth, std::vector<uint8_t> bits) {
    check_depth(depth);
    if (bits.size() != portrait_size(depth))
        throw std::invalid_argument("TreeAut: portrait must have 2^depth - 1 bits");
    for (auto& b : bits) b = b ? 1 : 0;
    return TreeAut(depth, std::move(bits));
}

TreeAut TreeAut::haar_sample(uint32_t depth, uint64_t seed) {
    check_depth(depth);
    std::mt19937_64 rng(seed);
    std::vector<uint8_t> bits(portrait_size(depth));
    uint64_t word = 0;
    int avail = 0;
    for (auto& b : bits) {
        if (avail == 0) {
            word = rng();
            avail = 64;
        }
        b = word & 1;
        word >>= 1;
        --avail;
    }
    return TreeAut(depth, std::move(bits));
}

TreeAut TreeAut::adding_machine(uint32_t depth) {
    check_depth(depth);
    std::vector<uint8_t> bits(portrait_size(depth), 0);
    // Swap along the all-ones spine: the carry path of the binary odometer.
    size_t node = 0;
    for (uint32_t level = 0; level < depth; ++level) {
        bits[node] = 1;
        node = 2 * node + 2;  // descend to child "1"
    }
    return TreeAut(depth, std::move(bits));
}

TreeAut TreeAut::truncated(uint32_t m) const {
    if (m < 1 || m > depth_) throw std::invalid_argument("TreeAut::truncated: bad depth");
    return TreeAut(m, std::vector<uint8_t>(bits_.begin(), bits_.begin() + static_cast<long>(portrait_size(m))));
}

uint64_t TreeAut::apply_leaf(uint64_t leaf) const {
    uint64_t out = 0;
    size_t node = 0;
    for (uint32_t j = 0; j < depth_; ++j) {
        uint64_t u = (leaf >> (depth_ - 1 - j)) & 1;
        uint64_t w = u ^ bits_[node];
        out = (out << 1) | w;
        node = 2 * node + 1 + u;  // descend along the source path
    }
    return out;
}

uint64_t TreeAut::fixed_leaves() const { return fixed_per_level().back(); }

std::vector<uint64_t> TreeAut::fixed_per_level() const {
    // A vertex is fixed iff every swap bit along its path is 0; the fixed
    // vertices form the subtree reachable through 0-bits.
    std::vector<uint64_t> out(depth_);
    std::vector<size_t> frontier{0};
    for (uint32_t level = 0; level < depth_; ++level) {
        std::vector<size_t> next;
        uint64_t count = 0;
        for (size_t node : frontier) {
            if (bits_[node]) continue;
            count += 2;
            if (level + 1 < depth_) {
                next.push_back(2 * node + 1);
                next.push_back(2 * node + 2);
            }
        }
        // count holds fixed vertices at depth level+1... except those whose
        // own subtree bits matter only deeper; both children of an unswapped
        // fixed vertex are fixed.
        out[level] = count;
        frontier = std::move(next);
    }
    return out;
}

std::vector<uint64_t> TreeAut::level_permutation(uint32_t m) const {
    if (m < 1 || m > depth_) throw std::invalid_argument("level_permutation: bad level");
    std::vector<uint64_t> perm(size_t(1) << m);
    // img of each vertex, computed level by level
    std::vector<uint64_t> img{0};  // image of the root path prefix (empty)
    for (uint32_t level = 0; level < m; ++level) {
        std::vector<uint64_t> next(size_t(1) << (level + 1));
        for (uint64_t v = 0; v < (uint64_t(1) << level); ++v) {
            size_t node = (size_t(1) << level) - 1 + v;
            uint8_t s = bits_[node];
            for (uint64_t b = 0; b < 2; ++b) next[(v << 1) | b] = (img[v] << 1) | (b ^ s);
        }
        img = std::move(next);
    }
    for (uint64_t v = 0; v < perm.size(); ++v) perm[v] = img[v];
    return perm;
}

TreeAut compose(const TreeAut& sigma, const TreeAut& tau) {
    if (sigma.depth_ != tau.depth_) throw std::invalid_argument("compose: depth mismatch");
    uint32_t depth = sigma.depth_;
    std::vector<uint8_t> bits(portrait_size(depth));
    // bit_(sigma tau)(u) = bit_tau(u) xor bit_sigma(tau(u)); track tau's
    // vertex images level by level.
    std::vector<uint64_t> img{0};
    for (uint32_t level = 0; level < depth; ++level) {
        uint64_t base = (uint64_t(1) << level) - 1;
        std::vector<uint64_t> next(size_t(1) << (level + 1));
        for (uint64_t v = 0; v < (uint64_t(1) << level); ++v) {
            size_t node = base + v;
            size_t tnode = base + img[v];
            bits[node] = tau.bits_[node] ^ sigma.bits_[tnode];
            uint8_t s = tau.bits_[node];
            if (level + 1 < depth)
                for (uint64_t b = 0; b < 2; ++b) next[(v << 1) | b] = (img[v] << 1) | (b ^ s);
        }
        if (level + 1 < depth) img = std::move(next);
    }
    return TreeAut::from_bits(depth, std::move(bits));
}

TreeAut TreeAut::inverse() const {
    std::vector<uint8_t> bits(portrait_size(depth_));
    // bit_(sigma^-1)(sigma(u)) = bit_sigma(u)
    std::vector<uint64_t> img{0};
    for (uint32_t level = 0; level < depth_; ++level) {
        uint64_t base = (uint64_t(1) << level) - 1;
        std::vector<uint64_t> next(size_t(1) << (level + 1));
        for (uint64_t v = 0; v < (uint64_t(1) << level); ++v) {
            size_t node = base + v;
            bits[base + img[v]] = bits_[node];
            uint8_t s = bits_[node];
            if (level + 1 < depth_)
                for (uint64_t b = 0; b < 2; ++b) next[(v << 1) | b] = (img[v] << 1) | (b ^ s);
        }
        if (level + 1 < depth_) img = std::move(next);
    }
    return TreeAut(depth_, std::move(bits));
}

BigRat fix_proportion_exact(uint32_t n) {
    if (n < 1) throw std::invalid_argument("fix_proportion_exact: n >= 1");
    BigRat q(1, 2);
    for (uint32_t k = 1; k < n; ++k) {
        BigRat miss = 1 - q;
        q = (1 - miss * miss) / 2;
        q.canonicalize();
    }
    return q;
}

MartingaleStats martingale_sim(uint32_t n_max, uint64_t trials, uint64_t seed) {
    if (n_max < 1 || n_max > 40) throw std::invalid_argument("martingale_sim: n_max in [1, 40]");
    if (trials < 1) throw std::invalid_argument("martingale_sim: trials >= 1");

    std::vector<double> sum_x(n_max + 1, 0.0);
    std::vector<uint64_t> positive(n_max + 1, 0);
    std::vector<uint64_t> constant_from(n_max + 1, 0);
    // transitions keyed by (level, value) for small values
    constexpr uint64_t kMaxTracked = 8;
    std::map<std::pair<uint32_t, uint64_t>, MartingaleTransition> trans;

    std::vector<uint64_t> xs(n_max + 1);
    for (uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(mix_seed(seed, trial));
        // Lazily grown fixed-vertex frontier: only bits at fixed vertices are
        // drawn, in deterministic per-level order.
        xs[0] = 1;
        uint64_t alive = 1;  // fixed vertices at current level
        for (uint32_t level = 1; level <= n_max; ++level) {
            uint64_t next_alive = 0;
            for (uint64_t i = 0; i < alive; ++i) {
                uint8_t bit = static_cast<uint8_t>(rng() & 1);
                if (!bit) next_alive += 2;
            }
            // Of the doubled vertices, each is fixed; their bits are drawn at
            // the next level. X_level = next_alive (fixed vertices at depth
            // `level` as leaves of the truncation).
            xs[level] = next_alive;
            alive = next_alive;
        }
        for (uint32_t n = 1; n <= n_max; ++n) {
            sum_x[n] += static_cast<double>(xs[n]);
            if (xs[n] > 0) ++positive[n];
        }
        // constant-from-k statistics
        uint32_t k = n_max;
        while (k > 1 && xs[k - 1] == xs[n_max]) --k;
        for (uint32_t m = k; m <= n_max; ++m) ++constant_from[m];
        for (uint32_t n = 1; n < n_max; ++n) {
            if (xs[n] > kMaxTracked) continue;
            auto key = std::make_pair(n, xs[n]);
            auto& t = trans[key];
            t.n = n;
            t.t = xs[n];
            ++t.count;
            if (xs[n + 1] == xs[n]) ++t.stayed;
            t.mean_next += static_cast<double>(xs[n + 1]);
        }
    }

    MartingaleStats stats;
    stats.trials = trials;
    for (uint32_t n = 1; n <= n_max; ++n) {
        MartingaleLevel lvl;
        lvl.n = n;
        lvl.mean_fixed = sum_x[n] / static_cast<double>(trials);
        lvl.p_positive = static_cast<double>(positive[n]) / static_cast<double>(trials);
        lvl.frac_constant_from_here =
            static_cast<double>(constant_from[n]) / static_cast<double>(trials);
        stats.levels.push_back(lvl);
    }
    for (auto& [k, t] : trans) {
        MartingaleTransition out = t;
        out.mean_next = t.count ? t.mean_next / static_cast<double>(t.count) : 0.0;
        stats.transitions.push_back(out);
    }
    return stats;
}

SettledTruncation is_settled_truncated(const TreeAut& sigma, uint32_t n) {
    uint32_t N = sigma.depth();
    if (n >= N) throw std::invalid_argument("is_settled_truncated: need n < depth");
    if (N > 18) throw BudgetError("is_settled_truncated: lookahead depth capped at 18");
    SettledTruncation out;
    out.level = n;
    out.lookahead = N;
    out.stable_length_total = 0;

    auto perm_n = sigma.level_permutation(n);
    std::vector<std::vector<uint64_t>> perms;  // levels n+1..N
    for (uint32_t r = n + 1; r <= N; ++r) perms.push_back(sigma.level_permutation(r));

    std::vector<uint8_t> seen(perm_n.size(), 0);
    for (uint64_t start = 0; start < perm_n.size(); ++start) {
        if (seen[start]) continue;
        uint64_t len = 0, v = start;
        do {
            seen[v] = 1;
            v = perm_n[v];
            ++len;
        } while (v != start);

        bool stable = true;
        for (uint32_t r = n + 1; r <= N && stable; ++r) {
            const auto& pr = perms[r - n - 1];
            // One vertex above the cycle; its orbit must have length
            // len * 2^(r-n), i.e. cover the whole preimage of the cycle.
            uint64_t above = start << (r - n);
            uint64_t expect = len << (r - n);
            uint64_t w = above, l = 0;
            do {
                w = pr[w];
                ++l;
                if (l > expect) break;
            } while (w != above);
            stable = (l == expect);
        }
        out.cycles.push_back({len, stable});
        if (stable) out.stable_length_total += len;
    }
    out.ratio = static_cast<double>(out.stable_length_total) / static_cast<double>(uint64_t(1) << n);
    return out;
}

SubgroupEstimate hausdorff_profile(const std::vector<TreeAut>& generators, uint32_t n_max) {
    if (n_max < 1 || n_max > 5) throw std::invalid_argument("hausdorff_profile: n_max in [1, 5]");
    constexpr size_t kClosureBudget = size_t(1) << 20;
    SubgroupEstimate est;
    for (uint32_t m = 1; m <= n_max; ++m) {
        std::vector<TreeAut> gens;
        for (const auto& g : generators) {
            if (g.depth() < m) throw std::invalid_argument("hausdorff_profile: generator shallower than level");
            gens.push_back(g.truncated(m));
        }
        auto key_of = [](const TreeAut& a) {
            return std::string(a.bits().begin(), a.bits().end());
        };
        std::unordered_set<std::string> seen;
        std::vector<TreeAut> frontier{TreeAut::identity(m)};
        seen.insert(key_of(frontier[0]));
        bool blown = false;
        while (!frontier.empty() && !blown) {
            std::vector<TreeAut> next;
            for (const auto& el : frontier) {
                for (const auto& g : gens) {
                    TreeAut prod = compose(g, el);
                    auto key = key_of(prod);
                    if (seen.insert(key).second) {
                        next.push_back(std::move(prod));
                        if (seen.size() > kClosureBudget) {
                            blown = true;
                            break;
                        }
                    }
                }
                if (blown) break;
            }
            frontier = std::move(next);
        }
        if (blown) {
            est.truncated = true;
            break;
        }
        est.level_orders.push_back(seen.size());
        double dim = std::log2(static_cast<double>(seen.size())) /
                     static_cast<double>((uint64_t(1) << m) - 1);
        est.dim_profile.push_back(dim);
    }
    return est;
}

}  // namespace arbordyn::tree
