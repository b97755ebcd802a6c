#include "arbordyn/chebotarev.hpp"

#include <algorithm>

#include "arbordyn/errors.hpp"
#include "arbordyn/fppoly.hpp"
#include "arbordyn/parallel.hpp"

namespace arbordyn::cheb {

namespace {

// Brent cycle detection on x -> phi(x) mod p starting from x0. Returns
// (tail length mu, cycle length lambda).
template <class F>
std::pair<uint64_t, uint64_t> brent(const F& step, uint64_t x0) {
    uint64_t power = 1, lambda = 1;
    uint64_t tortoise = x0, hare = step(x0);
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = step(hare);
        ++lambda;
    }
    uint64_t mu = 0;
    tortoise = x0;
    hare = x0;
    for (uint64_t i = 0; i < lambda; ++i) hare = step(hare);
    while (tortoise != hare) {
        tortoise = step(tortoise);
        hare = step(hare);
        ++mu;
    }
    return {mu, lambda};
}

struct BlockPlan {
    std::vector<uint64_t> primes;
    std::vector<std::pair<size_t, size_t>> blocks;  // [begin, end) index ranges
};

BlockPlan plan_blocks(uint64_t X, size_t target_block = 2048) {
    BlockPlan plan;
    plan.primes = primes_up_to(X);
    size_t n = plan.primes.size();
    for (size_t b = 0; b < n; b += target_block)
        plan.blocks.emplace_back(b, std::min(n, b + target_block));
    return plan;
}

struct Counts {
    uint64_t hits = 0, total = 0, skipped = 0;
};

}  // namespace

bool orbit_divisor_hit(const zdyn::QuadraticMap& phi, const BigInt& a0, uint64_t p) {
    uint64_t start = mpz_fdiv_ui(a0.get_mpz_t(), p);
    auto step = [&](uint64_t x) { return phi.eval_mod(x, p); };
    uint64_t first = step(start);
    if (first == 0) return true;
    auto [mu, lambda] = brent(step, first);
    uint64_t x = first;
    for (uint64_t i = 0; i < mu + lambda; ++i) {
        if (x == 0) return true;
        x = step(x);
    }
    return x == 0;
}

DensityEstimate divisor_density(const zdyn::QuadraticMap& phi, const BigInt& a0, uint64_t X,
                                unsigned threads) {
    auto rows = divisor_density_decades(phi, a0, X, threads);
    return rows.back();
}

std::vector<DensityEstimate> divisor_density_decades(const zdyn::QuadraticMap& phi,
                                                     const BigInt& a0, uint64_t X,
                                                     unsigned threads) {
    BlockPlan plan = plan_blocks(X);
    std::function<std::vector<uint8_t>(size_t)> work = [&](size_t b) {
        auto [lo, hi] = plan.blocks[b];
        std::vector<uint8_t> flags(hi - lo);
        for (size_t i = lo; i < hi; ++i)
            flags[i - lo] = orbit_divisor_hit(phi, a0, plan.primes[i]) ? 1 : 0;
        return flags;
    };
    auto flags = parallel_blocks<std::vector<uint8_t>>(plan.blocks.size(), threads, work);

    std::vector<uint64_t> checkpoints;
    for (uint64_t d = 10; d < X; d *= 10) checkpoints.push_back(d);
    checkpoints.push_back(X);

    std::vector<DensityEstimate> out;
    uint64_t hits = 0, total = 0;
    size_t blk = 0, off = 0, idx = 0;
    for (uint64_t cp : checkpoints) {
        while (idx < plan.primes.size() && plan.primes[idx] <= cp) {
            hits += flags[blk][off];
            ++total;
            ++idx;
            if (++off == flags[blk].size()) {
                ++blk;
                off = 0;
            }
        }
        DensityEstimate d;
        d.hits = hits;
        d.total = total;
        d.bound = cp;
        out.push_back(d);
    }
    return out;
}

DensityEstimate root_proportion(const zdyn::QuadraticMap& phi, unsigned n, uint64_t X,
                                unsigned threads) {
    if (n < 1) throw std::invalid_argument("root_proportion: n >= 1 required");
    if (n > 20) throw BudgetError("root_proportion: level capped at 20 (degree 2^20)");
    BigInt disc = phi.disc();
    BlockPlan plan = plan_blocks(X, 512);
    std::function<Counts(size_t)> work = [&](size_t b) {
        Counts c;
        auto [lo, hi] = plan.blocks[b];
        for (size_t i = lo; i < hi; ++i) {
            uint64_t p = plan.primes[i];
            if (p == 2 || mpz_divisible_ui_p(phi.a.get_mpz_t(), p) ||
                mpz_divisible_ui_p(disc.get_mpz_t(), p)) {
                ++c.skipped;
                continue;
            }
            ++c.total;
            FpPoly f(p, {mpz_fdiv_ui(phi.c.get_mpz_t(), p), mpz_fdiv_ui(phi.b.get_mpz_t(), p),
                         mpz_fdiv_ui(phi.a.get_mpz_t(), p)});
            FpPoly fn = iterate(f, n);
            FpPoly xp = powmod(FpPoly::x(p), BigInt(static_cast<unsigned long>(p)), fn);
            FpPoly g = gcd(xp - FpPoly::x(p), fn);
            if (g.degree() >= 1) ++c.hits;
        }
        return c;
    };
    auto counts = parallel_blocks<Counts>(plan.blocks.size(), threads, work);
    DensityEstimate d;
    d.bound = X;
    for (const auto& c : counts) {
        d.hits += c.hits;
        d.total += c.total;
        d.skipped += c.skipped;
    }
    return d;
}

DensityEstimate periodicity_density(const zdyn::QuadraticMap& phi, const BigInt& alpha, uint64_t X,
                                    unsigned threads) {
    BlockPlan plan = plan_blocks(X);
    std::function<Counts(size_t)> work = [&](size_t b) {
        Counts c;
        auto [lo, hi] = plan.blocks[b];
        for (size_t i = lo; i < hi; ++i) {
            uint64_t p = plan.primes[i];
            ++c.total;
            uint64_t a = mpz_fdiv_ui(alpha.get_mpz_t(), p);
            auto step = [&](uint64_t x) { return phi.eval_mod(x, p); };
            auto [mu, lambda] = brent(step, a);
            if (mu == 0) ++c.hits;
        }
        return c;
    };
    auto counts = parallel_blocks<Counts>(plan.blocks.size(), threads, work);
    DensityEstimate d;
    d.bound = X;
    for (const auto& c : counts) {
        d.hits += c.hits;
        d.total += c.total;
    }
    return d;
}

}  // namespace arbordyn::cheb
