#pragma once

#include <cmath>
#include <cstdint>

namespace arbordyn {

// Hit counts over a sampled prime range. Primes of bad reduction are
// excluded from total and reported in skipped.
struct DensityEstimate {
    uint64_t hits = 0;
    uint64_t total = 0;
    uint64_t skipped = 0;
    uint64_t bound = 0;

    double value() const { return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total); }
    double stderr_() const {
        if (total == 0) return 0.0;
        double v = value();
        return std::sqrt(v * (1.0 - v) / static_cast<double>(total));
    }
};

}  // namespace arbordyn
