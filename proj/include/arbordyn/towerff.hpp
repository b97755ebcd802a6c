#pragma once

#include <cstdint>
#include <vector>

#include "arbordyn/fppoly.hpp"

namespace arbordyn::tower {

struct TowerLevel {
    uint32_t n = 0;
    int mu = 0;             // Moebius of n
    uint64_t deg_phi = 0;
    enum class Status { CertifiedMaximal, NonSquareCertified, Unknown } maximal = Status::Unknown;
    bool parity_certificate = false;  // odd degree settled it
    bool square_test_ran = false;
    bool phi_is_square = false;
    double seconds = 0.0;
};

// The critical-orbit sequence c_n of x^2 + t over F_p[t] and its primitive
// parts Phi_n; the level cache makes repeated queries cheap. Depth is capped
// at 20 (operand degree 2^19).
class Tower {
  public:
    explicit Tower(uint64_t p);

    uint64_t p() const { return p_; }
    // c_1 = t, c_n = c_{n-1}^2 + t; degree 2^(n-1).
    const FpPoly& cn(uint32_t n);
    // Phi_n = prod_{d|n} c_d^{mu(n/d)}, computed by exact division; a nonzero
    // remainder raises IntegrityError.
    FpPoly phi_n(uint32_t n);

    // Per-level maximality evidence: parity certificate first (free), square
    // test otherwise.
    std::vector<TowerLevel> maximality_squarefree_report(uint32_t N);

    // gcd(Phi_m, Phi_n) = 1 matrix for 1 <= m, n <= N.
    std::vector<std::vector<uint8_t>> pairwise_coprime_check(uint32_t N);

    // gcd(c_m, c_n) = c_gcd(m,n) and ord_t(c_n) = 1 for n <= N.
    bool rigid_divisibility_fp_t(uint32_t N);

  private:
    uint64_t p_;
    std::vector<FpPoly> c_;  // c_[k] = c_{k+1}
};

FpPoly cn(uint64_t p, uint32_t n);
FpPoly phi_n(uint64_t p, uint32_t n);

}  // namespace arbordyn::tower
