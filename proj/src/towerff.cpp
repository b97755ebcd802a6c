#include "arbordyn/towerff.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "arbordyn/errors.hpp"

namespace arbordyn::tower {

namespace {
constexpr uint32_t kDepthBudget = 20;
}

Tower::Tower(uint64_t p) : p_(p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("Tower: p must be an odd prime");
    c_.push_back(FpPoly::x(p));
}

const FpPoly& Tower::cn(uint32_t n) {
    if (n < 1) throw std::invalid_argument("Tower::cn: n >= 1 required");
    if (n > kDepthBudget) throw BudgetError("Tower::cn: depth budget is 20");
    while (c_.size() < n) {
        const FpPoly& prev = c_.back();
        c_.push_back(prev * prev + FpPoly::x(p_));
    }
    return c_[n - 1];
}

FpPoly Tower::phi_n(uint32_t n) {
    cn(n);
    FpPoly num = FpPoly::constant(p_, 1);
    FpPoly den = FpPoly::constant(p_, 1);
    for (uint32_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int mu = moebius(n / d);
        if (mu == 1)
            num = num * c_[d - 1];
        else if (mu == -1)
            den = den * c_[d - 1];
    }
    return exact_div(num, den);  // integrality is a theorem; remainder aborts
}

std::vector<TowerLevel> Tower::maximality_squarefree_report(uint32_t N) {
    std::vector<TowerLevel> out;
    for (uint32_t n = 1; n <= N; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        TowerLevel lvl;
        lvl.n = n;
        lvl.mu = moebius(n);
        FpPoly phi = phi_n(n);
        lvl.deg_phi = static_cast<uint64_t>(phi.degree());
        if (lvl.deg_phi % 2 == 1) {
            lvl.parity_certificate = true;
            lvl.maximal = TowerLevel::Status::CertifiedMaximal;
        } else {
            lvl.square_test_ran = true;
            lvl.phi_is_square = is_square_poly(phi);
            lvl.maximal = lvl.phi_is_square ? TowerLevel::Status::Unknown
                                            : TowerLevel::Status::NonSquareCertified;
        }
        lvl.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(lvl);
    }
    return out;
}

std::vector<std::vector<uint8_t>> Tower::pairwise_coprime_check(uint32_t N) {
    if (N > 14) throw BudgetError("pairwise_coprime_check: N <= 14");
    std::vector<FpPoly> phis;
    for (uint32_t n = 1; n <= N; ++n) phis.push_back(phi_n(n));
    std::vector<std::vector<uint8_t>> mat(N, std::vector<uint8_t>(N, 1));
    for (uint32_t i = 0; i < N; ++i)
        for (uint32_t j = i + 1; j < N; ++j) {
            bool coprime = gcd(phis[i], phis[j]).degree() == 0;
            mat[i][j] = mat[j][i] = coprime ? 1 : 0;
        }
    return mat;
}

bool Tower::rigid_divisibility_fp_t(uint32_t N) {
    if (N > 14) throw BudgetError("rigid_divisibility_fp_t: N <= 14");
    for (uint32_t n = 1; n <= N; ++n) {
        auto v = cn(n).ord_t();
        if (!v || *v != 1) return false;
    }
    for (uint32_t m = 1; m <= N; ++m)
        for (uint32_t n = 1; n <= N; ++n) {
            FpPoly g = gcd(cn(m), cn(n));
            FpPoly expect = cn(std::gcd(m, n)).monic();
            if (!(g == expect)) return false;
        }
    return true;
}

FpPoly cn(uint64_t p, uint32_t n) {
    Tower t(p);
    return t.cn(n);
}

FpPoly phi_n(uint64_t p, uint32_t n) {
    Tower t(p);
    return t.phi_n(n);
}

}  // namespace arbordyn::tower
