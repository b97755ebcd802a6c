// Python bindings for the main workbench operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arbordyn/arithgeo.hpp"
#include "arbordyn/chebotarev.hpp"
#include "arbordyn/fqdyn.hpp"
#include "arbordyn/parallel.hpp"
#include "arbordyn/towerff.hpp"
#include "arbordyn/treegrp.hpp"
#include "arbordyn/zdyn.hpp"

namespace py = pybind11;
using namespace arbordyn;

namespace {

py::object py_int(const BigInt& v) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::object py_fraction(const BigRat& v) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(py_int(BigInt(v.get_num())), py_int(BigInt(v.get_den())));
}

py::dict density_dict(const DensityEstimate& d) {
    py::dict out;
    out["bound"] = d.bound;
    out["hits"] = d.hits;
    out["total"] = d.total;
    out["skipped"] = d.skipped;
    out["value"] = d.value();
    out["stderr"] = d.stderr_();
    return out;
}

zdyn::QuadraticMap make_map(long a, long b, long c) { return zdyn::QuadraticMap(a, b, c); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "arithmetic-dynamics workbench core";

    m.def("primes_up_to", &primes_up_to, py::arg("x"));
    m.def("moebius", &moebius, py::arg("n"));

    m.def(
        "critical_orbit",
        [](long a, long b, long c, unsigned N) {
            auto orbit = zdyn::critical_orbit(make_map(a, b, c), N);
            py::list out;
            for (const auto& v : orbit) out.append(py_fraction(v));
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("depth"));

    m.def(
        "disc_square_class",
        [](long a, long b, long c, unsigned n) {
            auto d = zdyn::disc_square_class(make_map(a, b, c), n);
            return py::make_tuple(d.square, d.zero_disc);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n"));

    m.def(
        "maximality_certificate",
        [](long a, long b, long c, unsigned n) {
            auto r = zdyn::maximality_certificate(make_map(a, b, c), n);
            py::dict out;
            out["n"] = r.n;
            out["status"] = r.status == zdyn::MaximalityReport::Status::CertifiedMaximal
                                ? "CertifiedMaximal"
                                : "NoCertificate";
            out["witness_prime"] = r.witness_prime ? py_int(*r.witness_prime) : py::object(py::none());
            out["nonsquare_cofactor"] = r.nonsquare_cofactor;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n"));

    m.def(
        "stoll_condition", [](long k) { return zdyn::stoll_condition(BigInt(k)); }, py::arg("k"));

    m.def(
        "divisor_density",
        [](long a, long b, long c, long a0, uint64_t X, unsigned threads) {
            return density_dict(cheb::divisor_density(make_map(a, b, c), a0, X, threads));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("a0"), py::arg("bound"),
        py::arg("threads") = 1);

    m.def(
        "root_proportion",
        [](long a, long b, long c, unsigned n, uint64_t X, unsigned threads) {
            return density_dict(cheb::root_proportion(make_map(a, b, c), n, X, threads));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("n"), py::arg("bound"),
        py::arg("threads") = 1);

    m.def(
        "periodicity_density",
        [](long a, long b, long c, long alpha, uint64_t X, unsigned threads) {
            return density_dict(cheb::periodicity_density(make_map(a, b, c), alpha, X, threads));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("alpha"), py::arg("bound"),
        py::arg("threads") = 1);

    m.def(
        "per_density_profile",
        [](uint64_t p, std::vector<uint64_t> coeffs, uint32_t dmax) {
            auto rows = fqdyn::per_density_profile(FpPoly(p, coeffs), dmax);
            py::list out;
            for (auto& r : rows) {
                py::dict d;
                d["d"] = r.d;
                d["periodic"] = r.periodic;
                d["total"] = r.total;
                d["layer_fraction"] = r.layer_fraction;
                d["cumulative_delta"] = r.cumulative_delta;
                out.append(d);
            }
            return out;
        },
        py::arg("p"), py::arg("coeffs"), py::arg("dmax"));

    m.def(
        "settled_report",
        [](uint64_t p, uint32_t ext, std::vector<uint64_t> coeff_indices, uint32_t N,
           uint64_t seed) {
            static std::vector<std::unique_ptr<FqField>> fields;  // keep fields alive
            fields.push_back(std::make_unique<FqField>(p, ext));
            const FqField& F = *fields.back();
            std::vector<FqField::Elem> cs;
            for (uint64_t i : coeff_indices) cs.push_back(F.from_index(i));
            auto reports = fqdyn::settled_report(FqPoly(F, cs), N, seed);
            py::list out;
            for (auto& rep : reports) {
                py::dict d;
                d["n"] = rep.n;
                d["lookahead"] = rep.lookahead;
                d["ratio"] = rep.ratio;
                d["stable_total"] = rep.stable_degree_total;
                d["certified_total"] = rep.certified_degree_total;
                d["degenerate"] = rep.degenerate;
                py::list degs;
                for (auto& fi : rep.factors) degs.append(py::make_tuple(fi.degree, fi.multiplicity));
                d["factors"] = degs;
                out.append(d);
            }
            return out;
        },
        py::arg("p"), py::arg("ext"), py::arg("coeff_indices"), py::arg("depth"), py::arg("seed") = 1);

    m.def(
        "hyperbolic_membership",
        [](uint64_t p, uint32_t d, uint64_t c_index) {
            FqField F(p, d);
            return fqdyn::hyperbolic_membership(F, F.from_index(c_index));
        },
        py::arg("p"), py::arg("d"), py::arg("c_index"));

    m.def(
        "mandelbrot_In",
        [](uint64_t p, uint32_t n, uint32_t D) {
            auto lvl = fqdyn::mandelbrot_In(p, n, D);
            py::dict out;
            out["n"] = lvl.n;
            out["delta"] = lvl.delta;
            py::list rows;
            for (auto& r : lvl.rows) {
                py::dict d;
                d["d"] = r.d;
                d["members"] = r.members;
                d["total"] = r.total;
                d["layer_fraction"] = r.layer_fraction;
                rows.append(d);
            }
            out["rows"] = rows;
            return out;
        },
        py::arg("p"), py::arg("n"), py::arg("dmax"));

    m.def("hyperbolic_density_profile", &fqdyn::hyperbolic_density_profile, py::arg("p"),
          py::arg("n_max"), py::arg("dmax"));

    m.def(
        "tower_cn",
        [](uint64_t p, uint32_t n) { return tower::cn(p, n).coeffs(); }, py::arg("p"),
        py::arg("n"));
    m.def(
        "tower_phi",
        [](uint64_t p, uint32_t n) { return tower::phi_n(p, n).coeffs(); }, py::arg("p"),
        py::arg("n"));
    m.def(
        "tower_report",
        [](uint64_t p, uint32_t N) {
            tower::Tower T(p);
            auto rows = T.maximality_squarefree_report(N);
            py::list out;
            for (auto& lvl : rows) {
                py::dict d;
                d["n"] = lvl.n;
                d["mu"] = lvl.mu;
                d["deg"] = lvl.deg_phi;
                d["parity_certificate"] = lvl.parity_certificate;
                d["square_test_ran"] = lvl.square_test_ran;
                d["phi_is_square"] = lvl.phi_is_square;
                d["status"] = lvl.maximal == tower::TowerLevel::Status::CertifiedMaximal
                                  ? "CertifiedMaximal"
                              : lvl.maximal == tower::TowerLevel::Status::NonSquareCertified
                                  ? "NonSquareCertified"
                                  : "Unknown";
                out.append(d);
            }
            return out;
        },
        py::arg("p"), py::arg("depth"));

    m.def(
        "fix_proportion_exact",
        [](uint32_t n) { return py_fraction(tree::fix_proportion_exact(n)); }, py::arg("n"));

    m.def(
        "martingale_sim",
        [](uint32_t n_max, uint64_t trials, uint64_t seed) {
            auto stats = tree::martingale_sim(n_max, trials, seed);
            py::list levels;
            for (auto& lvl : stats.levels) {
                py::dict d;
                d["n"] = lvl.n;
                d["mean_fixed"] = lvl.mean_fixed;
                d["p_positive"] = lvl.p_positive;
                d["frac_constant_from_here"] = lvl.frac_constant_from_here;
                levels.append(d);
            }
            py::dict out;
            out["levels"] = levels;
            out["trials"] = stats.trials;
            return out;
        },
        py::arg("n_max"), py::arg("trials"), py::arg("seed") = 1);

    m.def(
        "adding_machine_bits",
        [](uint32_t depth) { return tree::TreeAut::adding_machine(depth).bits(); },
        py::arg("depth"));

    m.def(
        "hausdorff_adding_machine",
        [](uint32_t depth) {
            auto est = tree::hausdorff_profile({tree::TreeAut::adding_machine(depth)}, depth);
            py::dict out;
            out["level_orders"] = est.level_orders;
            out["dim_profile"] = est.dim_profile;
            out["truncated"] = est.truncated;
            return out;
        },
        py::arg("depth"));

    m.def(
        "point_order_mod_p",
        [](std::vector<long> curve, long x, long y, uint64_t p) {
            if (curve.size() != 5) throw std::invalid_argument("curve needs 5 coefficients");
            ec::WeierstrassCurve E{curve[0], curve[1], curve[2], curve[3], curve[4]};
            auto Ep = ec::reduce(E, p);
            ec::PointFp P{static_cast<uint64_t>((x % static_cast<long>(p) + static_cast<long>(p)) %
                                                static_cast<long>(p)),
                          static_cast<uint64_t>((y % static_cast<long>(p) + static_cast<long>(p)) %
                                                static_cast<long>(p)),
                          false};
            if (!ec::on_curve(Ep, P)) throw std::invalid_argument("point not on the curve mod p");
            return ec::point_order(Ep, P);
        },
        py::arg("curve"), py::arg("x"), py::arg("y"), py::arg("p"));

    m.def(
        "odd_order_density",
        [](std::vector<long> curve, long x, long y, uint64_t X, unsigned threads) {
            if (curve.size() != 5) throw std::invalid_argument("curve needs 5 coefficients");
            ec::WeierstrassCurve E{curve[0], curve[1], curve[2], curve[3], curve[4]};
            ec::RationalPoint alpha{BigRat(x), BigRat(y), false};
            return density_dict(ec::odd_order_density(E, alpha, X, threads));
        },
        py::arg("curve"), py::arg("x"), py::arg("y"), py::arg("bound"), py::arg("threads") = 1);

    m.def(
        "kummer_integral_mc",
        [](uint64_t ell, uint32_t depth, uint64_t samples, uint64_t seed, unsigned threads) {
            auto est = ec::kummer_integral_mc(ell, depth, samples, seed, threads);
            py::dict out;
            out["value"] = est.value;
            out["stderr"] = est.stderr_;
            out["samples"] = est.samples;
            return out;
        },
        py::arg("ell"), py::arg("depth"), py::arg("samples"), py::arg("seed") = 1,
        py::arg("threads") = 1);

    m.def(
        "closed_form_density",
        [](uint64_t ell) { return py_fraction(ec::closed_form_density(ell)); }, py::arg("ell"));

    m.def(
        "mod2_surjectivity_check",
        [](std::vector<long> curve) {
            if (curve.size() != 5) throw std::invalid_argument("curve needs 5 coefficients");
            ec::WeierstrassCurve E{curve[0], curve[1], curve[2], curve[3], curve[4]};
            return ec::mod2_surjectivity_check(E);
        },
        py::arg("curve"));
}
