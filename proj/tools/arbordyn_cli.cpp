// Command-line workbench: critical-orbit certificates, prime-density
// experiments, finite-field dynamics, tree statistics, and elliptic-curve
// reduction orders. Every run is determined by its flags (seeds included);
// progress goes to stderr, data to stdout or --out.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "arbordyn/arithgeo.hpp"
#include "arbordyn/chebotarev.hpp"
#include "arbordyn/errors.hpp"
#include "arbordyn/fqdyn.hpp"
#include "arbordyn/parallel.hpp"
#include "arbordyn/towerff.hpp"
#include "arbordyn/treegrp.hpp"
#include "arbordyn/zdyn.hpp"

using json = nlohmann::ordered_json;
using namespace arbordyn;

namespace {

struct Output {
    std::vector<std::string> columns;
    std::vector<json> rows;
};

std::string format_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.10g", v.get<double>());
        return buf;
    }
    return v.dump();
}

void emit(const Output& out, const std::string& format, const std::string& path) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output path " + path);
        os = &file;
    }
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : out.rows) arr.push_back(r);
        *os << arr.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < out.columns.size(); ++i)
            *os << out.columns[i] << (i + 1 < out.columns.size() ? "," : "");
        *os << "\n";
        for (const auto& r : out.rows) {
            for (size_t i = 0; i < out.columns.size(); ++i) {
                const auto& key = out.columns[i];
                if (r.contains(key)) *os << format_cell(r.at(key));
                *os << (i + 1 < out.columns.size() ? "," : "");
            }
            *os << "\n";
        }
    }
}

std::vector<BigInt> parse_ints(const std::string& s, size_t expect, const char* what) {
    std::vector<BigInt> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (cur.empty()) throw CLI::ValidationError(what, "empty component in " + s);
            out.emplace_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (out.size() != expect)
        throw CLI::ValidationError(what, "expected " + std::to_string(expect) + " comma-separated integers");
    return out;
}

zdyn::QuadraticMap parse_map(const std::string& s) {
    auto v = parse_ints(s, 3, "--map");
    return zdyn::QuadraticMap(v[0], v[1], v[2]);
}

ec::WeierstrassCurve parse_curve(const std::string& s) {
    auto v = parse_ints(s, 5, "--curve");
    return ec::WeierstrassCurve{v[0], v[1], v[2], v[3], v[4]};
}

std::vector<uint64_t> parse_u64s(const std::string& s) {
    std::vector<uint64_t> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(std::stoull(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

json density_row(const DensityEstimate& d) {
    json r;
    r["bound"] = d.bound;
    r["hits"] = d.hits;
    r["total"] = d.total;
    r["skipped"] = d.skipped;
    r["value"] = d.value();
    r["stderr"] = d.stderr_();
    return r;
}

const char* mark_name(fqdyn::StableMark m) {
    switch (m) {
        case fqdyn::StableMark::Certified: return "C";
        case fqdyn::StableMark::Heuristic: return "H";
        default: return "-";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arbordyn: arithmetic-dynamics workbench"};
    app.require_subcommand(1);

    std::string emit_format = "csv", out_path;
    unsigned threads = default_threads();
    app.add_option("--emit", emit_format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--threads", threads, "worker threads")->envname("ARBORDYN_THREADS");

    std::string map_str = "1,0,3", curve_str = "0,0,1,-1,0", point_str = "0,0", start_str = "0";
    std::string fq_map_str = "1,0,1", gen_preset = "adding";
    std::string a0_str = "2", alpha_str = "0";
    uint64_t bound = 1000000, ell = 2, samples = 2000000, seed = 1, trials = 100000;
    unsigned depth = 8, level = 1, dmax = 3, ext = 1, profile_n = 0;
    uint64_t p = 3;

    auto* orbit = app.add_subcommand("orbit", "exact critical orbit of a quadratic map");
    orbit->add_option("--map", map_str, "a,b,c for a x^2 + b x + c");
    orbit->add_option("--depth", depth, "levels");

    auto* disc = app.add_subcommand("disc", "square classes of iterate discriminants");
    disc->add_option("--map", map_str, "a,b,c");
    disc->add_option("--depth", depth, "levels");

    auto* maximality = app.add_subcommand("maximality", "per-level maximality certificates");
    maximality->add_option("--map", map_str, "a,b,c");
    maximality->add_option("--depth", depth, "levels");

    auto* wief = app.add_subcommand("wieferich", "dynamical Wieferich certificate scan");
    wief->add_option("--map", map_str, "a,b,c");
    wief->add_option("--start", start_str, "orbit start b (2b integral, e.g. 1/2)");
    wief->add_option("--depth", depth, "levels");

    auto* dd = app.add_subcommand("divisor-density", "primes dividing some orbit term");
    dd->add_option("--map", map_str, "a,b,c");
    dd->add_option("--a0", a0_str, "orbit start");
    dd->add_option("--bound", bound, "prime bound X");

    auto* rd = app.add_subcommand("root-density", "primes mod which phi^n has a root");
    rd->add_option("--map", map_str, "a,b,c");
    rd->add_option("--level", level, "iterate level n");
    rd->add_option("--bound", bound, "prime bound X");

    auto* pd = app.add_subcommand("periodicity", "primes mod which alpha is periodic");
    pd->add_option("--map", map_str, "a,b,c");
    pd->add_option("--alpha", alpha_str, "base point");
    pd->add_option("--bound", bound, "prime bound X");

    auto* perd = app.add_subcommand("per-density", "density profile of periodic points over F_p-bar");
    perd->add_option("--p", p, "characteristic");
    perd->add_option("--map", fq_map_str, "coefficients c0,c1,c2 over F_p");
    perd->add_option("--dmax", dmax, "truncation degree");

    auto* settled = app.add_subcommand("settled", "settledness report for a quadratic over F_q");
    settled->add_option("--p", p, "characteristic");
    settled->add_option("--ext", ext, "extension degree d (q = p^d)");
    settled->add_option("--map", fq_map_str, "coefficient element indices c0,c1,c2");
    settled->add_option("--depth", depth, "levels N");
    settled->add_option("--seed", seed, "factorization seed");

    auto* markov = app.add_subcommand("markov", "factor transition counts between levels");
    markov->add_option("--p", p, "characteristic");
    markov->add_option("--ext", ext, "extension degree");
    markov->add_option("--map", fq_map_str, "coefficient element indices");
    markov->add_option("--depth", depth, "levels N");
    markov->add_option("--seed", seed, "factorization seed");

    auto* mandel = app.add_subcommand("mandelbrot", "I_n approximants of the hyperbolic set");
    mandel->add_option("--p", p, "characteristic");
    mandel->add_option("--level", level, "n");
    mandel->add_option("--dmax", dmax, "truncation degree");
    mandel->add_option("--profile", profile_n, "emit delta(I_n) for n = 0..profile instead");

    auto* tower = app.add_subcommand("tower-phi", "primitive parts of the x^2 + t tower");
    tower->add_option("--p", p, "odd characteristic");
    tower->add_option("--depth", depth, "levels");

    auto* treesim = app.add_subcommand("tree-sim", "Haar fixed-point process at successive levels");
    treesim->add_option("--depth", depth, "tree depth");
    treesim->add_option("--trials", trials, "Monte Carlo trials");
    treesim->add_option("--seed", seed, "master seed");

    auto* haus = app.add_subcommand("hausdorff", "level orders and dimension profile of a subgroup");
    haus->add_option("--depth", depth, "profile depth (<= 5)");
    haus->add_option("--preset", gen_preset, "generators: adding | full | empty")
        ->check(CLI::IsMember({"adding", "full", "empty"}));

    auto* ec_odd = app.add_subcommand("ec-odd-order", "density of odd reduction order");
    ec_odd->add_option("--curve", curve_str, "a1,a2,a3,a4,a6");
    ec_odd->add_option("--point", point_str, "x,y");
    ec_odd->add_option("--bound", bound, "prime bound X");

    auto* ladic = app.add_subcommand("ladic-integral", "Monte Carlo matrix integral");
    ladic->add_option("--ell", ell, "prime ell");
    ladic->add_option("--depth", depth, "truncation depth k")->default_val(12);
    ladic->add_option("--samples", samples, "sample count");
    ladic->add_option("--seed", seed, "master seed");

    auto* closed = app.add_subcommand("closed-form", "exact odd-order density formula");
    closed->add_option("--ell", ell, "prime ell");

    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Output out;
        if (*orbit) {
            auto phi = parse_map(map_str);
            auto orb = zdyn::critical_orbit(phi, depth);
            out.columns = {"n", "value"};
            for (unsigned n = 1; n <= depth; ++n) {
                json r;
                r["n"] = n;
                r["value"] = orb[n - 1].get_str();
                out.rows.push_back(r);
            }
        } else if (*disc) {
            auto phi = parse_map(map_str);
            out.columns = {"n", "disc_is_square", "zero_disc"};
            for (unsigned n = 1; n <= depth; ++n) {
                auto d = zdyn::disc_square_class(phi, n);
                json r;
                r["n"] = n;
                r["disc_is_square"] = d.square;
                r["zero_disc"] = d.zero_disc;
                out.rows.push_back(r);
            }
        } else if (*maximality) {
            auto phi = parse_map(map_str);
            out.columns = {"n", "status", "witness", "cofactor_digits"};
            for (unsigned n = 2; n <= depth; ++n) {
                auto rep = zdyn::maximality_certificate(phi, n);
                json r;
                r["n"] = n;
                r["status"] = rep.status == zdyn::MaximalityReport::Status::CertifiedMaximal
                                  ? "CertifiedMaximal"
                                  : "NoCertificate";
                r["witness"] = rep.witness_prime ? "p=" + rep.witness_prime->get_str()
                               : rep.nonsquare_cofactor ? "nonsquare-cofactor"
                                                        : "";
                r["cofactor_digits"] =
                    rep.cofactor == 0 ? 0 : mpz_sizeinbase(rep.cofactor.get_mpz_t(), 10);
                out.rows.push_back(r);
                std::cerr << "maximality: level " << n << " done\n";
            }
        } else if (*wief) {
            auto phi = parse_map(map_str);
            BigRat b(start_str);
            b.canonicalize();
            auto rows = zdyn::wieferich_scan(phi, b, depth);
            out.columns = {"n", "status", "prime"};
            for (auto& row : rows) {
                json r;
                r["n"] = row.n;
                r["status"] = row.status == zdyn::WieferichStatus::Exists ? "Exists"
                              : row.status == zdyn::WieferichStatus::ExistsNonconstructive
                                  ? "ExistsNonconstructive"
                                  : "NotFound";
                r["prime"] = row.prime ? row.prime->get_str() : "";
                out.rows.push_back(r);
            }
        } else if (*dd) {
            auto phi = parse_map(map_str);
            auto rows = cheb::divisor_density_decades(phi, BigInt(a0_str), bound, threads);
            out.columns = {"bound", "hits", "total", "value", "stderr"};
            for (auto& d : rows) {
                json r = density_row(d);
                r.erase("skipped");
                out.rows.push_back(r);
            }
        } else if (*rd) {
            auto phi = parse_map(map_str);
            auto d = cheb::root_proportion(phi, level, bound, threads);
            out.columns = {"bound", "level", "hits", "total", "skipped", "value", "stderr"};
            json r = density_row(d);
            r["level"] = level;
            out.rows.push_back(r);
        } else if (*pd) {
            auto phi = parse_map(map_str);
            auto d = cheb::periodicity_density(phi, BigInt(alpha_str), bound, threads);
            out.columns = {"bound", "hits", "total", "value", "stderr"};
            json r = density_row(d);
            r.erase("skipped");
            out.rows.push_back(r);
        } else if (*perd) {
            auto coeffs = parse_u64s(fq_map_str);
            FpPoly f(p, coeffs);
            auto rows = fqdyn::per_density_profile(f, dmax);
            out.columns = {"d", "periodic", "total", "layer_fraction", "cumulative_delta"};
            for (auto& row : rows) {
                json r;
                r["d"] = row.d;
                r["periodic"] = row.periodic;
                r["total"] = row.total;
                r["layer_fraction"] = row.layer_fraction;
                r["cumulative_delta"] = row.cumulative_delta;
                out.rows.push_back(r);
            }
        } else if (*settled) {
            FqField F(p, ext);
            auto idxs = parse_u64s(fq_map_str);
            std::vector<FqField::Elem> cs;
            for (uint64_t i : idxs) cs.push_back(F.from_index(i));
            FqPoly f(F, cs);
            auto reports = fqdyn::settled_report(f, depth, seed);
            out.columns = {"n", "lookahead", "ratio", "stable_total", "certified_total",
                           "degenerate", "factors"};
            for (auto& rep : reports) {
                json r;
                r["n"] = rep.n;
                r["lookahead"] = rep.lookahead;
                r["ratio"] = rep.ratio;
                r["stable_total"] = rep.stable_degree_total;
                r["certified_total"] = rep.certified_degree_total;
                r["degenerate"] = rep.degenerate;
                std::string fs;
                for (auto& fi : rep.factors) {
                    if (!fs.empty()) fs += " ";
                    fs += std::to_string(fi.degree) + "^" + std::to_string(fi.multiplicity) + "(" +
                          mark_name(fi.mark) + ")";
                }
                r["factors"] = fs;
                out.rows.push_back(r);
                std::cerr << "settled: level " << rep.n << " done\n";
            }
        } else if (*markov) {
            FqField F(p, ext);
            auto idxs = parse_u64s(fq_map_str);
            std::vector<FqField::Elem> cs;
            for (uint64_t i : idxs) cs.push_back(F.from_index(i));
            FqPoly f(F, cs);
            auto rows = fqdyn::markov_transition_estimate(f, depth, seed);
            out.columns = {"n", "degree", "inert", "split", "ramified"};
            for (auto& row : rows) {
                json r;
                r["n"] = row.n;
                r["degree"] = row.degree;
                r["inert"] = row.inert;
                r["split"] = row.split;
                r["ramified"] = row.ramified;
                out.rows.push_back(r);
            }
        } else if (*mandel) {
            if (mandel->count("--profile")) {
                auto prof = fqdyn::hyperbolic_density_profile(p, profile_n, dmax);
                out.columns = {"n", "delta"};
                for (size_t n = 0; n < prof.size(); ++n) {
                    json r;
                    r["n"] = n;
                    r["delta"] = prof[n];
                    out.rows.push_back(r);
                }
            } else {
                auto lvl = fqdyn::mandelbrot_In(p, level, dmax);
                out.columns = {"n", "d", "members", "total", "layer_fraction", "delta"};
                for (auto& row : lvl.rows) {
                    json r;
                    r["n"] = lvl.n;
                    r["d"] = row.d;
                    r["members"] = row.members.size();
                    r["total"] = row.total;
                    r["layer_fraction"] = row.layer_fraction;
                    r["delta"] = lvl.delta;
                    out.rows.push_back(r);
                }
            }
        } else if (*tower) {
            tower::Tower T(p);
            auto report = T.maximality_squarefree_report(depth);
            out.columns = {"n", "deg", "mu", "parity_certificate", "square_test", "is_square",
                           "status", "seconds"};
            for (auto& lvl : report) {
                json r;
                r["n"] = lvl.n;
                r["deg"] = lvl.deg_phi;
                r["mu"] = lvl.mu;
                r["parity_certificate"] = lvl.parity_certificate;
                r["square_test"] = lvl.square_test_ran;
                r["is_square"] = lvl.phi_is_square;
                r["status"] = lvl.maximal == tower::TowerLevel::Status::CertifiedMaximal
                                  ? "CertifiedMaximal"
                              : lvl.maximal == tower::TowerLevel::Status::NonSquareCertified
                                  ? "NonSquareCertified"
                                  : "Unknown";
                r["seconds"] = lvl.seconds;
                out.rows.push_back(r);
                std::cerr << "tower-phi: level " << lvl.n << " (deg " << lvl.deg_phi << ") done\n";
            }
        } else if (*treesim) {
            auto stats = tree::martingale_sim(depth, trials, seed);
            out.columns = {"n", "mean_fixed", "p_positive", "q_exact", "frac_constant_from_here"};
            for (auto& lvl : stats.levels) {
                json r;
                r["n"] = lvl.n;
                r["mean_fixed"] = lvl.mean_fixed;
                r["p_positive"] = lvl.p_positive;
                r["q_exact"] = tree::fix_proportion_exact(lvl.n).get_d();
                r["frac_constant_from_here"] = lvl.frac_constant_from_here;
                out.rows.push_back(r);
            }
        } else if (*haus) {
            std::vector<tree::TreeAut> gens;
            if (gen_preset == "adding") {
                gens.push_back(tree::TreeAut::adding_machine(depth));
            } else if (gen_preset == "full") {
                size_t nbits = (size_t(1) << depth) - 1;
                for (size_t i = 0; i < nbits; ++i) {
                    std::vector<uint8_t> bits(nbits, 0);
                    bits[i] = 1;
                    gens.push_back(tree::TreeAut::from_bits(depth, bits));
                }
            }
            auto est = tree::hausdorff_profile(gens, depth);
            out.columns = {"m", "order", "dim", "truncated"};
            for (size_t m = 1; m <= est.level_orders.size(); ++m) {
                json r;
                r["m"] = m;
                r["order"] = est.level_orders[m - 1];
                r["dim"] = est.dim_profile[m - 1];
                r["truncated"] = est.truncated;
                out.rows.push_back(r);
            }
        } else if (*ec_odd) {
            auto E = parse_curve(curve_str);
            auto xy = parse_ints(point_str, 2, "--point");
            ec::RationalPoint alpha{BigRat(xy[0]), BigRat(xy[1]), false};
            std::cerr << "ec-odd-order: sweeping primes to " << bound << "\n";
            auto d = ec::odd_order_density(E, alpha, bound, threads);
            out.columns = {"bound", "hits", "total", "skipped", "value", "stderr", "target",
                           "target_value", "mod2_full_image", "assumed_conditions"};
            json r = density_row(d);
            BigRat target = ec::closed_form_density(2);
            r["target"] = target.get_str();
            r["target_value"] = target.get_d();
            // The 11/21 prediction needs the full image at 2; the mod-2 part
            // is machine-checked, the remaining conditions (cyclotomic
            // disjointness and the point lying outside 2E) are not.
            r["mod2_full_image"] = ec::mod2_surjectivity_check(E);
            r["assumed_conditions"] =
                "cyclotomic disjointness over Q; alpha outside 2E(Q) (supply a basis to check)";
            out.rows.push_back(r);
        } else if (*ladic) {
            auto est = ec::kummer_integral_mc(ell, depth, samples, seed, threads);
            out.columns = {"ell", "depth", "samples", "estimate", "stderr", "closed_form",
                           "closed_form_value"};
            json r;
            r["ell"] = ell;
            r["depth"] = depth;
            r["samples"] = est.samples;
            r["estimate"] = est.value;
            r["stderr"] = est.stderr_;
            BigRat cf = ec::closed_form_density(ell);
            r["closed_form"] = cf.get_str();
            r["closed_form_value"] = cf.get_d();
            out.rows.push_back(r);
        } else if (*closed) {
            BigRat cf = ec::closed_form_density(ell);
            out.columns = {"ell", "value", "decimal"};
            json r;
            r["ell"] = ell;
            r["value"] = cf.get_str();
            r["decimal"] = cf.get_d();
            out.rows.push_back(r);
        }
        emit(out, emit_format, out_path);
        return 0;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity failure: " << e.what() << "\n";
        return 4;
    } catch (const BudgetError& e) {
        std::cerr << "budget violation: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
