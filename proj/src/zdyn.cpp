#include "arbordyn/zdyn.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "arbordyn/fppoly.hpp"

namespace arbordyn::zdyn {

namespace {
constexpr uint64_t kTrialBound = 1000000;
}

QuadraticMap::QuadraticMap(BigInt a_, BigInt b_, BigInt c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a == 0) throw std::invalid_argument("QuadraticMap: a must be nonzero");
}

BigRat QuadraticMap::critical_point() const {
    BigRat g(-b, 2 * a);
    g.canonicalize();
    return g;
}

BigRat QuadraticMap::eval(const BigRat& x) const { return BigRat(a) * x * x + BigRat(b) * x + c; }

BigInt QuadraticMap::eval(const BigInt& x) const { return a * x * x + b * x + c; }

uint64_t QuadraticMap::eval_mod(uint64_t x, uint64_t p) const {
    uint64_t am = mpz_fdiv_ui(a.get_mpz_t(), p);
    uint64_t bm = mpz_fdiv_ui(b.get_mpz_t(), p);
    uint64_t cm = mpz_fdiv_ui(c.get_mpz_t(), p);
    uint64_t x2 = mul_mod_u64(x, x, p);
    return (mul_mod_u64(am, x2, p) + mul_mod_u64(bm, x, p) + cm) % p;
}

ZPoly QuadraticMap::to_poly() const { return ZPoly(std::vector<BigInt>{c, b, a}); }

std::vector<BigRat> critical_orbit(const QuadraticMap& phi, unsigned N) {
    if (N < 1) throw std::invalid_argument("critical_orbit: N >= 1 required");
    std::vector<BigRat> out;
    out.reserve(N);
    BigRat v = phi.critical_point();
    for (unsigned n = 1; n <= N; ++n) {
        v = phi.eval(v);
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

DiscSquareClass disc_square_class(const QuadraticMap& phi, unsigned n) {
    if (n < 1) throw std::invalid_argument("disc_square_class: n >= 1 required");
    if (n == 1) {
        BigInt d = phi.disc();
        return {is_square(d), d == 0};
    }
    // Disc phi^n = +- a^(2^(2n-1)-1) * 2^(2^n) * (Disc phi^(n-1))^2 * phi^n(gamma):
    // square class of a * phi^n(gamma). The sign is never consumed.
    BigRat v = critical_orbit(phi, n).back();
    BigRat scaled = BigRat(phi.a) * v;
    scaled.canonicalize();
    return {is_square(scaled), scaled == 0};
}

bool rigid_divisibility_check(const QuadraticMap& phi, unsigned N) {
    if (!phi.is_monic_no_linear())
        throw std::invalid_argument("rigid_divisibility_check: requires x^2 + k");
    if (N < 2) throw std::invalid_argument("rigid_divisibility_check: N >= 2 required");
    std::vector<BigInt> cs;
    BigInt v = 0;
    for (unsigned n = 1; n <= N; ++n) {
        v = phi.eval(v);
        cs.push_back(v);
    }
    for (unsigned m = 1; m <= N; ++m)
        for (unsigned n = 1; n <= N; ++n) {
            BigInt g = gcd(cs[m - 1], cs[n - 1]);
            unsigned d = std::gcd(m, n);
            if (g != abs(cs[d - 1])) return false;
        }
    // Valuation stability v_p(c_n) = e > 0 => v_p(c_mn) = e, on every prime
    // exposed by trial division; incompletely factored cofactors contribute
    // nothing (their primes stay unexamined).
    auto primes = primes_up_to(kTrialBound);
    for (unsigned n = 1; n <= N; ++n) {
        auto pf = trial_factor(cs[n - 1], primes);
        for (auto& [p, e] : pf.factors) {
            for (unsigned mn = 2 * n; mn <= N; mn += n) {
                auto vmn = vp(cs[mn - 1], p);
                if (!vmn || static_cast<unsigned>(*vmn) != e) return false;
            }
        }
    }
    return true;
}

std::vector<IrreducibilityLevel> iterates_irreducible(const QuadraticMap& phi, unsigned N) {
    if (N < 1) throw std::invalid_argument("iterates_irreducible: N >= 1 required");
    std::vector<IrreducibilityLevel> out;
    BigInt d = phi.disc();
    bool level1_irreducible = !is_square(d);
    out.push_back({1, level1_irreducible ? IrredStatus::Certified : IrredStatus::Reducible});
    if (!level1_irreducible) {
        for (unsigned n = 2; n <= N; ++n) out.push_back({n, IrredStatus::Reducible});
        return out;
    }
    // Orbit criterion: phi irreducible and phi^m(gamma) not a square for all
    // 2 <= m <= n certifies phi^n irreducible.
    std::vector<BigRat> orbit = critical_orbit(phi, N);
    bool orbit_ok = true;
    for (unsigned n = 2; n <= N; ++n) {
        orbit_ok = orbit_ok && !is_square(orbit[n - 1]);
        if (orbit_ok) {
            out.push_back({n, IrredStatus::Certified});
            continue;
        }
        // Fallback: irreducible mod some good prime p <= 10^3 implies
        // irreducible over Q.
        IrredStatus st = IrredStatus::Unknown;
        ZPoly phin = iterate(phi.to_poly(), n);
        for (uint64_t p : primes_up_to(1000)) {
            if (p == 2) continue;
            if (mpz_divisible_ui_p(phi.a.get_mpz_t(), p)) continue;
            std::vector<uint64_t> coeffs;
            coeffs.reserve(phin.coeffs().size());
            for (const auto& cc : phin.coeffs()) coeffs.push_back(mpz_fdiv_ui(cc.get_mpz_t(), p));
            FpPoly fp(p, std::move(coeffs));
            if (fp.degree() == phin.degree() && is_irreducible(fp)) {
                st = IrredStatus::Certified;
                break;
            }
        }
        out.push_back({n, st});
    }
    return out;
}

namespace {

// Strip from q every prime it shares with m, completely.
BigInt strip_all(BigInt q, const BigInt& m) {
    for (;;) {
        BigInt g = gcd(q, m);
        if (g <= 1) return q;
        while (mpz_divisible_p(q.get_mpz_t(), g.get_mpz_t())) q /= g;
        // q may still share smaller primes contained in g
        BigInt g2 = gcd(q, g);
        while (g2 > 1) {
            q /= g2;
            g2 = gcd(q, g2);
        }
    }
}

}  // namespace

MaximalityReport maximality_certificate(const QuadraticMap& phi, unsigned n) {
    if (n < 2) throw std::invalid_argument("maximality_certificate: n >= 2 required");
    auto irr = iterates_irreducible(phi, n);
    for (const auto& lvl : irr) {
        if (lvl.status == IrredStatus::Reducible)
            throw std::invalid_argument("maximality_certificate: reducible iterate at level " +
                                        std::to_string(lvl.n));
        if (lvl.status == IrredStatus::Unknown)
            throw std::invalid_argument(
                "maximality_certificate: cannot certify irreducibility through n");
    }

    MaximalityReport rep;
    rep.n = n;
    std::vector<BigRat> orbit = critical_orbit(phi, n);
    const BigInt two_a = 2 * phi.a;
    BigInt num_n = orbit[n - 1].get_num();

    // Explicit search over trial divisors. Denominator primes all divide 2a,
    // hence are inadmissible; only the numerator needs scanning.
    auto pf = trial_factor(num_n, kTrialBound);
    for (auto& [p, e] : pf.factors) {
        if (e % 2 == 0) continue;
        if (mpz_divisible_p(two_a.get_mpz_t(), p.get_mpz_t())) continue;
        bool clean = true;
        for (unsigned m = 1; m + 1 <= n && clean; ++m) {
            auto v = vp(orbit[m - 1], p);
            if (!v || *v != 0) clean = false;
        }
        if (clean) {
            rep.status = MaximalityReport::Status::CertifiedMaximal;
            rep.witness_prime = p;
            return rep;
        }
    }

    // Cofactor route: the part of phi^n(gamma) coprime to 2a and to the whole
    // earlier orbit. Non-square and non-twice-square means an admissible
    // prime with odd valuation exists without being named.
    BigInt strip = abs(two_a);
    for (unsigned m = 1; m + 1 <= n; ++m) {
        strip *= abs(BigInt(orbit[m - 1].get_num()));
        strip *= BigInt(orbit[m - 1].get_den());
    }
    BigInt q = strip_all(abs(num_n), strip);
    rep.cofactor = q;
    if (q > 1 && !is_square(q) && !is_twice_square(q)) {
        rep.status = MaximalityReport::Status::CertifiedMaximal;
        rep.nonsquare_cofactor = true;
        return rep;
    }
    rep.status = MaximalityReport::Status::NoCertificate;
    return rep;
}

std::vector<WieferichRow> wieferich_scan(const QuadraticMap& phi, const BigRat& b, unsigned N) {
    BigRat twice = b * 2;
    if (twice.get_den() != 1)
        throw std::invalid_argument("wieferich_scan: 2b must be an integer");
    if (N < 1) throw std::invalid_argument("wieferich_scan: N >= 1 required");

    std::vector<BigRat> orbit;
    {
        BigRat v = b;
        std::vector<BigRat> seen{v};
        for (unsigned n = 1; n <= N; ++n) {
            v = phi.eval(v);
            v.canonicalize();
            for (size_t i = 0; i < seen.size(); ++i)
                if (seen[i] == v) {
                    std::ostringstream os;
                    os << "wieferich_scan: orbit preperiodic, cycle";
                    for (size_t k = i; k < seen.size(); ++k) os << " " << seen[k].get_str();
                    os << " -> " << v.get_str();
                    throw std::invalid_argument(os.str());
                }
            seen.push_back(v);
            orbit.push_back(v);
        }
    }

    std::vector<WieferichRow> rows;
    for (unsigned n = 1; n <= N; ++n) {
        const BigRat& vn = orbit[n - 1];
        WieferichRow row{n, WieferichStatus::NotFound, std::nullopt};

        auto admissible = [&](const BigInt& p) {
            auto v = vp(vn, p);
            if (!v || *v % 2 == 0) return false;
            for (unsigned m = 1; m < n; ++m) {
                auto vm = vp(orbit[m - 1], p);
                if (!vm || *vm != 0) return false;
            }
            return true;
        };

        if (admissible(2)) {
            row.status = WieferichStatus::Exists;
            row.prime = 2;
            rows.push_back(row);
            continue;
        }
        auto pf = trial_factor(BigInt(vn.get_num()), kTrialBound);
        bool found = false;
        for (auto& [p, e] : pf.factors) {
            if (p == 2) continue;
            if (admissible(p)) {
                row.status = WieferichStatus::Exists;
                row.prime = p;
                found = true;
                break;
            }
        }
        if (!found) {
            BigInt strip = 2;
            for (unsigned m = 1; m < n; ++m) {
                strip *= abs(BigInt(orbit[m - 1].get_num()));
                strip *= BigInt(orbit[m - 1].get_den());
            }
            BigInt q = strip_all(abs(BigInt(vn.get_num())), strip);
            if (q > 1 && !is_square(q)) row.status = WieferichStatus::ExistsNonconstructive;
        }
        rows.push_back(row);
    }
    return rows;
}

bool stoll_condition(const BigInt& k) {
    if (k > 0) {
        BigInt r = k % 4;
        return r == 1 || r == 2;
    }
    if (k < 0) {
        BigInt r = ((k % 4) + 4) % 4;
        return r == 0;
    }
    return false;
}

std::vector<FamilyMatch> family_classify(const QuadraticMap& phi) {
    std::vector<FamilyMatch> out;
    if (phi.a != 1) return out;
    // (1) x^2 - kx + k: c = -b
    if (phi.c == -phi.b) out.push_back({1, phi.c, false});
    // (2) x^2 + kx - 1, k not in {0, 2}
    if (phi.c == -1) out.push_back({2, phi.b, phi.b == 0 || phi.b == 2});
    // (3) x^2 + k, k != -1
    if (phi.b == 0) out.push_back({3, phi.c, phi.c == -1});
    // (4) x^2 - 2kx + k: b = -2c
    if (phi.b == -2 * phi.c) out.push_back({4, phi.c, phi.c == 1 || phi.c == -1});
    return out;
}

std::string to_json(const MaximalityReport& r) {
    std::ostringstream os;
    os << "{\"n\":" << r.n << ",\"status\":\""
       << (r.status == MaximalityReport::Status::CertifiedMaximal ? "CertifiedMaximal"
                                                                  : "NoCertificate")
       << "\",\"witness\":";
    if (r.witness_prime)
        os << "\"p=" << r.witness_prime->get_str() << "\"";
    else if (r.nonsquare_cofactor)
        os << "\"nonsquare-cofactor\"";
    else
        os << "null";
    os << ",\"cofactor_digits\":" << (r.cofactor == 0 ? 0 : mpz_sizeinbase(r.cofactor.get_mpz_t(), 10))
       << "}";
    return os.str();
}

}  // namespace arbordyn::zdyn
