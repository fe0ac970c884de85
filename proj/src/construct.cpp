#include "normic/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "normic/errors.hpp"

namespace normic {

namespace {

RatPoly binomial(std::int64_t r, const Integer& u) {
    std::vector<Rational> c(static_cast<std::size_t>(r + 1), Rational(0));
    c.front() = Rational(-u);
    c.back() = 1;
    return RatPoly(std::move(c));
}

KPoly g_minus_theta(const KummerExt& K, std::int64_t r, const Integer& u) {
    KPoly f = to_kpoly(K.a, K.n, binomial(r, u));
    f[0] = f[0] - KummerElement::alpha_power(K.a, K.n, r);
    return f;
}

std::int64_t residue(const Integer& u, std::int64_t p) { return reduce_mod(u, p); }

// Per-place bookkeeping for the residues chosen so far.
struct PlaceState {
    PlaceModel place;
    std::set<std::int64_t> used;
    FpPoly product;
};

bool admissible_at(const PlaceState& s, std::int64_t r, std::int64_t lambda) {
    const std::int64_t p = s.place.p;
    if (lambda == 0 || s.used.count(lambda)) return false;
    std::vector<std::int64_t> c(static_cast<std::size_t>(r + 1), 0);
    c.front() = mod(-lambda, p);
    c.back() = 1;
    const FpPoly g(p, std::move(c));
    return is_separable(g) && gcd(g, s.product).degree() == 0;
}

void record(PlaceState& s, std::int64_t r, std::int64_t lambda) {
    const std::int64_t p = s.place.p;
    std::vector<std::int64_t> c(static_cast<std::size_t>(r + 1), 0);
    c.front() = mod(-lambda, p);
    c.back() = 1;
    s.used.insert(lambda);
    s.product = s.product * FpPoly(p, std::move(c));
}

struct Auxiliary {
    std::int64_t q = 0;
    std::int64_t beta = 0;
    Integer beta_hat;  // beta lifted to Z / q^2
};

// A split prime q of K away from the places: a is a unit n-th power residue there.
Auxiliary find_auxiliary(const KummerExt& K, std::int64_t a, const std::vector<PlaceModel>& places, std::int64_t scan_cap) {
    const std::int64_t conductor = K.a.conductor();
    for (std::int64_t q = conductor + 1; q <= scan_cap; q += conductor) {
        if (!is_prime(q) || a % q == 0) continue;
        if (std::any_of(places.begin(), places.end(), [q](const PlaceModel& P) { return P.p == q; })) continue;
        const std::int64_t abar = mod(a, q);
        if (!is_power_residue(q, K.n, abar)) continue;
        std::vector<std::int64_t> c(static_cast<std::size_t>(K.n + 1), 0);
        c.front() = mod(-abar, q);
        c.back() = 1;
        const auto roots = roots_fp(FpPoly(q, std::move(c)));
        ensure(!roots.empty(), "n-th power residue without a root");
        Auxiliary aux{q, roots.front(), 0};
        // one Newton step: beta + t q with n beta^(n-1) t = -(beta^n - a) / q mod q
        const Integer q2 = Integer(q) * q;
        Integer bn = 1;
        for (std::int64_t i = 0; i < K.n; ++i) bn = bn * aux.beta % q2;
        Integer excess = ((bn - a) % q2 + q2) % q2;
        ensure(excess % q == 0, "Newton step on a non-root");
        const std::int64_t e = static_cast<std::int64_t>(excess / q);
        const std::int64_t deriv = mulmod(K.n % q, powmod(aux.beta, K.n - 1, q), q);
        const std::int64_t t = mod(-mulmod(e, invmod(deriv, q), q), q);
        aux.beta_hat = aux.beta + Integer(t) * q;
        return aux;
    }
    throw SearchExhausted("no auxiliary split prime within the scan cap");
}

Integer crt(const std::vector<std::pair<Integer, Integer>>& congruences) {
    Integer x = 0, m = 1;
    for (const auto& [r, mod_] : congruences) {
        // x + m k = r mod mod_
        Integer mm = m % mod_, rhs = ((r - x) % mod_ + mod_) % mod_;
        Integer old_r = mm, rr = mod_, old_s = 1, s = 0;
        while (rr != 0) {
            const Integer qq = old_r / rr;
            Integer t = old_r - qq * rr;
            old_r = rr;
            rr = t;
            t = old_s - qq * s;
            old_s = s;
            s = t;
        }
        ensure(old_r == 1, "crt: moduli not coprime");
        const Integer k = ((rhs * old_s) % mod_ + mod_) % mod_;
        x += m * k;
        m *= mod_;
    }
    return x;
}

}  // namespace

UChoice choose_u_parameters(const KummerExt& K, const std::vector<std::int64_t>& r_list,
                            const std::vector<PlaceModel>& places, const ConstructOptions& options) {
    const std::int64_t n = K.n;
    require(K.a.is_rational() && denominator(K.a.rational_value()) == 1, "choose_u_parameters: integer radicand expected");
    const std::int64_t a = static_cast<std::int64_t>(numerator(K.a.rational_value()));
    for (std::int64_t r : r_list) require(r >= 1 && n % r == 0, "choose_u_parameters: r must divide n");
    std::vector<PlaceState> states;
    for (const auto& P : places) {
        require(P.p > static_cast<std::int64_t>(r_list.size()) + 1, "choose_u_parameters: residue field too small");
        require(valuation(Integer(a), P.p) == 1, "choose_u_parameters: v(a) must be 1 at every place");
        states.push_back(PlaceState{P, {}, FpPoly::constant(P.p, 1)});
    }
    const std::int64_t quick_cap = std::min<std::int64_t>(options.cert_scan_cap, 3000);

    UChoice out;
    std::optional<Auxiliary> aux;
    for (std::int64_t r : r_list) {
        bool found = false;
        for (std::int64_t cand = 1; cand <= options.u_search_cap && !found; ++cand) {
            const Integer u = cand;
            if (std::find(out.u.begin(), out.u.end(), u) != out.u.end()) continue;
            bool ok = true;
            for (const auto& s : states) ok = ok && admissible_at(s, r, residue(u, s.place.p));
            if (!ok) continue;
            auto cert = find_certificate(K, g_minus_theta(K, r, u), CertField::kummer, quick_cap);
            if (!cert) continue;
            for (auto& s : states) record(s, r, residue(u, s.place.p));
            out.u.push_back(u);
            out.certificates.push_back(*cert);
            found = true;
        }
        if (found) continue;

        // u = -beta^r + q mod q^2 makes x^r - u - alpha^r Eisenstein above q
        if (!aux) aux = find_auxiliary(K, a, places, options.prime_scan_cap);
        const Integer q2 = Integer(aux->q) * aux->q;
        Integer br = 1;
        for (std::int64_t i = 0; i < r; ++i) br = br * aux->beta_hat % q2;
        std::vector<std::pair<Integer, Integer>> congruences{{((aux->q - br) % q2 + q2) % q2, q2}};
        std::vector<std::int64_t> lambdas;
        for (auto& s : states) {
            std::int64_t lambda = 1;
            while (lambda < s.place.p && !admissible_at(s, r, lambda)) ++lambda;
            if (lambda == s.place.p) throw SearchExhausted("no admissible residue at the place " + std::to_string(s.place.p));
            lambdas.push_back(lambda);
            congruences.emplace_back(Integer(lambda), Integer(s.place.p));
        }
        Integer modulus = 1;
        for (const auto& c : congruences) modulus *= c.second;
        Integer u = crt(congruences);
        while (u == 0 || std::find(out.u.begin(), out.u.end(), u) != out.u.end()) u += modulus;

        const SplitPlace sp = SplitPlace::make(PlaceModel::standard(aux->q, K.a.conductor()), K.a, aux->beta);
        const KPoly f = g_minus_theta(K, r, u);
        ensure(eisenstein_check(f, sp), "CRT parameter is not Eisenstein at the auxiliary place");
        IrreducibilityCertificate cert;
        cert.kind = CertKind::eisenstein;
        cert.field = CertField::kummer;
        cert.poly = f;
        cert.place = sp.base;
        cert.beta = sp.beta;
        for (std::size_t j = 0; j < states.size(); ++j) record(states[j], r, lambdas[j]);
        out.u.push_back(u);
        out.certificates.push_back(cert);
        out.auxiliary_prime = aux->q;
    }
    return out;
}

RatPoly ConstructionPlan::product() const {
    RatPoly out = RatPoly::constant(1);
    for (const auto& f : P) out = out * f;
    return out;
}

NormicBundleDesc ConstructionPlan::desc() const {
    NormicBundleDesc d;
    d.n = n;
    d.kummer = kummer;
    for (std::size_t i = 0; i < P.size(); ++i)
        d.factors.push_back(FactorData{P[i], P[i].degree(), r[i], i < certificates.size() ? std::optional(certificates[i]) : std::nullopt, "construction"});
    return d;
}

ConstructionPlan construct_bundle(const FinAbGroup& B, const ConstructOptions& options) {
    std::vector<std::int64_t> rs;
    for (std::int64_t r : B.orders())
        if (r > 1) rs.push_back(r);
    const std::int64_t n = std::max<std::int64_t>(2, B.exponent());
    const auto m = static_cast<std::int64_t>(rs.size());

    ConstructionPlan plan;
    plan.target = FinAbGroup(rs);
    plan.n = n;
    for (std::int64_t p : options.places) {
        require(is_prime(p) && (p - 1) % n == 0, "construct: place " + std::to_string(p) + " is not a prime = 1 mod n");
        require(p > m + 2, "construct: residue field at " + std::to_string(p) + " is too small");
        plan.places.push_back(PlaceModel::standard(p, n));
    }
    require(std::set<std::int64_t>(options.places.begin(), options.places.end()).size() == options.places.size(),
            "construct: repeated place");

    auto try_radicand = [&](std::int64_t a) -> std::optional<KummerExt> {
        try {
            return KummerExt::make(n, CycloElement(n, Rational(a)), options.cert_scan_cap);
        } catch (const SearchExhausted&) {
            return std::nullopt;
        }
    };
    if (options.a) {
        require(*options.a >= 2, "construct: a must be a positive integer > 1");
        for (const auto& P : plan.places)
            require(valuation(Integer(*options.a), P.p) == 1, "construct: v(a) must be 1 at " + std::to_string(P.p));
        auto K = try_radicand(*options.a);
        if (!K) throw CertificateError("construct: x^n - a could not be certified irreducible");
        plan.a = *options.a;
        plan.kummer = *K;
    } else if (!plan.places.empty()) {
        std::int64_t a = 1;
        for (const auto& P : plan.places) a *= P.p;
        auto K = try_radicand(a);
        ensure(K.has_value(), "Eisenstein radicand without a certificate");
        plan.a = a;
        plan.kummer = *K;
    } else {
        for (std::int64_t a = 2;; ++a) {
            if (a > 10000) throw SearchExhausted("construct: no certifiable radicand");
            if (auto K = try_radicand(a)) {
                plan.a = a;
                plan.kummer = *K;
                break;
            }
        }
    }

    plan.r = {n};
    plan.r.insert(plan.r.end(), rs.begin(), rs.end());
    const UChoice uc = choose_u_parameters(plan.kummer, plan.r, plan.places, options);
    plan.u = uc.u;
    plan.auxiliary_prime = uc.auxiliary_prime;

    std::map<std::int64_t, IrreducibilityCertificate> h_certs;
    for (std::size_t i = 0; i < plan.r.size(); ++i) {
        const std::int64_t r = plan.r[i];
        const RatPoly h = RatPoly::monomial(static_cast<int>(n / r)) - RatPoly::constant(plan.a);
        const RatPoly q = binomial(r, plan.u[i]);
        if (!h_certs.count(r)) {
            auto c = find_certificate(plan.kummer, to_kpoly(plan.kummer.a, n, h), CertField::base, options.cert_scan_cap);
            if (!c) throw SearchExhausted("construct: no certificate for x^(n/r) - a");
            h_certs[r] = *c;
        }
        plan.Q.push_back(q);
        plan.P.push_back(h.compose(q));
        plan.certificates.push_back(compose_irreducible(plan.kummer, h, q, r, h_certs[r], uc.certificates[i]));
    }

    const auto br = compute_brauer(plan.desc());
    ensure(canonical_form(br.quotient.group).group == canonical_form(plan.target).group,
           "constructed bundle has the wrong Brauer group");
    return plan;
}

bool PlanReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const PlanCheck& c) { return c.passed; });
}

PlanReport verify_plan(const ConstructionPlan& plan, bool sample_splitting_degrees) {
    PlanReport report;
    auto check = [&](std::string name, auto&& body) {
        PlanCheck c{std::move(name), false, ""};
        try {
            c.detail = body();
            c.passed = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        report.checks.push_back(std::move(c));
    };
    const std::int64_t n = plan.n;
    const std::size_t k = plan.r.size();

    check("shape", [&]() -> std::string {
        if (plan.u.size() != k || plan.P.size() != k || plan.Q.size() != k || plan.certificates.size() != k)
            return "parameter lists differ in length";
        if (k == 0 || plan.r[0] != n) return "r_0 must equal n";
        for (auto r : plan.r)
            if (r < 1 || n % r != 0) return "r_i does not divide n";
        return "";
    });
    check("distinct-u", [&]() -> std::string {
        std::set<Integer> seen(plan.u.begin(), plan.u.end());
        return seen.size() == plan.u.size() ? "" : "u parameters repeat";
    });
    check("polynomials", [&]() -> std::string {
        for (std::size_t i = 0; i < k; ++i) {
            if (plan.Q[i] != binomial(plan.r[i], plan.u[i])) return "Q_" + std::to_string(i) + " differs from x^r - u";
            const RatPoly h = RatPoly::monomial(static_cast<int>(n / plan.r[i])) - RatPoly::constant(plan.a);
            if (plan.P[i] != h.compose(plan.Q[i])) return "P_" + std::to_string(i) + " differs from Q^(n/r) - a";
        }
        return plan.product().degree() == static_cast<int>(k) * n ? "" : "deg P differs from (m+1) n";
    });
    check("separable", [&]() -> std::string { return is_separable(plan.product()) ? "" : "P is not separable"; });
    check("radicand", [&]() -> std::string {
        if (plan.a < 2) return "a is not a positive integer > 1";
        if (!(plan.kummer.a == CycloElement(n, Rational(plan.a))) || plan.kummer.n != n) return "field data differ from (n, a)";
        const std::string why = verify_certificate(plan.kummer, plan.kummer.certificate);
        return why.empty() ? "" : "x^n - a: " + why;
    });
    for (std::size_t i = 0; i < k; ++i)
        check("certificate-P" + std::to_string(i), [&]() -> std::string {
            const auto& c = plan.certificates[i];
            if (c.field != CertField::base) return "not a certificate over k";
            if (!kpoly_equal(c.poly, to_kpoly(plan.kummer.a, n, plan.P[i]))) return "certificate is for another polynomial";
            return verify_certificate(plan.kummer, c);
        });
    for (const auto& P : plan.places)
        check("place-" + std::to_string(P.p), [&]() -> std::string {
            if (P.p <= static_cast<std::int64_t>(k) + 1) return "residue field too small";
            if (valuation(Integer(plan.a), P.p) != 1) return "v(a) != 1";
            FpPoly prod = FpPoly::constant(P.p, 1);
            for (std::size_t i = 0; i < k; ++i) {
                if (reduce_mod(plan.u[i], P.p) == 0) return "u_" + std::to_string(i) + " is not a unit";
                prod = prod * plan.Q[i].reduce(P.p);
            }
            return is_separable(prod) ? "" : "prod (x^r_i - u_i) is not separable mod v";
        });
    check("brauer-quotient", [&]() -> std::string {
        const auto br = compute_brauer(plan.desc());
        if (!(canonical_form(br.quotient.group).group == canonical_form(plan.target).group))
            return "quotient " + br.quotient.group.str() + " differs from the target " + plan.target.str();
        std::vector<GroupElement> gens;
        for (std::size_t i = 1; i < br.generators.size(); ++i) {
            if (!br.generators[i]) return "factor " + std::to_string(i) + " is not a member";
            gens.push_back(*br.generators[i]);
        }
        if (generated_subgroup(br.quotient.group, gens).order != plan.target.order()) return "the factor classes do not generate";
        return "";
    });
    if (sample_splitting_degrees)
        for (std::size_t i = 0; i < k; ++i)
            check("splitting-degree-P" + std::to_string(i), [&]() -> std::string {
                const auto s = splitting_degree(plan.kummer, plan.P[i]);
                return s.r == plan.r[i] ? "" : "sampled r = " + std::to_string(s.r);
            });
    return report;
}

}  // namespace normic
