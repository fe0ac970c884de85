#include "selftest.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "normic/errors.hpp"
#include "normic/obstruct.hpp"
#include "oracles/oracles.hpp"

namespace normic::selftest {

namespace {

constexpr std::size_t kMaxListedFailures = 5;

// Uniform enough for test generation, and identical on every platform
// (the std distributions are not).
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    std::int64_t below(std::int64_t k) { return static_cast<std::int64_t>(engine() % static_cast<std::uint64_t>(k)); }
    std::int64_t between(std::int64_t lo, std::int64_t hi) { return lo + below(hi - lo + 1); }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(below(static_cast<std::int64_t>(v.size())))]; }
};

std::string join(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

std::vector<std::int64_t> random_monic(Rng& rng, std::int64_t p, int degree) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 1);
    for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = rng.below(p);
    return c;
}

SuiteResult abelian_suite(Rng& rng) {
    SuiteResult s{"abelian"};
    const auto small = groups_up_to(12);
    for (int t = 0; t < 12; ++t) {
        const auto& orders = rng.pick(small);
        s.check(static_cast<std::int64_t>(enumerate_subgroups(FinAbGroup(orders)).size()) ==
                    oracle::count_subgroups_by_subsets(orders),
                "subgroup count " + join(orders));
    }
    const auto medium = groups_up_to(256);
    for (int t = 0; t < 60; ++t) {
        const auto& orders = rng.pick(medium);
        const FinAbGroup G(orders);
        const GroupElement g = G.element_at(rng.below(G.order()));
        const auto expected = oracle::quotient_invariants(orders, oracle::all_tuples(orders), oracle::cyclic_span(orders, g.coords));
        s.check(canonical_form(quotient_by_cyclic(G, g).group).group.orders() == expected,
                "quotient " + join(orders) + " by " + join(g.coords));
        s.check(canonical_form(G).group.orders() == oracle::group_invariants(orders), "invariants " + join(orders));
    }
    return s;
}

SuiteResult brauer_suite(Rng& rng) {
    SuiteResult s{"brauer"};
    for (int t = 0; t < 200; ++t) {
        const std::int64_t n = rng.between(1, 8);
        const auto descs = admissible_descs(n, static_cast<std::size_t>(rng.between(1, 3)));
        if (descs.empty()) continue;
        const DR& dr = rng.pick(descs);
        std::vector<std::int64_t> d, r;
        for (auto [di, ri] : dr) {
            d.push_back(di);
            r.push_back(ri);
        }
        const auto expected = oracle::brauer_quotient(n, d, r);
        const auto P = compute_brauer(NormicBundleDesc::numeric(n, dr));
        const std::string tag = "n=" + std::to_string(n) + " d=" + join(d) + " r=" + join(r);
        s.check(canonical_form(P.quotient.group).group.orders() == expected.quotient, "quotient " + tag);
        s.check(P.membership.orders() == expected.membership, "membership " + tag);
        s.check(P.kernel_order == expected.kernel_order, "kernel " + tag);
    }
    return s;
}

SuiteResult symbol_suite(Rng& rng) {
    SuiteResult s{"symbol"};
    for (std::int64_t p = 3; p <= 50; ++p) {
        if (!is_prime(p)) continue;
        const auto place = PlaceModel::standard(p, 2);
        for (int t = 0; t < 25; ++t) {
            std::int64_t a = 0, b = 0;
            while (a == 0) a = rng.between(-p * p * p, p * p * p);
            while (b == 0) b = rng.between(-p * p * p, p * p * p);
            const auto inv = cyclic_invariant(place, CycloElement(2, Rational(a)), CycloElement(2, Rational(b)));
            s.check((inv.num == 0) == (oracle::hilbert_symbol(a, b, p) == 1),
                    "(" + std::to_string(a) + "," + std::to_string(b) + ")_" + std::to_string(p));
        }
    }
    return s;
}

SuiteResult polyfield_suite(Rng& rng) {
    SuiteResult s{"polyfield"};
    const std::vector<std::int64_t> primes{2, 3, 5, 7, 11, 13};
    for (int t = 0; t < 150; ++t) {
        const std::int64_t p = rng.pick(primes);
        const auto c = random_monic(rng, p, static_cast<int>(rng.between(1, 4)));
        const FpPoly f(p, c);
        const std::string tag = f.str() + " mod " + std::to_string(p);
        s.check(is_irreducible_fp(f) == oracle::fp_is_irreducible(c, p), "irreducibility " + tag);
        std::vector<std::int64_t> product{1};
        bool factors_ok = true;
        for (const auto& fac : factor_fp(f)) {
            factors_ok = factors_ok && oracle::fp_is_irreducible(fac.factor.coeffs(), p);
            for (int e = 0; e < fac.multiplicity; ++e) product = oracle::fp_multiply(product, fac.factor.coeffs(), p);
        }
        s.check(factors_ok && product == f.coeffs(), "factorization " + tag);
    }
    const std::vector<std::int64_t> fields{5, 7, 11, 13};
    for (int t = 0; t < 30; ++t) {
        const std::int64_t q = rng.pick(fields);
        const auto rs = divisors(q - 1);
        std::vector<std::vector<std::int64_t>> f;
        std::vector<std::int64_t> r, eps;
        std::vector<ResidueCondition> conds;
        FpPoly product = FpPoly::constant(q, 1);
        const auto count = rng.between(1, 2);
        for (std::int64_t i = 0; i < count; ++i) {
            std::int64_t ri = 0;
            while (ri == 0 || ri > 4) ri = rng.pick(rs);
            r.push_back(ri);
            f.push_back(random_monic(rng, q, static_cast<int>(ri)));
            eps.push_back(rng.between(1, q - 1));
            conds.push_back({FpPoly(q, f.back()), ri, eps.back()});
            product = product * conds.back().f;
        }
        if (!is_separable(product)) continue;
        s.check(curve_count(q, conds).affine == oracle::affine_points(q, f, r, eps), "curve count mod " + std::to_string(q));
    }
    return s;
}

SuiteResult certificate_suite(Rng& rng) {
    SuiteResult s{"certificates"};
    const auto K = KummerExt::make(2, CycloElement(2, Rational(2)));
    for (int t = 0; t < 120; ++t) {
        const int degree = static_cast<int>(rng.between(2, 4));
        std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 1);
        for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = rng.between(-6, 6);
        if (c[0] == 0) c[0] = 1;
        const auto cert = find_certificate(K, to_kpoly(K.a, K.n, RatPoly::from_ints(c)), CertField::base, 2000);
        if (!cert) continue;
        s.check(oracle::find_monic_factor(c).empty() && verify_certificate(K, *cert).empty(), "certificate for " + join(c));
    }
    return s;
}

SuiteResult obstruction_suite(Rng& rng) {
    SuiteResult s{"obstruction"};
    const auto groups = groups_up_to(16);
    for (int t = 0; t < 40; ++t) {
        const FinAbGroup B(rng.pick(groups));
        if (B.is_trivial()) continue;
        const auto subs = enumerate_subgroups(B);
        const auto& B0 = subs[static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(subs.size()) - 1))];
        const auto report = classify_obstruction(B, plan_targets(B, B0));
        bool precise = true;
        for (const auto& v : report.verdicts) precise = precise && v.obstructs == B0.is_subset_of(v.subgroup);
        s.check(precise, "B0 criterion in " + B.str());

        const DualGroup dual = dual_group(B);
        std::set<Character> S;
        for (const auto& chi : dual.all())
            if (rng.below(3) == 0) S.insert(chi);
        const auto random_report = classify_obstruction(B, S);
        bool agrees = true;
        for (const auto& v : random_report.verdicts) agrees = agrees && v.obstructs == obstructs_by_pairing(dual, v.subgroup, S);
        s.check(agrees, "pairing verdicts in " + B.str());
    }
    return s;
}

}  // namespace

namespace {

void order_tuples_rec(std::int64_t bound, std::int64_t min_next, std::vector<std::int64_t>& cur,
                  std::vector<std::vector<std::int64_t>>& out) {
    out.push_back(cur);
    for (std::int64_t r = min_next; r <= bound; ++r) {
        cur.push_back(r);
        order_tuples_rec(bound / r, r, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<std::int64_t>> groups_up_to(std::int64_t bound) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    order_tuples_rec(bound, 2, cur, out);
    return out;
}

bool obstructs_by_pairing(const DualGroup& dual, const Subgroup& H, const std::set<Character>& S) {
    for (const auto& chi : S) {
        bool vanishes = true;
        for (auto idx : H.member_indices())
            if (dual.pair(chi, dual.group.element_at(idx)) != RatModOne(0, 1)) {
                vanishes = false;
                break;
            }
        if (vanishes) return false;
    }
    return true;
}

std::vector<DR> admissible_descs(std::int64_t n, std::size_t m, std::int64_t max_product, std::int64_t d_max) {
    if (d_max <= 0) d_max = n;
    DR pairs;
    for (std::int64_t r : divisors(n))
        for (std::int64_t d = 1; d <= d_max; ++d)
            if ((d * r) % n == 0) pairs.emplace_back(d, r);
    std::vector<DR> out;
    DR cur;
    auto rec = [&](auto&& self, std::int64_t sum, std::int64_t prod) -> void {
        if (cur.size() == m) {
            if (sum % n == 0) out.push_back(cur);
            return;
        }
        for (const auto& pr : pairs) {
            if (prod * pr.second > max_product) continue;
            cur.push_back(pr);
            self(self, sum + pr.first, prod * pr.second);
            cur.pop_back();
        }
    };
    rec(rec, 0, 1);
    return out;
}

void SuiteResult::check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++mismatches;
    if (failures.size() < kMaxListedFailures) failures.push_back(what);
}

bool Report::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.mismatches == 0; });
}

Report run(std::uint64_t seed) {
    Report r;
    r.seed = seed;
    // each suite gets its own stream so adding checks to one leaves the others unchanged
    using Suite = SuiteResult (*)(Rng&);
    const std::vector<Suite> suites{abelian_suite, brauer_suite, symbol_suite, polyfield_suite, certificate_suite,
                                    obstruction_suite};
    for (std::size_t i = 0; i < suites.size(); ++i) {
        Rng rng(seed * 0x9E3779B97F4A7C15ULL + i);
        r.suites.push_back(suites[i](rng));
    }
    return r;
}

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << "selftest seed=" << r.seed << "\n";
    for (const auto& s : r.suites) {
        out << "  " << s.name << ": " << s.checks << " checks, " << s.mismatches << " mismatches\n";
        for (const auto& f : s.failures) out << "    mismatch: " << f << "\n";
    }
    out << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

io::Json to_json(const Report& r) {
    io::Json out;
    out["seed"] = r.seed;
    io::Json suites = io::Json::array();
    for (const auto& s : r.suites) {
        io::Json j;
        j["name"] = s.name;
        j["checks"] = s.checks;
        j["mismatches"] = s.mismatches;
        j["failures"] = s.failures;
        suites.push_back(j);
    }
    out["suites"] = suites;
    out["passed"] = r.passed();
    return out;
}

}  // namespace normic::selftest
