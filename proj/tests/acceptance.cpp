// One PASS/FAIL line per acceptance criterion, each against its time budget.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "normic/errors.hpp"
#include "normic/obstruct.hpp"
#include "oracles/oracles.hpp"
#include "selftest.hpp"

using namespace normic;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::int64_t lcm_of(const std::vector<std::int64_t>& r) {
    std::int64_t l = 1;
    for (auto x : r) l = std::lcm(l, x);
    return l;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

// criteria 1 and 7 share the sweep
struct Sweep {
    std::int64_t descs = 0, quotient_mismatch = 0, kernel_failures = 0;
};

Sweep brauer_sweep() {
    Sweep s;
    for (std::int64_t n = 1; n <= 8; ++n)
        for (std::size_t m = 1; m <= 3; ++m)
            for (const auto& dr : selftest::admissible_descs(n, m, 4096, 2 * n)) {
                std::vector<std::int64_t> d, r;
                for (auto [di, ri] : dr) {
                    d.push_back(di);
                    r.push_back(ri);
                }
                const auto desc = NormicBundleDesc::numeric(n, dr);
                const auto P = compute_brauer(desc);
                const auto expected = oracle::brauer_quotient(n, d, r);
                ++s.descs;
                if (canonical_form(P.quotient.group).group.orders() != expected.quotient) ++s.quotient_mismatch;
                const std::vector<std::int64_t> ones(dr.size(), 1);
                const std::int64_t l = lcm_of(r);
                const bool kernel_ok = membership_test(desc, ones) && P.is_member(P.kernel_generator) &&
                                       P.kernel_order == l && expected.kernel_order == l &&
                                       P.quotient.group.order() * l == P.membership.order() &&
                                       P.membership.order() == expected.membership_order;
                if (!kernel_ok) ++s.kernel_failures;
            }
    return s;
}

Sweep sweep_result;

Outcome criterion1() {
    sweep_result = brauer_sweep();
    return {sweep_result.quotient_mismatch == 0 && sweep_result.descs > 0,
            std::to_string(sweep_result.descs) + " descs, " + std::to_string(sweep_result.quotient_mismatch) + " mismatches"};
}

Outcome criterion2() {
    std::int64_t groups = 0, failures = 0;
    std::string first;
    for (const auto& orders : selftest::groups_up_to(6 * 6 * 6)) {
        if (orders.size() > 3 || lcm_of(orders) > 6) continue;
        ++groups;
        const FinAbGroup B(orders);
        try {
            const auto plan = construct_bundle(B);
            const bool ok = verify_plan(plan).all_passed() &&
                            canonical_form(compute_brauer(plan.desc()).quotient.group).group == canonical_form(B).group;
            if (!ok) {
                ++failures;
                if (first.empty()) first = B.str();
            }
        } catch (const std::exception& e) {
            ++failures;
            if (first.empty()) first = B.str() + ": " + e.what();
        }
    }
    std::string detail = std::to_string(groups) + " groups, " + std::to_string(failures) + " failures";
    if (!first.empty()) detail += " (first: " + first + ")";
    return {failures == 0 && groups > 0, detail};
}

Outcome criterion3() {
    std::mt19937_64 rng(20240601);
    std::int64_t pairs = 0, mismatches = 0;
    for (std::int64_t p = 3; p <= 50; ++p) {
        if (!is_prime(p)) continue;
        const auto place = PlaceModel::standard(p, 2);
        const std::int64_t span = p * p * p;
        for (int t = 0; t < 200; ++t) {
            std::int64_t a = 0, b = 0;
            while (a == 0) a = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
            while (b == 0) b = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
            const auto inv = cyclic_invariant(place, CycloElement(2, Rational(a)), CycloElement(2, Rational(b)));
            ++pairs;
            if ((inv.num == 0) != (oracle::hilbert_symbol(a, b, p) == 1)) ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome criterion4() {
    ConstructOptions opt;
    opt.a = 5;
    opt.places = {5};
    const auto plan = construct_bundle(FinAbGroup({2}), opt);
    const RatPoly expected_P = RatPoly::from_ints({-6, 0, 1}) * RatPoly::from_ints({-7, 0, 1});
    if (plan.product() != expected_P) return {false, "constructed P = " + plan.product().str()};
    const auto img = phi_image(plan, plan.places.front());
    const std::set<Character> expected{Character{{0}}, Character{{1}}};  // invariants 0 and 1/2
    const bool ok = img.completeness == Completeness::certified_full && img.realized == expected;
    return {ok, "realized " + std::to_string(img.realized.size()) + " characters, " + to_string(img.completeness)};
}

std::int64_t generator(std::int64_t q) {
    for (std::int64_t g = 2;; ++g) {
        bool primitive = true;
        for (auto [f, e] : factorize(q - 1)) {
            (void)e;
            primitive = primitive && powmod(g, (q - 1) / f, q) != 1;
        }
        if (primitive) return g;
    }
}

Outcome criterion5() {
    std::mt19937_64 rng(77);
    std::int64_t cases = 0, epsilon_sets = 0, empty_sets = 0, hw_failures = 0;
    for (std::int64_t q = 2; q <= 121; ++q) {
        if (!is_prime(q)) continue;
        const std::int64_t g = generator(q);
        // tuples r_0 <= ... <= r_m with m <= 3, r_i | q - 1, prod <= 16; r_i = 1 allowed
        std::vector<std::vector<std::int64_t>> tuples;
        std::vector<std::int64_t> cur;
        const auto ds = divisors(q - 1);
        std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t from, std::int64_t prod) {
            if (!cur.empty()) tuples.push_back(cur);
            if (cur.size() == 4) return;
            for (std::size_t i = from; i < ds.size(); ++i) {
                if (prod * ds[i] > 16) break;
                cur.push_back(ds[i]);
                rec(i, prod * ds[i]);
                cur.pop_back();
            }
        };
        rec(0, 1);
        for (const auto& r : tuples) {
            if (!hasse_weil_gate(q, r)) continue;
            std::int64_t total_degree = std::accumulate(r.begin(), r.end(), std::int64_t{0});
            if (total_degree > q) continue;  // no separable product of that degree splits into these pieces
            for (int trial = 0; trial < 3; ++trial) {
                std::vector<FpPoly> f;
                FpPoly product;
                for (int attempt = 0; attempt < 200; ++attempt) {
                    f.clear();
                    product = FpPoly::constant(q, 1);
                    for (auto ri : r) {
                        std::vector<std::int64_t> c(static_cast<std::size_t>(ri) + 1, 1);
                        for (std::int64_t i = 0; i < ri; ++i) c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
                        f.emplace_back(q, c);
                        product = product * f.back();
                    }
                    if (is_separable(product)) break;
                }
                if (!is_separable(product)) continue;
                ++cases;
                const Integer twice_g = twice_genus(r);
                std::vector<std::int64_t> eps_index(r.size(), 0);
                while (true) {
                    std::vector<ResidueCondition> conds;
                    for (std::size_t i = 0; i < r.size(); ++i) conds.push_back({f[i], r[i], powmod(g, eps_index[i], q)});
                    ++epsilon_sets;
                    if (residue_power_class_set(q, conds).empty()) ++empty_sets;
                    const auto count = curve_count(q, conds);
                    if (!count.projective() || !within_hasse_weil(q, *count.projective(), twice_g)) ++hw_failures;
                    std::size_t i = 0;
                    while (i < r.size() && ++eps_index[i] == r[i]) eps_index[i++] = 0;
                    if (i == r.size()) break;
                }
            }
        }
    }
    return {empty_sets == 0 && hw_failures == 0 && cases > 0,
            std::to_string(cases) + " curves, " + std::to_string(epsilon_sets) + " epsilon classes, " +
                std::to_string(empty_sets) + " empty sets, " + std::to_string(hw_failures) + " Hasse-Weil failures"};
}

Outcome criterion6() {
    std::mt19937_64 rng(4242);
    std::int64_t groups = 0, pairs = 0, wrong = 0, random_sets = 0, closure_failures = 0;
    for (const auto& orders : selftest::groups_up_to(16)) {
        const FinAbGroup B(orders);
        if (canonical_form(B).group.orders() != orders && !orders.empty()) continue;  // one per isomorphism class
        ++groups;
        const auto subs = enumerate_subgroups(B);
        const DualGroup dual = dual_group(B);
        for (const auto& B0 : subs) {
            if (B0.order == 1) continue;
            const auto S = plan_targets(B, B0);
            const auto report = classify_obstruction(B, S);
            for (const auto& v : report.verdicts) {
                ++pairs;
                const bool expected = B0.is_subset_of(v.subgroup);
                if (v.obstructs != expected || selftest::obstructs_by_pairing(dual, v.subgroup, S) != expected) ++wrong;
            }
        }
        const auto chars = dual.all();
        for (int t = 0; t < 1000; ++t) {
            std::set<Character> S;
            for (const auto& chi : chars)
                if (rng() % 2) S.insert(chi);
            const auto report = classify_obstruction(B, S);
            ++random_sets;
            bool closed = report.upward_closed;
            for (const auto& lo : report.verdicts)
                if (lo.obstructs)
                    for (const auto& hi : report.verdicts)
                        if (lo.subgroup.is_subset_of(hi.subgroup) && !hi.obstructs) closed = false;
            if (!closed) ++closure_failures;
        }
    }
    return {wrong == 0 && closure_failures == 0,
            std::to_string(groups) + " groups, " + std::to_string(pairs) + " (B0, B') pairs, " + std::to_string(wrong) +
                " wrong verdicts; " + std::to_string(random_sets) + " random S, " + std::to_string(closure_failures) +
                " closure failures"};
}

Outcome criterion7() {
    return {sweep_result.descs > 0 && sweep_result.kernel_failures == 0,
            std::to_string(sweep_result.descs) + " descs, " + std::to_string(sweep_result.kernel_failures) + " failures"};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion8() {
    const std::string cli = NORMIC_CLI_PATH;
    const std::string base = std::string(NORMIC_WORK_DIR) + "/determinism";
    std::string detail;
    bool ok = true;
    for (const std::string mode : {"", " --json"}) {
        std::vector<std::string> outputs;
        for (int run = 0; run < 2; ++run) {
            const std::string path = base + std::to_string(run) + ".out";
            const std::string cmd = "\"" + cli + "\" --seed 12345" + mode + " selftest --out \"" + path + "\"";
            const int status = std::system(cmd.c_str());
            ok = ok && status == 0;
            outputs.push_back(slurp(path));
        }
        ok = ok && !outputs[0].empty() && outputs[0] == outputs[1];
        detail += (detail.empty() ? "" : ", ") + std::string(mode.empty() ? "text" : "json") + " " +
                  std::to_string(outputs[0].size()) + " bytes " + (outputs[0] == outputs[1] ? "identical" : "differ");
    }
    return {ok, detail};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "brauer formula vs enumeration", 60, criterion1},
        {2, "prescribed group realization", 30, criterion2},
        {3, "tame symbol vs Hilbert symbol", 30, criterion3},
        {4, "surjectivity witness a=5 p=5", 1, criterion4},
        {5, "residue classes and Hasse-Weil", 120, criterion5},
        {6, "obstruction classification", 30, criterion6},
        {7, "diagonal kernel facts", 60, criterion7},
        {8, "selftest determinism", 60, criterion8},
    };
    bool all = true;
    double sweep_seconds = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.id == 1) sweep_seconds = seconds;
        if (c.id == 7) seconds += sweep_seconds;  // reuses the criterion 1 sweep
        const bool pass = out.ok && seconds < c.budget;
        all = all && pass;
        std::printf("criterion %d [%s]: %s  %.2f s / %.0f s  %s\n", c.id, c.name, pass ? "PASS" : "FAIL", seconds, c.budget,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
