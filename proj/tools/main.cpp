#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "normic/errors.hpp"
#include "normic/io.hpp"
#include "normic/obstruct.hpp"
#include "selftest.hpp"

using namespace normic;
using io::Json;

namespace {

struct RunConfig {
    std::uint64_t seed = 1;
    bool json = false;
    std::int64_t prime_scan_cap = kDefaultPrimeScanCap;
    std::int64_t subgroup_cap = kDefaultSubgroupCap;
    std::int64_t samples = kDefaultSplittingSamples;
};

std::vector<std::int64_t> parse_list(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            require(used == item.size(), "");
        } catch (const std::exception&) {
            throw InputError(what + ": expected comma-separated integers, got \"" + s + "\"");
        }
    }
    return out;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

Json with_seed(const Json& j, std::uint64_t seed) {
    Json out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out[it.key()] = it.value();
        if (it.key() == "schema") out["seed"] = seed;
    }
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    require(out.good(), "cannot write " + path);
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string tuple_str(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string subgroup_str(const Subgroup& H) {
    std::string s = "<";
    for (std::size_t i = 0; i < H.generators.size(); ++i) s += (i ? ", " : "") + tuple_str(H.generators[i].coords);
    return s + ">";
}

std::string characters_str(const std::set<Character>& S) {
    std::string s = "{";
    bool first = true;
    for (const auto& chi : S) {
        s += (first ? "" : ", ") + tuple_str(chi.coords);
        first = false;
    }
    return s + "}";
}

// ---------------------------------------------------------------- group

int cmd_group(const RunConfig& cfg, const std::string& orders_arg, const std::string& element_arg, bool list_subgroups) {
    const FinAbGroup G(parse_list(orders_arg, "--orders"));
    const auto cf = canonical_form(G);
    Json out;
    out["schema"] = "normic/group-output/v1";
    out["seed"] = cfg.seed;
    out["orders"] = G.orders();
    out["invariant_factors"] = cf.group.orders();
    out["order"] = G.order();
    out["exponent"] = G.exponent();
    std::optional<GroupElement> x;
    if (!element_arg.empty()) {
        const auto coords = parse_list(element_arg, "--element");
        require(coords.size() == G.rank(), "--element: wrong number of coordinates");
        x = G.element(coords);
    }
    std::vector<Subgroup> subs;
    if (list_subgroups) {
        subs = enumerate_subgroups(G, cfg.subgroup_cap);
        out["subgroup_count"] = subs.size();
        Json arr = Json::array();
        for (const auto& H : subs) {
            Json h;
            Json gens = Json::array();
            for (const auto& g : H.generators) gens.push_back(g.coords);
            h["generators"] = gens;
            h["order"] = H.order;
            arr.push_back(h);
        }
        out["subgroups"] = arr;
    }
    if (x) {
        out["element"] = x->coords;
        out["element_order"] = element_order(G, *x);
    }
    io::require_valid(out, "group-output");
    if (cfg.json) {
        std::cout << dump(out);
        return 0;
    }
    std::cout << "group: " << G.str() << "\n"
              << "invariant factors: " << cf.group.str() << "\n"
              << "order " << G.order() << ", exponent " << G.exponent() << "\n";
    if (x) std::cout << "order of " << tuple_str(x->coords) << ": " << element_order(G, *x) << "\n";
    if (list_subgroups) {
        std::cout << subs.size() << " subgroups\n";
        for (const auto& H : subs) std::cout << "  " << subgroup_str(H) << " order " << H.order << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- brauer

int cmd_brauer(const RunConfig& cfg, const std::string& desc_path) {
    const auto desc = io::desc_from_json(read_json(desc_path), cfg.samples);
    const auto P = compute_brauer(desc);
    const Json out = with_seed(io::to_json(P), cfg.seed);
    io::require_valid(out, "brauer-output");
    if (cfg.json) {
        std::cout << dump(out);
        return 0;
    }
    std::cout << "quotient: " << canonical_form(P.quotient.group).group.str() << "\n"
              << "membership group: " << P.membership.str() << "\n"
              << "diagonal kernel order: " << P.kernel_order << "\n";
    for (std::size_t i = 0; i < desc.factors.size(); ++i) {
        const auto& f = desc.factors[i];
        std::cout << "factor " << i << ": d=" << f.d << " r=" << f.r << " (" << f.r_source << ")";
        if (f.poly) std::cout << " " << f.poly->str();
        std::cout << "\n";
    }
    if (!P.generator_lifting) std::cout << "note: c is not a certified norm; generators may not lift\n";
    return 0;
}

// ---------------------------------------------------------------- construct

ConstructOptions construct_options(const RunConfig& cfg, const std::string& places, std::optional<std::int64_t> a,
                                   std::int64_t u_cap, std::int64_t cert_cap) {
    ConstructOptions opt;
    if (!places.empty()) opt.places = parse_list(places, "--places");
    opt.a = a;
    opt.u_search_cap = u_cap;
    opt.cert_scan_cap = cert_cap;
    opt.prime_scan_cap = cfg.prime_scan_cap;
    return opt;
}

void print_plan(const ConstructionPlan& plan, const PlanReport& report) {
    std::cout << "target: " << plan.target.str() << "\n"
              << "n = " << plan.n << ", a = " << plan.a;
    if (!plan.places.empty()) {
        std::cout << ", places";
        for (const auto& v : plan.places) std::cout << " " << v.p;
    }
    if (plan.auxiliary_prime) std::cout << ", auxiliary prime " << *plan.auxiliary_prime;
    std::cout << "\n";
    for (std::size_t i = 0; i < plan.P.size(); ++i)
        std::cout << "P_" << i << " = " << plan.P[i].str() << "  (r=" << plan.r[i] << ")\n";
    std::cout << "quotient: " << canonical_form(compute_brauer(plan.desc()).quotient.group).group.str() << "\n";
    std::size_t ok = 0;
    for (const auto& c : report.checks) ok += c.passed;
    std::cout << "verify_plan: " << ok << "/" << report.checks.size() << " checks passed\n";
    for (const auto& c : report.checks)
        if (!c.passed) std::cout << "  failed " << c.name << ": " << c.detail << "\n";
}

void print_images(const std::vector<LocalImageSet>& images) {
    for (const auto& img : images)
        std::cout << "local image at " << img.label() << ": " << characters_str(img.realized) << " ("
                  << to_string(img.completeness) << ", " << to_string(img.provenance) << ")\n";
}

void print_classification(const std::string& title, const ObstructionReport& r) {
    std::cout << title << " S = " << characters_str(r.S) << "\n";
    for (const auto& v : r.verdicts)
        std::cout << "  " << subgroup_str(v.subgroup) << " order " << v.subgroup.order << ": "
                  << (v.obstructs ? "obstructs" : "does not obstruct") << "\n";
}

int report_pipeline(const RunConfig& cfg, const ObstructionPipeline& pipe, const std::string& out_path) {
    const Json out = with_seed(io::to_json(pipe), cfg.seed);
    io::require_valid(out, "obstruct-report");
    if (!out_path.empty()) emit(dump(out), out_path);
    if (cfg.json) {
        if (out_path.empty()) std::cout << dump(out);
        return 0;
    }
    std::cout << "Brauer quotient: " << canonical_form(compute_brauer(pipe.plan.desc()).quotient.group).group.str() << "\n";
    if (pipe.B0.order > 0) std::cout << "B0 = " << subgroup_str(pipe.B0) << " (order " << pipe.B0.order << ")\n";
    print_images(pipe.images);
    print_classification("verified (" + to_string(pipe.verified.completeness) + ")", pipe.verified_report);
    print_classification("target (hypothesized-target)", pipe.target_report);
    std::cout << "classification: " << out["classification"].get<std::string>() << "\n";
    return 0;
}

int cmd_construct(const RunConfig& cfg, const std::string& target, const ConstructOptions& opt, const std::string& out_path,
                  const std::string& obstruct_with) {
    const FinAbGroup B(parse_list(target, "--target"));
    if (!obstruct_with.empty()) {
        const auto H = subgroup_with_orders(B, parse_list(obstruct_with, "--obstruct-with"));
        require(H.has_value(), "--obstruct-with: no subgroup of " + B.str() + " has invariant factors " + obstruct_with);
        require(H->order > 1, "--obstruct-with: B0 must be nontrivial");
        return report_pipeline(cfg, run_obstruction_pipeline(B, *H, opt, cfg.prime_scan_cap), out_path);
    }
    const auto plan = construct_bundle(B, opt);
    const auto report = verify_plan(plan);
    const Json out = with_seed(io::to_json(plan), cfg.seed);
    io::require_valid(out, "plan");
    if (!out_path.empty()) emit(dump(out), out_path);
    if (cfg.json) {
        if (out_path.empty()) std::cout << dump(out);
    } else {
        print_plan(plan, report);
    }
    if (!report.all_passed()) throw InternalError("construct: the emitted plan fails verification");
    return 0;
}

// ---------------------------------------------------------------- symbol

int cmd_symbol(const RunConfig& cfg, std::int64_t p, std::int64_t n, const std::string& a_arg, const std::string& b_arg,
               std::optional<std::int64_t> omega) {
    const PlaceModel place = omega ? PlaceModel::make(p, n, *omega) : PlaceModel::standard(p, n);
    const Rational a = io::rational_from_json(Json(a_arg)), b = io::rational_from_json(Json(b_arg));
    require(a != 0 && b != 0, "symbol: a and b must be nonzero");
    const InvValue inv = cyclic_invariant(place, CycloElement(n, a), CycloElement(n, b));
    Json out;
    out["schema"] = "normic/symbol-output/v1";
    out["seed"] = cfg.seed;
    out["p"] = p;
    out["n"] = n;
    out["omega"] = place.omega;
    out["a"] = io::to_json(a);
    out["b"] = io::to_json(b);
    out["inv"] = inv.str();
    io::require_valid(out, "symbol-output");
    if (cfg.json)
        std::cout << dump(out);
    else
        std::cout << "inv_p(" << out["a"].get<std::string>() << ", " << out["b"].get<std::string>() << ") at p=" << p
                  << ", omega=" << place.omega << ": " << inv.str() << "\n";
    return 0;
}

// ---------------------------------------------------------------- obstruct

int cmd_obstruct(const RunConfig& cfg, const std::string& plan_path, const std::string& places_arg,
                 const std::string& targets_path, const std::string& out_path) {
    ObstructionPipeline pipe;
    pipe.plan = io::plan_from_json(read_json(plan_path));
    const FinAbGroup& B = pipe.plan.target;
    std::vector<std::int64_t> primes;
    if (places_arg.empty())
        for (const auto& v : pipe.plan.places) primes.push_back(v.p);
    else
        primes = parse_list(places_arg, "--places");
    for (std::int64_t p : primes) {
        PlaceModel place;
        auto it = std::find_if(pipe.plan.places.begin(), pipe.plan.places.end(), [p](const PlaceModel& v) { return v.p == p; });
        place = it != pipe.plan.places.end() ? *it : PlaceModel::standard(p, pipe.plan.n);
        pipe.images.push_back(pipe.plan.a % p == 0 ? phi_image(pipe.plan, place) : good_place_image(pipe.plan, place));
    }
    pipe.images.push_back(archimedean_image(pipe.plan));
    pipe.verified = total_set(B, pipe.images);

    if (!targets_path.empty()) {
        const Json targets = read_json(targets_path);
        io::require_valid(targets, "targets");
        if (targets.contains("B0")) {
            std::vector<GroupElement> gens;
            for (const auto& g : targets["B0"]) {
                const auto coords = g.get<std::vector<std::int64_t>>();
                require(coords.size() == B.rank(), "targets: B0 generator has the wrong length");
                gens.push_back(B.element(coords));
            }
            pipe.B0 = generated_subgroup(B, gens);
            pipe.target = plan_targets(B, pipe.B0);
        }
        if (targets.contains("S")) {
            std::set<Character> S;
            for (const auto& chi : targets["S"]) S.insert(io::character_from_json(B, chi));
            require(!targets.contains("B0") || S == pipe.target, "targets: S disagrees with the set derived from B0");
            pipe.target = S;
        }
    } else {
        pipe.target = pipe.verified.S;
    }
    if (!pipe.images.empty() && pipe.images.front().place) {
        const auto& first = pipe.images.front().realized;
        pipe.target_within_place_image =
            std::includes(first.begin(), first.end(), pipe.target.begin(), pipe.target.end());
    }
    pipe.verified_report = classify_obstruction(B, pipe.verified.S);
    pipe.target_report = classify_obstruction(B, pipe.target);
    return report_pipeline(cfg, pipe, out_path);
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const RunConfig& cfg, const std::string& out_path) {
    const auto report = selftest::run(cfg.seed);
    const std::string text = cfg.json ? dump(selftest::to_json(report)) : selftest::render_text(report);
    emit(text, out_path);
    return report.passed() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unramified Brauer groups of cyclic normic bundles"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "Seed for sampled checks; echoed into outputs");
    app.add_flag("--json", cfg.json, "Machine-readable output");
    app.add_option("--prime-scan-cap", cfg.prime_scan_cap, "Largest prime scanned by place searches")->check(CLI::PositiveNumber);
    app.add_option("--subgroup-cap", cfg.subgroup_cap, "Largest subgroup lattice enumerated")->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "Primes sampled per splitting degree")->check(CLI::PositiveNumber);

    std::string orders, element;
    bool list_subgroups = false;
    auto* group = app.add_subcommand("group", "Finite abelian group summary");
    group->add_option("--orders", orders, "Cyclic orders, e.g. 4,2")->required();
    group->add_option("--element", element, "Element coordinates");
    group->add_flag("--subgroups", list_subgroups, "Enumerate subgroups");

    std::string action = "compute", desc_path;
    auto* brauer = app.add_subcommand("brauer", "Brauer quotient of a desc");
    brauer->add_option("action", action)->check(CLI::IsMember({"compute"}));
    brauer->add_option("--desc", desc_path, "desc JSON")->required();

    std::string target, places, out_path, obstruct_with;
    std::optional<std::int64_t> a;
    std::int64_t u_cap = ConstructOptions{}.u_search_cap, cert_cap = ConstructOptions{}.cert_scan_cap;
    auto* construct = app.add_subcommand("construct", "Realize a prescribed group");
    construct->add_option("--target", target, "Cyclic orders of B, e.g. 4,2")->required();
    construct->add_option("--places", places, "Primes = 1 mod n with v(a) = 1");
    construct->add_option("--a", a, "Radicand");
    construct->add_option("--out", out_path, "Write the JSON artifact here");
    construct->add_option("--obstruct-with", obstruct_with, "Invariant factors of B0; runs the obstruction pipeline");
    construct->add_option("--u-search-cap", u_cap)->check(CLI::NonNegativeNumber);
    construct->add_option("--cert-scan-cap", cert_cap)->check(CLI::PositiveNumber);

    std::int64_t p = 0, n = 0;
    std::string sa, sb;
    std::optional<std::int64_t> omega;
    auto* symbol = app.add_subcommand("symbol", "Tame invariant of (a, b) at a degree-one place");
    symbol->add_option("--p", p)->required();
    symbol->add_option("--n", n)->required();
    symbol->add_option("--a", sa)->required();
    symbol->add_option("--b", sb)->required();
    symbol->add_option("--omega", omega, "Image of zeta_n mod p");

    std::string obstruct_action = "analyze", plan_path, targets_path;
    auto* obstruct = app.add_subcommand("obstruct", "Classify obstructing subgroups for a plan");
    obstruct->add_option("action", obstruct_action)->check(CLI::IsMember({"analyze"}));
    obstruct->add_option("--desc", plan_path, "Plan JSON from construct")->required();
    obstruct->add_option("--places", places, "Places to evaluate");
    obstruct->add_option("--targets", targets_path, "targets JSON");
    obstruct->add_option("--out", out_path);

    auto* self = app.add_subcommand("selftest", "Compare against the brute-force oracles");
    self->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*group) return cmd_group(cfg, orders, element, list_subgroups);
        if (*brauer) return cmd_brauer(cfg, desc_path);
        if (*construct) return cmd_construct(cfg, target, construct_options(cfg, places, a, u_cap, cert_cap), out_path, obstruct_with);
        if (*symbol) return cmd_symbol(cfg, p, n, sa, sb, omega);
        if (*obstruct) return cmd_obstruct(cfg, plan_path, places, targets_path, out_path);
        if (*self) return cmd_selftest(cfg, out_path);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const SearchExhausted& e) {
        std::cerr << "search exhausted: " << e.what() << "\n";
        return 3;
    } catch (const CertificateError& e) {
        std::cerr << "certificate error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 4;
}
