#include "normic/io.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "normic/errors.hpp"

namespace normic::io {

namespace detail {
const std::map<std::string, const char*>& schema_sources();
}

// ---------------------------------------------------------------- scalars and polynomials

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    require(j.is_string(), "expected a rational as a string or integer");
    return parse_rational(j.get<std::string>());
}

Json to_json(const RatPoly& f) {
    Json out = Json::array();
    for (const auto& c : f.coeffs()) out.push_back(to_json(c));
    return out;
}

RatPoly ratpoly_from_json(const Json& j) {
    require(j.is_array(), "expected a coefficient array");
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return RatPoly(std::move(c));
}

Json to_json(const CycloElement& x) {
    Json out = Json::array();
    for (const auto& c : x.coords()) out.push_back(to_json(c));
    return out;
}

CycloElement cyclo_from_json(std::int64_t conductor, const Json& j) {
    if (!j.is_array()) return CycloElement(conductor, rational_from_json(j));
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return CycloElement(conductor, std::move(c));
}

Json to_json(const KummerElement& x) {
    Json out = Json::array();
    for (const auto& c : x.coords()) out.push_back(to_json(c));
    return out;
}

KummerElement kummer_from_json(const KummerExt& K, const Json& j) {
    require(j.is_array() && static_cast<std::int64_t>(j.size()) <= K.n, "expected at most n coordinates");
    std::vector<CycloElement> coords;
    for (const auto& c : j) coords.push_back(cyclo_from_json(K.a.conductor(), c));
    return KummerElement(K.a, K.n, std::move(coords));
}

Json to_json(const PlaceModel& P) { return Json{{"p", P.p}, {"n", P.n}, {"omega", P.omega}}; }

PlaceModel place_from_json(const Json& j) {
    return PlaceModel::make(j.at("p").get<std::int64_t>(), j.at("n").get<std::int64_t>(), j.at("omega").get<std::int64_t>());
}

// ---------------------------------------------------------------- certificates

Json to_json(const IrreducibilityCertificate& c) {
    Json out;
    out["kind"] = to_string(c.kind);
    out["field"] = c.field == CertField::base ? "k" : "K";
    Json poly = Json::array();
    for (const auto& x : c.poly) poly.push_back(to_json(x));
    out["poly"] = poly;
    out["place"] = c.place ? to_json(*c.place) : Json(nullptr);
    out["beta"] = c.beta ? Json(*c.beta) : Json(nullptr);
    if (c.kind == CertKind::composition) {
        out["h"] = to_json(c.h);
        out["g"] = to_json(c.g);
        out["theta_power"] = c.theta_power;
        Json parts = Json::array();
        for (const auto& p : c.parts) parts.push_back(to_json(p));
        out["parts"] = parts;
    }
    return out;
}

IrreducibilityCertificate certificate_from_json(const KummerExt& K, const Json& j) {
    IrreducibilityCertificate c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "eisenstein") c.kind = CertKind::eisenstein;
    else if (kind == "modular") c.kind = CertKind::modular;
    else if (kind == "composition") c.kind = CertKind::composition;
    else if (kind == "linear") c.kind = CertKind::linear;
    else throw InputError("unknown certificate kind " + kind);
    c.field = j.at("field").get<std::string>() == "K" ? CertField::kummer : CertField::base;
    for (const auto& x : j.at("poly")) c.poly.push_back(kummer_from_json(K, x));
    if (j.contains("place") && !j["place"].is_null()) c.place = place_from_json(j["place"]);
    if (j.contains("beta") && !j["beta"].is_null()) c.beta = j["beta"].get<std::int64_t>();
    if (c.kind == CertKind::composition) {
        c.h = ratpoly_from_json(j.at("h"));
        c.g = ratpoly_from_json(j.at("g"));
        c.theta_power = j.at("theta_power").get<std::int64_t>();
        for (const auto& p : j.at("parts")) c.parts.push_back(certificate_from_json(K, p));
    }
    return c;
}

// ---------------------------------------------------------------- groups

Json to_json(const FinAbGroup& G) { return Json(G.orders()); }
Json to_json(const GroupElement& x) { return Json(x.coords); }
Json to_json(const Character& chi) { return Json(chi.coords); }

Character character_from_json(const FinAbGroup& B, const Json& j) {
    require(j.is_array() && j.size() == B.rank(), "character has the wrong number of coordinates");
    return Character{B.element(j.get<std::vector<std::int64_t>>()).coords};
}

Json to_json(const BrauerPresentation& P) {
    Json out;
    out["schema"] = "normic/brauer-output/v1";
    out["n"] = P.n;
    out["degrees"] = P.functional;
    out["splitting_degrees"] = P.ambient.orders();
    out["membership_orders"] = P.membership.orders();
    out["kernel_order"] = P.kernel_order;
    out["quotient_invariant_factors"] = P.quotient.group.orders();
    out["quotient"] = P.quotient.group.str();
    Json gens = Json::array();
    for (const auto& g : P.generators) gens.push_back(g ? to_json(*g) : Json(nullptr));
    out["generators"] = gens;
    out["generator_lifting"] = P.generator_lifting;
    return out;
}

Json to_json(const PlanReport& r) {
    Json out = Json::array();
    for (const auto& c : r.checks) out.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return out;
}

// ---------------------------------------------------------------- plans

Json to_json(const ConstructionPlan& plan) {
    Json out;
    out["schema"] = kPlanSchemaId;
    out["target"] = plan.target.orders();
    out["n"] = plan.n;
    out["a"] = std::to_string(plan.a);
    Json places = Json::array();
    for (const auto& P : plan.places) places.push_back(P.p);
    out["places"] = places;
    out["auxiliary_prime"] = plan.auxiliary_prime ? Json(*plan.auxiliary_prime) : Json(nullptr);
    out["r"] = plan.r;
    Json u = Json::array();
    for (const auto& x : plan.u) u.push_back(x.str());
    out["u"] = u;
    Json Q = Json::array(), P = Json::array();
    for (const auto& f : plan.Q) Q.push_back(to_json(f));
    for (const auto& f : plan.P) P.push_back(to_json(f));
    out["Q"] = Q;
    out["P"] = P;
    out["P_expanded"] = plan.product().str();
    out["kummer_certificate"] = to_json(plan.kummer.certificate);
    Json certs = Json::array();
    for (const auto& c : plan.certificates) certs.push_back(to_json(c));
    out["certificates"] = certs;
    return out;
}

ConstructionPlan plan_from_json(const Json& j) {
    require_valid(j, "plan");
    ConstructionPlan plan;
    plan.n = j.at("n").get<std::int64_t>();
    const Rational a = rational_from_json(j.at("a"));
    require(boost::multiprecision::denominator(a) == 1 && a > 1 && a < Rational(Integer(1) << 62), "plan: a must be an integer > 1");
    plan.a = static_cast<std::int64_t>(boost::multiprecision::numerator(a));
    plan.target = FinAbGroup(j.at("target").get<std::vector<std::int64_t>>());
    plan.kummer.n = plan.n;
    plan.kummer.a = CycloElement(plan.n, Rational(plan.a));
    plan.kummer.certificate = certificate_from_json(plan.kummer, j.at("kummer_certificate"));
    for (const auto& p : j.at("places")) plan.places.push_back(PlaceModel::standard(p.get<std::int64_t>(), plan.n));
    if (j.contains("auxiliary_prime") && !j["auxiliary_prime"].is_null()) plan.auxiliary_prime = j["auxiliary_prime"].get<std::int64_t>();
    plan.r = j.at("r").get<std::vector<std::int64_t>>();
    for (const auto& x : j.at("u")) {
        const Rational q = rational_from_json(x);
        require(boost::multiprecision::denominator(q) == 1, "plan: u must be integers");
        plan.u.push_back(boost::multiprecision::numerator(q));
    }
    for (const auto& f : j.at("Q")) plan.Q.push_back(ratpoly_from_json(f));
    for (const auto& f : j.at("P")) plan.P.push_back(ratpoly_from_json(f));
    for (const auto& c : j.at("certificates")) plan.certificates.push_back(certificate_from_json(plan.kummer, c));
    return plan;
}

// ---------------------------------------------------------------- obstruction

Json to_json(const LocalImageSet& img) {
    Json realized = Json::array();
    for (const auto& c : img.realized) realized.push_back(to_json(c));
    return Json{{"place", img.label()},
                {"realized", realized},
                {"completeness", to_string(img.completeness)},
                {"provenance", to_string(img.provenance)},
                {"witnesses", img.witnesses}};
}

Json to_json(const ObstructionReport& r) {
    Json out;
    Json S = Json::array();
    for (const auto& c : r.S) S.push_back(to_json(c));
    out["S"] = S;
    out["upward_closed"] = r.upward_closed;
    Json subs = Json::array();
    for (const auto& v : r.verdicts) {
        Json gens = Json::array();
        for (const auto& g : v.subgroup.generators) gens.push_back(to_json(g));
        subs.push_back(Json{{"generators", gens}, {"order", v.subgroup.order}, {"obstructs", v.obstructs}});
    }
    out["subgroups"] = subs;
    out["minimal_obstructing"] = r.minimal;
    out["minimum"] = r.minimum ? Json(*r.minimum) : Json(nullptr);
    return out;
}

Json to_json(const ObstructionPipeline& p) {
    Json out;
    out["schema"] = "normic/obstruct-report/v1";
    out["B"] = p.plan.target.orders();
    Json places = Json::array();
    for (const auto& img : p.images) places.push_back(to_json(img));
    out["places"] = places;
    Json verified = to_json(p.verified_report);
    verified["provenance"] = to_string(Provenance::verified_local_data);
    verified["completeness"] = to_string(p.verified.completeness);
    out["verified"] = verified;
    Json target = to_json(p.target_report);
    target["provenance"] = to_string(Provenance::hypothesized_target);
    out["target"] = target;
    Json b0 = Json::array();
    for (const auto& g : p.B0.generators) b0.push_back(to_json(g));
    out["B0"] = b0;
    out["target_within_place_image"] = p.target_within_place_image;
    std::string summary;
    const auto& t = p.target_report;
    if (t.minimal.empty()) {
        summary = "no subgroup obstructs the target set";
    } else if (t.minimum) {
        const bool precise = p.B0.order > 1 && std::all_of(t.verdicts.begin(), t.verdicts.end(), [&](const SubgroupVerdict& v) {
            return v.obstructs == p.B0.is_subset_of(v.subgroup);
        });
        summary = precise ? "B' obstructs exactly when it contains B0"
                          : "unique minimal obstructing subgroup of order " + std::to_string(t.verdicts[*t.minimum].subgroup.order);
    } else {
        summary = std::to_string(t.minimal.size()) + " minimal obstructing subgroups";
    }
    out["classification"] = summary;
    return out;
}

// ---------------------------------------------------------------- descs

NormicBundleDesc desc_from_json(const Json& j, std::int64_t samples) {
    require_valid(j, "desc");
    NormicBundleDesc desc;
    desc.n = j.at("n").get<std::int64_t>();
    if (j.contains("c")) desc.c = rational_from_json(j["c"]);
    const bool with_polys = std::any_of(j["factors"].begin(), j["factors"].end(), [](const Json& f) { return f.contains("poly"); });
    if (with_polys) {
        require(j.contains("a"), "desc: polynomial factors need the radicand a");
        require(desc.n >= 2, "desc: polynomial factors need n >= 2");
        desc.kummer = KummerExt::make(desc.n, CycloElement(desc.n, rational_from_json(j["a"])));
    }
    for (const auto& f : j["factors"]) {
        FactorData fd;
        if (f.contains("poly")) {
            require(desc.kummer.has_value(), "desc: mixing numeric and polynomial factors is not supported");
            fd.poly = ratpoly_from_json(f["poly"]);
            require(fd.poly->is_monic(), "desc: factor polynomials must be monic");
            fd.d = fd.poly->degree();
            if (f.contains("d")) require(f["d"].get<std::int64_t>() == fd.d, "desc: d differs from the polynomial degree");
            auto cert = find_certificate(*desc.kummer, to_kpoly(desc.kummer->a, desc.n, *fd.poly), CertField::base);
            if (!cert) throw CertificateError("desc: no irreducibility certificate for " + fd.poly->str());
            fd.certificate = *cert;
            if (f.contains("r")) {
                fd.r = f["r"].get<std::int64_t>();
            } else {
                const auto s = splitting_degree(*desc.kummer, *fd.poly, samples);
                fd.r = s.r;
                fd.r_source = s.tag;
            }
        } else {
            require(!desc.kummer.has_value(), "desc: mixing numeric and polynomial factors is not supported");
            require(f.contains("d") && f.contains("r"), "desc: numeric factors need d and r");
            fd.d = f["d"].get<std::int64_t>();
            fd.r = f["r"].get<std::int64_t>();
        }
        desc.factors.push_back(std::move(fd));
    }
    desc.validate();
    return desc;
}

// ---------------------------------------------------------------- schema validation

const Json& schema(const std::string& name) {
    static std::map<std::string, Json> parsed = [] {
        std::map<std::string, Json> out;
        for (const auto& [k, v] : detail::schema_sources()) out[k] = Json::parse(v);
        return out;
    }();
    auto it = parsed.find(name);
    require(it != parsed.end(), "unknown schema " + name);
    return it->second;
}

std::vector<std::string> schema_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : detail::schema_sources()) {
        (void)v;
        out.push_back(k);
    }
    return out;
}

namespace {

bool has_type(const Json& x, const std::string& t) {
    if (t == "object") return x.is_object();
    if (t == "array") return x.is_array();
    if (t == "string") return x.is_string();
    if (t == "integer") return x.is_number_integer();
    if (t == "number") return x.is_number();
    if (t == "boolean") return x.is_boolean();
    if (t == "null") return x.is_null();
    return false;
}

void check(const Json& x, const Json& s, const Json& root, const std::string& path, std::vector<std::string>& errs) {
    if (s.is_boolean()) {
        if (!s.get<bool>()) errs.push_back(path + ": not allowed");
        return;
    }
    const std::string at = path.empty() ? "/" : path;
    if (s.contains("$ref")) {
        const std::string ref = s["$ref"].get<std::string>();
        ensure(ref.rfind("#", 0) == 0, "schema: only local references are supported");
        check(x, root.at(Json::json_pointer(ref.substr(1))), root, path, errs);
    }
    if (s.contains("type")) {
        const Json& t = s["type"];
        bool ok = false;
        if (t.is_string()) ok = has_type(x, t.get<std::string>());
        else
            for (const auto& alt : t) ok = ok || has_type(x, alt.get<std::string>());
        if (!ok) {
            errs.push_back(at + ": expected type " + t.dump());
            return;
        }
    }
    if (s.contains("const") && x != s["const"]) errs.push_back(at + ": expected " + s["const"].dump());
    if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), x) == s["enum"].end())
        errs.push_back(at + ": value not in " + s["enum"].dump());
    if (s.contains("pattern") && x.is_string() && !std::regex_search(x.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
        errs.push_back(at + ": does not match " + s["pattern"].get<std::string>());
    if (s.contains("minimum") && x.is_number() && x.get<double>() < s["minimum"].get<double>())
        errs.push_back(at + ": below the minimum " + s["minimum"].dump());
    if (x.is_array()) {
        if (s.contains("minItems") && x.size() < s["minItems"].get<std::size_t>()) errs.push_back(at + ": too few items");
        if (s.contains("maxItems") && x.size() > s["maxItems"].get<std::size_t>()) errs.push_back(at + ": too many items");
        if (s.contains("items"))
            for (std::size_t i = 0; i < x.size(); ++i) check(x[i], s["items"], root, path + "/" + std::to_string(i), errs);
    }
    if (x.is_object()) {
        if (s.contains("required"))
            for (const auto& k : s["required"])
                if (!x.contains(k.get<std::string>())) errs.push_back(at + ": missing property " + k.get<std::string>());
        for (const auto& [k, v] : x.items()) {
            if (s.contains("properties") && s["properties"].contains(k)) {
                check(v, s["properties"][k], root, path + "/" + k, errs);
            } else if (s.contains("additionalProperties")) {
                const Json& extra = s["additionalProperties"];
                if (extra.is_boolean() && !extra.get<bool>()) errs.push_back(at + ": unexpected property " + k);
                else if (extra.is_object()) check(v, extra, root, path + "/" + k, errs);
            }
        }
    }
    if (s.contains("anyOf")) {
        bool any = false;
        for (const auto& alt : s["anyOf"]) {
            std::vector<std::string> sub;
            check(x, alt, root, path, sub);
            if (sub.empty()) {
                any = true;
                break;
            }
        }
        if (!any) errs.push_back(at + ": matches none of the alternatives");
    }
}

}  // namespace

std::vector<std::string> validate(const Json& instance, const Json& schema_json) {
    std::vector<std::string> errs;
    check(instance, schema_json, schema_json, "", errs);
    return errs;
}

void require_valid(const Json& instance, const std::string& schema_name) {
    const auto errs = validate(instance, schema(schema_name));
    if (errs.empty()) return;
    std::string msg = "schema " + schema_name + " violated:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw InputError(msg);
}

}  // namespace normic::io
