#include "normic/obstruct.hpp"

#include <algorithm>

#include "normic/errors.hpp"

namespace normic {

std::string to_string(Completeness c) { return c == Completeness::certified_full ? "certified-full" : "lower-bound"; }

std::string to_string(Provenance p) {
    return p == Provenance::verified_local_data ? "verified-local-data" : "hypothesized-target";
}

std::string LocalImageSet::label() const { return place ? "p=" + std::to_string(place->p) : "infinity-and-good"; }

namespace {

Character zero_character(const FinAbGroup& B) { return Character{std::vector<std::int64_t>(B.rank(), 0)}; }

void require_place(const ConstructionPlan& plan, const PlaceModel& place) {
    require(place.n == plan.n, "place: conductor differs from n");
    require(plan.P.size() == plan.r.size() && plan.P.size() == plan.target.rank() + 1, "plan: malformed factor lists");
}

}  // namespace

LocalImageSet phi_image(const ConstructionPlan& plan, const PlaceModel& place) {
    require_place(plan, place);
    const std::int64_t p = place.p, n = plan.n;
    const std::size_t k = plan.P.size();
    require(valuation(Integer(plan.a), p) == 1, "phi_image: v(a) must be 1");
    require(p > static_cast<std::int64_t>(k) + 1, "phi_image: residue field too small");
    FpPoly radicals = FpPoly::constant(p, 1);
    for (std::size_t i = 0; i < k; ++i) {
        require(reduce_mod(plan.u[i], p) != 0, "phi_image: u_i must be units");
        radicals = radicals * plan.Q[i].reduce(p);
    }
    require(is_separable(radicals), "phi_image: prod (x^r_i - u_i) must be separable mod p");

    const FinAbGroup& B = plan.target;
    LocalImageSet out;
    out.place = place;
    out.realized.insert(zero_character(B));  // the point at infinity
    std::vector<FpPoly> reduced;
    for (const auto& f : plan.P) reduced.push_back(f.reduce(p));
    std::vector<std::int64_t> vals(k);
    for (std::int64_t c = 0; c < p; ++c) {
        std::int64_t prod = 1;
        for (std::size_t i = 0; i < k; ++i) {
            vals[i] = reduced[i].eval(c);
            prod = mulmod(prod, vals[i], p);
        }
        if (prod == 0 || !is_power_residue(p, n, prod)) continue;
        Character chi{std::vector<std::int64_t>(B.rank(), 0)};
        for (std::size_t i = 1; i < k; ++i) {
            const std::int64_t j = psi(place, power_residue_map(p, n, invmod(vals[i], p))).num;
            const std::int64_t step = n / plan.r[i];
            ensure(j % step == 0, "local invariant outside (1/r_i)Z/Z");
            chi.coords[i - 1] = j / step;
        }
        if (out.realized.insert(chi).second) out.witnesses.push_back(c);
    }
    out.completeness = static_cast<std::int64_t>(out.realized.size()) == B.order() ? Completeness::certified_full
                                                                                   : Completeness::lower_bound;
    return out;
}

LocalImageSet good_place_image(const ConstructionPlan& plan, const PlaceModel& place) {
    require_place(plan, place);
    const std::int64_t p = place.p;
    LocalImageSet out;
    out.place = place;
    out.realized.insert(zero_character(plan.target));
    out.completeness = Completeness::lower_bound;
    if (plan.a % p == 0) return out;
    const RatPoly P = plan.product();
    for (const auto& c : P.coeffs())
        if (boost::multiprecision::denominator(c) % p == 0) return out;
    const FpPoly red = P.reduce(p);
    if (red.degree() != P.degree() || !is_separable(red)) return out;
    // a is locally an n-th power (K splits), or every P_i(x) is a unit times an n-th power
    if (is_power_residue(p, plan.n, mod(plan.a, p)) || roots_fp(red).empty()) out.completeness = Completeness::certified_full;
    return out;
}

LocalImageSet archimedean_image(const ConstructionPlan& plan) {
    LocalImageSet out;
    out.realized.insert(zero_character(plan.target));
    out.completeness = plan.a > 0 ? Completeness::certified_full : Completeness::lower_bound;
    return out;
}

TotalSet total_set(const FinAbGroup& B, const std::vector<LocalImageSet>& images) {
    TotalSet out;
    out.S.insert(zero_character(B));
    for (const auto& img : images) {
        require(!img.realized.empty(), "total_set: empty local image");
        std::set<Character> next;
        for (const auto& s : out.S)
            for (const auto& t : img.realized) {
                require(B.contains(GroupElement{t.coords}), "total_set: character of the wrong group");
                next.insert(Character{B.add(GroupElement{s.coords}, GroupElement{t.coords}).coords});
            }
        out.S = std::move(next);
        if (img.completeness == Completeness::lower_bound) out.completeness = Completeness::lower_bound;
    }
    return out;
}

ObstructionReport classify_obstruction(const FinAbGroup& B, const std::set<Character>& S) {
    ObstructionReport out;
    out.B = B;
    out.S = S;
    for (const auto& chi : S) require(B.contains(GroupElement{chi.coords}), "classify_obstruction: S is not inside Bhat");
    for (auto& H : enumerate_subgroups(B)) {
        const auto ann = annihilator(B, H);
        const bool meets = std::any_of(ann.begin(), ann.end(), [&](const Character& c) { return S.count(c) > 0; });
        out.verdicts.push_back(SubgroupVerdict{std::move(H), !meets});
    }
    const auto& v = out.verdicts;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].obstructs) continue;
        bool minimal = true;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (i == j || !v[i].subgroup.is_subset_of(v[j].subgroup) || v[j].obstructs) continue;
            out.upward_closed = false;
        }
        for (std::size_t j = 0; j < v.size(); ++j)
            if (j != i && v[j].obstructs && v[j].subgroup.is_subset_of(v[i].subgroup)) minimal = false;
        if (minimal) out.minimal.push_back(i);
    }
    if (out.minimal.size() == 1) {
        const auto& m = v[out.minimal.front()].subgroup;
        const bool below_all = std::all_of(v.begin(), v.end(), [&](const SubgroupVerdict& x) {
            return !x.obstructs || m.is_subset_of(x.subgroup);
        });
        if (below_all) out.minimum = out.minimal.front();
    }
    return out;
}

std::set<Character> plan_targets(const FinAbGroup& B, const Subgroup& B0) {
    require(B0.order > 1, "plan_targets: B0 must be nontrivial");
    const auto ann = annihilator(B, B0);
    const std::set<Character> killed(ann.begin(), ann.end());
    std::set<Character> out;
    for (const auto& chi : dual_group(B).all())
        if (!killed.count(chi)) out.insert(chi);
    return out;
}

std::optional<Subgroup> subgroup_with_orders(const FinAbGroup& B, const std::vector<std::int64_t>& orders) {
    const FinAbGroup want = canonical_form(FinAbGroup(orders)).group;
    for (auto& H : enumerate_subgroups(B)) {
        // invariant factors of H from its generators
        IntMatrix gens(static_cast<Eigen::Index>(B.rank()), static_cast<Eigen::Index>(H.generators.size()));
        for (std::size_t j = 0; j < H.generators.size(); ++j)
            for (std::size_t i = 0; i < B.rank(); ++i)
                gens(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = H.generators[j].coords[i];
        if (canonical_form(subgroup_invariants(gens, relation_matrix(B))).group == want) return H;
    }
    return std::nullopt;
}

ObstructionPipeline run_obstruction_pipeline(const FinAbGroup& B, const Subgroup& B0, ConstructOptions options,
                                             std::int64_t place_scan_cap) {
    for (std::int64_t r : B.orders()) require(r > 1, "obstruction pipeline: drop trivial factors from B");
    require(static_cast<std::int64_t>(B0.members.size()) == B.order(), "obstruction pipeline: B0 is not a subgroup of B");
    const std::int64_t n = std::max<std::int64_t>(2, B.exponent());
    const auto m = static_cast<std::int64_t>(B.rank());
    std::int64_t start = m + 3;
    start += mod(1 - start, n);
    for (std::int64_t p = start; p <= place_scan_cap; p += n) {
        if (!is_prime(p)) continue;
        options.places = {p};
        options.a.reset();
        ConstructionPlan plan;
        try {
            plan = construct_bundle(B, options);
        } catch (const SearchExhausted&) {
            continue;
        }
        LocalImageSet img = phi_image(plan, plan.places.front());
        if (img.completeness != Completeness::certified_full) continue;

        ObstructionPipeline out;
        out.plan = std::move(plan);
        out.B0 = B0;
        out.images = {img, archimedean_image(out.plan)};
        out.verified = total_set(B, out.images);
        out.target = plan_targets(B, B0);
        out.target_within_place_image =
            std::all_of(out.target.begin(), out.target.end(), [&](const Character& c) { return img.realized.count(c) > 0; });
        out.verified_report = classify_obstruction(B, out.verified.S);
        out.target_report = classify_obstruction(B, out.target);
        return out;
    }
    throw SearchExhausted("obstruction pipeline: no place with a surjective local image below the scan cap");
}

}  // namespace normic
