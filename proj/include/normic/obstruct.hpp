#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "normic/construct.hpp"

namespace normic {

enum class Completeness { certified_full, lower_bound };
enum class Provenance { verified_local_data, hypothesized_target };
std::string to_string(Completeness c);
std::string to_string(Provenance p);

/// Characters of B = + Z/r_i (i >= 1) realized by local points, written in the dual
/// coordinates of B: chi_i / r_i is the invariant of the i-th factor class.
struct LocalImageSet {
    std::optional<PlaceModel> place;  // empty: archimedean and good places, image {0}
    std::set<Character> realized;
    Completeness completeness = Completeness::lower_bound;
    Provenance provenance = Provenance::verified_local_data;
    std::vector<std::int64_t> witnesses;  // residues c whose fibres supplied new characters

    std::string label() const;
};

/// Enumerates residues c with every P_i(c) a unit and P(c) an n-th power; each lifts to a
/// local point whose invariants come from the tame symbol (a, P_i(c)).
LocalImageSet phi_image(const ConstructionPlan& plan, const PlaceModel& place);

/// {0}, certified when a is a unit, P has good separable reduction, and either a is an
/// n-th power residue or P has no root mod p.
LocalImageSet good_place_image(const ConstructionPlan& plan, const PlaceModel& place);

/// Archimedean places: a > 0, so the image is {0}.
LocalImageSet archimedean_image(const ConstructionPlan& plan);

struct TotalSet {
    std::set<Character> S;
    Completeness completeness = Completeness::certified_full;
};

TotalSet total_set(const FinAbGroup& B, const std::vector<LocalImageSet>& images);

struct SubgroupVerdict {
    Subgroup subgroup;
    bool obstructs = false;  // X(A)^{B'} empty
};

struct ObstructionReport {
    FinAbGroup B;
    std::set<Character> S;
    std::vector<SubgroupVerdict> verdicts;  // enumerate_subgroups order
    bool upward_closed = true;
    std::vector<std::size_t> minimal;       // indices of minimal obstructing subgroups
    std::optional<std::size_t> minimum;     // when the minimal one is unique and every obstructing B' contains it
};

ObstructionReport classify_obstruction(const FinAbGroup& B, const std::set<Character>& S);

/// Bhat minus the characters vanishing on B0.
std::set<Character> plan_targets(const FinAbGroup& B, const Subgroup& B0);

/// First subgroup of B (enumeration order) with the given invariant factors.
std::optional<Subgroup> subgroup_with_orders(const FinAbGroup& B, const std::vector<std::int64_t>& orders);

struct ObstructionPipeline {
    ConstructionPlan plan;
    Subgroup B0;
    std::vector<LocalImageSet> images;        // verified local data
    TotalSet verified;                        // Minkowski sum of the verified images
    std::set<Character> target;               // hypothesized image after the pullback step
    bool target_within_place_image = false;   // target is contained in the image at v_1
    ObstructionReport verified_report;
    ObstructionReport target_report;
};

/// Finds the first place v = 1 mod n, v > m + 2, at which phi_image is certified full,
/// constructs the bundle there and classifies the target set for B0.
ObstructionPipeline run_obstruction_pipeline(const FinAbGroup& B, const Subgroup& B0, ConstructOptions options = {},
                                             std::int64_t place_scan_cap = 100000);

}  // namespace normic
