#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normic/arith.hpp"
#include "normic/smith.hpp"

namespace normic {

/// An element of a direct sum of cyclic groups, coordinates reduced mod each order.
struct GroupElement {
    std::vector<std::int64_t> coords;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// A homomorphism Hom(G, Q/Z), written in the dual coordinates of G.
struct Character {
    std::vector<std::int64_t> coords;

    friend bool operator==(const Character&, const Character&) = default;
    friend auto operator<=>(const Character&, const Character&) = default;
};

/// Z/r_1 + ... + Z/r_m, not necessarily in invariant-factor form.
class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<std::int64_t> orders);

    const std::vector<std::int64_t>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    std::int64_t order() const;
    std::int64_t exponent() const;
    bool is_trivial() const { return order() == 1; }

    GroupElement zero() const;
    GroupElement element(std::vector<std::int64_t> coords) const;  // reduces coordinates
    bool contains(const GroupElement& x) const;

    GroupElement add(const GroupElement& x, const GroupElement& y) const;
    GroupElement negate(const GroupElement& x) const;
    GroupElement scale(std::int64_t k, const GroupElement& x) const;

    // Mixed-radix enumeration; index 0 is the identity.
    std::int64_t index_of(const GroupElement& x) const;
    GroupElement element_at(std::int64_t index) const;

    std::string str() const;  // "Z/2 + Z/4", "0" when trivial

    friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

private:
    std::vector<std::int64_t> orders_;
};

/// Invariant factors together with mutually inverse change-of-basis maps.
struct CanonicalForm {
    FinAbGroup group;      // r'_1 | r'_2 | ... | r'_t, all > 1
    IntMatrix forward;     // t x m: source coords -> canonical coords
    IntMatrix backward;    // m x t: canonical coords -> source coords

    GroupElement to_canonical(const FinAbGroup& source, const GroupElement& x) const;
    GroupElement from_canonical(const FinAbGroup& source, const GroupElement& y) const;
};

CanonicalForm canonical_form(const FinAbGroup& G);

std::int64_t element_order(const FinAbGroup& G, const GroupElement& x);

/// A homomorphism between direct sums of cyclic groups, x -> matrix * x.
struct Homomorphism {
    FinAbGroup source;
    FinAbGroup target;
    IntMatrix matrix;  // target.rank() x source.rank()

    GroupElement apply(const GroupElement& x) const;
    bool is_well_defined() const;
    bool is_surjective() const;
};

/// Some a in A whose image (phi_1(a), ..., phi_k(a)) has order exp(A_1 + ... + A_k),
/// assembled one prime at a time.
GroupElement max_order_image(const FinAbGroup& A, const std::vector<Homomorphism>& projections);

/// Hom(G, Q/Z) is isomorphic to G in the same coordinates; pairing sums chi_i x_i / r_i.
struct DualGroup {
    FinAbGroup group;
    RatModOne pair(const Character& chi, const GroupElement& x) const;
    Character character(std::vector<std::int64_t> coords) const;
    std::vector<Character> all() const;
};

DualGroup dual_group(const FinAbGroup& G);

struct Subgroup {
    std::vector<GroupElement> generators;
    std::vector<bool> members;  // indexed by FinAbGroup::index_of
    std::int64_t order = 0;

    bool contains(const FinAbGroup& G, const GroupElement& x) const { return members[G.index_of(x)]; }
    bool is_subset_of(const Subgroup& other) const;
    std::vector<std::int64_t> member_indices() const;
};

inline constexpr std::int64_t kDefaultSubgroupCap = 4096;

Subgroup generated_subgroup(const FinAbGroup& G, const std::vector<GroupElement>& generators);

/// Every subgroup exactly once, sorted lexicographically by member index list.
std::vector<Subgroup> enumerate_subgroups(const FinAbGroup& G, std::int64_t cap = kDefaultSubgroupCap);

/// Z^m / (relation columns), in invariant-factor form, with the projection Z^m -> quotient.
struct Quotient {
    FinAbGroup group;
    IntMatrix projection;  // t x m

    GroupElement project(const std::vector<std::int64_t>& coords) const;
};

Quotient cokernel(const IntMatrix& relations);

/// Invariant factors of the subgroup spanned by `generators` (columns) inside
/// Z^m / (relation columns).
FinAbGroup subgroup_invariants(const IntMatrix& generators, const IntMatrix& relations);

IntMatrix relation_matrix(const FinAbGroup& G);  // diag(r_i)

Quotient quotient_by_cyclic(const FinAbGroup& G, const GroupElement& g);

/// {chi : chi(h) = 0 for h in H}, i.e. the kernel of restriction Hom(G) -> Hom(H).
std::vector<Character> annihilator(const FinAbGroup& G, const Subgroup& H);

}  // namespace normic
