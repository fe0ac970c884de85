#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normic/abelian.hpp"
#include "normic/numberfield.hpp"

namespace normic {

struct FactorData {
    std::optional<RatPoly> poly;  // absent for purely numerical descs
    std::int64_t d = 1;
    std::int64_t r = 1;
    std::optional<IrreducibilityCertificate> certificate;
    std::string r_source = "given";  // or the splitting_degree tag
};

/// N_{K/k}(z) = c * prod P_i(x), recorded through (d_i, r_i) and, when known, the fields and polynomials.
struct NormicBundleDesc {
    std::int64_t n = 1;
    std::optional<KummerExt> kummer;
    Rational c = 1;
    std::optional<KummerElement> norm_witness;  // N(witness) = c
    std::vector<FactorData> factors;

    static NormicBundleDesc numeric(std::int64_t n, const std::vector<std::pair<std::int64_t, std::int64_t>>& dr);

    std::vector<std::int64_t> degrees() const;
    std::vector<std::int64_t> splitting_degrees() const;
    /// Throws InputError on the first violated invariant.
    void validate() const;
};

struct ResidueProfile {
    std::vector<std::int64_t> at_factors;  // chi_i mod r_i
    std::int64_t at_infinity = 0;          // -sum d_i chi_i mod n
};

ResidueProfile residue_profile(const NormicBundleDesc& desc, const std::vector<std::int64_t>& chis);

struct BrauerPresentation {
    std::int64_t n = 1;
    FinAbGroup ambient;                    // + Z/r_i
    std::vector<std::int64_t> functional;  // (n_i) -> sum d_i n_i mod n
    IntMatrix lattice_basis;               // columns span the preimage of the membership group in Z^m
    FinAbGroup membership;                 // invariant factors
    GroupElement kernel_generator;         // (1, ..., 1)
    std::int64_t kernel_order = 1;
    Quotient quotient;                     // projection acts on lattice_basis coordinates
    bool generator_lifting = true;         // c = 1 or c a certified norm
    /// Image of the i-th basis tuple when it is a member, else empty.
    std::vector<std::optional<GroupElement>> generators;

    bool is_member(const GroupElement& x) const;
    GroupElement project(const GroupElement& x) const;  // x must be a member
};

BrauerPresentation compute_brauer(const NormicBundleDesc& desc);

/// The same formula for E/k with KE/E cyclic of degree n' | n and refined (d_ij, r_ij).
BrauerPresentation brauer_after_base_change(std::int64_t n, std::int64_t n_prime,
                                            const std::vector<std::pair<std::int64_t, std::int64_t>>& refined);

/// n | sum d_i n_i; also checks the answer does not depend on the lifts.
bool membership_test(const NormicBundleDesc& desc, const std::vector<std::int64_t>& tuple);

}  // namespace normic
