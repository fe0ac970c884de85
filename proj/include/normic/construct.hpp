#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normic/brauer.hpp"

namespace normic {

struct ConstructOptions {
    std::optional<std::int64_t> a;      // pinned radicand
    std::vector<std::int64_t> places;   // primes v_j = 1 mod n with v_j(a) = 1
    std::int64_t u_search_cap = 400;    // small-integer search before falling back to CRT
    std::int64_t cert_scan_cap = 20000;
    std::int64_t prime_scan_cap = kDefaultPrimeScanCap;
};

struct ConstructionPlan {
    FinAbGroup target;                 // orders r_1..r_m
    std::int64_t n = 2;
    std::int64_t a = 2;
    KummerExt kummer;
    std::vector<PlaceModel> places;
    std::optional<std::int64_t> auxiliary_prime;  // set when the CRT route was taken
    std::vector<std::int64_t> r;       // r_0 = n, r_1, ..., r_m
    std::vector<Integer> u;            // u_0, ..., u_m
    std::vector<RatPoly> Q;            // x^{r_i} - u_i
    std::vector<RatPoly> P;            // Q_i^{n/r_i} - a
    std::vector<IrreducibilityCertificate> certificates;  // one per P_i, over k

    RatPoly product() const;
    NormicBundleDesc desc() const;
};

/// Base field Q(zeta_n), n = max(exp B, 2); factors [(n, n)] ++ [(n, r_i)].
ConstructionPlan construct_bundle(const FinAbGroup& B, const ConstructOptions& options = {});

struct UChoice {
    std::vector<Integer> u;
    std::vector<IrreducibilityCertificate> certificates;  // x^{r_i} - u_i - alpha^{r_i} over K
    std::optional<std::int64_t> auxiliary_prime;
};

/// Distinct u_i, units at every v_j with pairwise distinct residues, prod (x^{r_i} - u_i)
/// separable mod v_j, and x^{r_i} - u_i - alpha^{r_i} certified irreducible over K.
UChoice choose_u_parameters(const KummerExt& K, const std::vector<std::int64_t>& r_list,
                            const std::vector<PlaceModel>& places, const ConstructOptions& options = {});

struct PlanCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PlanReport {
    std::vector<PlanCheck> checks;
    bool all_passed() const;
};

/// Recomputes every invariant of the plan from scratch.
PlanReport verify_plan(const ConstructionPlan& plan, bool sample_splitting_degrees = false);

}  // namespace normic
