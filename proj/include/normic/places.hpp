#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "normic/arith.hpp"
#include "normic/cyclo.hpp"

namespace normic {

/// Degree-one place of Q(zeta_n) over p = 1 mod n, fixed by the image omega of zeta_n.
/// p is a uniformizer there, and the completion is Q_p with zeta_n -> the Hensel lift of omega.
struct PlaceModel {
    std::int64_t p = 2;
    std::int64_t n = 1;
    std::int64_t omega = 1;

    static PlaceModel make(std::int64_t p, std::int64_t n, std::int64_t omega);  // validates
    static PlaceModel standard(std::int64_t p, std::int64_t n);  // omega = g^((p-1)/n), g least primitive root

    friend bool operator==(const PlaceModel&, const PlaceModel&) = default;
};

/// x = p^valuation * unit, with the unit reduced mod p.
struct LocalValue {
    int valuation = 0;
    std::int64_t unit_residue = 1;
};

LocalValue local_value(const PlaceModel& place, const CycloElement& x);

/// A degree-one place of K = k(a^(1/n)) above a place of k where a is a unit n-th power
/// residue; a^(1/n) maps to the Hensel lift of beta.
struct SplitPlace {
    PlaceModel base;
    std::int64_t beta = 1;

    static SplitPlace make(const PlaceModel& base, const CycloElement& a, std::int64_t beta);  // validates
};

/// Local value of sum_i coords[i] * (a^(1/n))^i at a split place.
LocalValue local_value(const SplitPlace& place, const CycloElement& a, const std::vector<CycloElement>& coords);

/// Element j/n of (1/n)Z/Z, kept unreduced.
struct InvValue {
    std::int64_t num = 0;
    std::int64_t n = 1;

    RatModOne value() const { return RatModOne(num, n); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(n); }
    InvValue operator+(const InvValue& o) const;

    friend bool operator==(const InvValue&, const InvValue&) = default;
};

inline constexpr std::int64_t kMaxDiscreteLogOrder = 64;

/// The j/n with u = omega^j.
InvValue psi(const PlaceModel& place, std::int64_t u);

/// inv_v of the cyclic algebra (a, b) via c = (-1)^(alpha beta) a^beta / b^alpha.
InvValue cyclic_invariant(const PlaceModel& place, const CycloElement& a, const CycloElement& b);

/// inv(a a', b) = inv(a, b) + inv(a', b).
bool bilinearity_check(const PlaceModel& place, const CycloElement& a, const CycloElement& a2, const CycloElement& b);

inline constexpr std::int64_t kDefaultPrimeScanCap = 2'000'000;

/// The first `count` primes p = 1 mod n with p >= min_size and p not in `avoid`.
std::vector<PlaceModel> good_place_search(std::int64_t n, const std::set<std::int64_t>& avoid, std::size_t count,
                                          std::int64_t min_size, std::int64_t scan_cap = kDefaultPrimeScanCap);

}  // namespace normic
