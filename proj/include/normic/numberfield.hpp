#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normic/cyclo.hpp"
#include "normic/places.hpp"
#include "normic/polyfield.hpp"

namespace normic {

/// Element of K = k(alpha), alpha^n = a, in the basis 1, alpha, ..., alpha^(n-1).
class KummerElement {
public:
    KummerElement() = default;
    KummerElement(const CycloElement& a, std::int64_t n, std::vector<CycloElement> coords);
    static KummerElement from_base(const CycloElement& a, std::int64_t n, const CycloElement& x);
    static KummerElement alpha_power(const CycloElement& a, std::int64_t n, std::int64_t j);  // j >= 0

    std::int64_t degree() const { return n_; }
    const CycloElement& radicand() const { return a_; }
    const std::vector<CycloElement>& coords() const { return coords_; }
    bool is_zero() const;
    bool in_base() const;  // alpha-free
    const CycloElement& base_value() const;  // requires in_base()

    KummerElement operator+(const KummerElement& o) const;
    KummerElement operator-(const KummerElement& o) const;
    KummerElement operator-() const;
    KummerElement operator*(const KummerElement& o) const;
    KummerElement pow(std::int64_t e) const;
    /// sigma_t : alpha -> zeta^t alpha.
    KummerElement conjugate(std::int64_t t) const;

    std::string str() const;

    friend bool operator==(const KummerElement&, const KummerElement&) = default;

private:
    CycloElement a_;
    std::int64_t n_ = 1;
    std::vector<CycloElement> coords_;
};

/// Polynomial in x over K, coefficients lowest degree first.
using KPoly = std::vector<KummerElement>;

KPoly to_kpoly(const CycloElement& a, std::int64_t n, const RatPoly& f);
KPoly compose_kpoly(const RatPoly& outer, const KPoly& inner);  // outer(inner(x))
bool kpoly_equal(const KPoly& f, const KPoly& g);
std::string kpoly_str(const KPoly& f);

enum class CertKind { eisenstein, modular, composition, linear };
std::string to_string(CertKind kind);

enum class CertField { base, kummer };  // irreducible over k, or over K

struct IrreducibilityCertificate {
    CertKind kind = CertKind::linear;
    CertField field = CertField::base;
    KPoly poly;  // the polynomial whose irreducibility is certified

    // eisenstein / modular: a degree-one place of k (beta empty) or of K
    std::optional<PlaceModel> place;
    std::optional<std::int64_t> beta;

    // composition: poly = h(g(x)), theta = alpha^theta_power is a root of h,
    // parts[0] certifies h over k, parts[1] certifies g - theta over K
    RatPoly h, g;
    std::int64_t theta_power = 0;
    std::vector<IrreducibilityCertificate> parts;
};

struct KummerExt {
    std::int64_t n = 1;
    CycloElement a;
    IrreducibilityCertificate certificate;  // x^n - a over k

    /// Certifies x^n - a over k (Eisenstein first, then modular) or throws.
    static KummerExt make(std::int64_t n, const CycloElement& a, std::int64_t scan_cap = 100000);

    KummerElement alpha() const { return KummerElement::alpha_power(a, n, 1); }
    KummerElement embed(const CycloElement& x) const { return KummerElement::from_base(a, n, x); }
};

/// Eisenstein at a degree-one place of k: monic, middle coefficients in the maximal
/// ideal, constant term of valuation exactly one.
bool eisenstein_check(const KPoly& f, const PlaceModel& place);
/// Same test at a split place of K.
bool eisenstein_check(const KPoly& f, const SplitPlace& place);

/// Reduction modulo a place; every coefficient must be integral there.
std::optional<FpPoly> reduce_kpoly(const KPoly& f, const PlaceModel& place);
std::optional<FpPoly> reduce_kpoly(const KPoly& f, const SplitPlace& place);

/// Search for an Eisenstein or modular certificate of f over k (base) or over K (kummer).
std::optional<IrreducibilityCertificate> find_certificate(const KummerExt& K, const KPoly& f, CertField field,
                                                          std::int64_t scan_cap = 20000);

/// Combine certificates per the composition criterion; throws CertificateError
/// when a sub-certificate fails or the pieces do not fit together.
IrreducibilityCertificate compose_irreducible(const KummerExt& K, const RatPoly& h, const RatPoly& g,
                                              std::int64_t theta_power, const IrreducibilityCertificate& cert_h,
                                              const IrreducibilityCertificate& cert_g_minus_theta);

/// Mechanical re-check of a certificate; empty string when valid, else the reason.
std::string verify_certificate(const KummerExt& K, const IrreducibilityCertificate& cert);

struct SplittingDegree {
    std::int64_t r = 1;            // degree of the factors of x^n - a over k[x]/(P)
    std::int64_t m = 1;            // largest d | n with a a d-th power there; r = n / m
    std::string tag;               // "certified" or "monte-carlo(S)"
    std::int64_t samples = 0;
    bool grunwald_wang_caveat = false;  // 8 | n
};

inline constexpr std::int64_t kDefaultSplittingSamples = 40;

/// Samples degree-one primes where P has a root and intersects the power classes of a there.
/// With `analytic_r` the sampled value must match and the result is tagged certified.
SplittingDegree splitting_degree(const KummerExt& K, const RatPoly& P, std::int64_t samples = kDefaultSplittingSamples,
                                 std::optional<std::int64_t> analytic_r = std::nullopt, std::int64_t scan_cap = 2'000'000);

/// The norm form splits over L into (n / n') factors of degree n'.
std::pair<std::int64_t, std::int64_t> norm_splitting_pattern(std::int64_t n, std::int64_t n_prime);

CycloElement norm(const KummerElement& z);

enum class NormVerdict { yes, unknown };
std::string to_string(NormVerdict v);

/// yes for c = 1 or when N(witness) = c, otherwise unknown.
NormVerdict is_norm_constant(const KummerExt& K, const CycloElement& c,
                             const std::optional<KummerElement>& witness = std::nullopt);

}  // namespace normic
