#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normic/arith.hpp"

namespace normic {

class FpPoly;

/// Polynomial over Q, coefficients lowest degree first, no trailing zeros.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    static RatPoly from_ints(const std::vector<std::int64_t>& coeffs);
    static RatPoly constant(const Rational& c);
    static RatPoly monomial(int degree, const Rational& c = 1);  // c x^degree

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    Rational coeff(int i) const;
    Rational leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }
    bool is_integral() const;  // all coefficients in Z

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator-() const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly scaled(const Rational& c) const;
    RatPoly pow(int e) const;
    RatPoly derivative() const;
    RatPoly monic() const;
    RatPoly compose(const RatPoly& inner) const;  // this(inner(x))
    Rational eval(const Rational& x) const;

    // Euclidean division; divisor nonzero.
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& divisor) const;

    FpPoly reduce(std::int64_t p) const;  // coefficient denominators prime to p

    std::string str(const std::string& var = "x") const;  // "x^2 - 6"

    friend bool operator==(const RatPoly&, const RatPoly&) = default;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

RatPoly gcd(RatPoly a, RatPoly b);  // monic, or zero when both are zero
bool is_separable(const RatPoly& f);

/// Polynomial over F_p, coefficients in [0, p), lowest degree first.
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs);
    static FpPoly x(std::int64_t p);
    static FpPoly constant(std::int64_t p, std::int64_t c);

    std::int64_t prime() const { return p_; }
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::int64_t coeff(int i) const;
    std::int64_t leading() const;

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(std::int64_t c) const;
    FpPoly derivative() const;
    FpPoly monic() const;
    std::int64_t eval(std::int64_t x) const;
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& divisor) const;
    FpPoly operator%(const FpPoly& m) const { return divmod(m).second; }
    FpPoly operator/(const FpPoly& m) const { return divmod(m).first; }

    std::string str(const std::string& var = "x") const;

    friend bool operator==(const FpPoly&, const FpPoly&) = default;
    friend auto operator<=>(const FpPoly& a, const FpPoly& b) {
        if (a.degree() != b.degree()) return a.degree() <=> b.degree();
        return std::lexicographical_compare_three_way(a.coeffs_.rbegin(), a.coeffs_.rend(), b.coeffs_.rbegin(),
                                                      b.coeffs_.rend());
    }

private:
    void trim();
    std::int64_t p_ = 2;
    std::vector<std::int64_t> coeffs_;
};

FpPoly gcd(FpPoly a, FpPoly b);  // monic
FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m);
bool is_separable(const FpPoly& f);

struct FpFactor {
    FpPoly factor;  // monic irreducible
    int multiplicity = 1;

    friend bool operator==(const FpFactor&, const FpFactor&) = default;
};

/// Squarefree, distinct-degree and equal-degree (Cantor-Zassenhaus) splitting.
/// Factors come back monic and sorted; the leading coefficient is dropped.
std::vector<FpFactor> factor_fp(const FpPoly& f, std::uint64_t seed = 0x5eed);
bool is_irreducible_fp(const FpPoly& f);
std::vector<std::int64_t> roots_fp(const FpPoly& f);  // distinct roots, ascending

/// x^((p-1)/n) in F_p: the n-th power residue symbol valued in mu_n.
std::int64_t power_residue_map(std::int64_t p, std::int64_t n, std::int64_t x);
/// x is a nonzero r-th power in F_p (any r >= 1).
bool is_power_residue(std::int64_t p, std::int64_t r, std::int64_t x);

/// One equation eps * y^r = f(c).
struct ResidueCondition {
    FpPoly f;
    std::int64_t r = 1;
    std::int64_t eps = 1;
};

/// {c in F_q : f_i(c) eps_i is a nonzero r_i-th power for every i}, by enumeration.
std::vector<std::int64_t> residue_power_class_set(std::int64_t q, const std::vector<ResidueCondition>& conditions);

inline constexpr std::int64_t kDefaultEnumerationCap = 50'000'000;

struct CurveCount {
    std::int64_t affine = 0;                  // solutions (c, y_0, ..., y_m) of the affine chart
    std::optional<std::int64_t> at_infinity;  // exact when every deg f_i = r_i
    std::int64_t projective_lower = 0;        // affine
    std::int64_t projective_upper = 0;        // affine + prod r_i
    std::optional<std::int64_t> projective() const {
        if (!at_infinity) return std::nullopt;
        return affine + *at_infinity;
    }
};

/// Points of the curve eps_i y_i^{r_i} = f_i(x/z) z^{r_i} in P^{m+2}.
/// The equations decouple once c is fixed, so each y_i is enumerated separately;
/// the cap bounds q * sum(q) work units.
CurveCount curve_count(std::int64_t q, const std::vector<ResidueCondition>& conditions,
                       std::int64_t cap = kDefaultEnumerationCap);

/// Twice the genus 1 + (sum r_i - m - 3) prod r_i / 2 of that curve (m + 1 = number of factors).
Integer twice_genus(const std::vector<std::int64_t>& r);

/// q + 1 - (sum r_i - m - 1) prod r_i sqrt(q) > (m + 2) prod r_i, decided exactly.
bool hasse_weil_gate(std::int64_t q, const std::vector<std::int64_t>& r);

/// |N - (q + 1)| <= 2g sqrt(q), decided exactly.
bool within_hasse_weil(std::int64_t q, std::int64_t points, const Integer& twice_g);

}  // namespace normic
