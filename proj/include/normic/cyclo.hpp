#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normic/arith.hpp"
#include "normic/polyfield.hpp"

namespace normic {

/// The n-th cyclotomic polynomial, integer coefficients.
const RatPoly& cyclotomic_polynomial(std::int64_t n);

/// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1).
/// n = 1 and n = 2 both give Q.
class CycloElement {
public:
    CycloElement() = default;
    CycloElement(std::int64_t n, const Rational& value);
    CycloElement(std::int64_t n, std::vector<Rational> coords);  // reduced mod Phi_n
    static CycloElement zeta_power(std::int64_t n, std::int64_t j);

    std::int64_t conductor() const { return n_; }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()
    Integer common_denominator() const;

    CycloElement operator+(const CycloElement& o) const;
    CycloElement operator-(const CycloElement& o) const;
    CycloElement operator-() const;
    CycloElement operator*(const CycloElement& o) const;
    CycloElement pow(std::int64_t e) const;  // e >= 0

    /// Image under zeta -> omega in F_p; coordinates must be p-integral.
    std::int64_t reduce(std::int64_t p, std::int64_t omega) const;

    std::string str() const;

    friend bool operator==(const CycloElement&, const CycloElement&) = default;

private:
    std::int64_t n_ = 1;
    std::vector<Rational> coords_{Rational(0)};
};

}  // namespace normic
