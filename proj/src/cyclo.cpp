#include "normic/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "normic/errors.hpp"

namespace normic {

const RatPoly& cyclotomic_polynomial(std::int64_t n) {
    require(n >= 1, "cyclotomic polynomial needs n >= 1");
    static std::mutex lock;
    static std::map<std::int64_t, std::unique_ptr<RatPoly>> cache;
    {
        std::lock_guard guard(lock);
        if (auto it = cache.find(n); it != cache.end()) return *it->second;
    }
    // x^n - 1 divided by Phi_d for every proper divisor d
    RatPoly phi = RatPoly::monomial(static_cast<int>(n)) - RatPoly::constant(1);
    for (std::int64_t d : divisors(n))
        if (d < n) {
            const auto [q, r] = phi.divmod(cyclotomic_polynomial(d));
            ensure(r.is_zero(), "cyclotomic division left a remainder");
            phi = q;
        }
    std::lock_guard guard(lock);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<RatPoly>(std::move(phi));
    return *slot;
}

namespace {

std::vector<Rational> reduce_coords(std::int64_t n, std::vector<Rational> coords) {
    const auto& phi = cyclotomic_polynomial(n);
    const auto width = static_cast<std::size_t>(phi.degree());
    std::vector<Rational> out;
    if (coords.size() > width) {
        out = RatPoly(std::move(coords)).divmod(phi).second.coeffs();
    } else {
        out = std::move(coords);
    }
    out.resize(width, Rational(0));
    return out;
}

}  // namespace

CycloElement::CycloElement(std::int64_t n, const Rational& value) : CycloElement(n, std::vector<Rational>{value}) {}

CycloElement::CycloElement(std::int64_t n, std::vector<Rational> coords)
    : n_(n), coords_(reduce_coords(n, std::move(coords))) {}

CycloElement CycloElement::zeta_power(std::int64_t n, std::int64_t j) {
    j = mod(j, n);
    std::vector<Rational> c(static_cast<std::size_t>(j + 1), Rational(0));
    c.back() = 1;
    return CycloElement(n, std::move(c));
}

bool CycloElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool CycloElement::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

Rational CycloElement::rational_value() const {
    require(is_rational(), "cyclotomic element is not rational");
    return coords_[0];
}

Integer CycloElement::common_denominator() const {
    Integer d = 1;
    for (const auto& c : coords_) {
        const Integer den = boost::multiprecision::denominator(c);
        d = d / boost::multiprecision::gcd(d, den) * den;
    }
    return d;
}

CycloElement CycloElement::operator+(const CycloElement& o) const {
    require(n_ == o.n_, "cyclotomic elements of different conductors");
    std::vector<Rational> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return CycloElement(n_, std::move(c));
}

CycloElement CycloElement::operator-(const CycloElement& o) const { return *this + (-o); }

CycloElement CycloElement::operator-() const {
    std::vector<Rational> c = coords_;
    for (auto& x : c) x = -x;
    return CycloElement(n_, std::move(c));
}

CycloElement CycloElement::operator*(const CycloElement& o) const {
    require(n_ == o.n_, "cyclotomic elements of different conductors");
    return CycloElement(n_, (RatPoly(coords_) * RatPoly(o.coords_)).coeffs());
}

CycloElement CycloElement::pow(std::int64_t e) const {
    require(e >= 0, "CycloElement::pow: negative exponent");
    CycloElement result(n_, Rational(1)), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::int64_t CycloElement::reduce(std::int64_t p, std::int64_t omega) const {
    std::int64_t acc = 0;
    for (std::size_t j = coords_.size(); j-- > 0;) acc = mod(mulmod(acc, omega, p) + reduce_mod(coords_[j], p), p);
    return acc;
}

std::string CycloElement::str() const {
    if (is_rational()) return to_string(coords_[0]);
    return RatPoly(coords_).str("z");
}

}  // namespace normic
