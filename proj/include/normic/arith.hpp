#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace normic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Rationals travel as "num/den" (or "num" when integral).
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

// Word-size modular helpers. Moduli stay below 2^62.
std::int64_t mod(std::int64_t x, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m);
std::int64_t invmod(std::int64_t a, std::int64_t m);

bool is_prime(std::int64_t n);
std::int64_t next_prime(std::int64_t n);  // smallest prime >= n
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
std::int64_t lcm(std::int64_t a, std::int64_t b);
std::int64_t primitive_root(std::int64_t p);

/// p-adic valuation of a nonzero integer / rational.
int valuation(const Integer& x, std::int64_t p);
int valuation(const Rational& x, std::int64_t p);

/// Image of x in F_p; the denominator must be prime to p.
std::int64_t reduce_mod(const Rational& x, std::int64_t p);
std::int64_t reduce_mod(const Integer& x, std::int64_t p);

/// Exact element of Q/Z, kept reduced with 0 <= num < den.
class RatModOne {
public:
    RatModOne() = default;
    RatModOne(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    RatModOne operator+(const RatModOne& o) const;
    RatModOne operator-(const RatModOne& o) const;
    RatModOne operator-() const;
    RatModOne scaled(std::int64_t k) const;

    friend bool operator==(const RatModOne&, const RatModOne&) = default;
    friend auto operator<=>(const RatModOne& a, const RatModOne& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace normic
