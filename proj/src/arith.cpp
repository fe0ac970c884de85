#include "normic/arith.hpp"

#include <algorithm>

#include "normic/errors.hpp"

namespace normic {

std::string to_string(const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) {
        require(!s.empty(), "empty integer in rational '" + text + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        require(i < s.size(), "bad rational '" + text + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            require(s[j] >= '0' && s[j] <= '9', "bad rational '" + text + "'");
        return Integer(s[0] == '+' ? s.substr(1) : s);
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    const Integer den = parse_int(text.substr(slash + 1));
    require(den != 0, "zero denominator in '" + text + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

std::int64_t mod(std::int64_t x, std::int64_t m) {
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    require(exp >= 0, "powmod: negative exponent");
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    require(old_r == 1, "invmod: not invertible");
    return mod(old_s, m);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s && composite; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

std::int64_t next_prime(std::int64_t n) {
    if (n <= 2) return 2;
    while (!is_prime(n)) ++n;
    return n;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    require(n >= 1, "divisors: n must be positive");
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    require(n >= 1, "factorize: n must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
    return result;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t primitive_root(std::int64_t p) {
    require(is_prime(p), "primitive_root: modulus must be prime");
    if (p == 2) return 1;
    const auto fac = factorize(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw InternalError("primitive_root: none found");
}

int valuation(const Integer& x, std::int64_t p) {
    require(x != 0, "valuation of zero");
    Integer y = boost::multiprecision::abs(x);
    int v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

int valuation(const Rational& x, std::int64_t p) {
    return valuation(Integer(boost::multiprecision::numerator(x)), p) -
           valuation(Integer(boost::multiprecision::denominator(x)), p);
}

std::int64_t reduce_mod(const Integer& x, std::int64_t p) {
    Integer r = x % p;
    if (r < 0) r += p;
    return r.convert_to<std::int64_t>();
}

std::int64_t reduce_mod(const Rational& x, std::int64_t p) {
    const std::int64_t den = reduce_mod(Integer(boost::multiprecision::denominator(x)), p);
    require(den != 0, "reduce_mod: denominator divisible by p");
    return mulmod(reduce_mod(Integer(boost::multiprecision::numerator(x)), p), invmod(den, p), p);
}

RatModOne::RatModOne(std::int64_t num, std::int64_t den) {
    require(den > 0, "RatModOne: denominator must be positive");
    num = mod(num, den);
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

RatModOne RatModOne::operator+(const RatModOne& o) const {
    const std::int64_t l = std::lcm(den_, o.den_);
    return {num_ * (l / den_) + o.num_ * (l / o.den_), l};
}

RatModOne RatModOne::operator-(const RatModOne& o) const { return *this + (-o); }

RatModOne RatModOne::operator-() const { return {-num_, den_}; }

RatModOne RatModOne::scaled(std::int64_t k) const { return {mulmod(num_, k, den_), den_}; }

std::string RatModOne::str() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace normic
