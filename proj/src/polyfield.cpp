#include "normic/polyfield.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "normic/errors.hpp"

namespace normic {

namespace {

template <class Coeff>
std::string render(const std::vector<Coeff>& coeffs, const std::string& var,
                   const std::function<bool(const Coeff&)>& negative,
                   const std::function<std::string(const Coeff&)>& abs_text) {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        const Coeff& c = coeffs[i];
        if (c == Coeff(0)) continue;
        const bool neg = negative(c);
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        const std::string mag = abs_text(c);
        if (i == 0) {
            out << mag;
            continue;
        }
        if (mag != "1") out << mag << "*";
        out << var;
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

}  // namespace

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::from_ints(const std::vector<std::int64_t>& coeffs) {
    std::vector<Rational> c(coeffs.begin(), coeffs.end());
    return RatPoly(std::move(c));
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(int degree, const Rational& c) {
    require(degree >= 0, "monomial: negative degree");
    std::vector<Rational> v(static_cast<std::size_t>(degree + 1), Rational(0));
    v.back() = c;
    return RatPoly(std::move(v));
}

void RatPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RatPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational RatPoly::leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

bool RatPoly::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return boost::multiprecision::denominator(c) == 1; });
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
    return RatPoly(std::move(out));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator-() const { return scaled(-1); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    return RatPoly(std::move(out));
}

RatPoly RatPoly::scaled(const Rational& c) const {
    std::vector<Rational> out = coeffs_;
    for (auto& x : out) x *= c;
    return RatPoly(std::move(out));
}

RatPoly RatPoly::pow(int e) const {
    require(e >= 0, "RatPoly::pow: negative exponent");
    RatPoly result = constant(1), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

RatPoly RatPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<long long>(i);
    return RatPoly(std::move(out));
}

RatPoly RatPoly::monic() const {
    require(!is_zero(), "monic of zero polynomial");
    return scaled(1 / leading());
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
    RatPoly out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) out = out * inner + constant(coeffs_[i]);
    return out;
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& divisor) const {
    require(!divisor.is_zero(), "polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    if (degree() < dd) return {RatPoly{}, *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    const Rational lead_inv = 1 / divisor.leading();
    for (int i = degree(); i >= dd; --i) {
        const Rational c = rem[static_cast<std::size_t>(i)] * lead_inv;
        if (c == 0) continue;
        quot[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

FpPoly RatPoly::reduce(std::int64_t p) const {
    std::vector<std::int64_t> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(reduce_mod(c, p));
    return FpPoly(p, std::move(out));
}

std::string RatPoly::str(const std::string& var) const {
    return render<Rational>(
        coeffs_, var, [](const Rational& c) { return c < 0; },
        [](const Rational& c) { return to_string(c < 0 ? Rational(-c) : c); });
}

RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

bool is_separable(const RatPoly& f) {
    require(!f.is_zero(), "is_separable: zero polynomial");
    return gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------- FpPoly

FpPoly::FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    require(p >= 2, "FpPoly: modulus must be a prime");
    for (auto& c : coeffs_) c = mod(c, p_);
    trim();
}

FpPoly FpPoly::x(std::int64_t p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::constant(std::int64_t p, std::int64_t c) { return FpPoly(p, {c}); }

void FpPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t FpPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

std::int64_t FpPoly::leading() const { return is_zero() ? 0 : coeffs_.back(); }

FpPoly FpPoly::operator+(const FpPoly& o) const {
    ensure(p_ == o.p_, "FpPoly: mixed characteristics");
    std::vector<std::int64_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] = (out[i] + o.coeffs_[i]) % p_;
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + o.scaled(p_ - 1); }

FpPoly FpPoly::operator*(const FpPoly& o) const {
    ensure(p_ == o.p_, "FpPoly: mixed characteristics");
    if (is_zero() || o.is_zero()) return FpPoly(p_, {});
    std::vector<std::int64_t> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] = (out[i + j] + mulmod(coeffs_[i], o.coeffs_[j], p_)) % p_;
    }
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::scaled(std::int64_t c) const {
    std::vector<std::int64_t> out = coeffs_;
    for (auto& x : out) x = mulmod(x, c, p_);
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative() const {
    if (coeffs_.size() <= 1) return FpPoly(p_, {});
    std::vector<std::int64_t> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = mulmod(coeffs_[i], static_cast<std::int64_t>(i), p_);
    return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::monic() const {
    require(!is_zero(), "monic of zero polynomial");
    return scaled(invmod(leading(), p_));
}

std::int64_t FpPoly::eval(std::int64_t x) const {
    std::int64_t acc = 0;
    x = mod(x, p_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = (mulmod(acc, x, p_) + coeffs_[i]) % p_;
    return acc;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& divisor) const {
    require(!divisor.is_zero(), "polynomial division by zero");
    ensure(p_ == divisor.p_, "FpPoly: mixed characteristics");
    const int dd = divisor.degree();
    if (degree() < dd) return {FpPoly(p_, {}), *this};
    std::vector<std::int64_t> rem = coeffs_;
    std::vector<std::int64_t> quot(static_cast<std::size_t>(degree() - dd + 1), 0);
    const std::int64_t lead_inv = invmod(divisor.leading(), p_);
    for (int i = degree(); i >= dd; --i) {
        const std::int64_t c = mulmod(rem[static_cast<std::size_t>(i)], lead_inv, p_);
        if (c == 0) continue;
        quot[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j) {
            auto& slot = rem[static_cast<std::size_t>(i - dd + j)];
            slot = mod(slot - mulmod(c, divisor.coeffs_[static_cast<std::size_t>(j)], p_), p_);
        }
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {FpPoly(p_, std::move(quot)), FpPoly(p_, std::move(rem))};
}

std::string FpPoly::str(const std::string& var) const {
    return render<std::int64_t>(
        coeffs_, var, [](const std::int64_t&) { return false; },
        [](const std::int64_t& c) { return std::to_string(c); });
}

FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m) {
    require(e >= 0, "powmod: negative exponent");
    FpPoly result = FpPoly::constant(m.prime(), 1) % m;
    FpPoly b = base % m;
    Integer k = e;
    while (k > 0) {
        if ((k & 1) != 0) result = (result * b) % m;
        b = (b * b) % m;
        k >>= 1;
    }
    return result;
}

bool is_separable(const FpPoly& f) {
    require(!f.is_zero(), "is_separable: zero polynomial");
    return gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------- factoring

namespace {

void squarefree_parts(const FpPoly& f, int scale, std::vector<std::pair<FpPoly, int>>& out) {
    const std::int64_t p = f.prime();
    FpPoly c = gcd(f, f.derivative());
    FpPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = gcd(w, c);
        FpPoly fac = w / y;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) {
        // c is a p-th power: coefficients sit at multiples of p, and a^p = a in F_p
        std::vector<std::int64_t> root;
        for (int k = 0; k <= c.degree(); k += static_cast<int>(p)) root.push_back(c.coeff(k));
        squarefree_parts(FpPoly(p, std::move(root)), scale * static_cast<int>(p), out);
    }
}

// f squarefree monic, every irreducible factor of degree d.
void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const std::int64_t p = f.prime();
    const Integer pd = boost::multiprecision::pow(Integer(p), d);
    while (true) {
        std::vector<std::int64_t> coeffs(static_cast<std::size_t>(f.degree()));
        for (auto& c : coeffs) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
        const FpPoly a(p, coeffs);
        if (a.degree() <= 0) continue;
        FpPoly probe(p, {});
        if (p == 2) {
            FpPoly t = a;
            probe = a;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % f;
                probe = probe + t;
            }
        } else {
            probe = powmod(a, (pd - 1) / 2, f) - FpPoly::constant(p, 1);
        }
        const FpPoly g = gcd(probe, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FpFactor> factor_fp(const FpPoly& f, std::uint64_t seed) {
    require(!f.is_zero(), "factor_fp: zero polynomial");
    const std::int64_t p = f.prime();
    std::mt19937_64 rng(seed);
    std::vector<std::pair<FpPoly, int>> parts;
    if (f.degree() > 0) squarefree_parts(f.monic(), 1, parts);

    std::vector<FpFactor> out;
    for (const auto& [part, mult] : parts) {
        FpPoly rest = part;
        FpPoly h = FpPoly::x(p) % rest;
        for (int d = 1; 2 * d <= rest.degree(); ++d) {
            h = powmod(h, Integer(p), rest);
            const FpPoly g = gcd(h - FpPoly::x(p), rest);
            if (g.degree() > 0) {
                std::vector<FpPoly> pieces;
                equal_degree(g, d, rng, pieces);
                for (auto& q : pieces) out.push_back({std::move(q), mult});
                rest = rest / g;
                h = h % rest;
            }
        }
        if (rest.degree() > 0) out.push_back({rest.monic(), mult});
    }
    std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
        return a.factor != b.factor ? a.factor < b.factor : a.multiplicity < b.multiplicity;
    });
    return out;
}

bool is_irreducible_fp(const FpPoly& f) {
    if (f.degree() <= 0) return false;
    const auto fs = factor_fp(f);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

std::vector<std::int64_t> roots_fp(const FpPoly& f) {
    std::vector<std::int64_t> out;
    for (const auto& fac : factor_fp(f))
        if (fac.factor.degree() == 1) out.push_back(mod(-fac.factor.coeff(0), f.prime()));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- residues and curves

std::int64_t power_residue_map(std::int64_t p, std::int64_t n, std::int64_t x) {
    require(n >= 1 && (p - 1) % n == 0, "power_residue_map: n must divide p - 1");
    require(mod(x, p) != 0, "power_residue_map: zero argument");
    return powmod(x, (p - 1) / n, p);
}

bool is_power_residue(std::int64_t p, std::int64_t r, std::int64_t x) {
    require(r >= 1, "is_power_residue: r must be positive");
    x = mod(x, p);
    if (x == 0) return false;
    const std::int64_t g = std::gcd(r, p - 1);
    return powmod(x, (p - 1) / g, p) == 1;
}

namespace {

void check_conditions(std::int64_t q, const std::vector<ResidueCondition>& conditions) {
    require(is_prime(q), "only prime fields are supported");
    FpPoly product = FpPoly::constant(q, 1);
    for (const auto& c : conditions) {
        require(c.f.prime() == q, "condition polynomial over the wrong field");
        require(c.r >= 1 && (q - 1) % c.r == 0, "r_i must divide q - 1");
        require(mod(c.eps, q) != 0, "eps_i must be nonzero");
        product = product * c.f;
    }
    require(!product.is_zero() && is_separable(product), "product of the f_i is not separable");
}

}  // namespace

std::vector<std::int64_t> residue_power_class_set(std::int64_t q, const std::vector<ResidueCondition>& conditions) {
    check_conditions(q, conditions);
    std::vector<std::int64_t> out;
    for (std::int64_t c = 0; c < q; ++c) {
        bool ok = true;
        for (const auto& cond : conditions) {
            ok = is_power_residue(q, cond.r, mulmod(cond.f.eval(c), cond.eps, q));
            if (!ok) break;
        }
        if (ok) out.push_back(c);
    }
    return out;
}

CurveCount curve_count(std::int64_t q, const std::vector<ResidueCondition>& conditions, std::int64_t cap) {
    check_conditions(q, conditions);
    const auto L = static_cast<std::int64_t>(conditions.size());
    if (L > 0 && q > cap / (q * L)) throw SearchExhausted("curve_count: enumeration cap exceeded");

    // solutions[i][t] = #{y : eps_i y^{r_i} = t}
    std::vector<std::vector<std::int64_t>> solutions(conditions.size(), std::vector<std::int64_t>(static_cast<std::size_t>(q), 0));
    for (std::size_t i = 0; i < conditions.size(); ++i)
        for (std::int64_t y = 0; y < q; ++y)
            ++solutions[i][static_cast<std::size_t>(mulmod(conditions[i].eps, powmod(y, conditions[i].r, q), q))];

    CurveCount out;
    for (std::int64_t c = 0; c < q; ++c) {
        std::int64_t here = 1;
        for (std::size_t i = 0; i < conditions.size() && here; ++i)
            here *= solutions[i][static_cast<std::size_t>(conditions[i].f.eval(c))];
        out.affine += here;
    }

    // z = 0 forces x != 0; scale to x = 1, leaving eps_i y_i^{r_i} = [x^{r_i}] f_i
    std::int64_t prod_r = 1;
    bool homogeneous = true;
    std::int64_t infinity = 1;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        prod_r *= conditions[i].r;
        if (conditions[i].f.degree() > conditions[i].r) homogeneous = false;
        infinity *= solutions[i][static_cast<std::size_t>(conditions[i].f.coeff(static_cast<int>(conditions[i].r)))];
    }
    if (homogeneous) out.at_infinity = infinity;
    out.projective_lower = out.affine;
    out.projective_upper = out.affine + prod_r;
    return out;
}

Integer twice_genus(const std::vector<std::int64_t>& r) {
    Integer sum = 0, prod = 1;
    for (auto x : r) {
        sum += x;
        prod *= x;
    }
    const Integer m = static_cast<std::int64_t>(r.size()) - 1;
    return 2 + (sum - m - 3) * prod;
}

namespace {

// x > y * sqrt(q), exactly.
bool exceeds_scaled_root(const Integer& x, const Integer& y, std::int64_t q) {
    if (y <= 0) {
        if (x > 0) return true;
        // both sides nonpositive: compare magnitudes reversed
        return x * x < y * y * q;
    }
    return x > 0 && x * x > y * y * q;
}

}  // namespace

bool hasse_weil_gate(std::int64_t q, const std::vector<std::int64_t>& r) {
    require(!r.empty(), "hasse_weil_gate: empty r tuple");
    Integer sum = 0, prod = 1;
    for (auto x : r) {
        require(x >= 1, "hasse_weil_gate: r_i must be positive");
        sum += x;
        prod *= x;
    }
    const Integer m = static_cast<std::int64_t>(r.size()) - 1;
    const Integer coefficient = (sum - m - 1) * prod;  // 2 (1 + (sum - m - 3) / 2) prod
    const Integer lhs = Integer(q) + 1 - (m + 2) * prod;
    return exceeds_scaled_root(lhs, coefficient, q);
}

bool within_hasse_weil(std::int64_t q, std::int64_t points, const Integer& twice_g) {
    const Integer dev = Integer(points) - q - 1;
    if (twice_g < 0) return false;
    return dev * dev <= twice_g * twice_g * q;
}

}  // namespace normic
