#include "normic/numberfield.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "normic/errors.hpp"

namespace normic {

// ---------------------------------------------------------------- KummerElement

KummerElement::KummerElement(const CycloElement& a, std::int64_t n, std::vector<CycloElement> coords)
    : a_(a), n_(n), coords_(std::move(coords)) {
    require(n >= 1, "Kummer element: n must be positive");
    require(static_cast<std::int64_t>(coords_.size()) <= n, "Kummer element: too many coordinates");
    coords_.resize(static_cast<std::size_t>(n), CycloElement(a.conductor(), Rational(0)));
    for (const auto& c : coords_) require(c.conductor() == a.conductor(), "Kummer element: conductor mismatch");
}

KummerElement KummerElement::from_base(const CycloElement& a, std::int64_t n, const CycloElement& x) {
    return KummerElement(a, n, {x});
}

KummerElement KummerElement::alpha_power(const CycloElement& a, std::int64_t n, std::int64_t j) {
    require(j >= 0, "alpha_power: negative exponent");
    // alpha^j = a^(j / n) alpha^(j mod n)
    std::vector<CycloElement> c(static_cast<std::size_t>(n), CycloElement(a.conductor(), Rational(0)));
    c[static_cast<std::size_t>(j % n)] = a.pow(j / n);
    return KummerElement(a, n, std::move(c));
}

bool KummerElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const CycloElement& c) { return c.is_zero(); });
}

bool KummerElement::in_base() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const CycloElement& c) { return c.is_zero(); });
}

const CycloElement& KummerElement::base_value() const {
    require(in_base(), "Kummer element does not lie in the base field");
    return coords_[0];
}

KummerElement KummerElement::operator+(const KummerElement& o) const {
    require(n_ == o.n_ && a_ == o.a_, "Kummer elements of different fields");
    std::vector<CycloElement> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + o.coords_[i];
    return KummerElement(a_, n_, std::move(c));
}

KummerElement KummerElement::operator-(const KummerElement& o) const { return *this + (-o); }

KummerElement KummerElement::operator-() const {
    std::vector<CycloElement> c = coords_;
    for (auto& x : c) x = -x;
    return KummerElement(a_, n_, std::move(c));
}

KummerElement KummerElement::operator*(const KummerElement& o) const {
    require(n_ == o.n_ && a_ == o.a_, "Kummer elements of different fields");
    const CycloElement zero(a_.conductor(), Rational(0));
    std::vector<CycloElement> c(static_cast<std::size_t>(n_), zero);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.coords_.size(); ++j) {
            if (o.coords_[j].is_zero()) continue;
            CycloElement term = coords_[i] * o.coords_[j];
            std::size_t k = i + j;
            if (k >= static_cast<std::size_t>(n_)) {
                term = term * a_;
                k -= static_cast<std::size_t>(n_);
            }
            c[k] = c[k] + term;
        }
    }
    return KummerElement(a_, n_, std::move(c));
}

KummerElement KummerElement::pow(std::int64_t e) const {
    require(e >= 0, "KummerElement::pow: negative exponent");
    KummerElement result = from_base(a_, n_, CycloElement(a_.conductor(), Rational(1))), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

KummerElement KummerElement::conjugate(std::int64_t t) const {
    require(a_.conductor() % n_ == 0, "conjugation needs zeta_n in the base field");
    const std::int64_t step = a_.conductor() / n_;
    std::vector<CycloElement> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = c[i] * CycloElement::zeta_power(a_.conductor(), mod(t * static_cast<std::int64_t>(i) * step, a_.conductor()));
    return KummerElement(a_, n_, std::move(c));
}

std::string KummerElement::str() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        const std::string c = coords_[i].str();
        if (i == 0) {
            out << c;
            continue;
        }
        if (c != "1") out << "(" << c << ")*";
        out << "t";
        if (i > 1) out << "^" << i;
    }
    return first ? "0" : out.str();
}

KPoly to_kpoly(const CycloElement& a, std::int64_t n, const RatPoly& f) {
    KPoly out;
    for (const auto& c : f.coeffs()) out.push_back(KummerElement::from_base(a, n, CycloElement(a.conductor(), c)));
    return out;
}

namespace {

KPoly trim(KPoly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

KPoly kpoly_mul(const KPoly& f, const KPoly& g, const KummerElement& zero) {
    if (f.empty() || g.empty()) return {};
    KPoly out(f.size() + g.size() - 1, zero);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = out[i + j] + f[i] * g[j];
    return trim(out);
}

KPoly kpoly_add(KPoly f, const KPoly& g, const KummerElement& zero) {
    if (f.size() < g.size()) f.resize(g.size(), zero);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = f[i] + g[i];
    return trim(f);
}

}  // namespace

KPoly compose_kpoly(const RatPoly& outer, const KPoly& inner) {
    require(!inner.empty(), "compose_kpoly: zero inner polynomial");
    const KummerElement& ref = inner.front();
    const KummerElement zero = KummerElement::from_base(ref.radicand(), ref.degree(), CycloElement(ref.radicand().conductor(), Rational(0)));
    KPoly out;
    for (std::size_t i = outer.coeffs().size(); i-- > 0;) {
        out = kpoly_mul(out, inner, zero);
        out = kpoly_add(out, {KummerElement::from_base(ref.radicand(), ref.degree(), CycloElement(ref.radicand().conductor(), outer.coeffs()[i]))}, zero);
    }
    return out;
}

bool kpoly_equal(const KPoly& f, const KPoly& g) { return trim(f) == trim(g); }

std::string kpoly_str(const KPoly& f) {
    const KPoly t = trim(f);
    if (t.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = t.size(); i-- > 0;) {
        if (t[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        const std::string c = t[i].str();
        if (i == 0) {
            out << "(" << c << ")";
            continue;
        }
        if (c != "1") out << "(" << c << ")*";
        out << "x";
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

std::string to_string(CertKind kind) {
    switch (kind) {
        case CertKind::eisenstein: return "eisenstein";
        case CertKind::modular: return "modular";
        case CertKind::composition: return "composition";
        case CertKind::linear: return "linear";
    }
    return "?";
}

// ---------------------------------------------------------------- local tests

namespace {

std::optional<LocalValue> coefficient_value(const KummerElement& c, const PlaceModel& place) {
    if (c.is_zero()) return std::nullopt;
    return local_value(place, c.base_value());
}

std::optional<LocalValue> coefficient_value(const KummerElement& c, const SplitPlace& place) {
    if (c.is_zero()) return std::nullopt;
    return local_value(place, c.radicand(), c.coords());
}

template <class Place>
bool eisenstein_impl(const KPoly& raw, const Place& place) {
    const KPoly f = trim(raw);
    if (f.size() < 2) return false;
    const auto lead = coefficient_value(f.back(), place);
    if (!lead || lead->valuation != 0) return false;
    const auto c0 = coefficient_value(f.front(), place);
    if (!c0 || c0->valuation != 1) return false;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        const auto v = coefficient_value(f[i], place);
        if (v && v->valuation < 1) return false;
    }
    return true;
}

template <class Place>
std::optional<FpPoly> reduce_impl(const KPoly& raw, const Place& place, std::int64_t p) {
    const KPoly f = trim(raw);
    std::vector<std::int64_t> out;
    for (const auto& c : f) {
        const auto v = coefficient_value(c, place);
        if (!v) {
            out.push_back(0);
            continue;
        }
        if (v->valuation < 0) return std::nullopt;
        out.push_back(v->valuation == 0 ? v->unit_residue : 0);
    }
    return FpPoly(p, std::move(out));
}

bool all_in_base(const KPoly& f) {
    return std::all_of(f.begin(), f.end(), [](const KummerElement& c) { return c.in_base(); });
}

}  // namespace

bool eisenstein_check(const KPoly& f, const PlaceModel& place) {
    require(all_in_base(f), "eisenstein_check: coefficients outside the base field need a split place");
    return eisenstein_impl(f, place);
}

bool eisenstein_check(const KPoly& f, const SplitPlace& place) { return eisenstein_impl(f, place); }

std::optional<FpPoly> reduce_kpoly(const KPoly& f, const PlaceModel& place) {
    require(all_in_base(f), "reduce_kpoly: coefficients outside the base field need a split place");
    return reduce_impl(f, place, place.p);
}

std::optional<FpPoly> reduce_kpoly(const KPoly& f, const SplitPlace& place) { return reduce_impl(f, place, place.base.p); }

// ---------------------------------------------------------------- certificates

namespace {

std::vector<std::int64_t> primitive_roots_of_unity(std::int64_t p, std::int64_t n) {
    const std::int64_t g = primitive_root(p);
    std::vector<std::int64_t> out;
    for (std::int64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) out.push_back(powmod(g, k * ((p - 1) / n), p));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> nth_roots(std::int64_t p, std::int64_t n, std::int64_t x) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(n + 1), 0);
    c.front() = mod(-x, p);
    c.back() = 1;
    return roots_fp(FpPoly(p, std::move(c)));
}

template <class Place>
bool modular_ok(const KPoly& f, const Place& place, std::int64_t p) {
    const KPoly t = trim(f);
    const auto red = reduce_impl(t, place, p);
    return red && red->degree() == static_cast<int>(t.size()) - 1 && is_irreducible_fp(*red);
}

IrreducibilityCertificate local_cert(CertKind kind, CertField field, const KPoly& f, const PlaceModel& place,
                                     std::optional<std::int64_t> beta) {
    IrreducibilityCertificate c;
    c.kind = kind;
    c.field = field;
    c.poly = trim(f);
    c.place = place;
    c.beta = beta;
    return c;
}

}  // namespace

std::optional<IrreducibilityCertificate> find_certificate(const KummerExt& K, const KPoly& raw, CertField field,
                                                          std::int64_t scan_cap) {
    const KPoly f = trim(raw);
    require(f.size() >= 2, "find_certificate: polynomial of positive degree expected");
    if (field == CertField::base) require(all_in_base(f), "find_certificate: coefficients outside k");
    if (f.size() == 2) {
        IrreducibilityCertificate c;
        c.kind = CertKind::linear;
        c.field = field;
        c.poly = f;
        return c;
    }
    const std::int64_t n = K.n;
    const std::int64_t conductor = K.a.conductor();

    // Eisenstein first at primes dividing a rational constant term
    if (f.front().in_base() && f.front().base_value().is_rational() && !f.front().is_zero()) {
        const Integer num = abs(boost::multiprecision::numerator(f.front().base_value().rational_value()));
        if (num > 1 && num < Integer(1) << 62)
            for (auto [p, e] : factorize(static_cast<std::int64_t>(num))) {
                (void)e;
                if ((p - 1) % conductor != 0) continue;
                for (std::int64_t omega : primitive_roots_of_unity(p, conductor)) {
                    const PlaceModel place = PlaceModel::make(p, conductor, omega);
                    if (field == CertField::base) {
                        if (eisenstein_check(f, place)) return local_cert(CertKind::eisenstein, field, f, place, std::nullopt);
                        continue;
                    }
                    const LocalValue av = local_value(place, K.a);
                    if (av.valuation != 0 || !is_power_residue(p, n, av.unit_residue)) continue;
                    for (std::int64_t beta : nth_roots(p, n, av.unit_residue)) {
                        const SplitPlace sp = SplitPlace::make(place, K.a, beta);
                        if (eisenstein_check(f, sp)) return local_cert(CertKind::eisenstein, field, f, place, beta);
                    }
                }
            }
    }

    for (std::int64_t p = conductor + 1; p <= scan_cap; p += conductor) {
        if (!is_prime(p)) continue;
        for (std::int64_t omega : primitive_roots_of_unity(p, conductor)) {
            const PlaceModel place = PlaceModel::make(p, conductor, omega);
            if (field == CertField::base) {
                if (eisenstein_check(f, place)) return local_cert(CertKind::eisenstein, field, f, place, std::nullopt);
                if (modular_ok(f, place, p)) return local_cert(CertKind::modular, field, f, place, std::nullopt);
                continue;
            }
            if (K.a.is_zero()) continue;
            const LocalValue av = local_value(place, K.a);
            if (av.valuation != 0 || !is_power_residue(p, n, av.unit_residue)) continue;
            for (std::int64_t beta : nth_roots(p, n, av.unit_residue)) {
                const SplitPlace sp = SplitPlace::make(place, K.a, beta);
                if (eisenstein_check(f, sp)) return local_cert(CertKind::eisenstein, field, f, place, beta);
                if (modular_ok(f, sp, p)) return local_cert(CertKind::modular, field, f, place, beta);
            }
        }
    }
    return std::nullopt;
}

std::string verify_certificate(const KummerExt& K, const IrreducibilityCertificate& cert) {
    const KPoly f = trim(cert.poly);
    if (f.size() < 2) return "certified polynomial has degree < 1";
    for (const auto& c : f)
        if (c.degree() != K.n || !(c.radicand() == K.a)) return "coefficient from a different field";
    if (cert.field == CertField::base && !all_in_base(f)) return "base-field certificate with coefficients outside k";

    switch (cert.kind) {
        case CertKind::linear:
            return f.size() == 2 ? "" : "linear certificate for a nonlinear polynomial";
        case CertKind::eisenstein:
        case CertKind::modular: {
            if (!cert.place) return "missing place";
            try {
                const PlaceModel place = PlaceModel::make(cert.place->p, cert.place->n, cert.place->omega);
                if (place.n != K.a.conductor()) return "place has the wrong conductor";
                const bool eis = cert.kind == CertKind::eisenstein;
                if (cert.field == CertField::base) {
                    if (cert.beta) return "base-field certificate carries a root of a";
                    if (eis ? eisenstein_check(f, place) : modular_ok(f, place, place.p)) return "";
                    return eis ? "not Eisenstein at the place" : "reduction is not irreducible of full degree";
                }
                if (!cert.beta) return "K-certificate needs a split place";
                const SplitPlace sp = SplitPlace::make(place, K.a, *cert.beta);
                if (eis ? eisenstein_check(f, sp) : modular_ok(f, sp, place.p)) return "";
                return eis ? "not Eisenstein at the split place" : "reduction is not irreducible of full degree";
            } catch (const InputError& e) {
                return std::string("invalid place: ") + e.what();
            }
        }
        case CertKind::composition: {
            if (cert.field != CertField::base) return "composition certifies over k only";
            if (cert.parts.size() != 2) return "composition needs two sub-certificates";
            if (cert.theta_power < 0) return "negative theta power";
            const auto& ch = cert.parts[0];
            const auto& cg = cert.parts[1];
            if (ch.field != CertField::base || !kpoly_equal(ch.poly, to_kpoly(K.a, K.n, cert.h)))
                return "first part does not certify h over k";
            const KummerElement theta = KummerElement::alpha_power(K.a, K.n, cert.theta_power);
            KPoly g_minus_theta = to_kpoly(K.a, K.n, cert.g);
            if (g_minus_theta.empty()) return "g is zero";
            g_minus_theta[0] = g_minus_theta[0] - theta;
            if (cg.field != CertField::kummer || !kpoly_equal(cg.poly, g_minus_theta))
                return "second part does not certify g - theta over K";
            KummerElement h_theta = KummerElement::from_base(K.a, K.n, CycloElement(K.a.conductor(), Rational(0)));
            for (std::size_t i = cert.h.coeffs().size(); i-- > 0;)
                h_theta = h_theta * theta + KummerElement::from_base(K.a, K.n, CycloElement(K.a.conductor(), cert.h.coeffs()[i]));
            if (!h_theta.is_zero()) return "theta is not a root of h";
            if (!kpoly_equal(f, to_kpoly(K.a, K.n, cert.h.compose(cert.g)))) return "polynomial is not h(g(x))";
            if (auto why = verify_certificate(K, ch); !why.empty()) return "h: " + why;
            if (auto why = verify_certificate(K, cg); !why.empty()) return "g - theta: " + why;
            return "";
        }
    }
    return "unknown certificate kind";
}

IrreducibilityCertificate compose_irreducible(const KummerExt& K, const RatPoly& h, const RatPoly& g,
                                              std::int64_t theta_power, const IrreducibilityCertificate& cert_h,
                                              const IrreducibilityCertificate& cert_g_minus_theta) {
    IrreducibilityCertificate c;
    c.kind = CertKind::composition;
    c.field = CertField::base;
    c.poly = to_kpoly(K.a, K.n, h.compose(g));
    c.h = h;
    c.g = g;
    c.theta_power = theta_power;
    c.parts = {cert_h, cert_g_minus_theta};
    if (auto why = verify_certificate(K, c); !why.empty()) throw CertificateError("compose_irreducible: " + why);
    return c;
}

KummerExt KummerExt::make(std::int64_t n, const CycloElement& a, std::int64_t scan_cap) {
    require(n >= 1, "Kummer extension: n must be positive");
    require(a.conductor() % n == 0, "Kummer extension: zeta_n must lie in the base field");
    require(!a.is_zero(), "Kummer extension: a must be nonzero");
    KummerExt K{n, a, {}};
    const CycloElement zero(a.conductor(), Rational(0)), one(a.conductor(), Rational(1));
    KPoly f(static_cast<std::size_t>(n + 1), KummerElement::from_base(a, n, zero));
    f.front() = KummerElement::from_base(a, n, -a);
    f.back() = KummerElement::from_base(a, n, one);
    if (n == 1) {
        K.certificate = *find_certificate(K, f, CertField::base);
        return K;
    }
    auto cert = find_certificate(K, f, CertField::base, scan_cap);
    if (!cert) throw SearchExhausted("no irreducibility certificate for x^n - a within the scan cap");
    K.certificate = *cert;
    return K;
}

// ---------------------------------------------------------------- splitting degree and norms

SplittingDegree splitting_degree(const KummerExt& K, const RatPoly& P, std::int64_t samples,
                                 std::optional<std::int64_t> analytic_r, std::int64_t scan_cap) {
    require(samples >= 1, "splitting_degree: samples must be positive");
    require(P.degree() >= 1, "splitting_degree: P must have positive degree");
    const std::int64_t n = K.n;
    const std::int64_t conductor = K.a.conductor();
    const auto ds = divisors(n);
    std::vector<bool> alive(ds.size(), true);

    std::int64_t used = 0;
    for (std::int64_t p = conductor + 1; used < samples; p += conductor) {
        if (p > scan_cap) throw SearchExhausted("splitting_degree: too few usable primes below the scan cap");
        if (!is_prime(p)) continue;
        bool integral = true;
        for (const auto& c : P.coeffs()) integral = integral && boost::multiprecision::denominator(c) % p != 0;
        if (!integral || reduce_mod(P.leading(), p) == 0) continue;
        const PlaceModel place = PlaceModel::standard(p, conductor);
        const LocalValue av = local_value(place, K.a);
        if (av.valuation != 0) continue;
        const FpPoly red = P.reduce(p);
        if (!is_separable(red)) continue;
        // a root of P mod p is a degree-one prime of k[x]/(P), where a reduces to a_bar
        const FpPoly frob = powmod(FpPoly::x(p), Integer(p), red) - FpPoly::x(p);
        if (gcd(frob, red).degree() <= 0) continue;
        ++used;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (alive[i] && !is_power_residue(p, ds[i], av.unit_residue)) alive[i] = false;
    }
    std::int64_t m = 1;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (alive[i]) m = std::max(m, ds[i]);

    SplittingDegree out;
    out.m = m;
    out.r = n / m;
    out.samples = used;
    out.grunwald_wang_caveat = n % 8 == 0;
    if (analytic_r) {
        ensure(*analytic_r == out.r, "splitting_degree: sampled value " + std::to_string(out.r) +
                                         " contradicts the analytic value " + std::to_string(*analytic_r));
        out.tag = "certified";
    } else {
        out.tag = "monte-carlo(" + std::to_string(samples) + ")";
    }
    return out;
}

std::pair<std::int64_t, std::int64_t> norm_splitting_pattern(std::int64_t n, std::int64_t n_prime) {
    require(n >= 1 && n_prime >= 1 && n % n_prime == 0, "norm_splitting_pattern: n' must divide n");
    return {n / n_prime, n_prime};
}

CycloElement norm(const KummerElement& z) {
    KummerElement acc = KummerElement::from_base(z.radicand(), z.degree(), CycloElement(z.radicand().conductor(), Rational(1)));
    for (std::int64_t t = 0; t < z.degree(); ++t) acc = acc * z.conjugate(t);
    ensure(acc.in_base(), "norm did not land in the base field");
    return acc.base_value();
}

std::string to_string(NormVerdict v) { return v == NormVerdict::yes ? "yes" : "unknown"; }

NormVerdict is_norm_constant(const KummerExt& K, const CycloElement& c, const std::optional<KummerElement>& witness) {
    require(!c.is_zero(), "is_norm_constant: c must be nonzero");
    if (c == CycloElement(c.conductor(), Rational(1))) return NormVerdict::yes;
    if (witness) {
        require(witness->degree() == K.n && witness->radicand() == K.a, "witness lies in a different field");
        if (norm(*witness) == c) return NormVerdict::yes;
    }
    return NormVerdict::unknown;
}

}  // namespace normic
