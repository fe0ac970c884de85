#include "normic/places.hpp"

#include <functional>

#include "normic/errors.hpp"

namespace normic {

namespace {

Integer ipow(std::int64_t p, int e) { return boost::multiprecision::pow(Integer(p), static_cast<unsigned>(e)); }

Integer imod(const Integer& x, const Integer& m) {
    Integer r = x % m;
    return r < 0 ? r + m : r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer old_r = imod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        const Integer q = old_r / r;
        Integer t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    ensure(old_r == 1, "inverse_mod: not a unit");
    return imod(old_s, m);
}

Integer eval_mod(const RatPoly& f, const Integer& x, const Integer& m) {
    Integer acc = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;)
        acc = imod(acc * x + boost::multiprecision::numerator(f.coeffs()[i]), m);
    return acc;
}

// Newton lift of a simple root of the integer polynomial f from mod p to mod p^N.
Integer hensel_lift(const RatPoly& f, std::int64_t root, std::int64_t p, int N) {
    ensure(f.is_integral(), "hensel_lift: integer polynomial expected");
    const RatPoly df = f.derivative();
    Integer x = root;
    Integer pk = p;
    int k = 1;
    while (k < N) {
        k = std::min(2 * k, N);
        pk = ipow(p, k);
        const Integer fx = eval_mod(f, x, pk), dfx = eval_mod(df, x, pk);
        x = imod(x - fx * inverse_mod(dfx, pk), pk);
    }
    return x;
}

// Image of a p-integral rational in Z/p^N.
Integer rational_mod(const Rational& q, const Integer& pN) {
    return imod(boost::multiprecision::numerator(q) * inverse_mod(boost::multiprecision::denominator(q), pN), pN);
}

// Image of sum_i c_i (sum_j c_ij omega_hat^j) beta_hat^i in Z/p^N, all coordinates p-integral.
Integer embed(const std::vector<std::vector<Rational>>& coords, const Integer& omega_hat, const Integer& beta_hat,
              const Integer& pN) {
    Integer total = 0;
    for (std::size_t i = coords.size(); i-- > 0;) {
        Integer inner = 0;
        for (std::size_t j = coords[i].size(); j-- > 0;) inner = imod(inner * omega_hat + rational_mod(coords[i][j], pN), pN);
        total = imod(total * beta_hat + inner, pN);
    }
    return total;
}

struct Lifts {
    Integer omega_hat;
    Integer beta_hat;
};

LocalValue local_value_impl(const PlaceModel& place, std::vector<std::vector<Rational>> coords,
                            const std::function<Lifts(int)>& lifts) {
    bool nonzero = false;
    Integer den = 1;
    for (const auto& row : coords)
        for (const auto& c : row) {
            nonzero = nonzero || c != 0;
            const Integer d = boost::multiprecision::denominator(c);
            den = den / boost::multiprecision::gcd(den, d) * d;
        }
    require(nonzero, "local value of zero");
    const int den_val = valuation(den, place.p);
    for (auto& row : coords)
        for (auto& c : row) c *= den;  // now integral

    const Integer den_unit = den / ipow(place.p, den_val);
    for (int N = 16; N <= 8192; N *= 2) {
        const Integer pN = ipow(place.p, N);
        const Lifts l = lifts(N);
        const Integer t = embed(coords, l.omega_hat, l.beta_hat, pN);
        if (t == 0) continue;
        const int v = valuation(t, place.p);
        const Integer unit = t / ipow(place.p, v);
        const std::int64_t residue =
            mulmod(static_cast<std::int64_t>(unit % place.p), invmod(static_cast<std::int64_t>(den_unit % place.p), place.p), place.p);
        return LocalValue{v - den_val, residue};
    }
    throw InternalError("local value: precision limit reached for a nonzero element");
}

}  // namespace

PlaceModel PlaceModel::make(std::int64_t p, std::int64_t n, std::int64_t omega) {
    require(n >= 1, "place: n must be positive");
    require(is_prime(p), "place: p must be prime");
    require((p - 1) % n == 0, "place: p must be 1 mod n");
    omega = mod(omega, p);
    require(powmod(omega, n, p) == 1, "place: omega is not an n-th root of unity");
    for (auto [q, e] : factorize(n)) {
        (void)e;
        require(powmod(omega, n / q, p) != 1, "place: omega is not primitive");
    }
    return PlaceModel{p, n, omega};
}

PlaceModel PlaceModel::standard(std::int64_t p, std::int64_t n) {
    require(is_prime(p) && n >= 1 && (p - 1) % n == 0, "place: p must be a prime = 1 mod n");
    return make(p, n, powmod(primitive_root(p), (p - 1) / n, p));
}

LocalValue local_value(const PlaceModel& place, const CycloElement& x) {
    require(x.conductor() == place.n, "local value: conductor mismatch");
    const auto& phi = cyclotomic_polynomial(place.n);
    return local_value_impl(place, {x.coords()}, [&](int N) { return Lifts{hensel_lift(phi, place.omega, place.p, N), 0}; });
}

SplitPlace SplitPlace::make(const PlaceModel& base, const CycloElement& a, std::int64_t beta) {
    require(a.conductor() == base.n, "split place: conductor mismatch");
    const LocalValue av = local_value(base, a);
    require(av.valuation == 0, "split place: a must be a unit");
    beta = mod(beta, base.p);
    require(powmod(beta, base.n, base.p) == av.unit_residue, "split place: beta^n differs from a");
    return SplitPlace{base, beta};
}

LocalValue local_value(const SplitPlace& place, const CycloElement& a, const std::vector<CycloElement>& coords) {
    const PlaceModel& base = place.base;
    const auto& phi = cyclotomic_polynomial(base.n);
    std::vector<std::vector<Rational>> rows;
    for (const auto& c : coords) {
        require(c.conductor() == base.n, "local value: conductor mismatch");
        rows.push_back(c.coords());
    }
    return local_value_impl(base, std::move(rows), [&](int N) {
        const Integer omega_hat = hensel_lift(phi, base.omega, base.p, N);
        const Integer pN = ipow(base.p, N);
        // x^n - iota(a), whose root lifts beta
        const Integer a_hat = embed({a.coords()}, omega_hat, 0, pN);
        const Integer df_beta = imod(Integer(base.n) * boost::multiprecision::pow(Integer(place.beta), static_cast<unsigned>(base.n - 1)), pN);
        ensure(df_beta % base.p != 0, "split place: beta is not a simple root");
        Integer x = place.beta;
        for (int k = 1; k < N;) {
            k = std::min(2 * k, N);
            const Integer pk = ipow(base.p, k);
            const Integer fx = imod(Integer(boost::multiprecision::powm(x, Integer(base.n), pk)) - a_hat, pk);
            const Integer dfx = imod(Integer(base.n) * Integer(boost::multiprecision::powm(x, Integer(base.n - 1), pk)), pk);
            x = imod(x - fx * inverse_mod(dfx, pk), pk);
        }
        return Lifts{omega_hat, x};
    });
}

InvValue InvValue::operator+(const InvValue& o) const {
    require(n == o.n, "adding invariants with different n");
    return InvValue{mod(num + o.num, n), n};
}

InvValue psi(const PlaceModel& place, std::int64_t u) {
    require(place.n <= kMaxDiscreteLogOrder, "psi: n above the discrete-log cap");
    u = mod(u, place.p);
    std::int64_t w = 1;
    for (std::int64_t j = 0; j < place.n; ++j) {
        if (w == u) return InvValue{j, place.n};
        w = mulmod(w, place.omega, place.p);
    }
    throw InputError("psi: argument is not an n-th root of unity");
}

InvValue cyclic_invariant(const PlaceModel& place, const CycloElement& a, const CycloElement& b) {
    require(!a.is_zero() && !b.is_zero(), "cyclic_invariant: arguments must be nonzero");
    const LocalValue la = local_value(place, a), lb = local_value(place, b);
    const std::int64_t p = place.p;
    auto signed_pow = [p](std::int64_t x, std::int64_t e) {
        return e >= 0 ? powmod(x, e, p) : powmod(invmod(x, p), -e, p);
    };
    // c = (-1)^(alpha beta) u_a^beta / u_b^alpha, the p-powers cancel
    std::int64_t c = mulmod(signed_pow(la.unit_residue, lb.valuation), signed_pow(lb.unit_residue, -la.valuation), p);
    if ((static_cast<std::int64_t>(la.valuation) * lb.valuation) % 2 != 0) c = mod(-c, p);
    return psi(place, power_residue_map(p, place.n, c));
}

bool bilinearity_check(const PlaceModel& place, const CycloElement& a, const CycloElement& a2, const CycloElement& b) {
    return cyclic_invariant(place, a * a2, b) == cyclic_invariant(place, a, b) + cyclic_invariant(place, a2, b);
}

std::vector<PlaceModel> good_place_search(std::int64_t n, const std::set<std::int64_t>& avoid, std::size_t count,
                                          std::int64_t min_size, std::int64_t scan_cap) {
    require(n >= 1, "good_place_search: n must be positive");
    std::vector<PlaceModel> out;
    // smallest p = 1 mod n with p >= max(min_size, 2)
    std::int64_t start = std::max<std::int64_t>(min_size, 2);
    std::int64_t p = start + mod(1 - start, n);
    for (; out.size() < count; p += n) {
        if (p > scan_cap) throw SearchExhausted("good_place_search: no more primes below the scan cap");
        if (n % p == 0 || avoid.count(p) || !is_prime(p)) continue;
        out.push_back(PlaceModel::standard(p, n));
    }
    return out;
}

}  // namespace normic
