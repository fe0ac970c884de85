#include <doctest.h>

#include <random>

#include "normic/errors.hpp"
#include "normic/numberfield.hpp"
#include "oracles/oracles.hpp"

using namespace normic;

namespace {

CycloElement q(std::int64_t n, std::int64_t v) { return CycloElement(n, Rational(v)); }

KummerElement random_kummer(const KummerExt& K, std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    std::vector<CycloElement> coords;
    for (std::int64_t i = 0; i < K.n; ++i) {
        std::vector<Rational> c;
        for (int j = 0; j < euler_phi(K.a.conductor()); ++j) c.push_back(d(rng));
        coords.emplace_back(K.a.conductor(), std::move(c));
    }
    return KummerElement(K.a, K.n, std::move(coords));
}

std::int64_t residue(const SplitPlace& P, const KummerElement& x) {
    if (x.is_zero()) return 0;
    const LocalValue v = local_value(P, x.radicand(), x.coords());
    return v.valuation > 0 ? 0 : v.unit_residue;
}

KPoly kpoly(const KummerExt& K, std::vector<KummerElement> c) {
    (void)K;
    return c;
}

}  // namespace

TEST_SUITE("numberfield") {

TEST_CASE("Kummer arithmetic") {
    const KummerExt K = KummerExt::make(3, q(3, 7));
    const KummerElement a = K.alpha();
    CHECK(a.pow(3) == K.embed(q(3, 7)));
    CHECK(a.pow(5) == KummerElement::alpha_power(K.a, 3, 5));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const auto x = random_kummer(K, rng, 5), y = random_kummer(K, rng, 5), z = random_kummer(K, rng, 5);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK((x * y).conjugate(1) == x.conjugate(1) * y.conjugate(1));
        CHECK(x.conjugate(1).conjugate(2) == x);
    }
}

TEST_CASE("norms") {
    for (std::int64_t n : {2, 3, 4, 6}) {
        const KummerExt K = KummerExt::make(n, q(n, 11));
        CHECK(norm(K.alpha()) == q(n, n % 2 == 0 ? -11 : 11));
    }
    const KummerExt K = KummerExt::make(4, q(4, 3));
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        const auto x = random_kummer(K, rng, 3), y = random_kummer(K, rng, 3);
        CHECK(norm(x * y) == norm(x) * norm(y));
    }
    CHECK(norm_splitting_pattern(6, 2) == std::pair<std::int64_t, std::int64_t>{3, 2});
    CHECK_THROWS_AS(norm_splitting_pattern(6, 4), InputError);

    const KummerExt Q2 = KummerExt::make(2, q(2, 2));
    const KummerElement w = Q2.embed(q(2, 1)) + Q2.alpha();
    CHECK(norm(w) == q(2, -1));
    CHECK(is_norm_constant(Q2, q(2, -1), w) == NormVerdict::yes);
    CHECK(is_norm_constant(Q2, q(2, 1)) == NormVerdict::yes);
    CHECK(is_norm_constant(Q2, q(2, 3)) == NormVerdict::unknown);
}

TEST_CASE("reduction at split places is a ring homomorphism") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (auto [n, a, p] : std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>>{{2, 2, 7}, {3, 2, 31}, {2, 5, 11}}) {
        const KummerExt K = KummerExt::make(n, q(n, a));
        const PlaceModel base = PlaceModel::standard(p, n);
        const auto av = local_value(base, K.a);
        std::int64_t beta = 1;
        while (powmod(beta, n, p) != av.unit_residue) ++beta;
        const SplitPlace P = SplitPlace::make(base, K.a, beta);
        for (int i = 0; i < 350; ++i) {
            const auto x = random_kummer(K, rng, 9), y = random_kummer(K, rng, 9);
            const std::int64_t rx = residue(P, x), ry = residue(P, y);
            CHECK(residue(P, x * y) == mulmod(rx, ry, p));
            CHECK(residue(P, x + y) == mod(rx + ry, p));
            ++checked;
        }
    }
    CHECK(checked >= 1000);
}

TEST_CASE("Eisenstein checks") {
    const KummerExt K = KummerExt::make(2, q(2, 5));
    const PlaceModel P3 = PlaceModel::standard(3, 2);
    CHECK(eisenstein_check(to_kpoly(K.a, 2, RatPoly::from_ints({-3, 0, 1})), P3));
    CHECK_FALSE(eisenstein_check(to_kpoly(K.a, 2, RatPoly::from_ints({-9, 0, 1})), P3));
    CHECK(eisenstein_check(to_kpoly(K.a, 2, RatPoly::from_ints({3, 6, 0, 1})), P3));
    CHECK_FALSE(eisenstein_check(to_kpoly(K.a, 2, RatPoly::from_ints({3, 1, 0, 1})), P3));
    CHECK(K.certificate.kind == CertKind::eisenstein);
    CHECK(K.certificate.place->p == 5);
    // coefficients involving alpha need a split place
    CHECK_THROWS_AS(eisenstein_check(kpoly(K, {K.alpha(), K.embed(q(2, 1))}), P3), InputError);
}

TEST_CASE("certificate for x^2 - (1 + sqrt2) and its composition") {
    const KummerExt K = KummerExt::make(2, q(2, 2));
    KPoly f = to_kpoly(K.a, 2, RatPoly::from_ints({0, 0, 1}));
    f[0] = -(K.embed(q(2, 1)) + K.alpha());
    const auto cert = find_certificate(K, f, CertField::kummer);
    REQUIRE(cert);
    CHECK(cert->kind == CertKind::modular);
    CHECK(cert->place->p == 7);
    CHECK(cert->beta == 4);
    CHECK(verify_certificate(K, *cert).empty());

    const RatPoly h = RatPoly::from_ints({-2, 0, 1}), g = RatPoly::from_ints({-1, 0, 1});
    const auto cert_h = find_certificate(K, to_kpoly(K.a, 2, h), CertField::base);
    REQUIRE(cert_h);
    KPoly g_theta = to_kpoly(K.a, 2, g);
    g_theta[0] = g_theta[0] - K.alpha();
    const auto cert_g = find_certificate(K, g_theta, CertField::kummer);
    REQUIRE(cert_g);
    const auto composed = compose_irreducible(K, h, g, 1, *cert_h, *cert_g);
    CHECK(verify_certificate(K, composed).empty());
    CHECK(kpoly_equal(composed.poly, to_kpoly(K.a, 2, RatPoly::from_ints({-1, 0, -2, 0, 1}))));
    CHECK(oracle::find_monic_factor({-1, 0, -2, 0, 1}).empty());

    CHECK_THROWS_AS(compose_irreducible(K, h, g, 2, *cert_h, *cert_g), CertificateError);
    auto tampered = *cert;
    tampered.beta = 3;
    CHECK_FALSE(verify_certificate(K, tampered).empty());
}

TEST_CASE("certificates are never issued for reducible polynomials") {
    const KummerExt K = KummerExt::make(2, q(2, -1));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-6, 6), deg(2, 4);
    int certified = 0, reducible = 0;
    for (int i = 0; i < 150; ++i) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(deg(rng)), 0);
        for (auto& x : c) x = d(rng);
        if (c[0] == 0) c[0] = 1;
        c.push_back(1);
        const bool irreducible = oracle::find_monic_factor(c).empty();
        const auto cert = find_certificate(K, to_kpoly(K.a, 2, RatPoly::from_ints(c)), CertField::base, 400);
        if (cert) {
            ++certified;
            CHECK_MESSAGE(irreducible, "certificate for a reducible polynomial");
            CHECK(verify_certificate(K, *cert).empty());
        }
        if (!irreducible) ++reducible;
    }
    CHECK(certified > 50);
    CHECK(reducible > 5);
}

TEST_CASE("splitting degree") {
    const KummerExt K = KummerExt::make(2, q(2, 5));
    CHECK(splitting_degree(K, RatPoly::from_ints({0, 1})).r == 2);
    CHECK(splitting_degree(K, RatPoly::from_ints({-5, 0, 1})).r == 1);
    CHECK(splitting_degree(K, RatPoly::from_ints({-20, 0, 1})).r == 1);
    CHECK(splitting_degree(K, RatPoly::from_ints({-2, 0, 1})).r == 2);
    const auto mc = splitting_degree(K, RatPoly::from_ints({-2, 0, 1}), 12);
    CHECK(mc.tag == "monte-carlo(12)");
    CHECK(mc.samples == 12);
    CHECK_FALSE(mc.grunwald_wang_caveat);

    // P = h(g) with h = x^(n/r) - a: a becomes an (n/r)-th power
    const KummerExt K4 = KummerExt::make(4, q(4, 5));
    const RatPoly h = RatPoly::from_ints({-5, 0, 1}), g = RatPoly::from_ints({-1, 0, 1});
    const auto s = splitting_degree(K4, h.compose(g), kDefaultSplittingSamples, 2);
    CHECK(s.r == 2);
    CHECK(s.m == 2);
    CHECK(s.tag == "certified");
    CHECK_THROWS_AS(splitting_degree(K4, h.compose(g), kDefaultSplittingSamples, 4), InternalError);
    CHECK(splitting_degree(K4, RatPoly::from_ints({-5, 0, 0, 0, 1})).r == 1);
    CHECK(splitting_degree(K4, RatPoly::from_ints({0, 1})).r == 4);

    // a larger field can only shrink r
    for (std::int64_t c : {2, 3, 6, 7, 10}) {
        const RatPoly P = RatPoly::from_ints({-c, 0, 1});
        CHECK(splitting_degree(K4, h.compose(P)).r <= splitting_degree(K4, P).r);
    }
    CHECK(splitting_degree(KummerExt::make(8, q(8, 3)), RatPoly::from_ints({0, 1}), 10).grunwald_wang_caveat);
}

}
