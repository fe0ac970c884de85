#include <doctest.h>

#include "normic/construct.hpp"
#include "normic/errors.hpp"
#include "oracles/oracles.hpp"

using namespace normic;

namespace {

bool check_passed(const PlanReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c.passed;
    FAIL("no check named " << name);
    return false;
}

}  // namespace

TEST_SUITE("construct") {

TEST_CASE("Z/2 over Q") {
    const auto plan = construct_bundle(FinAbGroup({2}));
    CHECK(plan.n == 2);
    CHECK(plan.a == 2);
    CHECK(plan.u == std::vector<Integer>{1, 3});
    CHECK(plan.product() == RatPoly::from_ints({-3, 0, 1}) * RatPoly::from_ints({-5, 0, 1}));
    const auto report = verify_plan(plan, true);
    for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);
    CHECK(canonical_form(compute_brauer(plan.desc()).quotient.group).group.orders() == std::vector<std::int64_t>{2});
}

TEST_CASE("trivial target") {
    const auto plan = construct_bundle(FinAbGroup{});
    CHECK(plan.r == std::vector<std::int64_t>{2});
    CHECK(plan.P.size() == 1);
    CHECK(compute_brauer(plan.desc()).quotient.group.is_trivial());
    CHECK(verify_plan(plan).all_passed());
}

TEST_CASE("Z/4 + Z/2 over Q(i)") {
    const auto plan = construct_bundle(FinAbGroup({4, 2}));
    CHECK(plan.n == 4);
    CHECK(plan.r == std::vector<std::int64_t>{4, 4, 2});
    CHECK(plan.product().degree() == 12);
    CHECK(verify_plan(plan).all_passed());
    CHECK(compute_brauer(plan.desc()).quotient.group.order() == 8);
}

TEST_CASE("u parameters at a place") {
    const KummerExt K = KummerExt::make(2, CycloElement(2, Rational(5)));
    const auto uc = choose_u_parameters(K, {2, 2}, {PlaceModel::standard(5, 2)});
    CHECK(uc.u == std::vector<Integer>{1, 2});
    CHECK_FALSE(uc.auxiliary_prime);

    const KummerExt K7 = KummerExt::make(2, CycloElement(2, Rational(7)));
    const auto three = choose_u_parameters(K7, {2, 2, 2}, {PlaceModel::standard(7, 2)});
    std::vector<std::int64_t> product{1};
    std::set<std::int64_t> residues;
    for (const auto& u : three.u) {
        const std::int64_t lambda = reduce_mod(u, 7);
        CHECK(lambda != 0);
        residues.insert(lambda);
        product = oracle::fp_multiply(product, {mod(-lambda, 7), 0, 1}, 7);
    }
    CHECK(residues.size() == 3);
    CHECK(is_separable(FpPoly(7, product)));

    CHECK_THROWS_AS(choose_u_parameters(K, {2, 2, 2, 2}, {PlaceModel::standard(5, 2)}), InputError);
}

TEST_CASE("CRT route with an auxiliary split prime") {
    ConstructOptions opt;
    opt.u_search_cap = 0;
    opt.places = {5};
    const auto plan = construct_bundle(FinAbGroup({2}), opt);
    REQUIRE(plan.auxiliary_prime);
    CHECK(plan.a == 5);
    const auto report = verify_plan(plan);
    for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);

    opt.places = {7};
    const auto cubic = construct_bundle(FinAbGroup({3}), opt);
    CHECK(verify_plan(cubic).all_passed());
}

TEST_CASE("places and pinned radicands") {
    ConstructOptions opt;
    opt.places = {5};
    const auto plan = construct_bundle(FinAbGroup({2}), opt);
    CHECK(plan.a == 5);
    CHECK(plan.u == std::vector<Integer>{1, 2});
    CHECK(plan.product() == RatPoly::from_ints({-6, 0, 1}) * RatPoly::from_ints({-7, 0, 1}));
    CHECK(verify_plan(plan).all_passed());

    opt.places = {3};
    CHECK_THROWS_AS(construct_bundle(FinAbGroup({2}), opt), InputError);
    opt.places = {11};
    CHECK_THROWS_AS(construct_bundle(FinAbGroup({3}), opt), InputError);
    opt.places = {5};
    opt.a = 10;
    CHECK(construct_bundle(FinAbGroup({2}), opt).a == 10);
    opt.a = 25;
    CHECK_THROWS_AS(construct_bundle(FinAbGroup({2}), opt), InputError);
}

TEST_CASE("verify_plan catches tampering") {
    const auto plan = construct_bundle(FinAbGroup({2}));
    auto same = plan;
    same.u[1] = same.u[0];
    same.Q[1] = same.Q[0];
    same.P[1] = same.P[0];
    const auto r1 = verify_plan(same);
    CHECK_FALSE(check_passed(r1, "distinct-u"));
    CHECK_FALSE(check_passed(r1, "separable"));

    const auto big = construct_bundle(FinAbGroup({4, 2}));
    auto tampered = big;
    tampered.r[2] = 4;
    tampered.target = FinAbGroup({4, 2});
    CHECK_FALSE(check_passed(verify_plan(tampered), "brauer-quotient"));
}

TEST_CASE("small groups are realized") {
    for (const auto& orders : std::vector<std::vector<std::int64_t>>{{3}, {2, 2}, {3, 3}, {2, 2, 2}, {6}}) {
        const FinAbGroup B(orders);
        const auto plan = construct_bundle(B);
        CHECK(canonical_form(compute_brauer(plan.desc()).quotient.group).group == canonical_form(B).group);
        const auto report = verify_plan(plan);
        for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, B.str() << " " << c.name << ": " << c.detail);
    }
}

}
