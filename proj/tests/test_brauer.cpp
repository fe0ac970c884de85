#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "normic/brauer.hpp"
#include "normic/errors.hpp"
#include "oracles/oracles.hpp"

using namespace normic;

namespace {

using DR = std::vector<std::pair<std::int64_t, std::int64_t>>;

std::vector<std::int64_t> quotient_factors(const DR& dr, std::int64_t n) {
    return canonical_form(compute_brauer(NormicBundleDesc::numeric(n, dr)).quotient.group).group.orders();
}

// all admissible (d_i, r_i) lists with d_i <= 2n
std::vector<DR> admissible(std::int64_t n, std::size_t m) {
    std::vector<std::pair<std::int64_t, std::int64_t>> single;
    for (std::int64_t r : divisors(n))
        for (std::int64_t d = 1; d <= 2 * n; ++d)
            if ((d * r) % n == 0) single.emplace_back(d, r);
    std::vector<DR> out{{}};
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<DR> next;
        for (const auto& partial : out)
            for (const auto& f : single) {
                auto v = partial;
                v.push_back(f);
                next.push_back(v);
            }
        out = std::move(next);
    }
    std::erase_if(out, [n](const DR& v) {
        std::int64_t s = 0;
        for (auto [d, r] : v) s += d;
        return s % n != 0;
    });
    return out;
}

}  // namespace

TEST_SUITE("brauer") {

TEST_CASE("worked examples") {
    CHECK(quotient_factors({{2, 2}, {2, 2}}, 2) == std::vector<std::int64_t>{2});
    const auto single = compute_brauer(NormicBundleDesc::numeric(2, {{4, 2}}));
    CHECK(single.membership.orders() == std::vector<std::int64_t>{2});
    CHECK(single.quotient.group.is_trivial());
    CHECK(quotient_factors({{4, 4}, {4, 4}, {4, 2}}, 4) == std::vector<std::int64_t>{2, 4});
    CHECK(compute_brauer(NormicBundleDesc::numeric(4, {{4, 4}, {4, 4}, {4, 2}})).quotient.group.order() == 8);
}

TEST_CASE("desc validation") {
    CHECK_THROWS_AS(NormicBundleDesc::numeric(4, {{4, 3}}), InputError);
    CHECK_THROWS_AS(NormicBundleDesc::numeric(4, {{1, 2}, {3, 2}}), InputError);
    CHECK_THROWS_AS(NormicBundleDesc::numeric(4, {{2, 2}}), InputError);
    CHECK_THROWS_AS(NormicBundleDesc::numeric(4, {}), InputError);
}

TEST_CASE("residue profiles") {
    const auto two = NormicBundleDesc::numeric(2, {{2, 2}, {2, 2}});
    CHECK(residue_profile(two, {0, 0}).at_infinity == 0);
    const auto p = residue_profile(two, {1, 1});
    CHECK(p.at_factors == std::vector<std::int64_t>{1, 1});
    CHECK(p.at_infinity == 0);
    CHECK(residue_profile(NormicBundleDesc::numeric(4, {{4, 4}, {4, 4}}), {1, 3}).at_infinity == 0);
    CHECK_THROWS_AS(residue_profile(two, {1}), InputError);

    // vanishing residue at infinity is the membership condition
    for (std::int64_t n : {2, 3, 4, 6})
        for (const auto& dr : admissible(n, 2)) {
            const auto desc = NormicBundleDesc::numeric(n, dr);
            const FinAbGroup A(desc.splitting_degrees());
            for (std::int64_t i = 0; i < A.order(); ++i) {
                const auto x = A.element_at(i).coords;
                CHECK((residue_profile(desc, x).at_infinity == 0) == membership_test(desc, x));
            }
        }
}

TEST_CASE("membership") {
    const auto two = NormicBundleDesc::numeric(2, {{2, 2}, {2, 2}});
    CHECK(membership_test(two, {0, 0}));
    CHECK(membership_test(two, {1, 0}));
    const auto mixed = NormicBundleDesc::numeric(4, {{2, 2}, {1, 4}, {1, 4}});
    CHECK(membership_test(mixed, {1, 1, 1}));
    CHECK_FALSE(membership_test(mixed, {0, 1, 0}));
    CHECK(membership_test(mixed, {0, 1, 3}));
}

TEST_CASE("quotients agree with enumeration") {
    int compared = 0;
    for (std::int64_t n = 1; n <= 6; ++n)
        for (std::size_t m = 1; m <= 2; ++m)
            for (const auto& dr : admissible(n, m)) {
                std::vector<std::int64_t> d, r;
                for (auto [di, ri] : dr) {
                    d.push_back(di);
                    r.push_back(ri);
                }
                const auto oracle = oracle::brauer_quotient(n, d, r);
                const auto P = compute_brauer(NormicBundleDesc::numeric(n, dr));
                CHECK(canonical_form(P.quotient.group).group.orders() == oracle.quotient);
                CHECK(P.membership.orders() == oracle.membership);
                CHECK(P.kernel_order == oracle.kernel_order);
                std::int64_t l = 1;
                for (auto ri : r) l = std::lcm(l, ri);
                CHECK(P.kernel_order == l);
                CHECK(P.quotient.group.order() * l == P.membership.order());
                ++compared;
            }
    CHECK(compared > 200);
}

TEST_CASE("projection is a surjective homomorphism killing the diagonal") {
    const auto P = compute_brauer(NormicBundleDesc::numeric(4, {{2, 2}, {1, 4}, {1, 4}}));
    std::vector<GroupElement> members;
    for (std::int64_t i = 0; i < P.ambient.order(); ++i)
        if (P.is_member(P.ambient.element_at(i))) members.push_back(P.ambient.element_at(i));
    CHECK(static_cast<std::int64_t>(members.size()) == P.membership.order());
    std::set<GroupElement> image;
    for (const auto& x : members) {
        image.insert(P.project(x));
        CHECK(P.project(P.ambient.add(x, P.kernel_generator)) == P.project(x));
        for (const auto& y : members) CHECK(P.project(P.ambient.add(x, y)) == P.quotient.group.add(P.project(x), P.project(y)));
    }
    CHECK(static_cast<std::int64_t>(image.size()) == P.quotient.group.order());
}

TEST_CASE("structured family realizes the sum of the r_i") {
    for (std::int64_t n = 1; n <= 8; ++n) {
        const auto ds = divisors(n);
        std::vector<std::vector<std::int64_t>> lists{{}};
        for (int m = 0; m < 3; ++m) {
            const auto prev = lists;
            for (const auto& l : prev)
                for (std::int64_t r : ds)
                    if (l.empty() || r >= l.back()) {
                        auto v = l;
                        v.push_back(r);
                        lists.push_back(v);
                    }
            std::sort(lists.begin(), lists.end());
            lists.erase(std::unique(lists.begin(), lists.end()), lists.end());
        }
        for (const auto& rs : lists) {
            DR dr{{n, n}};
            for (auto r : rs) dr.emplace_back(n, r);
            const auto P = compute_brauer(NormicBundleDesc::numeric(n, dr));
            CHECK(canonical_form(P.quotient.group).group == canonical_form(FinAbGroup(rs)).group);
            // the images of the non-diagonal factors generate a copy of B
            std::vector<GroupElement> gens;
            for (std::size_t i = 1; i < dr.size(); ++i) {
                REQUIRE(P.generators[i]);
                gens.push_back(*P.generators[i]);
            }
            CHECK(generated_subgroup(P.quotient.group, gens).order == FinAbGroup(rs).order());
        }
    }
}

TEST_CASE("base change") {
    const DR dr{{4, 4}, {4, 2}};
    CHECK(compute_brauer(NormicBundleDesc::numeric(4, dr)).quotient.group ==
          brauer_after_base_change(4, 4, dr).quotient.group);
    CHECK(brauer_after_base_change(4, 1, {{4, 1}, {4, 1}}).quotient.group.is_trivial());
    const auto refined = brauer_after_base_change(4, 2, {{2, 2}, {2, 2}, {4, 2}});
    CHECK(canonical_form(refined.quotient.group).group.orders() == oracle::brauer_quotient(2, {2, 2, 4}, {2, 2, 2}).quotient);
    CHECK_THROWS_AS(brauer_after_base_change(4, 3, {{3, 1}}), InputError);
}

}
