#include <doctest.h>

#include <cmath>

#include "entbounds/bounds.hpp"
#include "support.hpp"

using namespace entb;
using entb::testing::acin_reference_state;
using entb::testing::wclass_reference_state;

namespace {

BoundParams explicit_params(double exponent, std::vector<double> p)
{
    return BoundParams{exponent, p, std::vector<bool>(p.size(), true)};
}

FocusOptions explicit_p(std::vector<double> p)
{
    return FocusOptions{std::nullopt, PChoice{PMode::Explicit, std::move(p)}};
}

FocusOptionMap figure_p()
{
    return {{"A", explicit_p({0.8, 0.6})}, {"B", explicit_p({0.4, 0.6})}};
}

// Random descending group sums that are admissible at p = 1, plus some admissible p.
std::pair<std::vector<double>, std::vector<double>> random_feasible(SplitMix64& rng)
{
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 5);
    std::vector<double> a(k);
    double v = 0.2 + rng.uniform();
    for (auto& x : a) {
        x = v;
        v *= 0.05 + 0.45 * rng.uniform();
    }
    const auto t = level_ratios(a);
    std::vector<double> p;
    for (double tl : t)
        p.push_back(std::min(1.0, tl + (1.0 - tl) * rng.uniform()));
    return {a, p};
}

}  // namespace

TEST_CASE("lemma_rhs")
{
    CHECK(lemma_rhs(0.5, 0.6, 1.0).rhs() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(lemma_rhs(0.0, 0.3, 0.5).rhs() == doctest::Approx(1.0).epsilon(1e-15));
    const auto c = lemma_rhs(0.5, 0.6, 0.5);
    CHECK(c.rhs() == doctest::Approx(1.232508797191247).epsilon(1e-14));
    CHECK(c.rhs() >= std::sqrt(1.5));
    CHECK(c.omega >= 1.0);
    CHECK(c.upsilon >= 0.0);
    CHECK(lemma_rhs(0.0, 0.5, 0.0).rhs() == 1.0);
    CHECK(lemma_rhs(0.0, 0.5, 0.0).upsilon == 0.0);

    CHECK_THROWS_AS(lemma_rhs(0.7, 0.6, 0.5), std::domain_error);
    CHECK_THROWS_AS(lemma_rhs(0.5, 1.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(lemma_rhs(0.5, 0.6, 1.5), std::domain_error);
    CHECK_THROWS_AS(lemma_rhs(0.5, 0.6, -0.1), std::domain_error);
    CHECK_THROWS_AS(lemma_rhs(0.0, 0.0, 0.5), std::domain_error);
}

TEST_CASE("chain_values")
{
    for (double v : chain_values(1.0, 1.0, 1.0))
        CHECK(v == doctest::Approx(2.0).epsilon(1e-15));
    const auto c = chain_values(0.5, 0.6, 0.5);
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        CHECK(c[i] <= c[i + 1]);
    const auto z = chain_values(0.3, 0.5, 0.0);
    const std::array<double, 6> want{1, 1, 1, 1, 1, 2};
    CHECK(z == want);
}

TEST_CASE("lemma inequality and chain on a random grid")
{
    SplitMix64 rng(1234);
    for (int i = 0; i < 100000; ++i) {
        const double x = rng.uniform(), p = 1.0 - rng.uniform(), t = p * rng.uniform();
        const auto c = chain_values(t, p, x);
        for (std::size_t k = 0; k + 1 < c.size(); ++k)
            REQUIRE(c[k + 1] - c[k] >= -1e-12);
    }
}

TEST_CASE("lemma is monotone in p")
{
    SplitMix64 rng(77);
    for (int i = 0; i < 20000; ++i) {
        const double x = rng.uniform();
        const double p2 = 1.0 - rng.uniform();
        const double p1 = p2 * (1.0 - rng.uniform());
        const double t = p1 * rng.uniform();
        REQUIRE(lemma_rhs(t, p1, x).rhs() <= lemma_rhs(t, p2, x).rhs() + 1e-12);
    }
}

TEST_CASE("theta")
{
    SUBCASE("three-qubit reference grouping at exponent 2")
    {
        const double a[] = {0.5, 0.25};
        CHECK(theta(a, explicit_params(2.0, {0.6})).value == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(theta(a, explicit_params(1.0, {0.6})).value == doctest::Approx(0.871515328366006).epsilon(1e-14));
        CHECK(theta(a, explicit_params(1.0, {1.0})).value == doctest::Approx(0.8959077361972544).epsilon(1e-14));
    }
    SUBCASE("W-class focus B")
    {
        const double a[] = {9.0 / 16, 2.0 / 16, 1.0 / 16};
        const auto r = theta(a, explicit_params(2.0, {0.4, 0.6}), "B");
        CHECK(r.value == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(r.focus == "B");
        CHECK(r.per_level.size() == 3);
        const auto t = level_ratios(a);
        CHECK(t[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(t[1] == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("single group")
    {
        const double a[] = {0.7};
        for (double e : {0.0, 0.3, 1.0, 1.7, 2.0})
            CHECK(theta(a, explicit_params(e, {})).value == std::pow(0.7, e / 2.0));
    }
    SUBCASE("exponent 2 equals the plain sum")
    {
        SplitMix64 rng(5);
        for (int i = 0; i < 500; ++i) {
            auto [a, p] = random_feasible(rng);
            double s = 0.0;
            for (double v : a)
                s += v;
            REQUIRE(std::abs(theta(a, explicit_params(2.0, p)).value - s) < 1e-12);
        }
    }
    SUBCASE("exponent 0 gives one")
    {
        const double a[] = {0.5, 0.25, 0.1};
        CHECK(theta(a, explicit_params(0.0, {0.8, 0.5})).value == 1.0);
    }
    SUBCASE("infeasible level")
    {
        const double a[] = {1.0, 1.0, 1.0};
        try {
            theta(a, explicit_params(1.0, {1.0, 1.0}));
            FAIL("expected InfeasibleParams");
        } catch (const InfeasibleParams& e) {
            CHECK(e.level() == 1);
            CHECK(e.minimal_p() == doctest::Approx(2.0));
        }
        const double b[] = {0.5, 0.25};
        CHECK_THROWS_AS(theta(b, explicit_params(1.0, {0.4})), InfeasibleParams);
    }
    SUBCASE("zero groups are compacted")
    {
        const double a[] = {0.5, 0.0, 0.25};
        const double b[] = {0.5, 0.25};
        CHECK(theta(a, explicit_params(1.0, {0.6, 0.2})).value == theta(b, explicit_params(1.0, {0.6})).value);
        const double zeros[] = {0.0, 0.0};
        CHECK(theta(zeros, explicit_params(1.0, {0.5})).value == 0.0);
        CHECK(theta(zeros, explicit_params(0.0, {0.5})).value == 1.0);
    }
    SUBCASE("resolve_params")
    {
        const double a[] = {1.0, 1.0, 1.0};
        const auto p = resolve_params(a, 1.0, PChoice{});
        CHECK(p.p == std::vector<double>{1.0, 1.0});
        CHECK(p.feasible == std::vector<bool>{false, true});
        CHECK_THROWS(resolve_params(a, 1.0, PChoice{PMode::Explicit, {0.5}}));
        CHECK_THROWS(resolve_params(a, 1.0, PChoice{PMode::Explicit, {0.5, 0.0}}));
        CHECK_THROWS(resolve_params(a, 2.5, PChoice{}));
    }
}

TEST_CASE("comparator ordering on feasible inputs")
{
    SplitMix64 rng(99);
    for (int i = 0; i < 3000; ++i) {
        auto [a, p] = random_feasible(rng);
        const auto params = explicit_params(2.0 * rng.uniform(), p);
        const double ours = theta_variant(a, params, ThetaVariant::Parametrized);
        const double p1 = theta_variant(a, params, ThetaVariant::PEqualsOne);
        const double phi = theta_variant(a, params, ThetaVariant::PhiChain);
        const double pow2 = theta_variant(a, params, ThetaVariant::Pow2Chain);
        const double half = theta_variant(a, params, ThetaVariant::HalfExponentChain);
        const double triv = theta_variant(a, params, ThetaVariant::TrivialSum);
        double s = 0.0;
        for (double v : a)
            s += v;
        REQUIRE(std::pow(s, params.exponent / 2.0) <= ours + 1e-12);
        REQUIRE(ours <= p1 + 1e-12);
        REQUIRE(p1 <= pow2 + 1e-12);
        REQUIRE(ours <= phi + 1e-12);
        REQUIRE(phi <= pow2 + 1e-12);
        REQUIRE(pow2 <= half + 1e-12);
        REQUIRE(half <= triv + 1e-12);
    }
}

TEST_CASE("grouping validation")
{
    const std::size_t partners[] = {1, 2, 3};
    CHECK_NOTHROW(Grouping{{{2}, {1, 3}}}.validate(partners));
    CHECK_THROWS(Grouping{{{2}, {1}}}.validate(partners));
    CHECK_THROWS(Grouping{{{2}, {1, 2, 3}}}.validate(partners));
    CHECK_THROWS(Grouping{{{}, {1, 2, 3}}}.validate(partners));
    CHECK(Grouping::single_group(partners).k() == 1);
    CHECK(Grouping::singletons(partners).k() == 3);
}

TEST_CASE("polygamy_bound_coa on the three-qubit reference state")
{
    const BoundContext ctx(acin_reference_state());
    SUBCASE("exponent sweep ordering")
    {
        for (int i = 0; i <= 200; ++i) {
            const double b = 0.01 * i;
            const auto r = polygamy_bound_coa(ctx, "A", b, explicit_p({0.6}));
            REQUIRE(r.lhs <= r.ours + 1e-9);
            REQUIRE(r.ours <= r.comparators.at("p1_specialization") + 1e-9);
            REQUIRE(r.comparators.at("p1_specialization") <= r.comparators.at("pow2_chain") + 1e-9);
            REQUIRE(r.comparators.at("pow2_chain") <= r.comparators.at("beta_half_chain") + 1e-9);
            REQUIRE(r.gap >= -1e-9);
        }
    }
    SUBCASE("exponent 2")
    {
        const auto r = polygamy_bound_coa(ctx, "A", 2.0, explicit_p({0.6}));
        CHECK(r.ours == doctest::Approx(0.75).epsilon(1e-14));
        CHECK(r.comparators.at("p1_specialization") == doctest::Approx(0.75).epsilon(1e-14));
        CHECK(r.lhs == doctest::Approx(0.75).epsilon(1e-14));
    }
    SUBCASE("exponent 0")
    {
        const auto r = polygamy_bound_coa(ctx, "A", 0.0, explicit_p({0.6}));
        CHECK(r.lhs == 1.0);
        CHECK(r.ours == 1.0);
        CHECK(r.comparators.at("trivial_sum") == 2.0);
    }
    SUBCASE("auto p is tighter than 3/5")
    {
        const auto a = polygamy_bound_coa(ctx, "A", 1.0);
        CHECK(a.terms[0].params.p[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(a.ours <= polygamy_bound_coa(ctx, "A", 1.0, explicit_p({0.6})).ours);
    }
    SUBCASE("infeasible explicit p falls back to the single group")
    {
        const auto r = polygamy_bound_coa(ctx, "A", 1.0, explicit_p({0.3}));
        CHECK(r.fell_back());
        CHECK(r.terms[0].grouping.k() == 1);
        CHECK(r.terms[0].infeasible_level == 1);
        CHECK(r.terms[0].infeasible_minimal_p == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.ours == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    }
}

TEST_CASE("AB-cut bounds on the W-class reference state")
{
    const BoundContext ctx(wclass_reference_state());
    const auto a = ctx.shape().index_of("A");
    CHECK(ctx.pairs().concurrence_sq_sum(a) == doctest::Approx(63.0 / 64.0).epsilon(1e-13));

    const auto lower = monogamy_lower_AB(ctx, 2.0, figure_p());
    CHECK(lower.ours == doctest::Approx(15.0 / 64.0).epsilon(1e-12));
    CHECK(lower.lhs == doctest::Approx(39.0 / 64.0).epsilon(1e-12));
    const auto upper = polygamy_upper_AB(ctx, 2.0, figure_p());
    CHECK(upper.ours == doctest::Approx(111.0 / 64.0).epsilon(1e-12));
    CHECK(upper.terms[1].theta.value == doctest::Approx(0.75).epsilon(1e-12));

    const auto neg = negativity_bounds_AB(ctx, 2.0, figure_p());
    CHECK(neg.upper.ours == doctest::Approx(111.0 / 64.0).epsilon(1e-12));
    CHECK(neg.lower.ours == doctest::Approx(lower.ours).epsilon(1e-14));

    const auto zero = monogamy_lower_AB(ctx, 0.0, figure_p());
    CHECK(zero.lhs == 1.0);
    CHECK(zero.ours <= 0.0);

    for (int i = 0; i <= 200; ++i) {
        const double al = 0.01 * i;
        const auto lo = monogamy_lower_AB(ctx, al, figure_p());
        const auto up = polygamy_upper_AB(ctx, al, figure_p());
        REQUIRE(lo.lhs >= lo.ours - 1e-9);
        REQUIRE(lo.ours >= lo.comparators.at("p1_specialization") - 1e-9);
        REQUIRE(lo.comparators.at("p1_specialization") >= lo.comparators.at("pow2_chain") - 1e-9);
        REQUIRE(lo.comparators.at("pow2_chain") >= lo.comparators.at("beta_half_chain") - 1e-9);
        REQUIRE(up.lhs <= up.ours + 1e-9);
        REQUIRE(up.ours <= up.comparators.at("p1_specialization") + 1e-9);
        REQUIRE(up.comparators.at("p1_specialization") <= up.comparators.at("pow2_chain") + 1e-9);
        REQUIRE(up.comparators.at("pow2_chain") <= up.comparators.at("beta_half_chain") + 1e-9);
    }
}

TEST_CASE("Schmidt rank 2 makes negativity and concurrence bounds coincide")
{
    const BoundContext ctx(wclass_reference_state());
    for (double al : {0.5, 1.0, 1.5}) {
        const auto neg = negativity_bounds_AB(ctx, al);
        const auto up = polygamy_upper_AB(ctx, al);
        CHECK(neg.upper.ours == doctest::Approx(up.ours).epsilon(1e-14));
        CHECK(neg.upper.lhs == doctest::Approx(up.lhs).epsilon(1e-9));
    }
}

TEST_CASE("product states")
{
    const BoundContext four(entb::testing::product_state(4));
    for (double al : {0.5, 1.0, 2.0}) {
        const auto up = polygamy_upper_AB(four, al);
        CHECK(up.ours == 0.0);
        CHECK(up.lhs == 0.0);
        const auto neg = negativity_bounds_AB(four, al);
        CHECK(neg.lower.ours <= 0.0);
        CHECK(neg.lower.lhs == 0.0);
    }
    const BoundContext five(entb::testing::product_state(5));
    const auto tri = tripartite_bounds(five, 1.0);
    CHECK(tri.lower.ours == 0.0);
    CHECK(tri.upper.ours == 0.0);
    CHECK(tri.upper.lhs == 0.0);
    const auto tri0 = tripartite_bounds(five, 0.0);
    CHECK(tri0.upper.lhs == 1.0);
    CHECK(tri0.upper.ours >= 1.0);
}

TEST_CASE("size preconditions")
{
    const BoundContext three(acin_reference_state());
    CHECK_THROWS_AS(monogamy_lower_AB(three, 1.0), std::invalid_argument);
    const BoundContext four(wclass_reference_state());
    CHECK_THROWS_AS(tripartite_bounds(four, 1.0), std::invalid_argument);
    CHECK_THROWS(polygamy_bound_coa(four, "Z", 1.0));
    CHECK_THROWS(polygamy_bound_coa(four, "A", 2.5));
}

TEST_CASE("multi_partition_polygamy")
{
    const BoundContext ctx(wclass_reference_state());
    const auto single = multi_partition_polygamy(ctx, {"A"}, 1.3);
    CHECK(single.ours == doctest::Approx(polygamy_bound_coa(ctx, "A", 1.3).ours).epsilon(1e-15));
    CHECK(single.lhs == doctest::Approx(polygamy_bound_coa(ctx, "A", 1.3).lhs).epsilon(1e-15));
    const auto ab = multi_partition_polygamy(ctx, {"A", "B"}, 1.3, figure_p());
    CHECK(ab.ours == doctest::Approx(polygamy_upper_AB(ctx, 1.3, figure_p()).ours).epsilon(1e-15));
    CHECK_THROWS(multi_partition_polygamy(ctx, {"A", "B", "C1", "C2"}, 1.0));
    CHECK_THROWS(multi_partition_polygamy(ctx, {}, 1.0));

    for (std::uint64_t s = 0; s < 1000; ++s) {
        const BoundContext rc(haar_random_pure(5, stream_seed(5, s)));
        const auto r = multi_partition_polygamy(rc, {"A", "B", "C1"}, 1.0);
        REQUIRE(r.lhs <= r.ours + 1e-9);
    }
}

TEST_CASE("random sandwiches")
{
    for (std::uint64_t s = 0; s < 200; ++s) {
        const BoundContext ctx(haar_random_pure(4, stream_seed(3, s)));
        for (double al : {0.25, 0.75, 1.25, 2.0}) {
            const auto lo = monogamy_lower_AB(ctx, al);
            const auto up = polygamy_upper_AB(ctx, al);
            REQUIRE(lo.ours <= lo.lhs + 1e-9);
            REQUIRE(up.lhs <= up.ours + 1e-9);
            const auto neg = negativity_bounds_AB(ctx, al);
            REQUIRE(neg.lower.ours <= neg.lower.lhs + 1e-9);
            REQUIRE(neg.upper.lhs <= neg.upper.ours + 1e-9);
        }
    }
    for (std::uint64_t s = 0; s < 100; ++s) {
        const BoundContext ctx(haar_random_pure(5, stream_seed(4, s)));
        const auto tri = tripartite_bounds(ctx, 2.0);
        REQUIRE(tri.lower.ours <= tri.lower.lhs + 1e-9);
        REQUIRE(tri.upper.lhs <= tri.upper.ours + 1e-9);
    }
}
