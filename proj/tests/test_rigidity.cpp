#include <catch_amalgamated.hpp>

#include <hrigid/rigidity.hpp>

#include "support/oracles.hpp"

using namespace hrigid;

namespace {

GradedAlgebra cp(int n) { return build_monomial_algebra({"CP" + std::to_string(n), {{"x", 2, n + 1}}}); }
GradedAlgebra sphere(int n) { return build_monomial_algebra({"S" + std::to_string(n), {{"x", n, 2}}}); }

constexpr TorusSubset first_n(int n) { return (TorusSubset{1} << n) - 1; }

} // namespace

TEST_CASE("Kunneth model layout", "[kunneth]")
{
    SECTION("s = 0 is the base")
    {
        const auto m = kunneth_model(cp(2), 0);
        CHECK(m.total().same_structure(cp(2)));
    }
    SECTION("dimension multiplies by 2^s")
    {
        const auto m = kunneth_model(cp(2), 2);
        CHECK(m.total().dim() == 12);
        CHECK(validate(m.total()).empty());
    }
    SECTION("torus classes anticommute and square to zero")
    {
        const auto m = kunneth_model(cp(2), 2);
        const auto& t = m.total();
        const auto base_unit = m.base().unit_index();
        const auto i1 = basis_element(t, m.total_index(0b01, base_unit));
        const auto i2 = basis_element(t, m.total_index(0b10, base_unit));
        const auto i12 = basis_element(t, m.total_index(0b11, base_unit));
        CHECK(multiply(t, i1, i1).is_zero());
        CHECK(multiply(t, i1, i2) == i12);
        CHECK(multiply(t, i2, i1) == Rational(-1) * i12);
    }
    SECTION("index maps are inverse bijections")
    {
        const auto m = kunneth_model(sphere(3), 3);
        for (std::size_t t = 0; t < m.total().dim(); ++t) {
            const auto [S, k] = m.factors(t);
            CHECK(m.total_index(S, k) == t);
            CHECK(m.total().degree(t) == subset_size(S) + m.base().degree(k));
        }
    }
}

TEST_CASE("lambda families enforce shift -|S|", "[lambda]")
{
    const auto a = cp(2);
    LambdaFamily fam(1);
    CHECK_THROWS_AS(fam.set(0b1, GradedLinearMap::zero(a, -2)), std::invalid_argument);
    CHECK_THROWS_AS(fam.set(0b10, GradedLinearMap::zero(a, -1)), std::invalid_argument);
    CHECK_THROWS_AS(fam.set(0, GradedLinearMap::zero(a, 0)), std::invalid_argument);
    CHECK_NOTHROW(fam.set(0b1, GradedLinearMap::zero(a, -1)));

    // CP^2 has no odd pieces, so the only level-1 component is zero
    CHECK(is_trivial_pullback(fam));
    CHECK(multiplicativity_residual(kunneth_model(a, 1), fam).empty());
}

TEST_CASE("pullback_expand", "[pullback]")
{
    const auto a = sphere(3);
    const auto x = basis_element(a, a.index_of("x"));

    SECTION("trivial family gives 1 (x) u")
    {
        const auto m = kunneth_model(a, 2);
        const auto f = pullback_expand(m, LambdaFamily(2), x);
        CHECK(f == basis_element(m.total(), m.total_index(0, a.index_of("x"))));
        CHECK(pullback_expand(m, LambdaFamily(2), unit_element(a)) == unit_element(m.total()));
    }
    SECTION("S^3 derivation placed on i1 i2 i3")
    {
        const auto m = kunneth_model(a, 3);
        const auto theta = derivation_space(a, -3).at(0);
        const auto fam = single_component_family(3, first_n(3), theta);
        const auto expected = basis_element(m.total(), m.total_index(0, a.index_of("x"))) +
                              basis_element(m.total(), m.total_index(first_n(3), a.unit_index()));
        CHECK(pullback_expand(m, fam, x) == expected);
        CHECK(pullback_expand(m, fam, unit_element(a)) == unit_element(m.total()));
    }
    SECTION("torus rank mismatch is rejected")
    {
        CHECK_THROWS_AS(pullback_expand(kunneth_model(a, 2), LambdaFamily(3), x), std::invalid_argument);
    }
}

TEST_CASE("multiplicativity residual", "[residual]")
{
    SECTION("trivial family is multiplicative")
    {
        const auto m = kunneth_model(cp(2), 2);
        CHECK(multiplicativity_residual(m, LambdaFamily(2)).empty());
    }
    SECTION("single Koszul derivation component is multiplicative")
    {
        const auto a = sphere(3);
        const auto theta = derivation_space(a, -3).at(0);
        CHECK(multiplicativity_residual(kunneth_model(a, 3), single_component_family(3, first_n(3), theta)).empty());
        // any other size-3 subset works the same way
        CHECK(multiplicativity_residual(kunneth_model(a, 4), single_component_family(4, 0b1011, theta)).empty());
    }
    SECTION("non-derivation leaves a defect on the matching subset")
    {
        const auto a = cp(2);
        std::vector<Element> images(a.dim(), Element::zero(a.dim()));
        images[a.index_of("x")] = unit_element(a);
        const auto bad = GradedLinearMap::from_images(a, -2, images);
        const auto res = multiplicativity_residual(kunneth_model(a, 2), single_component_family(2, 0b11, bad));
        REQUIRE_FALSE(res.empty());
        for (const auto& r : res) CHECK(r.subset == 0b11);
    }
    SECTION("two-level family: the quadratic term appears at i1 i2")
    {
        // On T^2 = Lambda(t1, t2) the degree -1 derivations d1 = d/dt1, d2 = d/dt2
        // placed at lambda_1 and lambda_2 leave lambda_{12} = 0 non-multiplicative
        // because d1(u) d2(v) terms land on i1 i2.
        const auto a = exterior_algebra(2, "t");
        const auto space = derivation_space(a, -1);
        REQUIRE(space.size() == 2);
        LambdaFamily fam(2);
        fam.set(0b01, space[0]);
        fam.set(0b10, space[1]);
        const auto res = multiplicativity_residual(kunneth_model(a, 2), fam);
        CHECK_FALSE(res.empty());
        for (const auto& r : res) CHECK(r.subset == 0b11);
    }
}

TEST_CASE("residual is the defect of pullback multiplicativity", "[residual][property]")
{
    // empty residual <=> f*(e_i e_j) = f*(e_i) f*(e_j) for all basis pairs
    const auto a = build_monomial_algebra({"x3y5", {{"x", 3, 2}, {"y", 5, 2}}});
    const auto m = kunneth_model(a, 3);
    const auto good = derivation_space(a, -3).at(0);
    auto bad = good;
    bad = Rational(2) * good;
    std::vector<Element> images(a.dim(), Element::zero(a.dim()));
    images[a.index_of("x")] = unit_element(a);
    const auto broken = GradedLinearMap::from_images(a, -3, images);  // forgets x*y -> y

    for (const auto& theta : {good, bad, broken}) {
        const auto fam = single_component_family(3, first_n(3), theta);
        bool multiplicative = true;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            for (std::size_t j = 0; j < a.dim(); ++j) {
                const auto ei = basis_element(a, i);
                const auto ej = basis_element(a, j);
                const auto lhs = pullback_expand(m, fam, multiply(a, ei, ej));
                const auto rhs = multiply(m.total(), pullback_expand(m, fam, ei), pullback_expand(m, fam, ej));
                multiplicative = multiplicative && lhs == rhs;
            }
        }
        CHECK(multiplicative == multiplicativity_residual(m, fam).empty());
        CHECK(multiplicative == is_derivation(a, theta).empty());
    }
}

TEST_CASE("char_subspace follows the degree formula", "[char]")
{
    const auto a = cp(2);
    struct Row {
        int k;
        std::vector<int> degrees;
        std::size_t dim;
    };
    for (const auto& row : {Row{2, {2}, 1}, Row{3, {4}, 1}, Row{4, {4}, 1}, Row{1, {0}, 1}, Row{6, {4, 6, 8}, 1}}) {
        const auto ch = char_subspace(a, row.k);
        INFO("k = " << row.k);
        CHECK(ch.degrees == row.degrees);
        CHECK(ch.dimension == row.dim);
    }
    const auto cp4 = char_subspace(cp(4), 5);
    CHECK(cp4.degrees == std::vector<int>{4, 8});
    CHECK(cp4.dimension == 2);
    CHECK_THROWS_AS(char_subspace(a, 0), std::invalid_argument);

    for (int k = 1; k <= 20; ++k) {
        for (int d : char_degrees(k)) CHECK((d % 4 == 0 || d == k));
    }
}

TEST_CASE("char_subspace under tensoring with an evenly graded algebra", "[char]")
{
    const auto base = cp(2);
    const auto bigger = tensor(base, build_monomial_algebra({"S4", {{"y", 4, 2}}}));
    for (int k = 1; k <= 9; ++k) {
        const auto small = char_subspace(base, k);
        const auto large = char_subspace(bigger, k);
        CHECK(small.degrees == large.degrees);
        for (int d : small.degrees) CHECK(small.basis_indices.at(d).size() <= large.basis_indices.at(d).size());
    }
}

TEST_CASE("char_preserved", "[char]")
{
    const auto a = cp(2);
    CHECK(char_preserved(a, GradedLinearMap::identity(a), 2));
    CHECK(char_preserved(a, GradedLinearMap::zero(a, 0), 2));
    const auto scale = Rational(5, 3) * GradedLinearMap::identity(a);
    for (int k = 1; k <= 6; ++k) CHECK(char_preserved(a, scale, k));
    CHECK_THROWS_AS(char_preserved(a, GradedLinearMap::zero(a, -2), 2), std::invalid_argument);
}

TEST_CASE("is_trivial_pullback", "[lambda]")
{
    const auto a = sphere(3);
    CHECK(is_trivial_pullback(LambdaFamily(3)));
    CHECK_FALSE(is_trivial_pullback(single_component_family(3, first_n(3), derivation_space(a, -3).at(0))));
    CHECK(is_trivial_pullback(single_component_family(3, first_n(3), GradedLinearMap::zero(a, -3))));
}

TEST_CASE("prove_rigidity", "[prover]")
{
    SECTION("CP^2 with three circles")
    {
        const auto t = prove_rigidity(cp(2), 3);
        CHECK(t.established());
        REQUIRE(t.levels.size() == 3);
        for (const auto& l : t.levels) CHECK(l.derivation_dimension == 0);
    }
    SECTION("S^3 with three circles stops at level 3")
    {
        const auto a = sphere(3);
        const auto t = prove_rigidity(a, 3);
        CHECK_FALSE(t.established());
        CHECK(t.failed_level == 3);
        REQUIRE(t.levels.size() == 3);
        CHECK(t.levels[0].derivation_dimension == 0);
        CHECK(t.levels[1].derivation_dimension == 0);
        REQUIRE(t.levels[2].certificate);
        CHECK(apply_to_basis(a, *t.levels[2].certificate, a.index_of("x")) == unit_element(a));
    }
    SECTION("S^3 with two circles never reaches degree -3")
    {
        CHECK(prove_rigidity(sphere(3), 2).established());
    }
    SECTION("the point")
    {
        for (int s = 0; s <= 4; ++s) {
            const auto t = prove_rigidity(ground_field(), s);
            CHECK(t.established());
            CHECK(t.levels.empty());
        }
    }
    SECTION("level cap is min(s, top degree)")
    {
        const auto t = prove_rigidity(cp(1), 5);
        CHECK(t.level_cap == 2);
        CHECK(t.levels.size() == 2);
    }
}

TEST_CASE("class H implies the prover succeeds for every torus rank", "[prover][property]")
{
    for (const auto& a : {cp(1), cp(2), cp(3), sphere(2), sphere(4), sphere(6),
                          build_monomial_algebra({"CP1xCP1", {{"x", 2, 2}, {"y", 2, 2}}})}) {
        REQUIRE(check_class_H(a).in_class);
        for (int s = 0; s <= 5; ++s) CHECK(prove_rigidity(a, s).established());
    }
}

TEST_CASE("induction agrees with the brute-force level-by-level solve", "[prover][oracle]")
{
    for (const auto& a : {cp(1), cp(2), sphere(2), sphere(4), sphere(3), sphere(5),
                          build_monomial_algebra({"CP1xCP1", {{"x", 2, 2}, {"y", 2, 2}}}),
                          build_monomial_algebra({"CP2xS4", {{"x", 2, 3}, {"y", 4, 2}}})}) {
        for (int s = 0; s <= 2; ++s) {
            INFO(a.name() << " s = " << s);
            const auto model = kunneth_model(a, s);
            const auto trace = prove_rigidity(a, s);
            const auto brute = oracle::solve_multiplicative_families(model);
            CHECK(trace.established() == brute.unique_family.has_value());
            if (brute.unique_family) {
                CHECK(is_trivial_pullback(*brute.unique_family));
                CHECK(multiplicativity_residual(model, *brute.unique_family).empty());
            }
        }
    }

    // S^3 with three circles: the brute force finds the free lambda_{123}
    const auto model = kunneth_model(sphere(3), 3);
    const auto brute = oracle::solve_multiplicative_families(model);
    REQUIRE(brute.levels.size() == 3);
    CHECK(brute.levels[2].kernel_dimension == 1);
    CHECK_FALSE(brute.unique_family);
}
