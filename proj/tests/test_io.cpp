#include <catch_amalgamated.hpp>

#include <hrigid/corpus.hpp>
#include <hrigid/io.hpp>

#include "support/random.hpp"

using namespace hrigid;

TEST_CASE("parse_presentation", "[io][presentation]")
{
    SECTION("projective plane")
    {
        const auto p = parse_presentation("name CP2\ngenerator x degree 2 truncate 3");
        CHECK(p.name == "CP2");
        REQUIRE(p.generators.size() == 1);
        CHECK(p.generators[0] == Generator{"x", 2, 3});
    }
    SECTION("odd generators default to truncation 2")
    {
        const auto p = parse_presentation("generator a degree 3");
        REQUIRE(p.generators.size() == 1);
        CHECK(p.generators[0].truncation == 2);
    }
    SECTION("comments, blank lines and file order")
    {
        const auto p = parse_presentation("# header\n\nname two gens  # trailing\ngenerator y degree 4\ngenerator x degree 2 truncate 3\n");
        CHECK(p.name == "two gens");
        REQUIRE(p.generators.size() == 2);
        CHECK(p.generators[0].symbol == "y");
        CHECK(p.generators[1].symbol == "x");
    }
    SECTION("errors carry line numbers")
    {
        try {
            parse_presentation("name bad\n\ngenerator a degree 3 truncate 4\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS(parse_presentation("generator a degree 2\ngenerator a degree 4"), ParseError);
        CHECK_THROWS_AS(parse_presentation("generator a degree two"), ParseError);
        CHECK_THROWS_AS(parse_presentation("generator a degree 0"), ParseError);
        CHECK_THROWS_AS(parse_presentation("generator a degree 2 truncate 1"), ParseError);
        CHECK_THROWS_AS(parse_presentation("generator a^2 degree 2"), ParseError);
        CHECK_THROWS_AS(parse_presentation("relation x^2 = 0"), ParseError);
    }
}

TEST_CASE("parse_structure_constants", "[io][structure]")
{
    SECTION("hand-written CP^1, x*x omitted")
    {
        const auto a = parse_structure_constants("name CP1\nbasis:\n  1 0\n  x 2\nunit: 1\nproducts:\n  1 1 = 1*1\n  1 x = 1*x\n");
        CHECK(a.dim() == 2);
        CHECK(a.name() == "CP1");
        CHECK(a.product(1, 1).empty());
        CHECK(a.product(1, 0) == Product{Term{1, Rational(1)}});  // inferred by commutativity
    }
    SECTION("missing unit row fails validation")
    {
        try {
            parse_structure_constants("basis:\n  1 0\n  x 2\nunit: 1\nproducts:\n  1 1 = 1*1\n");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            REQUIRE_FALSE(e.violations().empty());
            CHECK(e.violations().front().kind == ViolationKind::unit_law);
        }
    }
    SECTION("exact rational coefficients")
    {
        // Q[x]/(x^3) with basis 1, x, y = 3 x^2: x*x = 1/3 y
        const auto a = parse_structure_constants(
            "basis:\n 1 0\n x 2\n y 4\nunit: 1\nproducts:\n 1 1 = 1\n 1 x = x\n 1 y = y\n x x = 1/3*y\n");
        CHECK(a.product(1, 1) == Product{Term{2, Rational(1, 3)}});
    }
    SECTION("labels may contain '*'")
    {
        const auto a = parse_structure_constants(
            "basis:\n 1 0\n x 2\n y 2\n x*y 4\nunit: 1\nproducts:\n 1 1 = 1\n 1 x = x\n 1 y = y\n 1 x*y = x*y\n x y = x*y\n");
        CHECK(a.product(1, 2) == Product{Term{3, Rational(1)}});
        CHECK(validate(a).empty());
    }
    SECTION("syntax errors")
    {
        CHECK_THROWS_AS(parse_structure_constants("basis:\n 1 0\nproducts:\n 1 1 = 1\n"), ParseError);  // no unit
        CHECK_THROWS_AS(parse_structure_constants("basis:\n 1 0\nunit: 1\nproducts:\n 1 1 = 1 1\n"), ParseError);
        CHECK_THROWS_AS(parse_structure_constants("basis:\n 1 0\nunit: 1\nproducts:\n 1 z = 1\n"), ParseError);
        CHECK_THROWS_AS(parse_structure_constants("basis:\n 1 0\n 1 2\nunit: 1\n"), ParseError);
        CHECK_THROWS_AS(parse_structure_constants("basis:\n 1 0\nunit: 1\nproducts:\n 1 1 = 0.5*1\n"), ParseError);
        CHECK_THROWS_AS(parse_structure_constants("basis:\n 1 0\nunit: 1\nproducts:\n 1 1 = 1\n 1 1 = 1\n"), ParseError);
    }
    SECTION("unchecked parse keeps violations for reporting")
    {
        const auto a = parse_structure_constants_unchecked("basis:\n 1 0\n x 3\nunit: 1\nproducts:\n 1 1 = 1\n 1 x = x\n x x = 1\n");
        CHECK_FALSE(validate(a).empty());
    }
}

TEST_CASE("structure-constant round trip", "[io][property]")
{
    std::mt19937 rng(99);
    std::vector<GradedAlgebra> algebras;
    for (int i = 0; i < 25; ++i) algebras.push_back(build_monomial_algebra(testing::random_presentation(rng)));
    algebras.push_back(tensor(exterior_algebra(2), build_monomial_algebra({"S3", {{"x", 3, 2}}})));
    for (const auto& a : algebras) {
        const auto text = serialize_structure_constants(a);
        const auto back = parse_structure_constants(text);
        CHECK(back.same_structure(a));
        CHECK(back.name() == a.name());
        CHECK(serialize_structure_constants(back) == text);
    }
}

TEST_CASE("serializer keeps non-commutative entries of invalid tables", "[io]")
{
    const auto s = build_monomial_algebra({"ab", {{"a", 3, 2}, {"b", 5, 2}}});
    const auto bad = s.with_product(s.index_of("b"), s.index_of("a"), s.product(s.index_of("a"), s.index_of("b")));
    CHECK(parse_structure_constants_unchecked(serialize_structure_constants(bad)).same_structure(bad));
}

TEST_CASE("format detection and loading", "[io]")
{
    CHECK(detect_format("name CP2\ngenerator x degree 2 truncate 3\n") == AlgebraFormat::presentation);
    CHECK(detect_format("basis:\n 1 0\nunit: 1\n") == AlgebraFormat::structure_constants);
    CHECK(load_algebra("generator x degree 2 truncate 3").dim() == 3);
}

TEST_CASE("human-readable rendering", "[io]")
{
    const auto a = build_monomial_algebra({"CP2", {{"x", 2, 3}}});
    const auto e = Rational(-1) * unit_element(a) + Rational(1, 2) * basis_element(a, 1) - basis_element(a, 2);
    CHECK(format_element(a, e) == "-1 + 1/2*x - x^2");
    CHECK(format_element(a, Element::zero(3)) == "0");
    CHECK(format_map(a, GradedLinearMap::zero(a, -2)) == "θ = 0");
}

TEST_CASE("every bundled example parses, validates and has its documented verdict", "[io][corpus]")
{
    for (const auto& e : corpus()) {
        INFO(e.name);
        const auto a = load_algebra(e.text);
        CHECK(validate(a).empty());
        const auto v = check_class_H(a);
        CHECK((v.in_class && v.connectivity_ok) == e.in_class_h);
        if (e.certificate_degree) {
            REQUIRE(v.certificate);
            CHECK(v.certificate->degree == *e.certificate_degree);
        }
    }
}

TEST_CASE("corpus directory matches the bundled examples", "[io][corpus]")
{
    for (const auto& e : corpus()) {
        INFO(e.name);
        CHECK(read_file(std::string(HRIGID_CORPUS_DIR) + "/" + e.name + ".alg") == e.text);
    }
}
