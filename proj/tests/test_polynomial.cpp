#include "doctest.h"
#include "test_support.hpp"

#include "drcomp/errors.hpp"
#include "drcomp/groebner.hpp"
#include "drcomp/polynomial.hpp"

using namespace drcomp;
using drcomp::testing::Rng;

namespace {
const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> xyz{"x", "y", "z"};
Polynomial P(const char* s, const std::vector<std::string>& names = xy) { return parse_polynomial(s, names); }
}  // namespace

TEST_CASE("degrevlex order") {
    DegRevLex less;
    CHECK(less({0, 1}, {1, 0}));  // y < x
    CHECK(less({1, 0}, {0, 2}));  // degree first
    CHECK(less({0, 2}, {1, 1}));  // y^2 < x*y
    CHECK(less({1, 1}, {2, 0}));
    CHECK_FALSE(less({1, 1}, {1, 1}));
}

TEST_CASE("parse and format") {
    CHECK(format(P("x^2 + y^2 - 1"), xy) == "x^2 + y^2 - 1");
    CHECK(format(P("(1 - y^2)"), xy) == "-y^2 + 1");
    CHECK(format(P("3/4*x - 0.5*y"), xy) == "3/4*x - 1/2*y");
    CHECK(P("(x+y)^2") == P("x^2 + 2*x*y + y^2"));
    CHECK(P("-x^2") == -P("x^2"));
    CHECK_THROWS_AS(P("x + w"), ParseError);
    CHECK_THROWS_AS(P("x +"), ParseError);
    CHECK_THROWS_AS(P("1/(1+x)"), ParseError);
    const auto f = parse_rational_function("2*t1/(1 + t1^2)", simplex_coordinate_names(1));
    CHECK_FALSE(f.is_polynomial());
    CHECK(format(f, simplex_coordinate_names(1)) == "(2*t1)/(t1^2 + 1)");
}

TEST_CASE("parse/format round trip on random polynomials") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = testing::random_polynomial(rng, 3, 4, 5);
        CHECK(parse_polynomial(format(p, xyz), xyz) == p);
    }
}

TEST_CASE("differential expressions") {
    const auto e = parse_expression("x*dy - y*dx", xy, true);
    REQUIRE(e.size() == 2);
    CHECK(e.at(0b10) == RationalFunction(P("x")));
    CHECK(e.at(0b01) == RationalFunction(P("-y")));
    const auto w = parse_expression("dy^dx", xy, true);
    CHECK(w.at(0b11) == RationalFunction(P("-1")));
    CHECK(parse_expression("dx^dx", xy, true).empty());
    CHECK_THROWS_AS(parse_expression("dx", xy, false), ParseError);
}

TEST_CASE("wedge sign") {
    CHECK(wedge_sign(0b01, 0b10) == 1);
    CHECK(wedge_sign(0b10, 0b01) == -1);
    CHECK(wedge_sign(0b11, 0b01) == 0);
    CHECK(wedge_sign(0b101, 0b010) == -1);
    CHECK(wedge_sign(0b100, 0b011) == 1);
}

TEST_CASE("derivative, substitution, exact division") {
    CHECK(P("x^3*y + 2*y").derivative(0) == P("3*x^2*y"));
    CHECK(P("x^3*y + 2*y").derivative(1) == P("x^3 + 2"));
    const std::vector<Polynomial> images{P("x + y"), P("x - y")};
    CHECK(P("x*y").substitute(images) == P("x^2 - y^2"));
    CHECK(divide_exact(P("x^2 - y^2"), P("x - y")) == P("x + y"));
    CHECK_FALSE(divide_exact(P("x^2 + y^2"), P("x - y")).has_value());
}

TEST_CASE("rational functions") {
    const auto t = simplex_coordinate_names(1);
    const auto a = parse_rational_function("1/(1+t1^2)", t);
    const auto b = parse_rational_function("t1/(1+t1^2)", t);
    CHECK(a + b == parse_rational_function("(1+t1)/(1+t1^2)", t));
    CHECK(a * parse_rational_function("1+t1^2", t) == RationalFunction(parse_polynomial("1", t)));
    CHECK(a.derivative(0) == parse_rational_function("-2*t1/(1+t1^2)^2", t));
    CHECK((a * parse_rational_function("2 + 2*t1^2", t)).to_polynomial() == parse_polynomial("2", t));
    CHECK_THROWS_AS(a.to_polynomial(), NonPolynomialCoefficient);
    const double pt[] = {0.5};
    CHECK(b.evaluate(pt) == doctest::Approx(0.4));
}

TEST_CASE("compose shares denominators") {
    const auto t = simplex_coordinate_names(1);
    const std::vector<RationalFunction> arc{parse_rational_function("(1-t1^2)/(1+t1^2)", t),
                                            parse_rational_function("2*t1/(1+t1^2)", t)};
    const auto r = compose(P("x^2 + y^2 - 1"), arc);
    CHECK(r.is_zero());
    const auto x = compose(P("x*y"), arc);
    CHECK(x.denominator() == parse_polynomial("(1+t1^2)^2", t));
}

TEST_CASE("groebner_basis: worked examples") {
    const std::vector<Polynomial> g1{P("x^2 - 1")};
    CHECK(groebner_basis(g1) == g1);
    const std::vector<Polynomial> g2{P("x^2 + y^2 - 1")};
    CHECK(groebner_basis(g2) == g2);
    // the variety of (xy - 1, x^2 - x) is the single point (1, 1)
    const std::vector<Polynomial> g3{P("x*y - 1"), P("x^2 - x")};
    const std::vector<Polynomial> expected{P("y - 1"), P("x - 1")};
    CHECK(groebner_basis(g3) == expected);
}

TEST_CASE("groebner_basis: budget") {
    const std::vector<Polynomial> g{P("x^3 - y*z", xyz), P("y^3 - x*z", xyz), P("z^3 - x*y", xyz)};
    GroebnerOptions tight;
    tight.max_pairs = 1;
    CHECK_THROWS_AS(groebner_basis(g, tight), ResourceBudgetExceeded);
    CHECK_NOTHROW(groebner_basis(g));
}

TEST_CASE("normal_form: worked examples") {
    const std::vector<Polynomial> b{P("x^2 - 1")};
    CHECK(normal_form(P("x^2"), b) == P("1"));
    CHECK(normal_form(P("x^3 + x"), b) == P("2*x"));
}

TEST_CASE("normal_form: ideal members reduce to zero and properties hold") {
    Rng rng(23);
    const std::vector<std::vector<Polynomial>> ideals{
        {P("x^2 + y^2 - 1", xyz)},
        {P("x^2 + y^2 - 1", xyz), P("z^2 - z", xyz)},
        {P("x*y - z", xyz), P("y^2 - x", xyz)},
    };
    for (const auto& gens : ideals) {
        const auto basis = groebner_basis(gens);
        for (int i = 0; i < 20; ++i) {
            Polynomial f(3);
            for (const auto& g : gens) f += testing::random_polynomial(rng, 3, 3) * g;
            CHECK(normal_form(f, basis).is_zero());

            const Polynomial a = testing::random_polynomial(rng, 3, 4), c = testing::random_polynomial(rng, 3, 4);
            const Rational s = testing::random_rational(rng), u = testing::random_rational(rng);
            const Polynomial na = normal_form(a, basis), nc = normal_form(c, basis);
            CHECK(normal_form(na, basis) == na);
            CHECK(normal_form(s * a + u * c, basis) == s * na + u * nc);
            CHECK(normal_form(a * c, basis) == normal_form(na * nc, basis));
            CHECK(na.total_degree() <= a.total_degree());
            std::vector<Polynomial> q;
            const Polynomial r = normal_form(a, basis, q);
            Polynomial back = r;
            for (std::size_t k = 0; k < basis.size(); ++k) back += q[k] * basis[k];
            CHECK(back == a);
        }
    }
}
