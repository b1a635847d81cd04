#include "doctest.h"
#include "test_support.hpp"

#include "drcomp/derham.hpp"
#include "drcomp/errors.hpp"

using namespace drcomp;
using drcomp::testing::Rng;

namespace {

AlgebraPtr free_line() { return FpAlgebra::parse({"x"}, {}); }
AlgebraPtr two_points() { return FpAlgebra::parse({"x"}, {"x^2 - 1"}); }
AlgebraPtr circle() { return FpAlgebra::parse({"x", "y"}, {"x^2 + y^2 - 1"}); }
AlgebraPtr plane() { return FpAlgebra::parse({"x", "y"}, {}); }

AlgebraicForm F(const AlgebraPtr& a, const char* text) { return AlgebraicForm::parse(a, text); }

AlgebraicForm random_form(Rng& rng, const AlgebraPtr& a, int p, unsigned max_degree = 3) {
    AlgebraicForm::Terms raw;
    const auto m = a->nvars();
    for (IndexMask s = 0; s < (IndexMask{1} << m); ++s)
        if (mask_size(s) == p && std::bernoulli_distribution(0.7)(rng))
            raw.emplace(s, testing::random_polynomial(rng, m, max_degree, 3));
    return AlgebraicForm(a, p, raw);
}

}  // namespace

TEST_CASE("kaehler_presentation") {
    auto k = kaehler_presentation(*free_line());
    CHECK(k.generators == std::vector<std::string>{"dx"});
    CHECK(k.relations.empty());

    const auto tp = two_points();
    k = kaehler_presentation(*tp);
    REQUIRE(k.relations.size() == 1);
    CHECK(k.relations[0][0] == parse_polynomial("2*x", tp->variables()));
    // x is a unit modulo x^2 - 1, so dx = 0 in Omega^1
    CHECK(reduce_form(F(tp, "dx")).is_zero());

    const auto c = circle();
    k = kaehler_presentation(*c);
    REQUIRE(k.relations.size() == 1);
    CHECK(k.relations[0][0] == parse_polynomial("2*x", c->variables()));
    CHECK(k.relations[0][1] == parse_polynomial("2*y", c->variables()));
}

TEST_CASE("wedge") {
    const auto a = plane();
    CHECK(wedge(F(a, "dx"), F(a, "dx")).is_zero());
    CHECK(wedge(F(a, "x*dy"), F(a, "y*dx")) == F(a, "-x*y*dx^dy"));
    CHECK_THROWS_AS(wedge(F(a, "dx"), F(circle(), "dx")), AlgebraMismatch);

    Rng rng(31);
    for (const auto& alg : {plane(), circle(), FpAlgebra::parse({"x", "y", "z"}, {"x*y - z"})}) {
        for (int i = 0; i < 30; ++i) {
            const int p = static_cast<int>(rng() % 3), q = static_cast<int>(rng() % 2);
            const auto w1 = random_form(rng, alg, p), w2 = random_form(rng, alg, q);
            const AlgebraicForm lhs = wedge(w1, w2);
            const AlgebraicForm rhs = ((p * q) % 2 ? Rational(-1) : Rational(1)) * wedge(w2, w1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("differential") {
    const auto a = plane();
    CHECK(differential(F(a, "x^2")) == F(a, "2*x*dx"));
    CHECK(differential(F(a, "x*dy - y*dx")) == F(a, "2*dx^dy"));

    Rng rng(37);
    const std::vector<AlgebraPtr> algebras{plane(), circle(), FpAlgebra::parse({"x", "y", "s"}, {"x^2 + y^2 - 1", "s^2 - s"})};
    int checked = 0;
    for (const auto& alg : algebras)
        for (int i = 0; i < 17; ++i, ++checked) {
            const int p = static_cast<int>(rng() % 2);
            const auto w = random_form(rng, alg, p, 3);
            const unsigned n = static_cast<unsigned>(std::max(0, w.weight()));
            CHECK(equivalent(differential(differential(w)), AlgebraicForm(alg, p + 2), n));
        }
    CHECK(checked >= 50);
}

TEST_CASE("Leibniz rule") {
    Rng rng(41);
    for (const auto& alg : {plane(), circle()}) {
        for (int i = 0; i < 15; ++i) {
            const int p = static_cast<int>(rng() % 2);
            const auto w1 = random_form(rng, alg, p, 2), w2 = random_form(rng, alg, 0, 2);
            const auto lhs = differential(wedge(w1, w2));
            const auto rhs = wedge(differential(w1), w2) +
                             (p % 2 ? Rational(-1) : Rational(1)) * wedge(w1, differential(w2));
            const unsigned n = static_cast<unsigned>(std::max({0, w1.weight() + w2.weight(), lhs.weight(), rhs.weight()}));
            CHECK(equivalent(lhs, rhs, n));
        }
    }
}

TEST_CASE("reduce_form") {
    const auto tp = two_points();
    CHECK(reduce_form(F(tp, "x^2*dx")).is_zero());
    CHECK(reduce_form(AlgebraicForm(tp, 1)).is_zero());

    Rng rng(43);
    for (const auto& alg : {circle(), FpAlgebra::parse({"x", "y", "s"}, {"x^2 + y^2 - 1", "s^2 - s"})}) {
        const auto k = kaehler_presentation(*alg);
        for (int i = 0; i < 15; ++i) {
            const auto w = random_form(rng, alg, 1, 2);
            // add f * df_j for a random f
            AlgebraicForm::Terms rel;
            const Polynomial f = testing::random_polynomial(rng, alg->nvars(), 2, 2);
            for (std::size_t v = 0; v < alg->nvars(); ++v) rel.emplace(IndexMask{1} << v, f * k.relations[0][v]);
            const AlgebraicForm shifted = w + AlgebraicForm(alg, 1, rel);
            const unsigned n = static_cast<unsigned>(std::max(w.weight(), shifted.weight()));
            const auto r = reduce_form(w, n);
            CHECK(reduce_form(shifted, n) == r);
            // idempotent and linear
            CHECK(reduce_form(r, n) == r);
            const auto w2 = random_form(rng, alg, 1, 2);
            const unsigned n2 = static_cast<unsigned>(std::max({w.weight(), w2.weight(), 0}));
            CHECK(reduce_form(Rational(3) * w - w2, n2) == Rational(3) * reduce_form(w, n2) - reduce_form(w2, n2));
        }
    }
}

TEST_CASE("truncated_cohomology: the free line (algebraic Poincare lemma)") {
    const auto a = free_line();
    for (unsigned n = 1; n <= 8; ++n) {
        // oracle: d x^k = k x^(k-1) dx, a bidiagonal matrix of rank n
        linalg::SparseMatrix d(n, n + 1);
        for (unsigned k = 1; k <= n; ++k) d.set(k - 1, k, Rational(k));
        const std::size_t h0 = (n + 1) - linalg::rank(d);
        const std::size_t h1 = n - linalg::rank(d);
        CHECK(truncated_cohomology(a, 0, n).dimension == h0);
        CHECK(truncated_cohomology(a, 1, n).dimension == h1);
    }
    CHECK(truncated_cohomology(a, 0, 4).dimension == 1);
    CHECK(truncated_cohomology(a, 1, 4).dimension == 0);
    CHECK(truncated_cohomology(a, 0, 4).stabilized);
}

TEST_CASE("truncated_cohomology: two points") {
    const auto a = two_points();
    const auto h0 = truncated_cohomology(a, 0, 3);
    CHECK(h0.dimension == 2);
    CHECK(h0.stabilized);
    REQUIRE(h0.representatives.size() == 2);
    CHECK(h0.representatives[0] == F(a, "1"));
    CHECK(h0.representatives[1] == F(a, "x"));
    CHECK(truncated_cohomology(a, 0, 2).stabilized);
    CHECK_FALSE(truncated_cohomology(a, 0, 1).stabilized);
    CHECK(truncated_cohomology(a, 1, 3).dimension == 0);
}

TEST_CASE("truncated_cohomology: the circle") {
    const auto a = circle();
    const auto omega = F(a, "x*dy - y*dx");
    CHECK(is_closed(omega));
    for (unsigned n = 3; n <= 5; ++n) {
        const auto h1 = truncated_cohomology(a, 1, n);
        CHECK(h1.dimension >= 1);
        // omega is not a coboundary at this cutoff
        const auto here = a->truncation(1, n, a->default_slack());
        const auto below = a->truncation(0, n, a->default_slack());
        std::vector<linalg::Vector> images;
        for (const Monomial& m : a->standard_monomials(n))
            images.push_back(here->quotient_coordinates(differential(AlgebraicForm::scalar(a, Polynomial::monomial(m)))));
        (void)below;
        const auto img = linalg::SparseMatrix::from_columns(here->quotient_dimension(), images);
        CHECK_FALSE(linalg::solve(img, here->quotient_coordinates(omega)).has_value());
    }
    const auto h1 = truncated_cohomology(a, 1, 5);
    CHECK(h1.dimension == 1);
    CHECK(h1.stabilized);
    CHECK(truncated_cohomology(a, 0, 4).dimension == 1);
}

TEST_CASE("truncation consistency between consecutive cutoffs") {
    const auto a = FpAlgebra::parse({"x", "y", "s"}, {"x^2 + y^2 - 1", "s^2 - s"});
    for (int p = 0; p <= 1; ++p) {
        const auto lo = truncated_cohomology(a, p, 3), hi = truncated_cohomology(a, p, 4);
        if (!hi.stabilized) continue;
        const auto here = a->truncation(p, 4, a->default_slack());
        // representatives at the lower cutoff are the leading representatives at the higher one
        REQUIRE(lo.dimension == hi.dimension);
        for (std::size_t i = 0; i < lo.dimension; ++i)
            CHECK(here->quotient_coordinates(lo.representatives[i]) == here->quotient_coordinates(hi.representatives[i]));
    }
    CHECK(truncated_cohomology(a, 0, 4).dimension == 2);
    CHECK(truncated_cohomology(a, 1, 4).dimension == 2);
}

TEST_CASE("form text round trip") {
    const auto a = circle();
    CHECK(F(a, "x*dy - y*dx").to_string() == "x*dy - y*dx");
    Rng rng(47);
    for (int i = 0; i < 20; ++i) {
        const auto w = random_form(rng, plane(), static_cast<int>(rng() % 3), 3);
        CHECK(AlgebraicForm::parse(w.algebra(), w.to_string()) == w);
    }
}
