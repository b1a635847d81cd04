#include "doctest.h"
#include "test_support.hpp"

#include "drcomp/errors.hpp"
#include "drcomp/simplicial.hpp"

#include <algorithm>
#include <set>

using namespace drcomp;
using namespace drcomp::simplicial;
using drcomp::testing::Rng;

namespace {

std::size_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Cochain random_cochain(Rng& rng, const SetPtr& k, unsigned degree) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < k->simplex_count(degree); ++i) v.push_back(testing::random_rational(rng, 4, 2));
    return {k, degree, v};
}

DeltaMorphism random_morphism(Rng& rng, unsigned source, unsigned target) {
    std::uniform_int_distribution<unsigned> pick(0, target);
    std::vector<unsigned> v(source + 1);
    for (auto& x : v) x = pick(rng);
    std::sort(v.begin(), v.end());
    return {source, target, v};
}

// Oracle: coboundary matrix of an ordered complex given by its full list of
// vertex sets, built directly from vertex deletion.
linalg::SparseMatrix vertex_coboundary(const std::vector<std::vector<unsigned>>& all, unsigned p) {
    std::vector<std::vector<unsigned>> lo, hi;
    for (const auto& s : all) {
        if (s.size() == p + 1) lo.push_back(s);
        if (s.size() == p + 2) hi.push_back(s);
    }
    linalg::SparseMatrix m(hi.size(), lo.size());
    for (std::size_t r = 0; r < hi.size(); ++r)
        for (unsigned i = 0; i < hi[r].size(); ++i) {
            auto f = hi[r];
            f.erase(f.begin() + i);
            const auto c = static_cast<std::size_t>(std::find(lo.begin(), lo.end(), f) - lo.begin());
            m.add(r, c, Rational(i % 2 ? -1 : 1));
        }
    return m;
}

std::size_t oracle_betti(const std::vector<std::vector<unsigned>>& all, unsigned p) {
    const std::size_t n = static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [&](const auto& s) { return s.size() == p + 1; }));
    const std::size_t r_next = linalg::rank(vertex_coboundary(all, p));
    const std::size_t r_prev = p == 0 ? 0 : linalg::rank(vertex_coboundary(all, p - 1));
    return n - r_next - r_prev;
}

std::vector<std::vector<unsigned>> boundary_of_tetrahedron() {
    std::vector<std::vector<unsigned>> all;
    for (unsigned mask = 1; mask < 15 + 1; ++mask) {
        if (mask == 15) continue;
        std::vector<unsigned> s;
        for (unsigned i = 0; i < 4; ++i)
            if (mask & (1u << i)) s.push_back(i);
        all.push_back(s);
    }
    return all;
}

}  // namespace

TEST_CASE("DeltaMorphism") {
    CHECK_THROWS_AS(DeltaMorphism(1, 2, {2, 1}), InvalidSimplicialSet);
    CHECK_THROWS_AS(DeltaMorphism(1, 1, {0, 2}), InvalidSimplicialSet);
    CHECK(DeltaMorphism::face(2, 1).values() == std::vector<unsigned>{0, 2});
    CHECK(DeltaMorphism::degeneracy(1, 0).values() == std::vector<unsigned>{0, 0, 1});
    const DeltaMorphism h(3, 4, {1, 1, 3, 3});
    const auto [e, m] = h.factor();
    CHECK(e.is_surjective());
    CHECK(m.is_injective());
    CHECK(compose(m, e) == h);
    CHECK(m.values() == std::vector<unsigned>{1, 3});
    // cosimplicial identity: d^j d^i = d^i d^(j-1) for i < j
    for (unsigned n = 2; n <= 4; ++n)
        for (unsigned j = 1; j <= n; ++j)
            for (unsigned i = 0; i < j; ++i)
                CHECK(compose(DeltaMorphism::face(n, j), DeltaMorphism::face(n - 1, i)) ==
                      compose(DeltaMorphism::face(n, i), DeltaMorphism::face(n - 1, j - 1)));
    CHECK(surjections(3, 1).size() == 3);
    CHECK(surjections(4, 2).size() == 6);
}

TEST_CASE("standard and boundary simplices") {
    const auto d0 = FiniteSimplicialSet::standard_simplex(0);
    CHECK(d0->dimension() == 0);
    CHECK(d0->cell_count(0) == 1);
    CHECK(d0->cell_count(1) == 0);

    const auto d2 = FiniteSimplicialSet::standard_simplex(2);
    CHECK(d2->cell_count(0) == 3);
    CHECK(d2->cell_count(1) == 3);
    CHECK(d2->cell_count(2) == 1);

    const auto b2 = FiniteSimplicialSet::boundary_complex(2);
    CHECK(b2->cell_count(0) == 3);
    CHECK(b2->cell_count(1) == 3);
    CHECK(b2->cell_count(2) == 0);
    CHECK(b2->euler_characteristic() == 0);

    for (unsigned n = 0; n <= 5; ++n) {
        const auto d = FiniteSimplicialSet::standard_simplex(n);
        for (unsigned k = 0; k <= n; ++k) CHECK(d->cell_count(k) == binomial(n + 1, k + 1));
        // all simplices of dimension m are the weakly increasing maps [m] -> [n]
        for (unsigned m = 0; m <= 3; ++m) CHECK(d->simplex_count(m) == binomial(n + m + 1, m + 1));
        if (n >= 1) {
            const auto b = FiniteSimplicialSet::boundary_complex(n);
            CHECK(b->cell_count(n) == 0);
            CHECK(b->cell_count(n - 1) == n + 1);
        }
    }
}

TEST_CASE("simplex operators agree with vertex sequences") {
    const auto d3 = FiniteSimplicialSet::standard_simplex(3);
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned d = static_cast<unsigned>(rng() % 4), m = static_cast<unsigned>(rng() % 4);
        const auto& list = d3->simplices(d);
        const Simplex& s = list[rng() % list.size()];
        const auto h = random_morphism(rng, m, d);
        const auto image = d3->apply(h, s);
        std::vector<unsigned> expected;
        for (unsigned v : h.values()) expected.push_back(d3->vertices(s)[v]);
        CHECK(d3->vertices(image) == expected);
        CHECK(d3->find(expected) == image);
        CHECK(d3->simplices(m)[d3->index_of(image)] == image);
        // functoriality
        const unsigned l = static_cast<unsigned>(rng() % 3);
        const auto g = random_morphism(rng, l, m);
        CHECK(d3->apply(compose(h, g), s) == d3->apply(g, image));
    }
}

TEST_CASE("face tables are validated") {
    // circle: one vertex, one loop
    const Simplex v = nondegenerate(0, 0);
    const auto s1 = FiniteSimplicialSet::create({1, 1}, {{}, {{v, v}}});
    CHECK(simplicial_cohomology(s1, 0).dimension == 1);
    CHECK(simplicial_cohomology(s1, 1).dimension == 1);

    // 2-sphere as one 2-cell glued to a point: all faces are degenerate
    const Simplex sv{0, 0, DeltaMorphism(1, 0, {0, 0})};
    const auto s2 = FiniteSimplicialSet::create({1, 0, 1}, {{}, {}, {{sv, sv, sv}}});
    CHECK(simplicial_cohomology(s2, 0).dimension == 1);
    CHECK(simplicial_cohomology(s2, 1).dimension == 0);
    CHECK(simplicial_cohomology(s2, 2).dimension == 1);
    CHECK(unnormalized_cohomology_dimension(s2, 2) == 1);

    // triangle whose edges do not close up: d0 d2 != d1 d0
    const Simplex e0 = nondegenerate(1, 0), e1 = nondegenerate(1, 1);
    CHECK_THROWS_AS(FiniteSimplicialSet::create({2, 2, 1}, {{}, {{nondegenerate(0, 1), nondegenerate(0, 0)},
                                                                  {nondegenerate(0, 1), nondegenerate(0, 0)}},
                                                              {{e0, e0, e1}}}),
                    InvalidSimplicialSet);
    CHECK_THROWS_AS(FiniteSimplicialSet::create({1, 1}, {{}, {{v}}}), InvalidSimplicialSet);
    CHECK_THROWS_AS(FiniteSimplicialSet::from_vertex_lists({{1, 0}}), InvalidSimplicialSet);
}

TEST_CASE("coboundary") {
    const auto d1 = FiniteSimplicialSet::standard_simplex(1);
    const auto edge = nondegenerate(1, 0);
    Cochain ind0 = Cochain::normalized(d1, 0, {1, 0});
    CHECK(coboundary(ind0).at(edge) == -1);
    Cochain ind1 = Cochain::normalized(d1, 0, {0, 1});
    CHECK(coboundary(ind1).at(edge) == 1);
    CHECK(coboundary(Cochain::unit(d1)).is_zero());

    const auto d3 = FiniteSimplicialSet::standard_simplex(3);
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        const auto c = random_cochain(rng, d3, static_cast<unsigned>(i % 3));
        CHECK(coboundary(coboundary(c)).is_zero());
    }
}

TEST_CASE("Alexander-Whitney cup product") {
    const auto d1 = FiniteSimplicialSet::standard_simplex(1);
    Rng rng(11);
    const auto a0 = random_cochain(rng, d1, 0), b1 = random_cochain(rng, d1, 1);
    const auto edge = nondegenerate(1, 0);
    CHECK(aw_cup(a0, b1).at(edge) == a0.at(nondegenerate(0, 0)) * b1.at(edge));

    const auto d3 = FiniteSimplicialSet::standard_simplex(3);
    const auto one = Cochain::unit(d3);
    for (int i = 0; i < 10; ++i) {
        const auto b = random_cochain(rng, d3, static_cast<unsigned>(i % 4));
        CHECK(aw_cup(one, b) == b);
        CHECK(aw_cup(b, one) == b);
    }
    for (int i = 0; i < 20; ++i) {
        const unsigned p = static_cast<unsigned>(rng() % 2), q = static_cast<unsigned>(rng() % 2),
                       r = static_cast<unsigned>(rng() % 2);
        const auto a = random_cochain(rng, d3, p), b = random_cochain(rng, d3, q), c = random_cochain(rng, d3, r);
        CHECK(aw_cup(aw_cup(a, b), c) == aw_cup(a, aw_cup(b, c)));
        const Rational sign = p % 2 ? -1 : 1;
        CHECK(coboundary(aw_cup(a, b)) == aw_cup(coboundary(a), b) + sign * aw_cup(a, coboundary(b)));
    }
    CHECK_THROWS_AS(aw_cup(one, Cochain::unit(d1)), ComplexMismatch);
}

TEST_CASE("cup product is not commutative on cochains") {
    const auto d2 = FiniteSimplicialSet::standard_simplex(2);
    // search normalized integer 1-cochains with values in {-1, 0, 1}
    std::optional<std::pair<Cochain, Cochain>> witness;
    std::vector<Cochain> candidates;
    for (int code = 0; code < 27; ++code) {
        std::vector<Rational> v{code % 3 - 1, (code / 3) % 3 - 1, (code / 9) % 3 - 1};
        candidates.push_back(Cochain::normalized(d2, 1, v));
    }
    for (const auto& a : candidates) {
        for (const auto& b : candidates) {
            const auto ab = aw_cup(a, b), ba = aw_cup(b, a);
            if (ab != ba && ab != -ba) {
                witness.emplace(a, b);
                break;
            }
        }
        if (witness) break;
    }
    REQUIRE(witness.has_value());
    const auto ab = aw_cup(witness->first, witness->second);
    CHECK(ab != aw_cup(witness->second, witness->first));
}

TEST_CASE("simplicial cohomology") {
    const auto d2 = FiniteSimplicialSet::standard_simplex(2);
    CHECK(simplicial_cohomology(d2, 0).dimension == 1);
    CHECK(simplicial_cohomology(d2, 1).dimension == 0);
    CHECK(simplicial_cohomology(d2, 2).dimension == 0);

    const auto b2 = FiniteSimplicialSet::boundary_complex(2);
    // oracle: the 3x3 coboundary of the triangle boundary has rank 2
    const std::vector<std::vector<unsigned>> circle{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
    CHECK(linalg::rank(vertex_coboundary(circle, 0)) == 2);
    CHECK(simplicial_cohomology(b2, 0).dimension == oracle_betti(circle, 0));
    CHECK(simplicial_cohomology(b2, 1).dimension == oracle_betti(circle, 1));
    CHECK(simplicial_cohomology(b2, 0).dimension == 1);
    CHECK(simplicial_cohomology(b2, 1).dimension == 1);

    const auto b3 = FiniteSimplicialSet::boundary_complex(3);
    const auto sphere = boundary_of_tetrahedron();
    for (unsigned p = 0; p <= 2; ++p) CHECK(simplicial_cohomology(b3, p).dimension == oracle_betti(sphere, p));
    CHECK(simplicial_cohomology(b3, 0).dimension == 1);
    CHECK(simplicial_cohomology(b3, 1).dimension == 0);
    CHECK(simplicial_cohomology(b3, 2).dimension == 1);

    // the normalized quotient is a quasi-isomorphism
    for (const auto& k : {d2, b2})
        for (unsigned p = 0; p <= 2; ++p)
            CHECK(unnormalized_cohomology_dimension(k, p) == simplicial_cohomology(k, p).dimension);

    const auto h1 = simplicial_cohomology(b2, 1);
    REQUIRE(h1.representatives.size() == 1);
    CHECK(coboundary(h1.representatives[0]).is_zero());
    CHECK(class_of(h1, h1.representatives[0]) == linalg::unit_vector(1, 0));
}

TEST_CASE("chains and pairing") {
    const auto d1 = FiniteSimplicialSet::standard_simplex(1);
    Chain e(d1, 1);
    e.add(nondegenerate(1, 0), 1);
    Chain expected(d1, 0);
    expected.add(nondegenerate(0, 1), 1);
    expected.add(nondegenerate(0, 0), -1);
    CHECK(boundary(e) == expected);
    CHECK_FALSE(is_cycle(e));

    const auto b2 = FiniteSimplicialSet::boundary_complex(2);
    Chain loop(b2, 1);
    loop.add(*b2->find({0, 1}), 1);
    loop.add(*b2->find({1, 2}), 1);
    loop.add(*b2->find({0, 2}), -1);
    CHECK(is_cycle(loop));

    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        const auto c = random_cochain(rng, b2, 0);
        CHECK(pair(coboundary(c), loop) == 0);
        const auto c1 = random_cochain(rng, b2, 1);
        CHECK(pair(c1 + coboundary(c), loop) == pair(c1, loop));
    }
    const auto d3 = FiniteSimplicialSet::standard_simplex(3);
    for (int i = 0; i < 20; ++i) {
        const unsigned deg = 1 + static_cast<unsigned>(rng() % 2);
        Chain z(d3, deg);
        for (int t = 0; t < 4; ++t) z.add(rng() % d3->simplex_count(deg), Integer(static_cast<long>(rng() % 5) - 2));
        const auto c = random_cochain(rng, d3, deg - 1);
        CHECK(pair(coboundary(c), z) == pair(c, boundary(z)));
        if (deg == 2) CHECK(boundary(boundary(z)).is_zero());
        const auto a = random_cochain(rng, d3, deg), b = random_cochain(rng, d3, deg);
        CHECK(pair(Rational(2) * a - b, z) == Rational(2) * pair(a, z) - pair(b, z));
    }
    CHECK_THROWS_AS(pair(Cochain::unit(b2), loop), DegreeMismatch);
}

TEST_CASE("extension by zero") {
    const auto d2 = FiniteSimplicialSet::standard_simplex(2);
    const auto b2 = FiniteSimplicialSet::boundary_complex(2);
    const auto edge = FiniteSimplicialSet::from_vertex_lists({{0, 1}});
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        const unsigned p = static_cast<unsigned>(rng() % 2);
        const auto c = random_cochain(rng, edge, p);
        CHECK(restrict_to(extend_by_zero(c, d2), edge) == c);
        CHECK(restrict_to(extend_by_zero(c, d2), b2) == extend_by_zero(c, b2));
        const auto cb = random_cochain(rng, b2, p);
        const auto ext = extend_by_zero(cb, d2);
        CHECK(restrict_to(ext, b2) == cb);
        // zero off the subcomplex
        const auto off = extend_by_zero(c, d2);
        CHECK(off.at(*d2->find(p == 0 ? std::vector<unsigned>{2} : std::vector<unsigned>{1, 2})) == 0);
    }
}
