#include "doctest.h"
#include "test_support.hpp"

#include "drcomp/errors.hpp"
#include "drcomp/linalg.hpp"

using namespace drcomp;
using namespace drcomp::linalg;
using drcomp::testing::Rng;
using drcomp::testing::random_matrix;

namespace {

// Rank by brute force: largest k with a nonzero k x k minor (Leibniz determinant).
Rational det(const RationalMatrix& m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return 1;
    Rational acc = 0;
    for (Eigen::Index c = 0; c < n; ++c) {
        if (m(0, c).is_zero()) continue;
        RationalMatrix minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i)
            for (Eigen::Index j = 0, jj = 0; j < n; ++j)
                if (j != c) minor(i - 1, jj++) = m(i, j);
        acc += ((c % 2) ? -1 : 1) * m(0, c) * det(minor);
    }
    return acc;
}

std::size_t brute_force_rank(const RationalMatrix& m) {
    const auto rows = static_cast<unsigned>(m.rows()), cols = static_cast<unsigned>(m.cols());
    for (unsigned k = std::min(rows, cols); k > 0; --k) {
        for (unsigned rmask = 0; rmask < (1u << rows); ++rmask) {
            if (static_cast<unsigned>(__builtin_popcount(rmask)) != k) continue;
            for (unsigned cmask = 0; cmask < (1u << cols); ++cmask) {
                if (static_cast<unsigned>(__builtin_popcount(cmask)) != k) continue;
                RationalMatrix sub(k, k);
                for (unsigned i = 0, si = 0; i < rows; ++i) {
                    if (!(rmask >> i & 1u)) continue;
                    for (unsigned j = 0, sj = 0; j < cols; ++j)
                        if (cmask >> j & 1u) sub(si, sj++) = m(i, j);
                    ++si;
                }
                if (!det(sub).is_zero()) return k;
            }
        }
    }
    return 0;
}

SparseMatrix circle_coboundary() {
    // vertices 0,1,2; edges [01],[02],[12]; (df)(ij) = f(j) - f(i)
    SparseMatrix d(3, 3);
    d.set(0, 0, -1), d.set(0, 1, 1);
    d.set(1, 0, -1), d.set(1, 2, 1);
    d.set(2, 1, -1), d.set(2, 2, 1);
    return d;
}

}  // namespace

TEST_CASE("kernel_image: identity and a single row") {
    auto ki = kernel_image(SparseMatrix::identity(2));
    CHECK(ki.kernel.empty());
    CHECK(ki.rank == 2);

    SparseMatrix row(1, 2);
    row.set(0, 0, 1), row.set(0, 1, 1);
    ki = kernel_image(row);
    REQUIRE(ki.kernel.size() == 1);
    CHECK(ki.rank == 1);
    CHECK(ki.kernel[0](0) == -ki.kernel[0](1));
    CHECK(ki.kernel[0](1) == 1);

    ki = kernel_image(SparseMatrix(0, 0));
    CHECK(ki.kernel.empty());
    CHECK(ki.image.empty());
}

TEST_CASE("kernel_image: random rational matrices multiply back to zero") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        SparseMatrix m = random_matrix(rng, 6, 6, 0.4);
        // make some columns dependent
        if (trial % 2) {
            for (std::size_t r = 0; r < 6; ++r) m.set(r, 5, m.at(r, 0) + 2 * m.at(r, 1));
        }
        const auto ki = kernel_image(m);
        CHECK(ki.rank + ki.kernel.size() == 6);
        for (const auto& v : ki.kernel) CHECK(is_zero(m * v));
        CHECK(ki.rank == brute_force_rank(m.to_dense()));
        // image vectors span the column space
        const auto img = SparseMatrix::from_columns(6, ki.image);
        for (std::size_t c = 0; c < 6; ++c) CHECK(solve(img, m.column(c)).has_value());
    }
}

TEST_CASE("dense and sparse elimination agree exactly") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 3 + trial % 7, cols = 2 + (trial * 5) % 9;
        SparseMatrix m = random_matrix(rng, rows, cols, 0.35);
        const Echelon a = rref_dense(m), b = rref_sparse(m);
        CHECK(a.pivot_columns == b.pivot_columns);
        CHECK(a.rows == b.rows);
    }
}

TEST_CASE("sparse path above the dense threshold") {
    Rng rng(3);
    const std::size_t n = kDenseThreshold + 6;
    SparseMatrix m(n, n);
    // banded matrix with a rank drop
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, testing::random_nonzero_rational(rng));
        if (i + 1 < n) m.set(i, i + 1, testing::random_rational(rng));
    }
    for (std::size_t c = 0; c < n; ++c) m.set(n - 1, c, m.at(0, c) - m.at(1, c));
    const auto ki = kernel_image(m);
    CHECK(ki.rank + ki.kernel.size() == n);
    CHECK(ki.kernel.size() >= 1);
    for (const auto& v : ki.kernel) CHECK(is_zero(m * v));
}

TEST_CASE("solve finds exact solutions and rejects inconsistent systems") {
    SparseMatrix m(2, 2);
    m.set(0, 0, 1), m.set(0, 1, 2), m.set(1, 0, 2), m.set(1, 1, 4);
    Vector b(2);
    b << Rational(3), Rational(6);
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m * *x == b);
    b(1) = 7;
    CHECK_FALSE(solve(m, b).has_value());
}

TEST_CASE("cohomology_pair: worked examples") {
    SUBCASE("zero maps on a 3-dimensional space") {
        const auto h = cohomology_pair(SparseMatrix(3, 0), SparseMatrix(0, 3));
        CHECK(h.dimension() == 3);
    }
    SUBCASE("circle in degree 1") {
        const SparseMatrix d0 = circle_coboundary();
        const std::size_t expected = 3 - brute_force_rank(d0.to_dense());
        const auto h = cohomology_pair(d0, SparseMatrix(0, 3));
        CHECK(h.dimension() == expected);
        CHECK(h.dimension() == 1);
        // H^0 of the circle
        CHECK(cohomology_pair(SparseMatrix(3, 0), d0).dimension() == 1);
    }
    SUBCASE("exact sequence") {
        SparseMatrix a(2, 1), b(1, 2);
        a.set(0, 0, 1);
        b.set(0, 1, 1);
        CHECK(cohomology_pair(a, b).dimension() == 0);
    }
    SUBCASE("composition must vanish") {
        CHECK_THROWS_AS(cohomology_pair(SparseMatrix::identity(2), SparseMatrix::identity(2)), CompositionNonzero);
    }
}

TEST_CASE("cohomology_pair: representatives, class_of and coboundary invariance") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        // a random complex C0 -> C1 -> C2 built as d1 = P * Q with Q * d0 = 0
        SparseMatrix d0 = random_matrix(rng, 7, 3, 0.5);
        // d1 kills the image of d0: rows of d1 are random combinations of a basis of ker(d0^T)
        SparseMatrix d0t(3, 7);
        for (auto [r, c, v] : d0.entries()) d0t.set(c, r, v);
        const auto left = kernel_image(d0t).kernel;
        SparseMatrix d1(4, 7);
        for (std::size_t r = 0; r < 4; ++r)
            for (const auto& k : left) {
                if (std::bernoulli_distribution(0.5)(rng)) continue;
                const Rational s = testing::random_rational(rng);
                for (Eigen::Index c = 0; c < k.size(); ++c) d1.add(r, c, s * k(c));
            }
        const auto h = cohomology_pair(d0, d1);
        CHECK(h.dimension() == 7 - rank(d0) - rank(d1));
        for (std::size_t i = 0; i < h.dimension(); ++i) {
            const Vector& r = h.representatives()[i];
            CHECK(is_zero(d1 * r));
            const auto cc = h.class_of(r);
            CHECK(cc.coordinates == unit_vector(h.dimension(), i));
            CHECK(is_zero(cc.witness));
        }
        // random cocycle plus coboundary
        Vector c = zero_vector(7);
        for (std::size_t i = 0; i < h.dimension(); ++i) c += testing::random_rational(rng) * h.representatives()[i];
        Vector w(3);
        for (int i = 0; i < 3; ++i) w(i) = testing::random_rational(rng);
        const auto base = h.class_of(c);
        const auto moved = h.class_of(c + d0 * w);
        CHECK(base.coordinates == moved.coordinates);
        CHECK(c + d0 * w - [&] {
            Vector s = zero_vector(7);
            for (std::size_t i = 0; i < h.dimension(); ++i) s += moved.coordinates(i) * h.representatives()[i];
            return s;
        }() == d0 * moved.witness);
        if (!left.empty() && rank(d1) > 0) {
            // a vector outside ker(d1)
            Vector bad = zero_vector(7);
            for (std::size_t j = 0; j < 7; ++j)
                if (!is_zero(d1 * unit_vector(7, j))) {
                    bad = unit_vector(7, j);
                    break;
                }
            CHECK_THROWS_AS(h.class_of(bad), NotACocycle);
        }
    }
}

TEST_CASE("preferred representatives are kept") {
    const SparseMatrix zero_in(2, 0), zero_out(0, 2);
    Vector p(2);
    p << Rational(1), Rational(1);
    const std::vector<Vector> preferred{p};
    const auto h = cohomology_pair(zero_in, zero_out, preferred);
    REQUIRE(h.dimension() == 2);
    CHECK(h.representatives()[0] == p);
}
