#pragma once

#include "drcomp/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

namespace drcomp::linalg {

using Vector = RationalVector;

/// Row-major sparse matrix over the rationals. Zero entries are never stored.
class SparseMatrix {
public:
    using Row = std::map<std::size_t, Rational>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix from_dense(const RationalMatrix& m);
    /// Builds a rows x columns.size() matrix whose j-th column is columns[j].
    static SparseMatrix from_columns(std::size_t rows, std::span<const Vector> columns);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;

    /// Accumulates v into (r, c); drops the entry if the sum is zero.
    void add(std::size_t r, std::size_t c, const Rational& v);
    void set(std::size_t r, std::size_t c, const Rational& v);
    Rational at(std::size_t r, std::size_t c) const;
    const Row& row(std::size_t r) const { return rows_.at(r); }

    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries() const;

    bool is_zero() const;
    RationalMatrix to_dense() const;
    Vector column(std::size_t c) const;

    Vector operator*(const Vector& v) const;
    SparseMatrix operator*(const SparseMatrix& other) const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::vector<Row> rows_;
    std::size_t cols_ = 0;
};

/// Reduced row echelon form: each row has a unit pivot, pivot columns are
/// cleared in every other row, and the pivot set is the lexicographically
/// first one (the leftmost independent columns).
struct Echelon {
    std::size_t cols = 0;
    std::vector<std::size_t> pivot_columns;
    std::vector<SparseMatrix::Row> rows;
};

/// Below this size elimination runs on a dense Eigen matrix.
inline constexpr std::size_t kDenseThreshold = 64;

Echelon rref(const SparseMatrix& m);
Echelon rref_dense(const SparseMatrix& m);
/// Fraction-free elimination on integer-scaled rows; the pivot row for each
/// column is the one with the fewest nonzeros (least fill-in).
Echelon rref_sparse(const SparseMatrix& m);

struct KernelImage {
    std::vector<Vector> kernel;
    std::vector<Vector> image;
    std::size_t rank = 0;
};

KernelImage kernel_image(const SparseMatrix& m);
KernelImage kernel_image(const Echelon& e, const SparseMatrix& m);

/// Some x with m * x = b, or nullopt when b is outside the column space.
std::optional<Vector> solve(const SparseMatrix& m, const Vector& b);

std::size_t rank(const SparseMatrix& m);

/// H = ker(d_next) / im(d_prev) with a fixed basis of representatives.
class Cohomology {
public:
    struct ClassCoordinates {
        Vector coordinates;  ///< in the representative basis
        Vector witness;      ///< cocycle - sum(coord_i * rep_i) == d_prev * witness
    };

    std::size_t dimension() const { return representatives_.size(); }
    const std::vector<Vector>& representatives() const { return representatives_; }
    const SparseMatrix& d_prev() const { return d_prev_; }
    const SparseMatrix& d_next() const { return d_next_; }

    /// Throws NotACocycle when d_next * cocycle != 0.
    ClassCoordinates class_of(const Vector& cocycle) const;
    bool is_cocycle(const Vector& v) const;

private:
    friend Cohomology cohomology_pair(const SparseMatrix&, const SparseMatrix&,
                                      std::span<const Vector>);
    SparseMatrix d_prev_;
    SparseMatrix d_next_;
    std::vector<Vector> representatives_;
};

/// Requires d_next * d_prev == 0 (CompositionNonzero otherwise). Cocycles in
/// `preferred` are taken as representatives first, as long as they stay
/// independent modulo the image; the basis is then completed greedily.
Cohomology cohomology_pair(const SparseMatrix& d_prev, const SparseMatrix& d_next,
                           std::span<const Vector> preferred = {});

inline Vector zero_vector(std::size_t n) { return Vector::Constant(static_cast<Eigen::Index>(n), Rational(0)); }
inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v = zero_vector(n);
    v(static_cast<Eigen::Index>(i)) = 1;
    return v;
}
bool is_zero(const Vector& v);

}  // namespace drcomp::linalg
