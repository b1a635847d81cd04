#include "drcomp/linalg.hpp"

#include "drcomp/errors.hpp"

#include <algorithm>
#include <set>

namespace drcomp::linalg {

namespace {

using IntRow = std::map<std::size_t, Integer>;

Integer content(const IntRow& row) {
    Integer g = 0;
    for (const auto& [c, v] : row) {
        g = boost::multiprecision::gcd(g, Integer(abs(v)));
        if (g == 1) break;
    }
    return g;
}

void make_primitive(IntRow& row) {
    const Integer g = content(row);
    if (g > 1)
        for (auto& [c, v] : row) v /= g;
}

IntRow to_integer_row(const SparseMatrix::Row& row) {
    Integer l = 1;
    for (const auto& [c, v] : row) l = boost::multiprecision::lcm(l, Integer(denominator(v)));
    IntRow out;
    for (const auto& [c, v] : row) out.emplace(c, Integer(numerator(v)) * (l / Integer(denominator(v))));
    make_primitive(out);
    return out;
}

}  // namespace

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::from_dense(const RationalMatrix& m) {
    SparseMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero()) out.rows_[r].emplace(c, m(r, c));
    return out;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::span<const Vector> columns) {
    SparseMatrix out(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (static_cast<std::size_t>(columns[c].size()) != rows)
            throw ShapeMismatch("column " + std::to_string(c) + " has wrong length");
        for (std::size_t r = 0; r < rows; ++r)
            if (!columns[c](r).is_zero()) out.rows_[r].emplace(c, columns[c](r));
    }
    return out;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.rows_[i].emplace(i, Rational(1));
    return out;
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_.size() || c >= cols_) throw ShapeMismatch("entry index out of range");
    if (v.is_zero()) return;
    auto [it, inserted] = rows_[r].emplace(c, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) rows_[r].erase(it);
    }
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_.size() || c >= cols_) throw ShapeMismatch("entry index out of range");
    if (v.is_zero())
        rows_[r].erase(c);
    else
        rows_[r][c] = v;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
    const auto& row = rows_.at(r);
    auto it = row.find(c);
    return it == row.end() ? Rational(0) : it->second;
}

std::vector<std::tuple<std::size_t, std::size_t, Rational>> SparseMatrix::entries() const {
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> out;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) out.emplace_back(r, c, v);
    return out;
}

bool SparseMatrix::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
}

RationalMatrix SparseMatrix::to_dense() const {
    RationalMatrix m = RationalMatrix::Constant(static_cast<Eigen::Index>(rows()),
                                                static_cast<Eigen::Index>(cols_), Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) m(r, c) = v;
    return m;
}

Vector SparseMatrix::column(std::size_t c) const {
    Vector v = zero_vector(rows());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        auto it = rows_[r].find(c);
        if (it != rows_[r].end()) v(r) = it->second;
    }
    return v;
}

Vector SparseMatrix::operator*(const Vector& v) const {
    if (static_cast<std::size_t>(v.size()) != cols_) throw ShapeMismatch("matrix-vector product");
    Vector out = zero_vector(rows());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational acc = 0;
        for (const auto& [c, a] : rows_[r])
            if (!v(c).is_zero()) acc += a * v(c);
        out(r) = acc;
    }
    return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
    if (other.rows() != cols_) throw ShapeMismatch("matrix-matrix product");
    SparseMatrix out(rows(), other.cols());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [k, a] : rows_[r])
            for (const auto& [c, b] : other.rows_[k]) out.add(r, c, a * b);
    return out;
}

bool is_zero(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) return false;
    return true;
}

Echelon rref(const SparseMatrix& m) {
    if (m.rows() < kDenseThreshold && m.cols() < kDenseThreshold) return rref_dense(m);
    return rref_sparse(m);
}

Echelon rref_dense(const SparseMatrix& m) {
    RationalMatrix a = m.to_dense();
    const Eigen::Index rows = a.rows();
    Echelon e;
    e.cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < a.cols() && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && a(p, c).is_zero()) ++p;
        if (p == rows) continue;
        a.row(p).swap(a.row(r));
        const Rational inv = Rational(1) / a(r, c);
        a.row(r) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            const Rational f = a(i, c);
            a.row(i) -= f * a.row(r);
        }
        e.pivot_columns.push_back(static_cast<std::size_t>(c));
        ++r;
    }
    for (Eigen::Index i = 0; i < r; ++i) {
        SparseMatrix::Row row;
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            if (!a(i, c).is_zero()) row.emplace(c, a(i, c));
        e.rows.push_back(std::move(row));
    }
    return e;
}

Echelon rref_sparse(const SparseMatrix& m) {
    std::vector<IntRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).empty()) rows.push_back(to_integer_row(m.row(r)));

    std::vector<std::set<std::size_t>> col_rows(m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, v] : rows[i]) col_rows[c].insert(i);

    std::vector<bool> used(rows.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)

    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t best = rows.size();
        for (std::size_t i : col_rows[c]) {
            if (used[i]) continue;
            if (best == rows.size() || rows[i].size() < rows[best].size()) best = i;
        }
        if (best == rows.size()) continue;
        used[best] = true;
        pivots.emplace_back(c, best);

        const IntRow& prow = rows[best];
        const Integer p = prow.at(c);
        const std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
        for (std::size_t i : targets) {
            if (i == best) continue;
            IntRow& row = rows[i];
            const Integer a = row.at(c);
            const Integer g = boost::multiprecision::gcd(Integer(abs(p)), Integer(abs(a)));
            const Integer sp = p / g, sa = a / g;
            for (const auto& [k, v] : row) col_rows[k].erase(i);
            IntRow next;
            for (const auto& [k, v] : row) next.emplace(k, v * sp);
            for (const auto& [k, v] : prow) {
                auto [it, inserted] = next.emplace(k, -sa * v);
                if (!inserted) {
                    it->second -= sa * v;
                    if (it->second.is_zero()) next.erase(it);
                }
            }
            make_primitive(next);
            row = std::move(next);
            for (const auto& [k, v] : row) col_rows[k].insert(i);
        }
    }

    Echelon e;
    e.cols = m.cols();
    for (const auto& [c, i] : pivots) {
        const Rational p = Rational(rows[i].at(c));
        SparseMatrix::Row row;
        for (const auto& [k, v] : rows[i]) row.emplace(k, Rational(v) / p);
        e.pivot_columns.push_back(c);
        e.rows.push_back(std::move(row));
    }
    return e;
}

KernelImage kernel_image(const SparseMatrix& m) { return kernel_image(rref(m), m); }

KernelImage kernel_image(const Echelon& e, const SparseMatrix& m) {
    KernelImage out;
    out.rank = e.pivot_columns.size();
    std::vector<bool> is_pivot(e.cols, false);
    for (std::size_t c : e.pivot_columns) is_pivot[c] = true;
    for (std::size_t f = 0; f < e.cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v = unit_vector(e.cols, f);
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            auto it = e.rows[i].find(f);
            if (it != e.rows[i].end()) v(e.pivot_columns[i]) = -it->second;
        }
        out.kernel.push_back(std::move(v));
    }
    for (std::size_t c : e.pivot_columns) out.image.push_back(m.column(c));
    return out;
}

std::optional<Vector> solve(const SparseMatrix& m, const Vector& b) {
    if (static_cast<std::size_t>(b.size()) != m.rows()) throw ShapeMismatch("solve: right-hand side");
    SparseMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto& [c, v] : m.row(r)) aug.set(r, c, v);
        aug.set(r, m.cols(), b(r));
    }
    const Echelon e = rref(aug);
    Vector x = zero_vector(m.cols());
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivot_columns[i] == m.cols()) return std::nullopt;
        auto it = e.rows[i].find(m.cols());
        if (it != e.rows[i].end()) x(e.pivot_columns[i]) = it->second;
    }
    return x;
}

std::size_t rank(const SparseMatrix& m) { return rref(m).pivot_columns.size(); }

bool Cohomology::is_cocycle(const Vector& v) const { return is_zero(d_next_ * v); }

Cohomology::ClassCoordinates Cohomology::class_of(const Vector& cocycle) const {
    if (!is_cocycle(cocycle)) throw NotACocycle("d_next * v != 0");
    const std::size_t h = representatives_.size();
    std::vector<Vector> cols = representatives_;
    for (std::size_t c = 0; c < d_prev_.cols(); ++c) cols.push_back(d_prev_.column(c));
    const auto x = solve(SparseMatrix::from_columns(d_next_.cols(), cols), cocycle);
    if (!x) throw NotACocycle("vector is not in the span of representatives and coboundaries");
    ClassCoordinates out;
    out.coordinates = x->head(static_cast<Eigen::Index>(h));
    out.witness = x->tail(static_cast<Eigen::Index>(d_prev_.cols()));
    return out;
}

Cohomology cohomology_pair(const SparseMatrix& d_prev, const SparseMatrix& d_next,
                           std::span<const Vector> preferred) {
    if (d_prev.rows() != d_next.cols()) throw ShapeMismatch("d_prev and d_next are not composable");
    if (!(d_next * d_prev).is_zero()) throw CompositionNonzero("d_next * d_prev != 0");
    Cohomology h;
    h.d_prev_ = d_prev;
    h.d_next_ = d_next;
    const std::size_t n = d_next.cols();

    for (const Vector& p : preferred)
        if (!h.is_cocycle(p)) throw NotACocycle("preferred representative is not a cocycle");

    std::vector<Vector> cols;
    for (std::size_t c = 0; c < d_prev.cols(); ++c) cols.push_back(d_prev.column(c));
    const std::size_t n_image = cols.size();
    cols.insert(cols.end(), preferred.begin(), preferred.end());
    for (Vector& z : kernel_image(d_next).kernel) cols.push_back(std::move(z));

    const Echelon e = rref(SparseMatrix::from_columns(n, cols));
    for (std::size_t c : e.pivot_columns)
        if (c >= n_image) h.representatives_.push_back(cols[c]);
    return h;
}

}  // namespace drcomp::linalg
