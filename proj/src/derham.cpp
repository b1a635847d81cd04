#include "drcomp/derham.hpp"

#include "drcomp/errors.hpp"

#include <algorithm>
#include <functional>

namespace drcomp {

namespace {

std::vector<IndexMask> masks_of_size(std::size_t nvars, int p) {
    std::vector<IndexMask> out;
    if (p < 0 || static_cast<std::size_t>(p) > nvars) return out;
    for (IndexMask s = 0; s < (IndexMask{1} << nvars); ++s)
        if (mask_size(s) == p) out.push_back(s);
    return out;
}

void check_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a != b) throw AlgebraMismatch("forms live over different algebras");
}

}  // namespace

// ---- FpAlgebra -----------------------------------------------------------

AlgebraPtr FpAlgebra::create(std::vector<std::string> variables, std::vector<Polynomial> relations,
                             const GroebnerOptions& options) {
    std::shared_ptr<FpAlgebra> a(new FpAlgebra());
    a->variables_ = std::move(variables);
    for (const auto& r : relations) {
        if (r.nvars() != a->variables_.size()) throw DimensionMismatch("relation in the wrong number of variables");
        if (!r.is_zero()) a->relations_.push_back(r);
    }
    a->groebner_ = groebner_basis(a->relations_, options);
    return a;
}

AlgebraPtr FpAlgebra::parse(std::vector<std::string> variables, const std::vector<std::string>& relations) {
    std::vector<Polynomial> rel;
    for (const auto& r : relations) rel.push_back(parse_polynomial(r, variables));
    return create(std::move(variables), std::move(rel));
}

unsigned FpAlgebra::max_relation_degree() const {
    unsigned d = 0;
    for (const auto& r : relations_) d = std::max(d, static_cast<unsigned>(std::max(0, r.total_degree())));
    return d;
}

bool FpAlgebra::is_standard(const Monomial& m) const {
    return std::none_of(groebner_.begin(), groebner_.end(),
                        [&](const Polynomial& g) { return divides(g.leading_monomial(), m); });
}

std::vector<Monomial> FpAlgebra::standard_monomials(unsigned max_degree) const {
    std::vector<Monomial> out;
    Monomial m(nvars(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i == nvars()) {
            if (is_standard(m)) out.push_back(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m[i] = e;
            rec(i + 1, left - e);
        }
        m[i] = 0;
    };
    rec(0, max_degree);
    std::sort(out.begin(), out.end(), DegRevLex{});
    return out;
}

std::shared_ptr<const WeightTruncation> FpAlgebra::truncation(int p, unsigned cutoff, unsigned slack) const {
    const auto key = std::make_tuple(p, cutoff, slack);
    {
        std::lock_guard lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto t = std::make_shared<const WeightTruncation>(*this, p, cutoff, slack);
    std::lock_guard lock(cache_mutex_);
    return cache_.emplace(key, std::move(t)).first->second;
}

// ---- AlgebraicForm --------------------------------------------------------

AlgebraicForm::AlgebraicForm(AlgebraPtr algebra, int degree) : algebra_(std::move(algebra)), degree_(degree) {
    if (degree < 0) throw DimensionMismatch("negative form degree");
}

AlgebraicForm::AlgebraicForm(AlgebraPtr algebra, int degree, const Terms& raw)
    : AlgebraicForm(std::move(algebra), degree) {
    for (const auto& [s, c] : raw) {
        if (mask_size(s) != degree_) throw DimensionMismatch("index set size differs from form degree");
        if (s >> algebra_->nvars()) throw DimensionMismatch("differential of an unknown variable");
        add_term(s, algebra_->reduce(c));
    }
}

AlgebraicForm AlgebraicForm::scalar(AlgebraPtr algebra, const Polynomial& f) {
    return AlgebraicForm(algebra, 0, Terms{{0, f}});
}

AlgebraicForm AlgebraicForm::parse(AlgebraPtr algebra, std::string_view text) {
    const FormExpression e = parse_expression(text, algebra->variables(), true);
    int degree = e.empty() ? 0 : mask_size(e.begin()->first);
    Terms raw;
    for (const auto& [s, f] : e) {
        if (mask_size(s) != degree) throw ParseError("form is not homogeneous: \"" + std::string(text) + "\"");
        if (!f.is_polynomial()) throw ParseError("form coefficients must be polynomials");
        raw.emplace(s, f.numerator());
    }
    return AlgebraicForm(std::move(algebra), degree, raw);
}

int AlgebraicForm::weight() const {
    int w = -1;
    for (const auto& [s, c] : terms_) w = std::max(w, c.total_degree() + degree_);
    return w;
}

void AlgebraicForm::add_term(IndexMask s, const Polynomial& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraicForm& AlgebraicForm::operator+=(const AlgebraicForm& o) {
    check_same_algebra(algebra_, o.algebra_);
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    if (degree_ != o.degree_) throw DimensionMismatch("adding forms of different degree");
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
}

AlgebraicForm& AlgebraicForm::operator-=(const AlgebraicForm& o) { return *this += -o; }

AlgebraicForm operator*(const Rational& c, AlgebraicForm a) {
    if (c.is_zero()) a.terms_.clear();
    for (auto& [s, f] : a.terms_) f *= c;
    return a;
}

AlgebraicForm operator*(const Polynomial& f, const AlgebraicForm& a) {
    AlgebraicForm out(a.algebra_, a.degree_);
    for (const auto& [s, c] : a.terms_) out.add_term(s, a.algebra_->reduce(f * c));
    return out;
}

AlgebraicForm AlgebraicForm::operator-() const { return Rational(-1) * *this; }

bool operator==(const AlgebraicForm& a, const AlgebraicForm& b) {
    return a.algebra_ == b.algebra_ && a.terms_ == b.terms_ && (a.is_zero() || a.degree_ == b.degree_);
}

std::string AlgebraicForm::to_string() const {
    FormExpression e;
    for (const auto& [s, c] : terms_) e.emplace(s, RationalFunction(c));
    return format_form(e, algebra_->variables());
}

// ---- operations -------------------------------------------------------------

KaehlerPresentation kaehler_presentation(const FpAlgebra& algebra) {
    KaehlerPresentation k;
    for (const auto& v : algebra.variables()) k.generators.push_back("d" + v);
    for (const auto& f : algebra.relations()) {
        std::vector<Polynomial> row;
        for (std::size_t i = 0; i < algebra.nvars(); ++i) row.push_back(algebra.reduce(f.derivative(i)));
        k.relations.push_back(std::move(row));
    }
    return k;
}

AlgebraicForm wedge(const AlgebraicForm& a, const AlgebraicForm& b) {
    check_same_algebra(a.algebra(), b.algebra());
    AlgebraicForm::Terms raw;
    for (const auto& [s, f] : a.terms())
        for (const auto& [t, g] : b.terms()) {
            const int sign = wedge_sign(s, t);
            if (!sign) continue;
            Polynomial c = f * g;
            if (sign < 0) c = -c;
            auto [it, inserted] = raw.emplace(s | t, c);
            if (!inserted) it->second += c;
        }
    return AlgebraicForm(a.algebra(), a.degree() + b.degree(), raw);
}

AlgebraicForm differential(const AlgebraicForm& a) {
    AlgebraicForm::Terms raw;
    const std::size_t m = a.algebra()->nvars();
    for (const auto& [s, c] : a.terms())
        for (std::size_t i = 0; i < m; ++i) {
            const IndexMask di = IndexMask{1} << i;
            const int sign = wedge_sign(di, s);
            if (!sign) continue;
            Polynomial dc = c.derivative(i);
            if (dc.is_zero()) continue;
            if (sign < 0) dc = -dc;
            auto [it, inserted] = raw.emplace(s | di, dc);
            if (!inserted) it->second += dc;
        }
    return AlgebraicForm(a.algebra(), a.degree() + 1, raw);
}

// ---- weight truncation -------------------------------------------------------

WeightTruncation::WeightTruncation(const FpAlgebra& algebra, int p, unsigned cutoff, unsigned slack)
    : p_(p), cutoff_(cutoff) {
    const std::size_t m = algebra.nvars();
    const auto masks = masks_of_size(m, p);
    const unsigned big = cutoff + slack;
    if (masks.empty() || static_cast<int>(cutoff) < p) return;

    // coordinates of weight <= big, highest weight first
    std::vector<std::pair<IndexMask, Monomial>> all;
    std::vector<Monomial> mons = algebra.standard_monomials(big - static_cast<unsigned>(p));
    for (unsigned w = big + 1; w-- > static_cast<unsigned>(p);) {
        for (IndexMask s : masks)
            for (auto it = mons.rbegin(); it != mons.rend(); ++it)
                if (total_degree(*it) + static_cast<unsigned>(p) == w) all.emplace_back(s, *it);
    }
    std::size_t offset = 0;
    while (offset < all.size() && total_degree(all[offset].second) + static_cast<unsigned>(p) > cutoff) ++offset;
    std::map<std::pair<IndexMask, Monomial>, std::size_t> all_index;
    for (std::size_t i = 0; i < all.size(); ++i) all_index.emplace(all[i], i);

    coords_.assign(all.begin() + static_cast<std::ptrdiff_t>(offset), all.end());
    for (std::size_t i = 0; i < coords_.size(); ++i) index_.emplace(coords_[i], i);

    // relation generators m * df_j ^ dx_T
    std::vector<std::map<std::size_t, Rational>> gens;
    if (p >= 1) {
        const auto k = kaehler_presentation(algebra);
        const auto tails = masks_of_size(m, p - 1);
        for (const auto& row : k.relations) {
            int dj = -1;
            for (const auto& c : row) dj = std::max(dj, c.total_degree());
            if (dj < 0) continue;
            if (static_cast<unsigned>(dj + p) > big) continue;
            for (const Monomial& mon : algebra.standard_monomials(big - static_cast<unsigned>(dj + p))) {
                std::vector<Polynomial> coeff(m);
                for (std::size_t i = 0; i < m; ++i)
                    coeff[i] = row[i].is_zero() ? row[i] : algebra.reduce(row[i].times_term(mon, 1));
                for (IndexMask t : tails) {
                    std::map<std::size_t, Rational> g;
                    for (std::size_t i = 0; i < m; ++i) {
                        const IndexMask di = IndexMask{1} << i;
                        const int sign = wedge_sign(di, t);
                        if (!sign) continue;
                        for (const auto& [mm, c] : coeff[i].terms()) {
                            auto& slot = g[all_index.at({di | t, mm})];
                            slot += sign > 0 ? c : Rational(-c);
                        }
                    }
                    std::erase_if(g, [](const auto& kv) { return kv.second.is_zero(); });
                    if (!g.empty()) gens.push_back(std::move(g));
                }
            }
        }
    }
    if (!gens.empty()) {
        linalg::SparseMatrix mat(gens.size(), all.size());
        for (std::size_t r = 0; r < gens.size(); ++r)
            for (const auto& [c, v] : gens[r]) mat.set(r, c, v);
        const linalg::Echelon e = linalg::rref(mat);
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            if (e.pivot_columns[i] < offset) continue;
            SparseVector row;
            for (const auto& [c, v] : e.rows[i]) row.emplace(c - offset, v);
            relations_.emplace_back(e.pivot_columns[i] - offset, std::move(row));
        }
    }
    std::vector<bool> pivot(coords_.size(), false);
    for (const auto& [c, row] : relations_) pivot[c] = true;
    for (std::size_t i = coords_.size(); i-- > 0;)
        if (!pivot[i]) {
            quotient_index_.emplace(i, quotient_.size());
            quotient_.push_back(i);
        }
}

WeightTruncation::SparseVector WeightTruncation::to_sparse(const AlgebraicForm& form) const {
    SparseVector v;
    if (form.is_zero()) return v;
    if (form.degree() != p_) throw DimensionMismatch("form degree differs from truncation degree");
    for (const auto& [s, c] : form.terms())
        for (const auto& [m, q] : c.terms()) {
            auto it = index_.find({s, m});
            if (it == index_.end())
                throw std::out_of_range("form term of weight " + std::to_string(total_degree(m) + p_) +
                                        " exceeds cutoff " + std::to_string(cutoff_));
            v[it->second] += q;
        }
    return v;
}

void WeightTruncation::eliminate(SparseVector& v) const {
    for (const auto& [pivot, row] : relations_) {
        auto it = v.find(pivot);
        if (it == v.end() || it->second.is_zero()) continue;
        const Rational f = it->second;
        for (const auto& [c, a] : row) v[c] -= f * a;
    }
    std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
}

linalg::Vector WeightTruncation::quotient_coordinates(const AlgebraicForm& form) const {
    SparseVector v = to_sparse(form);
    eliminate(v);
    linalg::Vector out = linalg::zero_vector(quotient_.size());
    for (const auto& [c, a] : v) out(quotient_index_.at(c)) = a;
    return out;
}

AlgebraicForm WeightTruncation::lift(const AlgebraPtr& algebra, const linalg::Vector& coords) const {
    AlgebraicForm::Terms terms;
    for (std::size_t k = 0; k < quotient_.size(); ++k) {
        if (coords(k).is_zero()) continue;
        const auto& [s, m] = coords_[quotient_[k]];
        auto [it, inserted] = terms.emplace(s, Polynomial(algebra->nvars()));
        it->second.add_term(m, coords(k));
    }
    return AlgebraicForm(algebra, p_, terms);
}

AlgebraicForm WeightTruncation::reduce(const AlgebraicForm& form) const {
    if (form.is_zero()) return form;
    SparseVector v = to_sparse(form);
    eliminate(v);
    AlgebraicForm::Terms terms;
    for (const auto& [c, a] : v) {
        const auto& [s, m] = coords_[c];
        auto [it, inserted] = terms.emplace(s, Polynomial(form.algebra()->nvars()));
        it->second.add_term(m, a);
    }
    return AlgebraicForm(form.algebra(), p_, terms);
}

AlgebraicForm reduce_form(const AlgebraicForm& form, std::optional<unsigned> cutoff) {
    if (form.is_zero()) return form;
    const unsigned n = std::max(cutoff.value_or(0u), static_cast<unsigned>(form.weight()));
    const auto& alg = *form.algebra();
    return alg.truncation(form.degree(), n, alg.default_slack())->reduce(form);
}

AlgebraicForm reduce_form(const AlgebraPtr& algebra, int degree, const AlgebraicForm::Terms& raw,
                          std::optional<unsigned> cutoff) {
    return reduce_form(AlgebraicForm(algebra, degree, raw), cutoff);
}

bool equivalent(const AlgebraicForm& a, const AlgebraicForm& b, std::optional<unsigned> cutoff) {
    const int w = std::max(a.weight(), b.weight());
    const unsigned n = std::max(cutoff.value_or(0u), static_cast<unsigned>(std::max(w, 0)));
    return reduce_form(a - b, n).is_zero();
}

bool is_closed(const AlgebraicForm& form, std::optional<unsigned> cutoff) {
    const unsigned n = std::max(cutoff.value_or(0u), static_cast<unsigned>(std::max(form.weight(), 0)));
    return reduce_form(differential(form), n).is_zero();
}

TruncatedCohomology truncated_cohomology(const AlgebraPtr& algebra, int p, unsigned cutoff,
                                         std::optional<unsigned> slack) {
    if (p < 0 || static_cast<int>(cutoff) < p) throw std::invalid_argument("truncated_cohomology: need cutoff >= p >= 0");
    const unsigned s = slack.value_or(algebra->default_slack());

    TruncatedCohomology out;
    out.degree = p;
    std::vector<AlgebraicForm> previous;
    std::size_t previous_dim = 0;
    for (unsigned n = static_cast<unsigned>(p); n <= cutoff; ++n) {
        const auto below = p > 0 ? algebra->truncation(p - 1, n, s) : nullptr;
        const auto here = algebra->truncation(p, n, s);
        const auto above = algebra->truncation(p + 1, n, s);

        linalg::SparseMatrix d_prev(here->quotient_dimension(), below ? below->quotient_dimension() : 0);
        for (std::size_t k = 0; k < d_prev.cols(); ++k) {
            const auto col = here->quotient_coordinates(
                differential(below->lift(algebra, linalg::unit_vector(d_prev.cols(), k))));
            for (Eigen::Index r = 0; r < col.size(); ++r) d_prev.set(r, k, col(r));
        }
        linalg::SparseMatrix d_next(above->quotient_dimension(), here->quotient_dimension());
        for (std::size_t k = 0; k < d_next.cols(); ++k) {
            const auto col = above->quotient_coordinates(
                differential(here->lift(algebra, linalg::unit_vector(d_next.cols(), k))));
            for (Eigen::Index r = 0; r < col.size(); ++r) d_next.set(r, k, col(r));
        }

        std::vector<linalg::Vector> preferred;
        for (const auto& rep : previous) {
            linalg::Vector v = here->quotient_coordinates(rep);
            if (linalg::is_zero(d_next * v)) preferred.push_back(std::move(v));
        }
        const auto h = linalg::cohomology_pair(d_prev, d_next, preferred);

        bool kept = preferred.size() == previous.size() && h.dimension() >= preferred.size();
        for (std::size_t i = 0; kept && i < preferred.size(); ++i) kept = h.representatives()[i] == preferred[i];

        out.cutoff = n;
        out.dimension = h.dimension();
        out.stabilized = kept && h.dimension() == previous_dim;
        out.dimensions_by_cutoff.push_back(h.dimension());
        out.representatives.clear();
        for (const auto& r : h.representatives()) out.representatives.push_back(here->lift(algebra, r));
        previous = out.representatives;
        previous_dim = h.dimension();
    }
    return out;
}

}  // namespace drcomp
