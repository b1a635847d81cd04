#include "drcomp/simplicial.hpp"

#include "drcomp/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace drcomp::simplicial {

DeltaMorphism::DeltaMorphism(unsigned source, unsigned target, std::vector<unsigned> values)
    : source_(source), target_(target), values_(std::move(values)) {
    if (values_.size() != source_ + 1) throw InvalidSimplicialSet("morphism needs source + 1 values");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] > target_) throw InvalidSimplicialSet("morphism value out of range");
        if (i > 0 && values_[i] < values_[i - 1]) throw InvalidSimplicialSet("morphism is not weakly increasing");
    }
}

DeltaMorphism DeltaMorphism::identity(unsigned n) {
    std::vector<unsigned> v(n + 1);
    std::iota(v.begin(), v.end(), 0u);
    return {n, n, std::move(v)};
}

DeltaMorphism DeltaMorphism::face(unsigned n, unsigned i) {
    if (n == 0 || i > n) throw InvalidSimplicialSet("face index out of range");
    std::vector<unsigned> v;
    for (unsigned j = 0; j <= n; ++j)
        if (j != i) v.push_back(j);
    return {n - 1, n, std::move(v)};
}

DeltaMorphism DeltaMorphism::degeneracy(unsigned n, unsigned j) {
    if (j > n) throw InvalidSimplicialSet("degeneracy index out of range");
    std::vector<unsigned> v;
    for (unsigned i = 0; i <= n + 1; ++i) v.push_back(i <= j ? i : i - 1);
    return {n + 1, n, std::move(v)};
}

DeltaMorphism DeltaMorphism::interval(unsigned n, unsigned first, unsigned length) {
    std::vector<unsigned> v(length + 1);
    std::iota(v.begin(), v.end(), first);
    return {length, n, std::move(v)};
}

bool DeltaMorphism::is_injective() const {
    return std::adjacent_find(values_.begin(), values_.end()) == values_.end();
}

bool DeltaMorphism::is_surjective() const {
    return values_.front() == 0 && values_.back() == target_ &&
           std::adjacent_find(values_.begin(), values_.end(),
                              [](unsigned a, unsigned b) { return b > a + 1; }) == values_.end();
}

DeltaMorphism::EpiMono DeltaMorphism::factor() const {
    std::vector<unsigned> image(values_);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const auto k = static_cast<unsigned>(image.size() - 1);
    std::vector<unsigned> s;
    for (unsigned v : values_)
        s.push_back(static_cast<unsigned>(std::lower_bound(image.begin(), image.end(), v) - image.begin()));
    return {DeltaMorphism(source_, k, std::move(s)), DeltaMorphism(k, target_, std::move(image))};
}

DeltaMorphism compose(const DeltaMorphism& f, const DeltaMorphism& g) {
    if (g.target() != f.source()) throw InvalidSimplicialSet("morphisms are not composable");
    std::vector<unsigned> v;
    for (unsigned x : g.values()) v.push_back(f(x));
    return {g.source(), f.target(), std::move(v)};
}

Simplex nondegenerate(unsigned dim, std::size_t cell) { return {dim, cell, DeltaMorphism::identity(dim)}; }

std::vector<DeltaMorphism> surjections(unsigned d, unsigned k) {
    std::vector<DeltaMorphism> out;
    if (k > d) return out;
    std::vector<unsigned> v(d + 1, 0);
    // v[i] = v[i-1] + step; exactly k unit steps in total
    auto rec = [&](auto&& self, unsigned i, unsigned remaining) -> void {
        if (i > d) {
            if (remaining == 0) out.emplace_back(d, k, v);
            return;
        }
        if (d - i + 1 > remaining) {
            v[i] = v[i - 1];
            self(self, i + 1, remaining);
        }
        if (remaining > 0) {
            v[i] = v[i - 1] + 1;
            self(self, i + 1, remaining - 1);
        }
    };
    rec(rec, 1, k);
    return out;
}

SetPtr FiniteSimplicialSet::create(std::vector<std::size_t> cells_per_dim, FaceTable faces) {
    std::shared_ptr<FiniteSimplicialSet> s(new FiniteSimplicialSet());
    while (!cells_per_dim.empty() && cells_per_dim.back() == 0) cells_per_dim.pop_back();
    s->cells_ = std::move(cells_per_dim);
    s->faces_ = std::move(faces);
    s->faces_.resize(s->cells_.size());
    s->validate();
    return s;
}

void FiniteSimplicialSet::validate() const {
    for (unsigned k = 1; k < cells_.size(); ++k) {
        if (faces_[k].size() != cells_[k])
            throw InvalidSimplicialSet("face table size mismatch in dimension " + std::to_string(k));
        for (std::size_t x = 0; x < cells_[k]; ++x) {
            if (faces_[k][x].size() != k + 1)
                throw InvalidSimplicialSet("cell " + std::to_string(k) + ":" + std::to_string(x) + " needs " +
                                           std::to_string(k + 1) + " faces");
            for (const Simplex& f : faces_[k][x]) {
                if (f.dim() != k - 1 || !f.degeneracy.is_surjective() || f.cell_dim >= cells_.size() ||
                    f.cell >= cells_[f.cell_dim])
                    throw InvalidSimplicialSet("face of cell " + std::to_string(k) + ":" + std::to_string(x) +
                                               " is not a valid simplex");
            }
        }
    }
    for (unsigned k = 2; k < cells_.size(); ++k)
        for (std::size_t x = 0; x < cells_[k]; ++x)
            for (unsigned j = 1; j <= k; ++j)
                for (unsigned i = 0; i < j; ++i) {
                    const Simplex lhs = face(faces_[k][x][j], i);
                    const Simplex rhs = face(faces_[k][x][i], j - 1);
                    if (lhs != rhs)
                        throw InvalidSimplicialSet("simplicial identity d" + std::to_string(i) + " d" +
                                                   std::to_string(j) + " fails on cell " + std::to_string(k) +
                                                   ":" + std::to_string(x));
                }
}

SetPtr FiniteSimplicialSet::from_vertex_lists(const std::vector<std::vector<unsigned>>& simplices) {
    std::set<std::vector<unsigned>> closure;
    for (const auto& s : simplices) {
        if (s.empty()) throw InvalidSimplicialSet("empty vertex list");
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] <= s[i - 1]) throw InvalidSimplicialSet("vertex list must be strictly increasing");
        // every nonempty subsequence is a face
        const std::size_t n = s.size();
        for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
            std::vector<unsigned> f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ul << i)) f.push_back(s[i]);
            closure.insert(std::move(f));
        }
    }
    std::shared_ptr<FiniteSimplicialSet> k(new FiniteSimplicialSet());
    for (const auto& s : closure) {
        const auto d = static_cast<unsigned>(s.size() - 1);
        if (k->cell_vertices_.size() <= d) k->cell_vertices_.resize(d + 1);
        k->cell_vertices_[d].push_back(s);
    }
    k->cells_.resize(k->cell_vertices_.size());
    k->faces_.resize(k->cell_vertices_.size());
    for (unsigned d = 0; d < k->cell_vertices_.size(); ++d) {
        k->cells_[d] = k->cell_vertices_[d].size();
        for (std::size_t x = 0; x < k->cells_[d]; ++x) k->cell_lookup_[k->cell_vertices_[d][x]] = {d, x};
    }
    for (unsigned d = 1; d < k->cells_.size(); ++d) {
        k->faces_[d].resize(k->cells_[d]);
        for (std::size_t x = 0; x < k->cells_[d]; ++x)
            for (unsigned i = 0; i <= d; ++i) {
                auto f = k->cell_vertices_[d][x];
                f.erase(f.begin() + i);
                k->faces_[d][x].push_back(nondegenerate(d - 1, k->cell_lookup_.at(f).second));
            }
    }
    k->validate();
    return k;
}

namespace {

// Standard simplices and their boundaries are shared so that cochains built
// independently on the same Delta[n] can be combined.
SetPtr cached(std::map<unsigned, SetPtr>& cache, unsigned n, SetPtr (*build)(unsigned)) {
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = build(n);
    return slot;
}

SetPtr build_standard(unsigned n) {
    std::vector<unsigned> all(n + 1);
    std::iota(all.begin(), all.end(), 0u);
    return FiniteSimplicialSet::from_vertex_lists({all});
}

SetPtr build_boundary(unsigned n) {
    std::vector<std::vector<unsigned>> facets;
    for (unsigned i = 0; i <= n; ++i) {
        std::vector<unsigned> f;
        for (unsigned j = 0; j <= n; ++j)
            if (j != i) f.push_back(j);
        facets.push_back(std::move(f));
    }
    return FiniteSimplicialSet::from_vertex_lists(facets);
}

}  // namespace

SetPtr FiniteSimplicialSet::standard_simplex(unsigned n) {
    static std::map<unsigned, SetPtr> cache;
    return cached(cache, n, build_standard);
}

SetPtr FiniteSimplicialSet::boundary_complex(unsigned n) {
    if (n == 0) throw InvalidSimplicialSet("boundary of a point is empty");
    static std::map<unsigned, SetPtr> cache;
    return cached(cache, n, build_boundary);
}

long FiniteSimplicialSet::euler_characteristic() const {
    long chi = 0;
    for (std::size_t k = 0; k < cells_.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(cells_[k]);
    return chi;
}

Simplex FiniteSimplicialSet::apply_to_cell(unsigned k, std::size_t x, const DeltaMorphism& injection) const {
    if (injection.source() == k) return nondegenerate(k, x);
    // peel off the coface that skips the largest missing vertex
    unsigned missing = k;
    while (std::binary_search(injection.values().begin(), injection.values().end(), missing)) --missing;
    std::vector<unsigned> rest;
    for (unsigned v : injection.values()) rest.push_back(v < missing ? v : v - 1);
    return apply(DeltaMorphism(injection.source(), k - 1, std::move(rest)), faces_[k][x][missing]);
}

Simplex FiniteSimplicialSet::apply(const DeltaMorphism& h, const Simplex& sigma) const {
    if (h.target() != sigma.dim()) throw DimensionMismatch("operator does not match simplex dimension");
    const auto [epi, mono] = compose(sigma.degeneracy, h).factor();
    const Simplex y = apply_to_cell(sigma.cell_dim, sigma.cell, mono);
    return {y.cell_dim, y.cell, compose(y.degeneracy, epi)};
}

Simplex FiniteSimplicialSet::face(const Simplex& sigma, unsigned i) const {
    if (sigma.dim() == 0) throw DimensionMismatch("a vertex has no faces");
    return apply(DeltaMorphism::face(sigma.dim(), i), sigma);
}

const FiniteSimplicialSet::Enumeration& FiniteSimplicialSet::enumeration(unsigned d) const {
    std::lock_guard lock(cache_mutex_);
    auto& slot = enumerations_[d];
    if (!slot) {
        slot = std::make_unique<Enumeration>();
        for (unsigned k = std::min<unsigned>(d + 1, static_cast<unsigned>(cells_.size())); k-- > 0;)
            for (const auto& s : surjections(d, k))
                for (std::size_t x = 0; x < cells_[k]; ++x) {
                    slot->index.emplace(Simplex{k, x, s}, slot->list.size());
                    slot->list.push_back({k, x, s});
                }
    }
    return *slot;
}

std::size_t FiniteSimplicialSet::simplex_count(unsigned d) const { return enumeration(d).list.size(); }

const std::vector<Simplex>& FiniteSimplicialSet::simplices(unsigned d) const { return enumeration(d).list; }

std::size_t FiniteSimplicialSet::index_of(const Simplex& sigma) const {
    const auto& e = enumeration(sigma.dim());
    const auto it = e.index.find(sigma);
    if (it == e.index.end()) throw InvalidSimplicialSet("simplex is not in this set");
    return it->second;
}

std::vector<unsigned> FiniteSimplicialSet::vertices(const Simplex& sigma) const {
    if (!has_vertex_labels()) throw InvalidSimplicialSet("simplicial set has no vertex labels");
    const auto& cv = cell_vertices_[sigma.cell_dim][sigma.cell];
    std::vector<unsigned> out;
    for (unsigned v : sigma.degeneracy.values()) out.push_back(cv[v]);
    return out;
}

std::optional<Simplex> FiniteSimplicialSet::find(const std::vector<unsigned>& seq) const {
    if (seq.empty() || !std::is_sorted(seq.begin(), seq.end())) return std::nullopt;
    std::vector<unsigned> distinct(seq);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const auto it = cell_lookup_.find(distinct);
    if (it == cell_lookup_.end()) return std::nullopt;
    std::vector<unsigned> s;
    for (unsigned v : seq)
        s.push_back(static_cast<unsigned>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()));
    return Simplex{it->second.first, it->second.second,
                   DeltaMorphism(static_cast<unsigned>(seq.size() - 1), it->second.first, std::move(s))};
}

// ---- cochains --------------------------------------------------------------

Cochain::Cochain(SetPtr complex, unsigned degree)
    : complex_(std::move(complex)), degree_(degree), values_(complex_->simplex_count(degree), Rational(0)) {}

Cochain::Cochain(SetPtr complex, unsigned degree, std::vector<Rational> values)
    : complex_(std::move(complex)), degree_(degree), values_(std::move(values)) {
    if (values_.size() != complex_->simplex_count(degree_))
        throw ShapeMismatch("cochain needs one value per simplex of degree " + std::to_string(degree_));
}

Cochain Cochain::unit(SetPtr complex) {
    const auto n = complex->simplex_count(0);
    return {std::move(complex), 0, std::vector<Rational>(n, Rational(1))};
}

Cochain Cochain::normalized(SetPtr complex, unsigned degree, const std::vector<Rational>& cell_values) {
    if (cell_values.size() != complex->cell_count(degree))
        throw ShapeMismatch("need one value per nondegenerate cell");
    Cochain c(std::move(complex), degree);
    std::copy(cell_values.begin(), cell_values.end(), c.values_.begin());
    return c;
}

const Rational& Cochain::at(const Simplex& sigma) const {
    if (sigma.dim() != degree_) throw DegreeMismatch("simplex dimension differs from cochain degree");
    return values_[complex_->index_of(sigma)];
}

bool Cochain::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

bool Cochain::is_normalized() const {
    return std::all_of(values_.begin() + static_cast<std::ptrdiff_t>(complex_->cell_count(degree_)), values_.end(),
                       [](const Rational& v) { return v == 0; });
}

linalg::Vector Cochain::cell_vector() const {
    const auto n = complex_->cell_count(degree_);
    linalg::Vector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = values_[i];
    return v;
}

void Cochain::check_compatible(const Cochain& other) const {
    if (complex_ != other.complex_) throw ComplexMismatch("cochains live on different simplicial sets");
    if (degree_ != other.degree_) throw DegreeMismatch("cochains have different degrees");
}

Cochain& Cochain::operator+=(const Cochain& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
    check_compatible(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Cochain operator*(const Rational& s, Cochain a) {
    for (auto& v : a.values_) v *= s;
    return a;
}

bool operator==(const Cochain& a, const Cochain& b) {
    return a.complex_ == b.complex_ && a.degree_ == b.degree_ && a.values_ == b.values_;
}

Cochain coboundary(const Cochain& c) {
    const auto& k = *c.complex();
    Cochain out(c.complex(), c.degree() + 1);
    const auto& list = k.simplices(c.degree() + 1);
    for (std::size_t s = 0; s < list.size(); ++s) {
        Rational sum = 0;
        for (unsigned i = 0; i <= c.degree() + 1; ++i) {
            const Rational& v = c.at(k.face(list[s], i));
            if (i % 2) sum -= v;
            else sum += v;
        }
        out.set(s, sum);
    }
    return out;
}

Cochain aw_cup(const Cochain& a, const Cochain& b) {
    if (a.complex() != b.complex()) throw ComplexMismatch("cup product of cochains on different sets");
    const auto& k = *a.complex();
    const unsigned p = a.degree(), q = b.degree(), n = p + q;
    const auto front = DeltaMorphism::interval(n, 0, p);
    const auto back = DeltaMorphism::interval(n, p, q);
    Cochain out(a.complex(), n);
    const auto& list = k.simplices(n);
    for (std::size_t s = 0; s < list.size(); ++s) {
        const Rational& x = a.at(k.apply(front, list[s]));
        if (x == 0) continue;
        out.set(s, x * b.at(k.apply(back, list[s])));
    }
    return out;
}

namespace {

// Normalized coboundary from degree p to p + 1 on nondegenerate cells.
linalg::SparseMatrix normalized_coboundary(const FiniteSimplicialSet& k, unsigned p) {
    linalg::SparseMatrix m(k.cell_count(p + 1), k.cell_count(p));
    for (std::size_t x = 0; x < k.cell_count(p + 1); ++x)
        for (unsigned i = 0; i <= p + 1; ++i) {
            const Simplex& f = k.cell_face(p + 1, x, i);
            if (!f.is_degenerate()) m.add(x, f.cell, Rational(i % 2 ? -1 : 1));
        }
    return m;
}

linalg::SparseMatrix full_coboundary(const FiniteSimplicialSet& k, unsigned p) {
    const auto& list = k.simplices(p + 1);
    linalg::SparseMatrix m(list.size(), k.simplex_count(p));
    for (std::size_t s = 0; s < list.size(); ++s)
        for (unsigned i = 0; i <= p + 1; ++i) m.add(s, k.index_of(k.face(list[s], i)), Rational(i % 2 ? -1 : 1));
    return m;
}

}  // namespace

SimplicialCohomology simplicial_cohomology(const SetPtr& complex, unsigned p) {
    const auto& k = *complex;
    const auto d_prev = p == 0 ? linalg::SparseMatrix(k.cell_count(0), 0) : normalized_coboundary(k, p - 1);
    const auto d_next = normalized_coboundary(k, p);
    SimplicialCohomology h{p, 0, {}, linalg::cohomology_pair(d_prev, d_next)};
    h.dimension = h.cohomology.dimension();
    for (const auto& r : h.cohomology.representatives()) {
        std::vector<Rational> vals(r.begin(), r.end());
        h.representatives.push_back(Cochain::normalized(complex, p, vals));
    }
    return h;
}

linalg::Vector class_of(const SimplicialCohomology& h, const Cochain& cocycle) {
    if (cocycle.degree() != h.degree) throw DegreeMismatch("cocycle degree differs from cohomology degree");
    if (!cocycle.is_normalized()) throw NotACocycle("class_of expects a normalized cochain");
    return h.cohomology.class_of(cocycle.cell_vector()).coordinates;
}

std::size_t unnormalized_cohomology_dimension(const SetPtr& complex, unsigned p) {
    const auto& k = *complex;
    const auto d_prev = p == 0 ? linalg::SparseMatrix(k.simplex_count(0), 0) : full_coboundary(k, p - 1);
    return linalg::cohomology_pair(d_prev, full_coboundary(k, p)).dimension();
}

Cochain restrict_along(const Cochain& c, const SetPtr& source, const std::map<unsigned, unsigned>& vertex_map) {
    const auto& target = *c.complex();
    Cochain out(source, c.degree());
    const auto& list = source->simplices(c.degree());
    for (std::size_t s = 0; s < list.size(); ++s) {
        std::vector<unsigned> image;
        for (unsigned v : source->vertices(list[s])) {
            const auto it = vertex_map.find(v);
            if (it == vertex_map.end()) throw ComplexMismatch("vertex map misses vertex " + std::to_string(v));
            image.push_back(it->second);
        }
        const auto t = target.find(image);
        if (!t) throw ComplexMismatch("vertex map does not send simplices to simplices");
        out.set(s, c.at(*t));
    }
    return out;
}

Cochain restrict_to(const Cochain& c, const SetPtr& subcomplex) {
    std::map<unsigned, unsigned> id;
    for (std::size_t x = 0; x < subcomplex->cell_count(0); ++x) {
        const unsigned v = subcomplex->cell_vertices(0, x)[0];
        id[v] = v;
    }
    return restrict_along(c, subcomplex, id);
}

Cochain extend_by_zero(const Cochain& c, const SetPtr& complex) {
    const auto& sub = *c.complex();
    Cochain out(complex, c.degree());
    const auto& list = sub.simplices(c.degree());
    for (std::size_t s = 0; s < list.size(); ++s) {
        const auto t = complex->find(sub.vertices(list[s]));
        if (!t) throw ComplexMismatch("cochain does not live on a subcomplex");
        out.set(complex->index_of(*t), c[s]);
    }
    return out;
}

// ---- chains ----------------------------------------------------------------

void Chain::add(std::size_t index, const Integer& coefficient) {
    if (index >= complex_->simplex_count(degree_)) throw InvalidSimplicialSet("simplex index out of range");
    auto [it, inserted] = terms_.try_emplace(index, coefficient);
    if (!inserted) it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
}

void Chain::add(const Simplex& sigma, const Integer& coefficient) {
    if (sigma.dim() != degree_) throw DegreeMismatch("simplex dimension differs from chain degree");
    add(complex_->index_of(sigma), coefficient);
}

bool operator==(const Chain& a, const Chain& b) {
    return a.complex_ == b.complex_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

Chain boundary(const Chain& z) {
    if (z.degree() == 0) throw DegreeMismatch("a 0-chain has no boundary");
    const auto& k = *z.complex();
    Chain out(z.complex(), z.degree() - 1);
    for (const auto& [index, coeff] : z.terms()) {
        const Simplex& s = k.simplices(z.degree())[index];
        for (unsigned i = 0; i <= z.degree(); ++i) out.add(k.face(s, i), i % 2 ? Integer(-coeff) : coeff);
    }
    return out;
}

bool is_cycle(const Chain& z) { return z.degree() == 0 || boundary(z).is_zero(); }

Rational pair(const Cochain& c, const Chain& z) {
    if (c.complex() != z.complex()) throw ComplexMismatch("cochain and chain live on different sets");
    if (c.degree() != z.degree()) throw DegreeMismatch("cochain and chain degrees differ");
    Rational sum = 0;
    for (const auto& [index, coeff] : z.terms()) sum += Rational(coeff) * c[index];
    return sum;
}

}  // namespace drcomp::simplicial
