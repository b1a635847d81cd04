#pragma once

#include "drcomp/linalg.hpp"
#include "drcomp/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace drcomp::simplicial {

/// A weakly increasing map {0..source} -> {0..target}.
class DeltaMorphism {
public:
    DeltaMorphism(unsigned source, unsigned target, std::vector<unsigned> values);

    static DeltaMorphism identity(unsigned n);
    /// The coface [n-1] -> [n] that skips i.
    static DeltaMorphism face(unsigned n, unsigned i);
    /// The codegeneracy [n+1] -> [n] that hits j twice.
    static DeltaMorphism degeneracy(unsigned n, unsigned j);
    /// Inclusion of the vertices first..first+length into [n].
    static DeltaMorphism interval(unsigned n, unsigned first, unsigned length);

    unsigned source() const { return source_; }
    unsigned target() const { return target_; }
    const std::vector<unsigned>& values() const { return values_; }
    unsigned operator()(unsigned i) const { return values_[i]; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_identity() const { return source_ == target_ && is_injective(); }

    /// Factors this map as inclusion o surjection.
    struct EpiMono;
    EpiMono factor() const;

    friend bool operator==(const DeltaMorphism&, const DeltaMorphism&) = default;
    friend auto operator<=>(const DeltaMorphism&, const DeltaMorphism&) = default;

private:
    unsigned source_;
    unsigned target_;
    std::vector<unsigned> values_;
};

struct DeltaMorphism::EpiMono {
    DeltaMorphism surjection;
    DeltaMorphism injection;
};

/// (f o g)(i) = f(g(i)).
DeltaMorphism compose(const DeltaMorphism& f, const DeltaMorphism& g);

/// A simplex of any dimension: a nondegenerate cell with a degeneracy
/// surjection [dim] -> [cell_dim] applied to it.
struct Simplex {
    unsigned cell_dim = 0;
    std::size_t cell = 0;
    DeltaMorphism degeneracy = DeltaMorphism::identity(0);

    unsigned dim() const { return degeneracy.source(); }
    bool is_degenerate() const { return dim() != cell_dim; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

Simplex nondegenerate(unsigned dim, std::size_t cell);

class FiniteSimplicialSet;
using SetPtr = std::shared_ptr<const FiniteSimplicialSet>;

/// Finite simplicial set stored by its nondegenerate cells and their face
/// tables. Degenerate simplices are produced on demand. All simplices of a
/// given dimension are numbered with the nondegenerate ones first, so cell x
/// of dimension d has index x among the d-simplices.
class FiniteSimplicialSet {
public:
    using FaceTable = std::vector<std::vector<std::vector<Simplex>>>;

    /// faces[k][x][i] is the i-th face of the k-cell x (faces[0] is unused).
    /// Throws InvalidSimplicialSet when the tables break the simplicial
    /// identities or point at missing cells.
    static SetPtr create(std::vector<std::size_t> cells_per_dim, FaceTable faces);

    /// The ordered simplicial complex generated by the given vertex lists
    /// (each strictly increasing) together with all their faces.
    static SetPtr from_vertex_lists(const std::vector<std::vector<unsigned>>& simplices);

    /// Repeated calls return the same shared instance.
    static SetPtr standard_simplex(unsigned n);
    static SetPtr boundary_complex(unsigned n);

    /// Highest dimension carrying a nondegenerate cell (-1 when empty).
    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t cell_count(unsigned k) const { return k < cells_.size() ? cells_[k] : 0; }
    long euler_characteristic() const;

    const Simplex& cell_face(unsigned k, std::size_t x, unsigned i) const { return faces_[k][x][i]; }

    /// h^* sigma for h: [m] -> [sigma.dim()].
    Simplex apply(const DeltaMorphism& h, const Simplex& sigma) const;
    Simplex face(const Simplex& sigma, unsigned i) const;

    std::size_t simplex_count(unsigned d) const;
    const std::vector<Simplex>& simplices(unsigned d) const;
    std::size_t index_of(const Simplex& sigma) const;

    /// Vertex labels are present for sets built from vertex lists.
    bool has_vertex_labels() const { return !cell_vertices_.empty(); }
    std::vector<unsigned> vertices(const Simplex& sigma) const;
    const std::vector<unsigned>& cell_vertices(unsigned k, std::size_t x) const { return cell_vertices_[k][x]; }
    /// The simplex with the given weakly increasing vertex sequence, if any.
    std::optional<Simplex> find(const std::vector<unsigned>& vertex_sequence) const;

private:
    struct Enumeration {
        std::vector<Simplex> list;
        std::map<Simplex, std::size_t> index;
    };

    FiniteSimplicialSet() = default;
    void validate() const;
    Simplex apply_to_cell(unsigned k, std::size_t x, const DeltaMorphism& injection) const;
    const Enumeration& enumeration(unsigned d) const;

    std::vector<std::size_t> cells_;
    FaceTable faces_;
    std::vector<std::vector<std::vector<unsigned>>> cell_vertices_;
    std::map<std::vector<unsigned>, std::pair<unsigned, std::size_t>> cell_lookup_;

    mutable std::mutex cache_mutex_;
    mutable std::map<unsigned, std::unique_ptr<Enumeration>> enumerations_;
};

/// All surjections [d] -> [k] in lexicographic order of their values.
std::vector<DeltaMorphism> surjections(unsigned d, unsigned k);

/// Unnormalized rational cochain: one value per simplex of its degree,
/// degenerate ones included.
class Cochain {
public:
    Cochain(SetPtr complex, unsigned degree);
    Cochain(SetPtr complex, unsigned degree, std::vector<Rational> values);

    /// The coaugmentation unit, 1 on every vertex.
    static Cochain unit(SetPtr complex);
    /// Values on the nondegenerate cells, zero on degenerate simplices.
    static Cochain normalized(SetPtr complex, unsigned degree, const std::vector<Rational>& cell_values);

    const SetPtr& complex() const { return complex_; }
    unsigned degree() const { return degree_; }
    const std::vector<Rational>& values() const { return values_; }
    const Rational& operator[](std::size_t index) const { return values_[index]; }
    const Rational& at(const Simplex& sigma) const;
    void set(std::size_t index, const Rational& v) { values_[index] = v; }

    bool is_zero() const;
    bool is_normalized() const;
    /// Values on the nondegenerate cells as a vector.
    linalg::Vector cell_vector() const;

    Cochain& operator+=(const Cochain& other);
    Cochain& operator-=(const Cochain& other);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Rational& s, Cochain a);
    Cochain operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const Cochain& a, const Cochain& b);

private:
    void check_compatible(const Cochain& other) const;

    SetPtr complex_;
    unsigned degree_;
    std::vector<Rational> values_;
};

Cochain coboundary(const Cochain& c);
/// (a u b)(sigma) = a(front p-face) * b(back q-face), where the front face
/// keeps vertices 0..p and the back face keeps p..p+q.
Cochain aw_cup(const Cochain& a, const Cochain& b);

struct SimplicialCohomology {
    unsigned degree = 0;
    std::size_t dimension = 0;
    std::vector<Cochain> representatives;
    linalg::Cohomology cohomology;
};

/// Cohomology of the normalized cochains. Representatives are normalized.
SimplicialCohomology simplicial_cohomology(const SetPtr& complex, unsigned p);
/// Class coordinates of a normalized cocycle in the representative basis.
linalg::Vector class_of(const SimplicialCohomology& h, const Cochain& cocycle);
/// Cohomology dimension of the full unnormalized cochain complex.
std::size_t unnormalized_cohomology_dimension(const SetPtr& complex, unsigned p);

/// Pullback of a cochain along a vertex map that is order preserving on
/// every simplex of `source`; both sets need vertex labels.
Cochain restrict_along(const Cochain& c, const SetPtr& source, const std::map<unsigned, unsigned>& vertex_map);
/// Restriction to a subcomplex sharing vertex labels.
Cochain restrict_to(const Cochain& c, const SetPtr& subcomplex);
/// Extends a cochain on a subcomplex by zero to the whole complex.
Cochain extend_by_zero(const Cochain& c, const SetPtr& complex);

/// Finite integer combination of simplices, keyed by simplex index.
class Chain {
public:
    Chain(SetPtr complex, unsigned degree) : complex_(std::move(complex)), degree_(degree) {}

    const SetPtr& complex() const { return complex_; }
    unsigned degree() const { return degree_; }
    const std::map<std::size_t, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(std::size_t index, const Integer& coefficient);
    void add(const Simplex& sigma, const Integer& coefficient);

    friend bool operator==(const Chain&, const Chain&);

private:
    SetPtr complex_;
    unsigned degree_;
    std::map<std::size_t, Integer> terms_;
};

/// Throws DegreeMismatch for a 0-chain.
Chain boundary(const Chain& z);
bool is_cycle(const Chain& z);
/// Throws DegreeMismatch or ComplexMismatch.
Rational pair(const Cochain& c, const Chain& z);

}  // namespace drcomp::simplicial
