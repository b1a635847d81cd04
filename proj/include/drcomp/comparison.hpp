#pragma once

#include "drcomp/derham.hpp"
#include "drcomp/simplex_forms.hpp"
#include "drcomp/simplicial.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace drcomp::comparison {

using forms::PolyForm;
using simplicial::DeltaMorphism;

/// The real points of Spec B, one ambient coordinate per generator of B.
struct VarietyPresentation {
    AlgebraPtr algebra;
    std::size_t ambient_dimension() const { return algebra->nvars(); }
};

enum class Lane { exact, numeric };
const char* lane_name(Lane lane);

/// Outcome of checking that a parametrized simplex lies on the variety.
struct SimplexValidation {
    bool valid = true;
    /// Numerators of f_j(sigma) for the generators f_j that do not vanish.
    std::vector<Polynomial> residuals;
    std::string message;
};

/// A singular simplex Delta^n -> Spec_R B given by rational functions of
/// t1..tn. Polynomial components put it in the exact lane.
class ParamSimplex {
public:
    ParamSimplex(AlgebraPtr target, unsigned n, std::vector<RationalFunction> components);
    /// Components in the rational-function syntax over t1..tn.
    static ParamSimplex parse(AlgebraPtr target, unsigned n, const std::vector<std::string>& components);
    /// The constant simplex at a point.
    static ParamSimplex constant(AlgebraPtr target, unsigned n, const std::vector<Rational>& point);

    unsigned n() const { return n_; }
    const AlgebraPtr& target() const { return target_; }
    const std::vector<RationalFunction>& components() const { return components_; }
    Lane lane() const { return lane_; }
    const SimplexValidation& validation() const { return validation_; }

    /// sigma o h for h: [m] -> [n].
    ParamSimplex compose(const DeltaMorphism& h) const;
    ParamSimplex face(unsigned i) const;

    std::string to_string() const;
    friend bool operator==(const ParamSimplex& a, const ParamSimplex& b);

private:
    AlgebraPtr target_;
    unsigned n_;
    std::vector<RationalFunction> components_;
    Lane lane_;
    SimplexValidation validation_;
};

/// Exact on-variety check plus positivity certificates for the denominators.
SimplexValidation validate_simplex(const ParamSimplex& sigma);

/// The substitution morphism x_i -> sigma_i, dx_i -> d sigma_i. Throws
/// InvalidSimplex or AlgebraMismatch.
PolyForm mu(const ParamSimplex& sigma, const AlgebraicForm& omega);

/// A number produced by one of the lanes: exact when every ingredient was
/// exact, otherwise a float with an error estimate.
struct Period {
    std::optional<Rational> exact;
    double value = 0;
    double error = 0;

    static Period from_rational(const Rational& r) { return {r, r.convert_to<double>(), 0}; }
    static Period from_integral(const forms::Integral& i) { return {i.exact, i.value, i.error}; }
    bool is_exact() const { return exact.has_value(); }

    Period& operator+=(const Period& o);
    Period& operator-=(const Period& o);
    friend Period operator+(Period a, const Period& b) { return a += b; }
    friend Period operator-(Period a, const Period& b) { return a -= b; }
    friend Period operator*(const Period& a, const Period& b);
    friend Period operator*(const Integer& c, const Period& a);
};

/// xi(omega)(sigma) = integral over Delta^p of mu(sigma)(omega).
Period xi(const AlgebraicForm& omega, const ParamSimplex& sigma, unsigned order = 16);
/// The same value through the other side of the diagram: tau(mu(sigma)(omega))
/// evaluated on the identity simplex of Delta[p].
Period xi_via_tau(const AlgebraicForm& omega, const ParamSimplex& sigma, unsigned order = 16);

/// Finite set of singular simplices with a face table found by exact lookup.
/// Faces that are not listed are recorded as missing and only reported when
/// an operation needs them.
class SingularFamily {
public:
    SingularFamily(AlgebraPtr target, std::vector<ParamSimplex> simplices, std::vector<std::string> names = {});

    const AlgebraPtr& target() const { return target_; }
    std::size_t size() const { return simplices_.size(); }
    const ParamSimplex& simplex(std::size_t i) const { return simplices_[i]; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> find(const ParamSimplex& sigma) const;
    std::optional<std::size_t> find(const std::string& name) const;
    /// Indices of the simplices of dimension p, in family order.
    std::vector<std::size_t> of_dimension(unsigned p) const;

    std::optional<std::size_t> face(std::size_t i, unsigned k) const { return faces_[i][k]; }
    /// Throws FamilyNotClosed naming the missing face.
    std::size_t require_face(std::size_t i, unsigned k) const;
    /// Index of simplex i composed with h; throws FamilyNotClosed.
    std::size_t require(std::size_t i, const DeltaMorphism& h) const;
    bool is_closed_under_faces() const;

private:
    AlgebraPtr target_;
    std::vector<ParamSimplex> simplices_;
    std::vector<std::string> names_;
    std::vector<std::vector<std::optional<std::size_t>>> faces_;
};

using FamilyPtr = std::shared_ptr<const SingularFamily>;

/// Cochain on a singular family: values on its simplices of one degree.
struct FamilyCochain {
    FamilyPtr family;
    unsigned degree = 0;
    std::map<std::size_t, Period> values;

    const Period& at(std::size_t i) const;
};

FamilyCochain xi_cochain(const AlgebraicForm& omega, const FamilyPtr& family, unsigned order = 16);
FamilyCochain family_unit(const FamilyPtr& family);
/// Coboundary on the simplices of degree p + 1; throws FamilyNotClosed.
FamilyCochain family_coboundary(const FamilyCochain& c);
/// (a u b)(sigma) = a(sigma o front) * b(sigma o back); throws
/// FamilyNotClosed naming the first missing front or back face.
FamilyCochain singular_aw_cup(const FamilyCochain& a, const FamilyCochain& b);

/// Integer chain on a singular family.
struct SingularChain {
    FamilyPtr family;
    unsigned degree = 0;
    std::map<std::size_t, Integer> terms;

    void add(std::size_t i, const Integer& c);
};

SingularChain boundary(const SingularChain& z);
bool is_cycle(const SingularChain& z);
/// Throws DegreeMismatch or ComplexMismatch.
Period pair(const FamilyCochain& c, const SingularChain& z);

/// xi(d omega)(sigma) - sum_i (-1)^i xi(omega)(face_i sigma).
Period check_chain_map(const AlgebraicForm& omega, const ParamSimplex& sigma, unsigned order = 16);
/// mu(sigma o h)(omega) - h^* mu(sigma)(omega); exactly zero when natural.
PolyForm check_naturality(const ParamSimplex& sigma, const DeltaMorphism& h, const AlgebraicForm& omega);

struct MultiplicativityResult {
    Period lhs;       ///< <xi(w1 ^ w2), z>
    Period rhs;       ///< <xi(w1) u xi(w2), z>
    Period residual;  ///< lhs - rhs
};
/// Throws NotACycle, NotClosedForm or FamilyNotClosed.
MultiplicativityResult check_multiplicativity(const AlgebraicForm& w1, const AlgebraicForm& w2,
                                              const SingularChain& z,
                                              unsigned order = 16);

namespace fixtures {

/// Quarter circle ((1-t^2)/(1+t^2), 2t/(1+t^2)) turned by k quarter turns,
/// in the variable t of a space with `nvars` variables (t is variable `var`).
std::vector<RationalFunction> circle_arc(unsigned quarter_turns, std::size_t nvars = 1, std::size_t var = 0);
/// The point arc(0) turned by k quarter turns.
std::vector<Rational> circle_point(unsigned quarter_turns);

struct Fixture {
    FamilyPtr family;
    std::vector<SingularChain> cycles;
};

/// Four arcs and four vertices on x^2 + y^2 = 1; extra coordinates of the
/// target (beyond x, y) are held at `extra`. One cycle: the loop.
Fixture circle(const AlgebraPtr& target, const std::vector<Rational>& extra = {});
/// Both loops of circle x two points (variables x, y, s): cycles s = 0, s = 1.
Fixture circle_times_points(const AlgebraPtr& target);
/// The 4 x 4 triangulated torus on x^2 + y^2 = 1, z^2 + w^2 = 1 with its
/// fundamental cycle (32 triangles).
Fixture torus(const AlgebraPtr& target);

}  // namespace fixtures

}  // namespace drcomp::comparison
