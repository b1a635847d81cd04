#pragma once

#include "drcomp/polynomial.hpp"
#include "drcomp/simplicial.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace drcomp::forms {

using simplicial::Cochain;
using simplicial::DeltaMorphism;
using simplicial::SetPtr;

/// Differential form on the standard simplex Delta^n in the affine
/// coordinates t1..tn (vertex 0 at the origin, vertex i at e_i). Coefficients
/// are rational functions; the polynomial ones are the exact lane.
/// Degree -1 is allowed for the zero form only, as the target of the cone
/// homotopy on functions.
class PolyForm {
public:
    using Terms = std::map<IndexMask, RationalFunction>;

    PolyForm(unsigned n, int degree);
    PolyForm(unsigned n, int degree, const Terms& terms);

    static PolyForm scalar(unsigned n, const RationalFunction& f);
    /// The constant function c, the coaugmentation image of c.
    static PolyForm constant(unsigned n, const Rational& c);
    /// dt_{i1} ^ ... ^ dt_{ip} for the 1-based indices in `mask` bits 0..n-1.
    static PolyForm basis(unsigned n, IndexMask mask);
    /// Text like `t1*dt2 - t2*dt1` or `2/(1 + t1^2)*dt1`; the degree is read
    /// off the differentials unless the text is zero.
    static PolyForm parse(unsigned n, std::string_view text, std::optional<int> degree = std::nullopt);

    unsigned n() const { return n_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_polynomial() const;
    RationalFunction coefficient(IndexMask mask) const;
    /// Highest coefficient degree plus form degree; -1 for zero. Polynomial
    /// coefficients only.
    int weight() const;

    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator*(const Rational& c, const PolyForm& a);
    friend PolyForm operator*(const RationalFunction& f, const PolyForm& a);
    PolyForm operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const PolyForm& a, const PolyForm& b);

    /// Value of a 0-form at a vertex of Delta^n.
    Rational value_at_vertex(unsigned vertex) const;

    std::string to_string() const;

private:
    void check_same_shape(const PolyForm& o) const;
    unsigned n_;
    int degree_;
    Terms terms_;
};

/// Throws DimensionMismatch unless both live on the same simplex.
PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyForm differential(const PolyForm& a);

/// Pullback along the map Delta^m -> R^n whose coordinates are `images`
/// (functions of t1..tm).
PolyForm pullback(const PolyForm& a, unsigned m, std::span<const RationalFunction> images);
PolyForm pullback(const PolyForm& a, unsigned m, std::span<const Polynomial> images);
/// Affine coordinates of Delta^n pulled back along the affine map induced by
/// h: [m] -> [n].
std::vector<Polynomial> affine_images(const DeltaMorphism& h);
PolyForm pullback_delta(const DeltaMorphism& h, const PolyForm& a);

/// Gauss-Legendre rule on [0, 1]. Rules are cached and shared.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const QuadratureRule& gauss_legendre(unsigned order);

/// Positivity proof for a denominator on the closed simplex: in barycentric
/// coordinates, sign * q * (sum u)^power has nonnegative coefficients and a
/// positive coefficient on every pure power, which forces it to be positive
/// on the simplex.
struct DenominatorCertificate {
    int sign = 1;
    unsigned power = 0;
};
std::optional<DenominatorCertificate> certify_denominator(const Polynomial& q, unsigned n, unsigned max_power = 24);

/// Integral of a top-degree form with the orientation dt1^...^dtn.
/// Throws NotTopDegree or NonPolynomialCoefficient.
Rational integrate_exact(const PolyForm& a);

struct NumericIntegral {
    double value = 0;
    double error = 0;  ///< |Q_order - Q_{order+4}|
};
/// Duffy-collapsed tensor Gauss-Legendre quadrature. Throws NotTopDegree, or
/// DenominatorVanishes when a denominator cannot be certified positive.
NumericIntegral integrate_numeric(const PolyForm& a, unsigned order = 16);

/// An integral from either lane; `exact` is set for polynomial integrands.
struct Integral {
    std::optional<Rational> exact;
    double value = 0;
    double error = 0;
};
Integral integrate(const PolyForm& a, unsigned order = 16);

/// Cone contraction to vertex 0: kappa(f dt_I) = sum_k (-1)^k t_{i_k}
/// (int_0^1 s^(p-1) f(s t) ds) dt_{I - i_k}. Polynomial coefficients only.
PolyForm poincare_homotopy(const PolyForm& a);

/// Integration cochain on Delta[n]: tau(a)(beta) = integral of the pullback
/// of a along the simplex beta. Polynomial coefficients only.
Cochain tau(const PolyForm& a);
/// Value of tau(a) on a single simplex h: [p] -> [n], either lane.
Integral tau_value(const PolyForm& a, const DeltaMorphism& h, unsigned order = 16);

/// A compatible assignment of forms of one degree to the nondegenerate cells
/// of a simplicial set.
class FormsFamily {
public:
    /// forms[k][x] lives on Delta^k. Throws IncompatibleFamily when a face
    /// restriction disagrees with the form on the face.
    FormsFamily(SetPtr complex, int degree, std::vector<std::vector<PolyForm>> forms);

    static FormsFamily zero(SetPtr complex, int degree);
    /// Restrictions of a form on Delta^n to the cells of a subcomplex of
    /// Delta[n] with vertex labels in 0..n.
    static FormsFamily restriction(const PolyForm& a, const SetPtr& subcomplex);

    const SetPtr& complex() const { return complex_; }
    int degree() const { return degree_; }
    const PolyForm& form(unsigned k, std::size_t x) const { return forms_[k][x]; }
    const std::vector<std::vector<PolyForm>>& forms() const { return forms_; }
    /// The form attached to an arbitrary simplex, degenerate ones included.
    PolyForm form(const simplicial::Simplex& sigma) const;

    friend bool operator==(const FormsFamily&, const FormsFamily&);

private:
    SetPtr complex_;
    int degree_;
    std::vector<std::vector<PolyForm>> forms_;
};

FormsFamily wedge(const FormsFamily& a, const FormsFamily& b);
FormsFamily differential(const FormsFamily& a);
/// Integration cochain of a polynomial family.
Cochain tau_family(const FormsFamily& f);

struct FamilyCohomology {
    int degree = 0;
    unsigned cutoff = 0;
    std::size_t dimension = 0;
    std::vector<FormsFamily> representatives;
};
/// Cohomology of the compatible polynomial families of weight <= cutoff.
FamilyCohomology family_cohomology(const SetPtr& complex, int p, unsigned cutoff);

/// A polynomial form on Delta^n whose restriction to facet k is facets[k]
/// (facet k is opposite vertex k). Throws IncompatibleFamily when two facets
/// disagree on their common face.
PolyForm extend_from_boundary(unsigned n, int degree, const std::vector<PolyForm>& facets);
/// Same, for a family on the boundary complex of Delta[n].
PolyForm extend_from_boundary(const FormsFamily& boundary_family);

}  // namespace drcomp::forms
