#pragma once

#include "drcomp/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drcomp {

using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial operator+(const Monomial& a, const Monomial& b);
Monomial operator-(const Monomial& a, const Monomial& b);  ///< requires divides(b, a)

/// Degree-reverse-lexicographic strict weak order: higher total degree is
/// larger; ties are broken by the last variable, smaller exponent is larger.
struct DegRevLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial over Q in a fixed number of variables. Terms are
/// kept in ascending degrevlex order so the leading term is the last one.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, DegRevLex>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    Polynomial(std::size_t nvars, const Rational& c);

    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial monomial(Monomial m, const Rational& c = 1);

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Rational constant_term() const;
    /// -1 for the zero polynomial.
    int total_degree() const;
    unsigned degree_in(std::size_t var) const;

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    Rational coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    Polynomial operator-() const;
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    Polynomial pow(unsigned k) const;
    Polynomial times_term(const Monomial& m, const Rational& c) const;
    Polynomial derivative(std::size_t var) const;
    /// Composition: variable i is replaced by images[i]. All images share one
    /// variable count, which becomes the result's.
    Polynomial substitute(std::span<const Polynomial> images) const;

    double evaluate(std::span<const double> point) const;
    Rational evaluate(std::span<const Rational> point) const;

    /// Same polynomial re-embedded in `nvars` variables (extra ones unused).
    Polynomial with_nvars(std::size_t nvars) const;

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

/// a / b when b divides a exactly.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Quotient of two polynomials. A constant denominator is always folded into
/// the numerator; otherwise the denominator is scaled to be monic.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(std::size_t nvars) : num_(nvars), den_(nvars, 1) {}
    RationalFunction(Polynomial num);  // NOLINT: polynomials are rational functions
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// Throws NonPolynomialCoefficient unless the denominator divides exactly.
    Polynomial to_polynomial() const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction operator-() const;
    /// Exact equality by cross-multiplication.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);

    RationalFunction derivative(std::size_t var) const;
    RationalFunction substitute(std::span<const Polynomial> images) const;
    double evaluate(std::span<const double> point) const;

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

/// Substitutes rational functions into a polynomial, sharing one denominator:
/// components with equal denominators are raised only to the needed power.
RationalFunction compose(const Polynomial& p, std::span<const RationalFunction> components);

// ---- text syntax -------------------------------------------------------

/// Index sets of differentials are bitmasks over variable positions.
using IndexMask = std::uint32_t;

/// Parsed expression: a sum of rational-function coefficients times wedge
/// monomials in the differentials `d<name>`.
using FormExpression = std::map<IndexMask, RationalFunction>;

/// Sign of dx_S ^ dx_T relative to dx_{S|T}; zero when S and T overlap.
int wedge_sign(IndexMask s, IndexMask t);
inline int mask_size(IndexMask s) { return __builtin_popcount(s); }

/// Grammar: sums/differences of products/quotients of powers of atoms; atoms
/// are numbers, variable names, `d<name>` differentials and parenthesized
/// expressions. `^` is a power when its right operand is an integer literal
/// and the left operand has no differentials, and a wedge otherwise.
FormExpression parse_expression(std::string_view text, std::span<const std::string> names,
                                bool allow_differentials);
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);
RationalFunction parse_rational_function(std::string_view text, std::span<const std::string> names);

std::string format(const Polynomial& p, std::span<const std::string> names);
std::string format(const RationalFunction& f, std::span<const std::string> names);
std::string format_rational_coefficient(const Rational& c);
/// `coeff*dx^dy` summands, highest index set first. `names` name the
/// variables whose differentials appear.
std::string format_form(const FormExpression& terms, std::span<const std::string> names);

/// t1..tn, the affine coordinate names on a standard simplex.
std::vector<std::string> simplex_coordinate_names(std::size_t n);

}  // namespace drcomp
