#pragma once

#include "drcomp/groebner.hpp"
#include "drcomp/linalg.hpp"
#include "drcomp/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace drcomp {

class WeightTruncation;

/// A finitely presented commutative algebra Q[x_1..x_m] / I with a cached
/// reduced Groebner basis of I. Shared by every form living over it.
class FpAlgebra {
public:
    static std::shared_ptr<const FpAlgebra> create(std::vector<std::string> variables,
                                                   std::vector<Polynomial> relations,
                                                   const GroebnerOptions& options = {});
    static std::shared_ptr<const FpAlgebra> parse(std::vector<std::string> variables,
                                                  const std::vector<std::string>& relations);

    FpAlgebra(const FpAlgebra&) = delete;
    FpAlgebra& operator=(const FpAlgebra&) = delete;

    const std::vector<std::string>& variables() const { return variables_; }
    std::size_t nvars() const { return variables_.size(); }
    const std::vector<Polynomial>& relations() const { return relations_; }
    const std::vector<Polynomial>& groebner() const { return groebner_; }
    unsigned max_relation_degree() const;

    Polynomial reduce(const Polynomial& f) const { return normal_form(f, groebner_); }
    bool is_standard(const Monomial& m) const;
    /// Monomials outside the leading-term ideal, ascending degrevlex.
    std::vector<Monomial> standard_monomials(unsigned max_degree) const;

    /// Relation slack used by weight truncation (see WeightTruncation).
    unsigned default_slack() const { return 2 * max_relation_degree(); }

    /// Cached truncation data for p-forms of weight <= cutoff.
    std::shared_ptr<const WeightTruncation> truncation(int p, unsigned cutoff, unsigned slack) const;

private:
    FpAlgebra() = default;
    std::vector<std::string> variables_;
    std::vector<Polynomial> relations_;
    std::vector<Polynomial> groebner_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::tuple<int, unsigned, unsigned>, std::shared_ptr<const WeightTruncation>> cache_;
};

using AlgebraPtr = std::shared_ptr<const FpAlgebra>;

/// An element of Omega^p_{B|Q}: sum of normal-form coefficients times dx_S.
class AlgebraicForm {
public:
    using Terms = std::map<IndexMask, Polynomial>;

    AlgebraicForm(AlgebraPtr algebra, int degree);
    /// Coefficients are reduced to normal form; |S| must equal `degree`.
    AlgebraicForm(AlgebraPtr algebra, int degree, const Terms& raw);

    static AlgebraicForm scalar(AlgebraPtr algebra, const Polynomial& f);
    static AlgebraicForm parse(AlgebraPtr algebra, std::string_view text);

    const AlgebraPtr& algebra() const { return algebra_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// max(coefficient degree) + p; -1 for the zero form.
    int weight() const;

    AlgebraicForm& operator+=(const AlgebraicForm& o);
    AlgebraicForm& operator-=(const AlgebraicForm& o);
    friend AlgebraicForm operator+(AlgebraicForm a, const AlgebraicForm& b) { return a += b; }
    friend AlgebraicForm operator-(AlgebraicForm a, const AlgebraicForm& b) { return a -= b; }
    friend AlgebraicForm operator*(const Rational& c, AlgebraicForm a);
    friend AlgebraicForm operator*(const Polynomial& f, const AlgebraicForm& a);
    AlgebraicForm operator-() const;
    /// Literal equality of the stored expansions (not equality in Omega).
    friend bool operator==(const AlgebraicForm& a, const AlgebraicForm& b);

    std::string to_string() const;

private:
    void add_term(IndexMask s, const Polynomial& c);
    AlgebraPtr algebra_;
    int degree_;
    Terms terms_;
};

/// Omega^1 = (sum B dx_i) / (df_j): row j lists nf(df_j/dx_i).
struct KaehlerPresentation {
    std::vector<std::string> generators;
    std::vector<std::vector<Polynomial>> relations;
};

KaehlerPresentation kaehler_presentation(const FpAlgebra& algebra);

AlgebraicForm wedge(const AlgebraicForm& a, const AlgebraicForm& b);
AlgebraicForm differential(const AlgebraicForm& a);

/// Weight-truncated coordinates for p-forms. Coordinates are pairs
/// (index set, standard monomial) of weight <= cutoff, highest weight first.
/// The relation submodule is generated by m * df_j ^ dx_T with nominal weight
/// up to cutoff + slack and intersected with the weight <= cutoff space.
class WeightTruncation {
public:
    WeightTruncation(const FpAlgebra& algebra, int p, unsigned cutoff, unsigned slack);

    int degree() const { return p_; }
    unsigned cutoff() const { return cutoff_; }
    std::size_t dimension() const { return coords_.size(); }
    std::size_t relation_rank() const { return relations_.size(); }
    /// Dimension of the quotient by the relations.
    std::size_t quotient_dimension() const { return quotient_.size(); }

    /// Quotient coordinates of a form of weight <= cutoff.
    linalg::Vector quotient_coordinates(const AlgebraicForm& form) const;
    /// The canonical form with the given quotient coordinates.
    AlgebraicForm lift(const AlgebraPtr& algebra, const linalg::Vector& coords) const;
    /// Canonical representative modulo the truncated relations.
    AlgebraicForm reduce(const AlgebraicForm& form) const;

private:
    using SparseVector = std::map<std::size_t, Rational>;
    SparseVector to_sparse(const AlgebraicForm& form) const;
    void eliminate(SparseVector& v) const;

    int p_;
    unsigned cutoff_;
    std::vector<std::pair<IndexMask, Monomial>> coords_;
    std::map<std::pair<IndexMask, Monomial>, std::size_t> index_;
    std::vector<std::pair<std::size_t, SparseVector>> relations_;  // (pivot, reduced row)
    std::vector<std::size_t> quotient_;                            // non-pivot coordinates
    std::map<std::size_t, std::size_t> quotient_index_;
};

/// Canonical representative: normal-form coefficients, then the relation
/// submodule eliminated at the given weight cutoff (default: the form's weight).
AlgebraicForm reduce_form(const AlgebraicForm& form, std::optional<unsigned> cutoff = std::nullopt);
AlgebraicForm reduce_form(const AlgebraPtr& algebra, int degree, const AlgebraicForm::Terms& raw,
                          std::optional<unsigned> cutoff = std::nullopt);

/// Equality in Omega^p at the given cutoff (default: max weight of a, b).
bool equivalent(const AlgebraicForm& a, const AlgebraicForm& b, std::optional<unsigned> cutoff = std::nullopt);
bool is_closed(const AlgebraicForm& form, std::optional<unsigned> cutoff = std::nullopt);

struct TruncatedCohomology {
    int degree = 0;
    unsigned cutoff = 0;
    std::size_t dimension = 0;
    std::vector<AlgebraicForm> representatives;
    /// Dimensions at cutoff-1 and cutoff agree and the earlier classes survive.
    bool stabilized = false;
    std::vector<std::size_t> dimensions_by_cutoff;  ///< index k is cutoff p + k
};

/// H^p of the weight <= cutoff subcomplex. Representatives at each cutoff
/// extend those found at the previous one.
TruncatedCohomology truncated_cohomology(const AlgebraPtr& algebra, int p, unsigned cutoff,
                                         std::optional<unsigned> slack = std::nullopt);

}  // namespace drcomp
