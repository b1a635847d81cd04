#include "drcomp/simplex_forms.hpp"

#include "drcomp/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

namespace drcomp::forms {

namespace {

IndexMask full_mask(unsigned n) { return n >= 32 ? ~IndexMask{0} : (IndexMask{1} << n) - 1; }

std::vector<unsigned> mask_indices(IndexMask s) {
    std::vector<unsigned> out;
    for (unsigned i = 0; s >> i; ++i)
        if (s >> i & 1u) out.push_back(i);
    return out;
}

Rational factorial(unsigned k) {
    Rational r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

// All monomials in `nvars` variables of total degree <= max_degree.
std::vector<Monomial> monomials_up_to(std::size_t nvars, int max_degree) {
    std::vector<Monomial> out;
    if (max_degree < 0) return out;
    Monomial m(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == nvars) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[i] = static_cast<std::uint32_t>(e);
            self(self, i + 1, left - e);
        }
        m[i] = 0;
    };
    rec(rec, 0, max_degree);
    return out;
}

}  // namespace

// ---- PolyForm ----------------------------------------------------------------

PolyForm::PolyForm(unsigned n, int degree) : n_(n), degree_(degree) {
    if (degree < -1) throw DimensionMismatch("form degree below -1");
}

PolyForm::PolyForm(unsigned n, int degree, const Terms& terms) : PolyForm(n, degree) {
    for (const auto& [mask, f] : terms) {
        if (f.is_zero()) continue;
        if (mask & ~full_mask(n) || mask_size(mask) != degree)
            throw DimensionMismatch("differential index set does not fit a degree " + std::to_string(degree) +
                                    " form on a " + std::to_string(n) + "-simplex");
        if (f.nvars() != n) throw DimensionMismatch("coefficient has the wrong number of variables");
        terms_.emplace(mask, f);
    }
}

PolyForm PolyForm::scalar(unsigned n, const RationalFunction& f) { return PolyForm(n, 0, {{0, f}}); }

PolyForm PolyForm::constant(unsigned n, const Rational& c) { return scalar(n, RationalFunction(Polynomial(n, c))); }

PolyForm PolyForm::basis(unsigned n, IndexMask mask) {
    return PolyForm(n, mask_size(mask), {{mask, RationalFunction(Polynomial(n, 1))}});
}

PolyForm PolyForm::parse(unsigned n, std::string_view text, std::optional<int> degree) {
    const auto names = simplex_coordinate_names(n);
    const FormExpression e = parse_expression(text, names, true);
    std::optional<int> seen;
    for (const auto& [mask, f] : e) {
        if (f.is_zero()) continue;
        if (seen && *seen != mask_size(mask)) throw ParseError("form mixes degrees: " + std::string(text));
        seen = mask_size(mask);
    }
    if (degree && seen && *degree != *seen) throw ParseError("form degree differs from the declared one");
    return PolyForm(n, degree ? *degree : seen.value_or(0), e);
}

bool PolyForm::is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_polynomial(); });
}

RationalFunction PolyForm::coefficient(IndexMask mask) const {
    const auto it = terms_.find(mask);
    return it == terms_.end() ? RationalFunction(n_) : it->second;
}

int PolyForm::weight() const {
    int w = -1;
    for (const auto& [mask, f] : terms_) w = std::max(w, f.to_polynomial().total_degree() + degree_);
    return w;
}

void PolyForm::check_same_shape(const PolyForm& o) const {
    if (n_ != o.n_) throw DimensionMismatch("forms live on simplices of different dimension");
    if (degree_ != o.degree_) throw DegreeMismatch("forms have different degrees");
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
    check_same_shape(o);
    for (const auto& [mask, f] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(mask, f);
        if (!inserted) it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) { return *this += -o; }

PolyForm operator*(const Rational& c, const PolyForm& a) {
    PolyForm out(a.n_, a.degree_);
    if (c == 0) return out;
    for (const auto& [mask, f] : a.terms_) out.terms_.emplace(mask, RationalFunction(Polynomial(a.n_, c)) * f);
    return out;
}

PolyForm operator*(const RationalFunction& g, const PolyForm& a) {
    PolyForm out(a.n_, a.degree_);
    for (const auto& [mask, f] : a.terms_) {
        RationalFunction h = g * f;
        if (!h.is_zero()) out.terms_.emplace(mask, std::move(h));
    }
    return out;
}

bool operator==(const PolyForm& a, const PolyForm& b) {
    if (a.n_ != b.n_ || a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
        if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
}

Rational PolyForm::value_at_vertex(unsigned vertex) const {
    if (degree_ != 0) throw DegreeMismatch("only functions have vertex values");
    if (vertex > n_) throw DimensionMismatch("vertex index out of range");
    std::vector<Rational> point(n_, Rational(0));
    if (vertex > 0) point[vertex - 1] = 1;
    const RationalFunction f = coefficient(0);
    const Rational den = f.denominator().evaluate(std::span<const Rational>(point));
    if (den == 0) throw DenominatorVanishes("denominator vanishes at vertex " + std::to_string(vertex));
    return f.numerator().evaluate(std::span<const Rational>(point)) / den;
}

std::string PolyForm::to_string() const { return format_form(terms_, simplex_coordinate_names(n_)); }

// ---- algebra ---------------------------------------------------------------

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.n() != b.n()) throw DimensionMismatch("wedge of forms on different simplices");
    PolyForm::Terms out;
    if (a.degree() >= 0 && b.degree() >= 0)
        for (const auto& [s, f] : a.terms())
            for (const auto& [t, g] : b.terms()) {
                const int sign = wedge_sign(s, t);
                if (sign == 0) continue;
                RationalFunction h = f * g;
                if (sign < 0) h = -h;
                auto [it, inserted] = out.try_emplace(s | t, h);
                if (!inserted) it->second += h;
            }
    return PolyForm(a.n(), a.degree() + b.degree() < -1 ? -1 : a.degree() + b.degree(), out);
}

PolyForm differential(const PolyForm& a) {
    PolyForm::Terms out;
    for (const auto& [s, f] : a.terms())
        for (unsigned i = 0; i < a.n(); ++i) {
            const IndexMask bit = IndexMask{1} << i;
            if (s & bit) continue;
            RationalFunction h = f.derivative(i);
            if (h.is_zero()) continue;
            if (wedge_sign(bit, s) < 0) h = -h;
            auto [it, inserted] = out.try_emplace(s | bit, h);
            if (!inserted) it->second += h;
        }
    return PolyForm(a.n(), a.degree() + 1, out);
}

namespace {

// Shared pullback: `coefficient` maps a coefficient on Delta^n to one on
// Delta^m, `d_images[i]` is the differential of the i-th coordinate image.
PolyForm pullback_impl(const PolyForm& a, unsigned m, const std::vector<PolyForm>& d_images,
                       const std::function<RationalFunction(const RationalFunction&)>& coefficient) {
    if (d_images.size() != a.n()) throw DimensionMismatch("pullback needs one image per coordinate");
    PolyForm out(m, a.degree());
    if (a.degree() < 0) return out;
    std::map<IndexMask, PolyForm> frames;
    for (const auto& [s, f] : a.terms()) {
        auto it = frames.find(s);
        if (it == frames.end()) {
            PolyForm w = PolyForm::constant(m, 1);
            for (unsigned i : mask_indices(s)) w = wedge(w, d_images[i]);
            it = frames.emplace(s, std::move(w)).first;
        }
        if (it->second.is_zero()) continue;
        RationalFunction c = coefficient(f);
        // a pullback from Delta^0 leaves constants in zero variables
        if (c.nvars() != m) c = RationalFunction(c.numerator().with_nvars(m), c.denominator().with_nvars(m));
        out += c * it->second;
    }
    return out;
}

PolyForm differential_of(unsigned m, const RationalFunction& f) { return differential(PolyForm::scalar(m, f)); }

}  // namespace

PolyForm pullback(const PolyForm& a, unsigned m, std::span<const RationalFunction> images) {
    for (const auto& g : images)
        if (g.nvars() != m) throw DimensionMismatch("pullback image has the wrong number of variables");
    std::vector<PolyForm> d;
    for (const auto& g : images) d.push_back(differential_of(m, g));
    return pullback_impl(a, m, d, [&](const RationalFunction& f) {
        return compose(f.numerator(), images) / compose(f.denominator(), images);
    });
}

PolyForm pullback(const PolyForm& a, unsigned m, std::span<const Polynomial> images) {
    for (const auto& g : images)
        if (g.nvars() != m) throw DimensionMismatch("pullback image has the wrong number of variables");
    std::vector<PolyForm> d;
    for (const auto& g : images) d.push_back(differential_of(m, RationalFunction(g)));
    return pullback_impl(a, m, d, [&](const RationalFunction& f) { return f.substitute(images); });
}

std::vector<Polynomial> affine_images(const DeltaMorphism& h) {
    const unsigned m = h.source(), n = h.target();
    // barycentric coordinates of Delta^m in its affine coordinates
    std::vector<Polynomial> u;
    Polynomial u0(m, 1);
    for (unsigned i = 0; i < m; ++i) u0 -= Polynomial::variable(m, i);
    u.push_back(u0);
    for (unsigned i = 0; i < m; ++i) u.push_back(Polynomial::variable(m, i));
    std::vector<Polynomial> images(n, Polynomial(m));
    for (unsigned i = 0; i <= m; ++i)
        if (h(i) > 0) images[h(i) - 1] += u[i];
    return images;
}

PolyForm pullback_delta(const DeltaMorphism& h, const PolyForm& a) {
    if (h.target() != a.n()) throw DimensionMismatch("morphism target differs from the form's simplex");
    if (h.is_identity()) return a;
    const auto images = affine_images(h);
    return pullback(a, h.source(), std::span<const Polynomial>(images));
}

// ---- integration -----------------------------------------------------------

const QuadratureRule& gauss_legendre(unsigned order) {
    if (order == 0) throw DimensionMismatch("quadrature order must be positive");
    static std::mutex mutex;
    static std::map<unsigned, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (slot) return *slot;

    // Golub-Welsch for the starting values, then Newton on P_order.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (unsigned k = 1; k < order; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k - 1, k) = jacobi(k, k - 1) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    auto rule = std::make_unique<QuadratureRule>();
    for (unsigned i = 0; i < order; ++i) {
        double x = solver.eigenvalues()(i);
        double dp = 0;
        for (int iter = 0; iter < 3; ++iter) {
            double p0 = 1, p1 = x;
            for (unsigned k = 1; k < order; ++k) {
                const double p2 = ((2.0 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            x -= p1 / dp;
        }
        rule->nodes.push_back((x + 1) / 2);
        rule->weights.push_back(1.0 / ((1 - x * x) * dp * dp));
    }
    slot = std::move(rule);
    return *slot;
}

std::optional<DenominatorCertificate> certify_denominator(const Polynomial& q, unsigned n, unsigned max_power) {
    if (q.is_zero()) return std::nullopt;
    if (q.is_constant()) return DenominatorCertificate{q.constant_term() > 0 ? 1 : -1, 0};
    const int degree = q.total_degree();
    const std::size_t nb = n + 1;
    Polynomial sum(nb);
    for (std::size_t i = 0; i < nb; ++i) sum += Polynomial::variable(nb, i);
    std::vector<Polynomial> sum_powers{Polynomial(nb, 1)};
    for (int k = 1; k <= degree; ++k) sum_powers.push_back(sum_powers.back() * sum);
    Polynomial h(nb);
    for (const auto& [m, c] : q.terms()) {
        Monomial mu(nb, 0);
        for (unsigned i = 0; i < n; ++i) mu[i + 1] = m[i];
        h += Polynomial::monomial(mu, c) * sum_powers[static_cast<std::size_t>(degree) - total_degree(m)];
    }
    const auto certified = [&](const Polynomial& p, int sign) {
        const int top = p.total_degree();
        for (const auto& [m, c] : p.terms())
            if (sign * c < 0) return false;
        for (std::size_t i = 0; i < nb; ++i) {
            Monomial pure(nb, 0);
            pure[i] = static_cast<std::uint32_t>(top);
            if (sign * p.coefficient(pure) <= 0) return false;
        }
        return true;
    };
    for (unsigned k = 0; k <= max_power; ++k) {
        for (int sign : {1, -1})
            if (certified(h, sign)) return DenominatorCertificate{sign, k};
        h *= sum;
    }
    return std::nullopt;
}

Rational integrate_exact(const PolyForm& a) {
    if (a.degree() != static_cast<int>(a.n()))
        throw NotTopDegree("integrand has degree " + std::to_string(a.degree()) + " on a " + std::to_string(a.n()) +
                           "-simplex");
    const Polynomial f = a.coefficient(full_mask(a.n())).to_polynomial();
    Rational total = 0;
    for (const auto& [m, c] : f.terms()) {
        Rational v = c;
        for (auto e : m) v *= factorial(e);
        total += v / factorial(a.n() + total_degree(m));
    }
    return total;
}

namespace {

double quadrature(const RationalFunction& f, unsigned n, unsigned order) {
    if (n == 0) {
        const std::vector<double> none;
        return f.evaluate(std::span<const double>(none));
    }
    const auto& rule = gauss_legendre(order);
    std::vector<unsigned> idx(n, 0);
    std::vector<double> t(n);
    double total = 0;
    while (true) {
        // collapsed coordinates: t_k = s_k * prod_{j<k} (1 - s_j)
        double scale = 1, weight = 1, jacobian = 1;
        for (unsigned k = 0; k < n; ++k) {
            const double s = rule.nodes[idx[k]];
            t[k] = s * scale;
            weight *= rule.weights[idx[k]];
            jacobian *= scale;
            scale *= 1 - s;
        }
        total += weight * jacobian * f.evaluate(std::span<const double>(t));
        unsigned k = 0;
        while (k < n && ++idx[k] == order) idx[k++] = 0;
        if (k == n) break;
    }
    return total;
}

}  // namespace

NumericIntegral integrate_numeric(const PolyForm& a, unsigned order) {
    if (a.degree() != static_cast<int>(a.n()))
        throw NotTopDegree("integrand has degree " + std::to_string(a.degree()) + " on a " + std::to_string(a.n()) +
                           "-simplex");
    const RationalFunction f = a.coefficient(full_mask(a.n()));
    if (!f.is_polynomial() && !certify_denominator(f.denominator(), a.n()))
        throw DenominatorVanishes("cannot certify " + format(f.denominator(), simplex_coordinate_names(a.n())) +
                                  " positive on the simplex");
    const double lo = quadrature(f, a.n(), order);
    const double hi = quadrature(f, a.n(), order + 4);
    return {lo, std::abs(lo - hi)};
}

Integral integrate(const PolyForm& a, unsigned order) {
    if (a.is_polynomial()) {
        const Rational v = integrate_exact(a);
        return {v, v.convert_to<double>(), 0};
    }
    const auto r = integrate_numeric(a, order);
    return {std::nullopt, r.value, r.error};
}

// ---- homotopy and tau --------------------------------------------------------

PolyForm poincare_homotopy(const PolyForm& a) {
    const int p = a.degree();
    if (p < 0) throw DegreeMismatch("the cone homotopy is defined on forms of degree >= 0");
    PolyForm::Terms out;
    if (p == 0) return PolyForm(a.n(), -1);
    for (const auto& [s, f] : a.terms()) {
        const Polynomial g = f.to_polynomial();
        const auto idx = mask_indices(s);
        for (const auto& [m, c] : g.terms()) {
            const Rational factor = c / Rational(static_cast<int>(total_degree(m)) + p);
            for (std::size_t k = 0; k < idx.size(); ++k) {
                Monomial mk = m;
                ++mk[idx[k]];
                const Polynomial term = Polynomial::monomial(mk, k % 2 ? -factor : factor);
                const IndexMask rest = s & ~(IndexMask{1} << idx[k]);
                auto [it, inserted] = out.try_emplace(rest, RationalFunction(term));
                if (!inserted) it->second += RationalFunction(term);
            }
        }
    }
    return PolyForm(a.n(), p - 1, out);
}

Cochain tau(const PolyForm& a) {
    if (a.degree() < 0) throw DegreeMismatch("tau needs a form of degree >= 0");
    const auto k = simplicial::FiniteSimplicialSet::standard_simplex(a.n());
    const auto p = static_cast<unsigned>(a.degree());
    const auto& list = k->simplices(p);
    std::vector<Rational> values;
    values.reserve(list.size());
    for (const auto& s : list) values.push_back(integrate_exact(pullback_delta(DeltaMorphism(p, a.n(), k->vertices(s)), a)));
    return Cochain(k, p, std::move(values));
}

Integral tau_value(const PolyForm& a, const DeltaMorphism& h, unsigned order) {
    return integrate(pullback_delta(h, a), order);
}

// ---- families ----------------------------------------------------------------

FormsFamily::FormsFamily(SetPtr complex, int degree, std::vector<std::vector<PolyForm>> forms)
    : complex_(std::move(complex)), degree_(degree), forms_(std::move(forms)) {
    const auto& k = *complex_;
    if (forms_.size() != static_cast<std::size_t>(k.dimension() + 1))
        throw IncompatibleFamily("family needs forms for every dimension of the simplicial set");
    for (unsigned d = 0; d < forms_.size(); ++d) {
        if (forms_[d].size() != k.cell_count(d)) throw IncompatibleFamily("family needs one form per cell");
        for (const auto& f : forms_[d])
            if (f.n() != d || f.degree() != degree_)
                throw IncompatibleFamily("form on a " + std::to_string(d) + "-cell has the wrong shape");
    }
    for (unsigned d = 1; d < forms_.size(); ++d)
        for (std::size_t x = 0; x < forms_[d].size(); ++x)
            for (unsigned i = 0; i <= d; ++i)
                if (!(pullback_delta(DeltaMorphism::face(d, i), forms_[d][x]) == form(k.cell_face(d, x, i))))
                    throw IncompatibleFamily("face " + std::to_string(i) + " of cell " + std::to_string(d) + ":" +
                                             std::to_string(x) + " disagrees with the form on that face");
}

FormsFamily FormsFamily::zero(SetPtr complex, int degree) {
    std::vector<std::vector<PolyForm>> forms;
    for (int d = 0; d <= complex->dimension(); ++d)
        forms.emplace_back(complex->cell_count(static_cast<unsigned>(d)), PolyForm(static_cast<unsigned>(d), degree));
    return FormsFamily(std::move(complex), degree, std::move(forms));
}

FormsFamily FormsFamily::restriction(const PolyForm& a, const SetPtr& subcomplex) {
    std::vector<std::vector<PolyForm>> forms;
    for (int d = 0; d <= subcomplex->dimension(); ++d) {
        forms.emplace_back();
        for (std::size_t x = 0; x < subcomplex->cell_count(static_cast<unsigned>(d)); ++x)
            forms.back().push_back(pullback_delta(
                DeltaMorphism(static_cast<unsigned>(d), a.n(), subcomplex->cell_vertices(static_cast<unsigned>(d), x)), a));
    }
    return FormsFamily(subcomplex, a.degree(), std::move(forms));
}

PolyForm FormsFamily::form(const simplicial::Simplex& sigma) const {
    return pullback_delta(sigma.degeneracy, forms_[sigma.cell_dim][sigma.cell]);
}

bool operator==(const FormsFamily& a, const FormsFamily& b) {
    return a.complex_ == b.complex_ && a.degree_ == b.degree_ && a.forms_ == b.forms_;
}

namespace {

template <class Op>
FormsFamily cellwise(const FormsFamily& a, int degree, Op op) {
    std::vector<std::vector<PolyForm>> forms;
    for (std::size_t d = 0; d < a.forms().size(); ++d) {
        forms.emplace_back();
        for (std::size_t x = 0; x < a.forms()[d].size(); ++x) forms.back().push_back(op(d, x));
    }
    return FormsFamily(a.complex(), degree, std::move(forms));
}

}  // namespace

FormsFamily wedge(const FormsFamily& a, const FormsFamily& b) {
    if (a.complex() != b.complex()) throw ComplexMismatch("families live on different simplicial sets");
    return cellwise(a, a.degree() + b.degree(),
                    [&](std::size_t d, std::size_t x) { return wedge(a.forms()[d][x], b.forms()[d][x]); });
}

FormsFamily differential(const FormsFamily& a) {
    return cellwise(a, a.degree() + 1, [&](std::size_t d, std::size_t x) { return differential(a.forms()[d][x]); });
}

Cochain tau_family(const FormsFamily& f) {
    if (f.degree() < 0) throw DegreeMismatch("tau needs a family of degree >= 0");
    const auto p = static_cast<unsigned>(f.degree());
    const auto& list = f.complex()->simplices(p);
    std::vector<Rational> values;
    values.reserve(list.size());
    for (const auto& s : list) values.push_back(integrate_exact(f.form(s)));
    return Cochain(f.complex(), p, std::move(values));
}

namespace {

// Coordinates of polynomial families of weight <= cutoff, before imposing
// compatibility: one per (cell, index set, monomial).
class FamilyCoordinates {
public:
    using Key = std::tuple<unsigned, std::size_t, IndexMask, Monomial>;

    FamilyCoordinates(const simplicial::FiniteSimplicialSet& k, int p, unsigned cutoff) : p_(p) {
        if (p < 0) return;
        for (int d = p; d <= k.dimension(); ++d) {
            const auto dim = static_cast<unsigned>(d);
            const auto monos = monomials_up_to(dim, static_cast<int>(cutoff) - p);
            for (std::size_t x = 0; x < k.cell_count(dim); ++x)
                for (IndexMask s = 0; s <= full_mask(dim); ++s) {
                    if (mask_size(s) != p) continue;
                    for (const auto& m : monos) {
                        index_.emplace(Key{dim, x, s, m}, keys_.size());
                        keys_.push_back({dim, x, s, m});
                    }
                }
        }
    }

    std::size_t size() const { return keys_.size(); }
    const Key& key(std::size_t i) const { return keys_[i]; }
    std::size_t index(const Key& k) const { return index_.at(k); }

    PolyForm basis_form(std::size_t i) const {
        const auto& [d, x, s, m] = keys_[i];
        return PolyForm(d, p_, {{s, RationalFunction(Polynomial::monomial(m))}});
    }

    FormsFamily family(const SetPtr& complex, const linalg::Vector& v) const {
        std::vector<std::vector<PolyForm>> forms;
        for (int d = 0; d <= complex->dimension(); ++d)
            forms.emplace_back(complex->cell_count(static_cast<unsigned>(d)), PolyForm(static_cast<unsigned>(d), p_));
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            const Rational& c = v(static_cast<Eigen::Index>(i));
            if (c == 0) continue;
            const auto& [d, x, s, m] = keys_[i];
            forms[d][x] += PolyForm(d, p_, {{s, RationalFunction(Polynomial::monomial(m, c))}});
        }
        return FormsFamily(complex, p_, std::move(forms));
    }

private:
    int p_;
    std::vector<Key> keys_;
    std::map<Key, std::size_t> index_;
};

// Rows express face compatibility; the kernel is the space of families.
linalg::SparseMatrix compatibility_matrix(const simplicial::FiniteSimplicialSet& k, const FamilyCoordinates& coords) {
    std::map<std::tuple<unsigned, std::size_t, unsigned, IndexMask, Monomial>, std::size_t> rows;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
    const auto emit = [&](unsigned d, std::size_t x, unsigned i, const PolyForm& f, std::size_t col, int sign) {
        for (const auto& [s, g] : f.terms()) {
            const Polynomial poly = g.to_polynomial();
            for (const auto& [m, c] : poly.terms()) {
                const auto [it, inserted] = rows.try_emplace({d, x, i, s, m}, rows.size());
                entries.emplace_back(it->second, col, sign > 0 ? c : Rational(-c));
            }
        }
    };
    for (std::size_t col = 0; col < coords.size(); ++col) {
        const auto& [d, x, s, m] = coords.key(col);
        const PolyForm b = coords.basis_form(col);
        // as the cell itself: its faces
        for (unsigned i = 0; d > 0 && i <= d; ++i) emit(d, x, i, pullback_delta(DeltaMorphism::face(d, i), b), col, 1);
        // as the face of a higher cell
        for (int e = static_cast<int>(d) + 1; e <= k.dimension(); ++e) {
            const auto de = static_cast<unsigned>(e);
            for (std::size_t y = 0; y < k.cell_count(de); ++y)
                for (unsigned i = 0; i <= de; ++i) {
                    const auto& f = k.cell_face(de, y, i);
                    if (f.cell_dim == d && f.cell == x) emit(de, y, i, pullback_delta(f.degeneracy, b), col, -1);
                }
        }
    }
    linalg::SparseMatrix out(rows.size(), coords.size());
    for (const auto& [r, c, v] : entries) out.add(r, c, v);
    return out;
}

linalg::SparseMatrix differential_matrix(const FamilyCoordinates& from, const FamilyCoordinates& to) {
    linalg::SparseMatrix out(to.size(), from.size());
    for (std::size_t col = 0; col < from.size(); ++col) {
        const auto& key = from.key(col);
        const PolyForm db = differential(from.basis_form(col));
        for (const auto& [s, g] : db.terms()) {
            const Polynomial poly = g.to_polynomial();
            for (const auto& [m, c] : poly.terms())
                out.add(to.index({std::get<0>(key), std::get<1>(key), s, m}), col, c);
        }
    }
    return out;
}

}  // namespace

FamilyCohomology family_cohomology(const SetPtr& complex, int p, unsigned cutoff) {
    const auto& k = *complex;
    const FamilyCoordinates here(k, p, cutoff), below(k, p - 1, cutoff), above(k, p + 1, cutoff);

    linalg::SparseMatrix d_prev(here.size(), 0);
    if (p > 0) {
        const auto families = linalg::kernel_image(compatibility_matrix(k, below)).kernel;
        const auto d = differential_matrix(below, here);
        std::vector<linalg::Vector> cols;
        for (const auto& b : families) cols.push_back(d * b);
        d_prev = linalg::SparseMatrix::from_columns(here.size(), cols);
    }
    const auto d = differential_matrix(here, above);
    const auto c = compatibility_matrix(k, here);
    linalg::SparseMatrix d_next(d.rows() + c.rows(), here.size());
    for (const auto& [r, col, v] : d.entries()) d_next.add(r, col, v);
    for (const auto& [r, col, v] : c.entries()) d_next.add(d.rows() + r, col, v);

    const auto h = linalg::cohomology_pair(d_prev, d_next);
    FamilyCohomology out{p, cutoff, h.dimension(), {}};
    for (const auto& r : h.representatives()) out.representatives.push_back(here.family(complex, r));
    return out;
}

// ---- extension ---------------------------------------------------------------

PolyForm extend_from_boundary(unsigned n, int degree, const std::vector<PolyForm>& facets) {
    if (n == 0) throw DimensionMismatch("Delta^0 has no boundary");
    if (facets.size() != n + 1) throw IncompatibleFamily("need one form per facet");
    for (const auto& f : facets)
        if (f.n() != n - 1 || f.degree() != degree) throw IncompatibleFamily("facet form has the wrong shape");
    // facet j and facet k (j < k) meet in the face missing both vertices
    for (unsigned k = 1; n >= 2 && k <= n; ++k)
        for (unsigned j = 0; j < k; ++j)
            if (!(pullback_delta(DeltaMorphism::face(n - 1, j), facets[k]) ==
                  pullback_delta(DeltaMorphism::face(n - 1, k - 1), facets[j])))
                throw IncompatibleFamily("facets " + std::to_string(j) + " and " + std::to_string(k) +
                                         " disagree on their common face");

    // barycentric coordinates of Delta^n
    std::vector<Polynomial> u;
    Polynomial u0(n, 1);
    for (unsigned i = 0; i < n; ++i) u0 -= Polynomial::variable(n, i);
    u.push_back(u0);
    for (unsigned i = 0; i < n; ++i) u.push_back(Polynomial::variable(n, i));

    PolyForm result(n, degree);
    for (unsigned k = 0; k <= n; ++k) {
        const PolyForm error = facets[k] - pullback_delta(DeltaMorphism::face(n, k), result);
        if (error.is_zero()) continue;
        // cone from vertex k: project radially onto facet k, then damp by
        // (1 - u_k)^N so the correction is polynomial and vanishes where the
        // earlier facets already agree
        const Polynomial away = Polynomial(n, 1) - u[k];
        std::vector<RationalFunction> projection;
        for (unsigned j = 1; j < n; ++j) projection.emplace_back(u[j < k ? j : j + 1], away);
        const PolyForm cone = pullback(error, n, std::span<const RationalFunction>(projection));
        int power = 1;
        for (const auto& [s, f] : cone.terms()) power = std::max(power, f.denominator().total_degree());
        const PolyForm damped = RationalFunction(away.pow(static_cast<unsigned>(power))) * cone;
        PolyForm::Terms poly;
        for (const auto& [s, f] : damped.terms()) poly.emplace(s, RationalFunction(f.to_polynomial()));
        result += PolyForm(n, degree, poly);
    }
    return result;
}

PolyForm extend_from_boundary(const FormsFamily& family) {
    const auto& k = *family.complex();
    if (!k.has_vertex_labels() || k.dimension() < 0) throw IncompatibleFamily("family is not on a simplex boundary");
    const auto n = static_cast<unsigned>(k.dimension() + 1);
    if (k.cell_count(n - 1) != n + 1) throw IncompatibleFamily("family is not on the boundary of Delta[" + std::to_string(n) + "]");
    std::vector<PolyForm> facets;
    for (unsigned v = 0; v <= n; ++v) {
        std::vector<unsigned> verts;
        for (unsigned j = 0; j <= n; ++j)
            if (j != v) verts.push_back(j);
        const auto cell = k.find(verts);
        if (!cell) throw IncompatibleFamily("family is not on the boundary of Delta[" + std::to_string(n) + "]");
        facets.push_back(family.form(*cell));
    }
    return extend_from_boundary(n, family.degree(), facets);
}

}  // namespace drcomp::forms
