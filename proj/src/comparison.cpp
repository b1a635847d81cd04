#include "drcomp/comparison.hpp"

#include "drcomp/errors.hpp"

#include <cmath>
#include <sstream>

namespace drcomp::comparison {

const char* lane_name(Lane lane) { return lane == Lane::exact ? "exact" : "numeric"; }

// ---- parametrized simplices ----------------------------------------------------

ParamSimplex::ParamSimplex(AlgebraPtr target, unsigned n, std::vector<RationalFunction> components)
    : target_(std::move(target)), n_(n), components_(std::move(components)) {
    if (!target_) throw InvalidSimplex("simplex without a target algebra");
    if (components_.size() != target_->nvars())
        throw DimensionMismatch("simplex has " + std::to_string(components_.size()) + " components, target has " +
                                std::to_string(target_->nvars()) + " variables");
    for (const auto& c : components_)
        if (c.nvars() != n_)
            throw DimensionMismatch("component in " + std::to_string(c.nvars()) + " variables on a " +
                                    std::to_string(n_) + "-simplex");
    lane_ = Lane::exact;
    for (const auto& c : components_)
        if (!c.is_polynomial()) lane_ = Lane::numeric;
    validation_ = validate_simplex(*this);
}

ParamSimplex ParamSimplex::parse(AlgebraPtr target, unsigned n, const std::vector<std::string>& components) {
    const auto names = simplex_coordinate_names(n);
    std::vector<RationalFunction> parsed;
    for (const auto& text : components) {
        RationalFunction f = parse_rational_function(text, names);
        parsed.push_back(f.nvars() == n ? f
                                        : RationalFunction(f.numerator().with_nvars(n), f.denominator().with_nvars(n)));
    }
    return ParamSimplex(std::move(target), n, std::move(parsed));
}

ParamSimplex ParamSimplex::constant(AlgebraPtr target, unsigned n, const std::vector<Rational>& point) {
    std::vector<RationalFunction> comps;
    for (const auto& c : point) comps.emplace_back(Polynomial(n, c));
    return ParamSimplex(std::move(target), n, std::move(comps));
}

ParamSimplex ParamSimplex::compose(const DeltaMorphism& h) const {
    if (h.target() != n_)
        throw DimensionMismatch("cannot compose a " + std::to_string(n_) + "-simplex with a map into [" +
                                std::to_string(h.target()) + "]");
    const auto images = forms::affine_images(h);
    std::vector<RationalFunction> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_) {
        RationalFunction s = c.substitute(images);
        if (s.nvars() != h.source())
            s = RationalFunction(s.numerator().with_nvars(h.source()), s.denominator().with_nvars(h.source()));
        comps.push_back(std::move(s));
    }
    return ParamSimplex(target_, h.source(), std::move(comps));
}

ParamSimplex ParamSimplex::face(unsigned i) const {
    if (n_ == 0) throw DimensionMismatch("a vertex has no faces");
    return compose(DeltaMorphism::face(n_, i));
}

std::string ParamSimplex::to_string() const {
    const auto names = simplex_coordinate_names(n_);
    std::string out = "(";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) out += ", ";
        out += format(components_[i], names);
    }
    return out + ")";
}

bool operator==(const ParamSimplex& a, const ParamSimplex& b) {
    return a.target_ == b.target_ && a.n_ == b.n_ && a.components_ == b.components_;
}

SimplexValidation validate_simplex(const ParamSimplex& sigma) {
    SimplexValidation out;
    const auto& algebra = *sigma.target();
    const auto names = simplex_coordinate_names(sigma.n());
    for (const auto& f : algebra.relations()) {
        const RationalFunction r = drcomp::compose(f, sigma.components());
        if (r.is_zero()) continue;
        out.valid = false;
        out.residuals.push_back(r.numerator());
        if (out.message.empty())
            out.message = "relation " + format(f, algebra.variables()) + " leaves residual " +
                          format(r.numerator(), names);
    }
    for (const auto& c : sigma.components()) {
        if (c.is_polynomial()) continue;
        if (forms::certify_denominator(c.denominator(), sigma.n())) continue;
        out.valid = false;
        if (out.message.empty())
            out.message = "denominator " + format(c.denominator(), names) + " is not certified positive";
    }
    return out;
}

// ---- mu and xi -------------------------------------------------------------------

PolyForm mu(const ParamSimplex& sigma, const AlgebraicForm& omega) {
    if (sigma.target() != omega.algebra()) throw AlgebraMismatch("form and simplex live over different algebras");
    if (!sigma.validation().valid) throw InvalidSimplex(sigma.to_string() + ": " + sigma.validation().message);
    const auto m = static_cast<unsigned>(sigma.target()->nvars());
    PolyForm::Terms terms;
    for (const auto& [s, c] : omega.terms()) terms.emplace(s, RationalFunction(c));
    const PolyForm ambient(m, omega.degree(), terms);
    if (sigma.lane() == Lane::exact) {
        std::vector<Polynomial> images;
        for (const auto& c : sigma.components()) images.push_back(c.to_polynomial());
        return forms::pullback(ambient, sigma.n(), std::span<const Polynomial>(images));
    }
    return forms::pullback(ambient, sigma.n(), std::span<const RationalFunction>(sigma.components()));
}

Period& Period::operator+=(const Period& o) {
    if (exact && o.exact)
        *exact += *o.exact;
    else
        exact.reset();
    value = exact ? exact->convert_to<double>() : value + o.value;
    error += o.error;
    return *this;
}

Period& Period::operator-=(const Period& o) {
    if (exact && o.exact)
        *exact -= *o.exact;
    else
        exact.reset();
    value = exact ? exact->convert_to<double>() : value - o.value;
    error += o.error;
    return *this;
}

Period operator*(const Period& a, const Period& b) {
    if (a.exact && b.exact) return Period::from_rational(*a.exact * *b.exact);
    return {std::nullopt, a.value * b.value,
            std::abs(a.value) * b.error + std::abs(b.value) * a.error + a.error * b.error};
}

Period operator*(const Integer& c, const Period& a) {
    if (a.exact) return Period::from_rational(Rational(c) * *a.exact);
    const double f = c.convert_to<double>();
    return {std::nullopt, f * a.value, std::abs(f) * a.error};
}

namespace {

void check_degree(const AlgebraicForm& omega, const ParamSimplex& sigma) {
    if (omega.degree() != static_cast<int>(sigma.n()))
        throw DegreeMismatch("a " + std::to_string(omega.degree()) + "-form cannot be integrated over a " +
                             std::to_string(sigma.n()) + "-simplex");
}

}  // namespace

Period xi(const AlgebraicForm& omega, const ParamSimplex& sigma, unsigned order) {
    check_degree(omega, sigma);
    return Period::from_integral(forms::integrate(mu(sigma, omega), order));
}

Period xi_via_tau(const AlgebraicForm& omega, const ParamSimplex& sigma, unsigned order) {
    check_degree(omega, sigma);
    return Period::from_integral(forms::tau_value(mu(sigma, omega), DeltaMorphism::identity(sigma.n()), order));
}

// ---- families --------------------------------------------------------------------

SingularFamily::SingularFamily(AlgebraPtr target, std::vector<ParamSimplex> simplices, std::vector<std::string> names)
    : target_(std::move(target)), simplices_(std::move(simplices)), names_(std::move(names)) {
    for (const auto& s : simplices_)
        if (s.target() != target_) throw AlgebraMismatch("family member over a different algebra");
    if (names_.empty())
        for (std::size_t i = 0; i < simplices_.size(); ++i) names_.push_back("s" + std::to_string(i));
    if (names_.size() != simplices_.size()) throw DimensionMismatch("one name per simplex is needed");
    faces_.resize(simplices_.size());
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        const unsigned n = simplices_[i].n();
        if (n == 0) continue;
        for (unsigned k = 0; k <= n; ++k) faces_[i].push_back(find(simplices_[i].face(k)));
    }
}

std::optional<std::size_t> SingularFamily::find(const ParamSimplex& sigma) const {
    for (std::size_t i = 0; i < simplices_.size(); ++i)
        if (simplices_[i] == sigma) return i;
    return std::nullopt;
}

std::optional<std::size_t> SingularFamily::find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::vector<std::size_t> SingularFamily::of_dimension(unsigned p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < simplices_.size(); ++i)
        if (simplices_[i].n() == p) out.push_back(i);
    return out;
}

std::size_t SingularFamily::require_face(std::size_t i, unsigned k) const {
    if (auto f = faces_[i][k]) return *f;
    throw FamilyNotClosed("face " + std::to_string(k) + " of " + names_[i] + " is missing: " +
                          simplices_[i].face(k).to_string());
}

std::size_t SingularFamily::require(std::size_t i, const DeltaMorphism& h) const {
    if (h.is_identity()) return i;
    if (h.source() + 1 == h.target() && h.is_injective())
        for (unsigned k = 0; k <= h.target(); ++k)
            if (h == DeltaMorphism::face(h.target(), k)) return require_face(i, k);
    const ParamSimplex s = simplices_[i].compose(h);
    if (auto f = find(s)) return *f;
    throw FamilyNotClosed("restriction of " + names_[i] + " is missing: " + s.to_string());
}

bool SingularFamily::is_closed_under_faces() const {
    for (const auto& row : faces_)
        for (const auto& f : row)
            if (!f) return false;
    return true;
}

const Period& FamilyCochain::at(std::size_t i) const {
    auto it = values.find(i);
    if (it == values.end())
        throw DegreeMismatch("cochain of degree " + std::to_string(degree) + " has no value on simplex " +
                             family->name(i));
    return it->second;
}

FamilyCochain xi_cochain(const AlgebraicForm& omega, const FamilyPtr& family, unsigned order) {
    if (omega.degree() < 0) throw DegreeMismatch("negative degree");
    FamilyCochain out{family, static_cast<unsigned>(omega.degree()), {}};
    for (std::size_t i : family->of_dimension(out.degree)) out.values.emplace(i, xi(omega, family->simplex(i), order));
    return out;
}

FamilyCochain family_unit(const FamilyPtr& family) {
    FamilyCochain out{family, 0, {}};
    for (std::size_t i : family->of_dimension(0)) out.values.emplace(i, Period::from_rational(1));
    return out;
}

FamilyCochain family_coboundary(const FamilyCochain& c) {
    const auto& fam = *c.family;
    FamilyCochain out{c.family, c.degree + 1, {}};
    for (std::size_t j : fam.of_dimension(c.degree + 1)) {
        Period sum = Period::from_rational(0);
        for (unsigned k = 0; k <= c.degree + 1; ++k) {
            const Period& v = c.at(fam.require_face(j, k));
            if (k % 2)
                sum -= v;
            else
                sum += v;
        }
        out.values.emplace(j, sum);
    }
    return out;
}

namespace {

Period cup_value(const FamilyCochain& a, const FamilyCochain& b, std::size_t i) {
    const auto& fam = *a.family;
    const unsigned n = a.degree + b.degree;
    const std::size_t front = fam.require(i, DeltaMorphism::interval(n, 0, a.degree));
    const std::size_t back = fam.require(i, DeltaMorphism::interval(n, a.degree, b.degree));
    return a.at(front) * b.at(back);
}

void check_same_family(const FamilyPtr& a, const FamilyPtr& b) {
    if (a != b) throw ComplexMismatch("cochains on different singular families");
}

}  // namespace

FamilyCochain singular_aw_cup(const FamilyCochain& a, const FamilyCochain& b) {
    check_same_family(a.family, b.family);
    FamilyCochain out{a.family, a.degree + b.degree, {}};
    for (std::size_t i : a.family->of_dimension(out.degree)) out.values.emplace(i, cup_value(a, b, i));
    return out;
}

// ---- chains ----------------------------------------------------------------------

void SingularChain::add(std::size_t i, const Integer& c) {
    if (family->simplex(i).n() != degree)
        throw DegreeMismatch(family->name(i) + " is not a " + std::to_string(degree) + "-simplex");
    auto [it, inserted] = terms.emplace(i, c);
    if (!inserted) it->second += c;
    if (it->second == 0) terms.erase(it);
}

SingularChain boundary(const SingularChain& z) {
    if (z.degree == 0) throw DegreeMismatch("a 0-chain has no boundary");
    SingularChain out{z.family, z.degree - 1, {}};
    for (const auto& [i, c] : z.terms)
        for (unsigned k = 0; k <= z.degree; ++k) out.add(z.family->require_face(i, k), k % 2 ? Integer(-c) : c);
    return out;
}

bool is_cycle(const SingularChain& z) { return z.degree == 0 || boundary(z).terms.empty(); }

Period pair(const FamilyCochain& c, const SingularChain& z) {
    check_same_family(c.family, z.family);
    if (c.degree != z.degree)
        throw DegreeMismatch("pairing a " + std::to_string(c.degree) + "-cochain with a " + std::to_string(z.degree) +
                             "-chain");
    Period sum = Period::from_rational(0);
    for (const auto& [i, k] : z.terms) sum += k * c.at(i);
    return sum;
}

// ---- comparison checks -----------------------------------------------------------

Period check_chain_map(const AlgebraicForm& omega, const ParamSimplex& sigma, unsigned order) {
    if (static_cast<int>(sigma.n()) != omega.degree() + 1)
        throw DegreeMismatch("chain map check needs a simplex one dimension above the form");
    Period out = xi(differential(omega), sigma, order);
    for (unsigned i = 0; i <= sigma.n(); ++i) {
        const Period v = xi(omega, sigma.face(i), order);
        if (i % 2)
            out += v;
        else
            out -= v;
    }
    return out;
}

PolyForm check_naturality(const ParamSimplex& sigma, const DeltaMorphism& h, const AlgebraicForm& omega) {
    return mu(sigma.compose(h), omega) - forms::pullback_delta(h, mu(sigma, omega));
}

MultiplicativityResult check_multiplicativity(const AlgebraicForm& w1, const AlgebraicForm& w2,
                                              const SingularChain& z, unsigned order) {
    if (w1.algebra() != w2.algebra() || w1.algebra() != z.family->target())
        throw AlgebraMismatch("forms and chain live over different algebras");
    if (w1.degree() < 0 || w2.degree() < 0 || static_cast<int>(z.degree) != w1.degree() + w2.degree())
        throw DegreeMismatch("chain degree must be the sum of the form degrees");
    if (!is_cycle(z)) throw NotACycle("the chain has nonzero boundary");
    if (!is_closed(w1)) throw NotClosedForm(w1.to_string() + " is not closed");
    if (!is_closed(w2)) throw NotClosedForm(w2.to_string() + " is not closed");

    const auto& fam = *z.family;
    const auto p = static_cast<unsigned>(w1.degree());
    const auto q = static_cast<unsigned>(w2.degree());
    const AlgebraicForm prod = wedge(w1, w2);
    MultiplicativityResult out{Period::from_rational(0), Period::from_rational(0), {}};
    for (const auto& [i, c] : z.terms) {
        out.lhs += c * xi(prod, fam.simplex(i), order);
        const std::size_t front = fam.require(i, DeltaMorphism::interval(p + q, 0, p));
        const std::size_t back = fam.require(i, DeltaMorphism::interval(p + q, p, q));
        out.rhs += c * (xi(w1, fam.simplex(front), order) * xi(w2, fam.simplex(back), order));
    }
    out.residual = out.lhs - out.rhs;
    return out;
}

// ---- fixtures --------------------------------------------------------------------

namespace fixtures {

std::vector<RationalFunction> circle_arc(unsigned quarter_turns, std::size_t nvars, std::size_t var) {
    const Polynomial t = Polynomial::variable(nvars, var);
    const Polynomial one(nvars, 1);
    const Polynomial den = one + t * t;
    RationalFunction x(one - t * t, den);
    RationalFunction y(Rational(2) * t, den);
    for (unsigned k = 0; k < quarter_turns % 4; ++k) {
        RationalFunction nx = -y;
        y = x;
        x = nx;
    }
    return {x, y};
}

std::vector<Rational> circle_point(unsigned quarter_turns) {
    switch (quarter_turns % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

namespace {

std::vector<RationalFunction> embed_constants(const std::vector<Rational>& values, unsigned n) {
    std::vector<RationalFunction> out;
    for (const auto& v : values) out.emplace_back(Polynomial(n, v));
    return out;
}

std::vector<RationalFunction> concat(std::vector<RationalFunction> a, const std::vector<RationalFunction>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// arc k on a simplex of dimension n, with the arc parameter replaced by `param`.
std::vector<RationalFunction> arc_along(unsigned k, const Polynomial& param) {
    const std::vector<Polynomial> images{param};
    std::vector<RationalFunction> out;
    for (const auto& c : circle_arc(k)) out.push_back(c.substitute(images));
    return out;
}

void circle_members(const AlgebraPtr& target, const std::vector<Rational>& extra, const std::string& suffix,
                    std::vector<ParamSimplex>& simplices, std::vector<std::string>& names) {
    for (unsigned k = 0; k < 4; ++k) {
        std::vector<Rational> pt = circle_point(k);
        pt.insert(pt.end(), extra.begin(), extra.end());
        simplices.push_back(ParamSimplex::constant(target, 0, pt));
        names.push_back("v" + std::to_string(k) + suffix);
    }
    for (unsigned k = 0; k < 4; ++k) {
        simplices.emplace_back(target, 1, concat(circle_arc(k), embed_constants(extra, 1)));
        names.push_back("arc" + std::to_string(k) + suffix);
    }
}

}  // namespace

Fixture circle(const AlgebraPtr& target, const std::vector<Rational>& extra) {
    std::vector<ParamSimplex> simplices;
    std::vector<std::string> names;
    circle_members(target, extra, "", simplices, names);
    auto family = std::make_shared<const SingularFamily>(target, std::move(simplices), std::move(names));
    SingularChain loop{family, 1, {}};
    for (unsigned k = 0; k < 4; ++k) loop.add(*family->find("arc" + std::to_string(k)), 1);
    return {family, {loop}};
}

Fixture circle_times_points(const AlgebraPtr& target) {
    std::vector<ParamSimplex> simplices;
    std::vector<std::string> names;
    circle_members(target, {0}, "_s0", simplices, names);
    circle_members(target, {1}, "_s1", simplices, names);
    auto family = std::make_shared<const SingularFamily>(target, std::move(simplices), std::move(names));
    std::vector<SingularChain> cycles;
    for (const char* s : {"_s0", "_s1"}) {
        SingularChain loop{family, 1, {}};
        for (unsigned k = 0; k < 4; ++k) loop.add(*family->find("arc" + std::to_string(k) + s), 1);
        cycles.push_back(std::move(loop));
    }
    return {family, cycles};
}

Fixture torus(const AlgebraPtr& target) {
    std::vector<ParamSimplex> simplices;
    std::vector<std::string> names;
    const Polynomial s = Polynomial::variable(1, 0);
    const Polynomial t1 = Polynomial::variable(2, 0);
    const Polynomial t2 = Polynomial::variable(2, 1);
    auto tag = [](const char* kind, unsigned i, unsigned j) {
        return std::string(kind) + std::to_string(i) + std::to_string(j);
    };
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) {
            std::vector<Rational> pt = circle_point(i);
            const auto b = circle_point(j);
            pt.insert(pt.end(), b.begin(), b.end());
            simplices.push_back(ParamSimplex::constant(target, 0, pt));
            names.push_back(tag("pt", i, j));
        }
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) {
            simplices.emplace_back(target, 1, concat(arc_along(i, s), embed_constants(circle_point(j), 1)));
            names.push_back(tag("h", i, j));
            simplices.emplace_back(target, 1, concat(embed_constants(circle_point(i), 1), arc_along(j, s)));
            names.push_back(tag("v", i, j));
            simplices.emplace_back(target, 1, concat(arc_along(i, s), arc_along(j, s)));
            names.push_back(tag("d", i, j));
        }
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) {
            simplices.emplace_back(target, 2, concat(arc_along(i, t1 + t2), arc_along(j, t2)));
            names.push_back(tag("upper", i, j));
            simplices.emplace_back(target, 2, concat(arc_along(i, t2), arc_along(j, t1 + t2)));
            names.push_back(tag("lower", i, j));
        }
    auto family = std::make_shared<const SingularFamily>(target, std::move(simplices), std::move(names));
    SingularChain fundamental{family, 2, {}};
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) {
            fundamental.add(*family->find(tag("upper", i, j)), 1);
            fundamental.add(*family->find(tag("lower", i, j)), -1);
        }
    return {family, {fundamental}};
}

}  // namespace fixtures

}  // namespace drcomp::comparison
