// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include "scenario.hpp"
#include "test_support.hpp"

#include "drcomp/comparison.hpp"
#include "drcomp/derham.hpp"
#include "drcomp/errors.hpp"
#include "drcomp/simplex_forms.hpp"
#include "drcomp/simplicial.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

using namespace drcomp;
using namespace drcomp::comparison;
using drcomp::testing::Rng;
using forms::PolyForm;
using simplicial::Cochain;
using simplicial::FiniteSimplicialSet;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

AlgebraicForm F(const AlgebraPtr& a, const char* text) { return AlgebraicForm::parse(a, text); }

AlgebraicForm random_algebraic_form(Rng& rng, const AlgebraPtr& a, int p, unsigned max_degree) {
    AlgebraicForm::Terms raw;
    for (IndexMask s = 0; s < (IndexMask{1} << a->nvars()); ++s)
        if (mask_size(s) == p) raw.emplace(s, testing::random_polynomial(rng, a->nvars(), max_degree, 3));
    return AlgebraicForm(a, p, raw);
}

PolyForm random_poly_form(Rng& rng, unsigned n, int p, unsigned max_degree) {
    PolyForm::Terms raw;
    for (IndexMask s = 0; s < (IndexMask{1} << n); ++s)
        if (mask_size(s) == p) raw.emplace(s, RationalFunction(testing::random_polynomial(rng, n, max_degree, 3)));
    return PolyForm(n, p, raw);
}

ParamSimplex random_simplex(Rng& rng, const AlgebraPtr& a, unsigned n) {
    std::vector<RationalFunction> comps;
    for (std::size_t i = 0; i < a->nvars(); ++i) comps.emplace_back(testing::random_polynomial(rng, n, 2, 3));
    return ParamSimplex(a, n, comps);
}

DeltaMorphism random_morphism(Rng& rng, unsigned source, unsigned target) {
    std::uniform_int_distribution<unsigned> pick(0, target);
    std::vector<unsigned> v(source + 1);
    for (auto& x : v) x = pick(rng);
    std::sort(v.begin(), v.end());
    return {source, target, v};
}

Cochain random_cochain(Rng& rng, const simplicial::SetPtr& K, unsigned p) {
    std::vector<Rational> v(K->simplex_count(p));
    for (auto& x : v) x = testing::random_rational(rng);
    return Cochain(K, p, v);
}

// 1. two points ---------------------------------------------------------------------

Outcome two_points() {
    Outcome o;
    const auto b = FpAlgebra::parse({"x"}, {"x^2 - 1"});
    const auto h0 = truncated_cohomology(b, 0, 2);
    const auto h1 = truncated_cohomology(b, 1, 2);
    o.require(h0.dimension == 2 && h0.stabilized, "H^0 is not 2 or not stabilized at N = 2");
    o.require(h1.dimension == 0, "H^1 is not 0");
    const std::vector<AlgebraicForm> e{F(b, "(1 + x)/2"), F(b, "(1 - x)/2")};
    const std::vector<ParamSimplex> pts{ParamSimplex::constant(b, 0, {1}), ParamSimplex::constant(b, 0, {-1})};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const Period v = xi(e[i], pts[j]);
            o.require(v.exact && *v.exact == (i == j ? 1 : 0), "idempotent pairing table is not the identity");
        }
    auto family = std::make_shared<const SingularFamily>(b, pts, std::vector<std::string>{"plus", "minus"});
    for (std::size_t k = 0; k < 2; ++k) {
        SingularChain z{family, 0, {}};
        z.add(k, 1);
        for (const auto& w1 : e)
            for (const auto& w2 : e) {
                const auto r = check_multiplicativity(w1, w2, z);
                o.require(r.residual.exact && *r.residual.exact == 0, "multiplicativity residual is not exactly 0");
            }
    }
    o.detail = o.pass ? "H^0 = 2 (stabilized), H^1 = 0, identity table, residual 0" : o.detail;
    return o;
}

// 2. Poincare lemma -----------------------------------------------------------------

Outcome poincare() {
    Outcome o;
    const auto line = FpAlgebra::parse({"x"}, {});
    for (unsigned n = 2; n <= 6; ++n) o.require(truncated_cohomology(line, 1, n).dimension == 0, "H^1(Q[x]) != 0");
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
        const int p = static_cast<int>(rng() % (n + 1));
        const auto a = random_poly_form(rng, n, p, 6);
        PolyForm lhs = forms::poincare_homotopy(forms::differential(a));
        PolyForm rhs = a;
        if (p > 0)
            lhs += forms::differential(forms::poincare_homotopy(a));
        else
            rhs -= PolyForm::constant(n, a.value_at_vertex(0));
        o.require(lhs == rhs, "homotopy identity fails on " + a.to_string());
    }
    if (o.pass) o.detail = "H^1(Q[x]) = 0 for N = 2..6, identity exact on 50 forms";
    return o;
}

// 3. Stokes ---------------------------------------------------------------------------

Outcome stokes() {
    Outcome o;
    const auto plane = FpAlgebra::parse({"x", "y"}, {});
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const unsigned n = 1 + static_cast<unsigned>(k % 2);
        const auto s = random_simplex(rng, plane, n);
        const auto w = random_algebraic_form(rng, plane, static_cast<int>(n) - 1, 3);
        const Period r = check_chain_map(w, s);
        o.require(r.exact && *r.exact == 0, "nonzero exact residual");
    }
    const auto c = FpAlgebra::parse({"x", "y"}, {"x^2 + y^2 - 1"});
    double worst = 0;
    for (const char* text : {"x", "y^3 - x*y", "x^2*y + 2"})
        for (unsigned k = 0; k < 4; ++k) {
            const Period r = check_chain_map(F(c, text), ParamSimplex(c, 1, fixtures::circle_arc(k)));
            worst = std::max(worst, std::abs(r.value));
        }
    o.require(worst < 1e-10, "arc residual " + std::to_string(worst));
    if (o.pass) {
        std::ostringstream s;
        s << "50 exact residuals 0, arc residual " << worst;
        o.detail = s.str();
    }
    return o;
}

// 4. naturality ------------------------------------------------------------------------

Outcome naturality() {
    Outcome o;
    const auto space = FpAlgebra::parse({"x", "y", "z"}, {});
    Rng rng(4);
    for (int k = 0; k < 30; ++k) {
        const unsigned n = 1 + static_cast<unsigned>(k % 3);
        const auto s = random_simplex(rng, space, n);
        const auto h = random_morphism(rng, static_cast<unsigned>(rng() % (n + 2)), n);
        const auto w = random_algebraic_form(rng, space, k % 3, 2);
        o.require(check_naturality(s, h, w).is_zero(), "mu(sigma o h) != h^* mu(sigma)");
    }
    if (o.pass) o.detail = "30 random triples exact";
    return o;
}

// 5. circle pairing -----------------------------------------------------------------

Outcome circle_pairing() {
    Outcome o;
    const auto c = FpAlgebra::parse({"x", "y"}, {"x^2 + y^2 - 1"});
    const auto fx = fixtures::circle(c);
    const auto w = F(c, "x*dy - y*dx");
    // each quarter arc pulls omega back to 2/(1 + t^2) dt, whose integral is 2 atan(1)
    const double per_arc = 2 * std::atan(1.0);
    for (auto i : fx.family->of_dimension(1))
        o.require(std::abs(xi(w, fx.family->simplex(i), 16).value - per_arc) < 1e-12, "arc value off");
    const Period v = pair(xi_cochain(w, fx.family, 16), fx.cycles[0]);
    o.require(std::abs(v.value - 4 * per_arc) < 1e-8, "pairing " + std::to_string(v.value));
    if (o.pass) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "pairing %.12f, |error| %.1e", v.value, std::abs(v.value - 2 * pi));
        o.detail = buf;
    }
    return o;
}

// 6. circle x two points ------------------------------------------------------------

Outcome circle_x_points() {
    Outcome o;
    const auto a = FpAlgebra::parse({"x", "y", "s"}, {"x^2 + y^2 - 1", "s^2 - s"});
    const auto fx = fixtures::circle_times_points(a);
    const auto s = F(a, "s");
    const auto w = F(a, "x*dy - y*dx");
    const auto r0 = check_multiplicativity(s, w, fx.cycles[0]);
    const auto r1 = check_multiplicativity(s, w, fx.cycles[1]);
    o.require(std::abs(r0.residual.value) < 1e-8 && std::abs(r1.residual.value) < 1e-8, "residual too large");
    o.require(std::abs(r0.lhs.value) < 1e-8, "s = 0 pairing is not 0");
    o.require(std::abs(r1.lhs.value - 2 * pi) < 1e-8, "s = 1 pairing is not 2 pi");
    if (o.pass) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "pairings %.10f and %.10f, residuals %.1e, %.1e", r0.lhs.value, r1.lhs.value,
                      std::abs(r0.residual.value), std::abs(r1.residual.value));
        o.detail = buf;
    }
    return o;
}

// 7. torus ---------------------------------------------------------------------------

Outcome torus() {
    Outcome o;
    const auto a = FpAlgebra::parse({"x", "y", "z", "w"}, {"x^2 + y^2 - 1", "z^2 + w^2 - 1"});
    const auto fx = fixtures::torus(a);
    o.require(fx.family->size() == 96 && fx.cycles[0].terms.size() == 32, "fixture shape");
    const auto r = check_multiplicativity(F(a, "x*dy - y*dx"), F(a, "z*dw - w*dz"), fx.cycles[0]);
    o.require(std::abs(r.residual.value) < 1e-6, "residual " + std::to_string(r.residual.value));
    o.require(std::abs(r.lhs.value - 39.4784176) < 1e-4, "lhs " + std::to_string(r.lhs.value));
    if (o.pass) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "lhs %.7f, rhs %.7f, residual %.1e", r.lhs.value, r.rhs.value,
                      std::abs(r.residual.value));
        o.detail = buf;
    }
    return o;
}

// 8. tau -----------------------------------------------------------------------------

Outcome tau_behavior() {
    Outcome o;
    const auto alpha = PolyForm::parse(2, "t1");
    const auto beta = PolyForm::parse(2, "dt1");
    const Cochain lhs = forms::tau(forms::wedge(alpha, beta));
    const Cochain rhs = simplicial::aw_cup(forms::tau(alpha), forms::tau(beta));
    o.require(!(lhs == rhs), "no cochain-level witness");
    const auto edge = *lhs.complex()->find({0, 1});
    // integral of t dt over [0, 1] against alpha(vertex 0) * integral of dt
    o.require(lhs.at(edge) == Rational(1, 2) && rhs.at(edge) == 0, "witness values on [0,1]");

    const auto K = FiniteSimplicialSet::boundary_complex(2);
    const unsigned N = 3;
    std::vector<forms::FamilyCohomology> fam;
    std::vector<simplicial::SimplicialCohomology> sim;
    for (unsigned p = 0; p <= 1; ++p) {
        fam.push_back(forms::family_cohomology(K, static_cast<int>(p), N));
        sim.push_back(simplicial::simplicial_cohomology(K, p));
        const auto prev = forms::family_cohomology(K, static_cast<int>(p), N - 1);
        o.require(fam[p].dimension == 1 && sim[p].dimension == 1, "dimensions are not (1, 1)");
        o.require(prev.dimension == fam[p].dimension, "truncation not stabilized");
        const auto cls = simplicial::class_of(sim[p], forms::tau_family(fam[p].representatives[0]));
        o.require(!linalg::is_zero(cls), "tau kills a generator");
    }
    for (unsigned p = 0; p <= 1; ++p)
        for (unsigned q = 0; p + q <= 1; ++q)
            for (const auto& x : fam[p].representatives)
                for (const auto& y : fam[q].representatives) {
                    const auto l = simplicial::class_of(sim[p + q], forms::tau_family(forms::wedge(x, y)));
                    const auto r = simplicial::class_of(
                        sim[p + q], simplicial::aw_cup(forms::tau_family(x), forms::tau_family(y)));
                    o.require(l == r, "not multiplicative on cohomology");
                }
    if (o.pass) o.detail = "witness on [0,1]: 1/2 vs 0; boundary of Delta[2]: (1,1) = (1,1), multiplicative";
    return o;
}

// 9. AW laws -------------------------------------------------------------------------

Outcome aw_laws() {
    Outcome o;
    const auto K = FiniteSimplicialSet::standard_simplex(3);
    Rng rng(9);
    const Cochain unit = Cochain::unit(K);
    for (int k = 0; k < 20; ++k) {
        const unsigned p = rng() % 2, q = rng() % 2, r = rng() % 2;
        const auto a = random_cochain(rng, K, p);
        const auto b = random_cochain(rng, K, q);
        const auto c = random_cochain(rng, K, r);
        using simplicial::aw_cup;
        using simplicial::coboundary;
        o.require(aw_cup(aw_cup(a, b), c) == aw_cup(a, aw_cup(b, c)), "associativity");
        o.require(aw_cup(unit, a) == a && aw_cup(a, unit) == a, "unit");
        const Cochain tail = aw_cup(a, coboundary(b));
        const Cochain expect = p % 2 ? aw_cup(coboundary(a), b) - tail : aw_cup(coboundary(a), b) + tail;
        o.require(coboundary(aw_cup(a, b)) == expect, "Leibniz");
    }
    bool witness = false;
    for (int k = 0; k < 100 && !witness; ++k) {
        const auto a = random_cochain(rng, K, 1);
        const auto b = random_cochain(rng, K, 1);
        witness = !(simplicial::aw_cup(a, b) == -simplicial::aw_cup(b, a));
    }
    o.require(witness, "no non-commutativity witness");
    if (o.pass) o.detail = "20 random triples exact, witness found";
    return o;
}

// 10. extension ----------------------------------------------------------------------

Outcome extension() {
    Outcome o;
    Rng rng(10);
    for (unsigned n : {2u, 3u}) {
        for (int k = 0; k < 20; ++k) {
            const int p = static_cast<int>(rng() % n);
            const auto global = random_poly_form(rng, n, p, 3);
            Polynomial bubble(n - 1, 1), u0(n - 1, 1);
            for (unsigned j = 0; j + 1 < n; ++j) {
                bubble *= Polynomial::variable(n - 1, j);
                u0 -= Polynomial::variable(n - 1, j);
            }
            bubble *= u0;
            std::vector<PolyForm> facets;
            for (unsigned f = 0; f <= n; ++f)
                facets.push_back(forms::pullback_delta(DeltaMorphism::face(n, f), global) +
                                 RationalFunction(bubble) * random_poly_form(rng, n - 1, p, 2));
            const auto e = forms::extend_from_boundary(n, p, facets);
            o.require(e.is_polynomial(), "extension is not polynomial");
            for (unsigned f = 0; f <= n; ++f)
                o.require(forms::pullback_delta(DeltaMorphism::face(n, f), e) == facets[f], "round trip fails");
        }
    }
    if (o.pass) o.detail = "20 families each on the boundaries of Delta[2], Delta[3]";
    return o;
}

// 11. determinism --------------------------------------------------------------------

Outcome determinism() {
    Outcome o;
    std::vector<std::string> reports;
    for (int run = 0; run < 2; ++run) {
        const auto path = (std::filesystem::temp_directory_path() / ("drcomp_acceptance_" + std::to_string(run) + ".json")).string();
        const char* argv[] = {"drcomp-check", "--builtin", "all", "--report", path.c_str()};
        std::ostringstream out, err;
        const int code = cli::run_cli(5, argv, out, err);
        o.require(code == 0, "corpus run exited with " + std::to_string(code));
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        reports.push_back(buf.str());
    }
    o.require(!reports[0].empty() && reports[0] == reports[1], "reports differ");
    if (o.pass) o.detail = "two corpus runs, " + std::to_string(reports[0].size()) + " identical bytes";
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "two points", 1, two_points},
        {2, "Poincare lemma", 5, poincare},
        {3, "Stokes / chain map", 10, stokes},
        {4, "naturality", 5, naturality},
        {5, "circle pairing", 5, circle_pairing},
        {6, "circle x two points", 10, circle_x_points},
        {7, "torus multiplicativity", 60, torus},
        {8, "tau behavior", 10, tau_behavior},
        {9, "AW algebra laws", 2, aw_laws},
        {10, "extension from boundary", 5, extension},
        {11, "report determinism", 60, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && seconds > c.budget_seconds) {
            o.pass = false;
            o.detail = "over the time budget";
        }
        failures += !o.pass;
        std::printf("criterion %2d %-4s %-26s %7.3f s (budget %g s)  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                    seconds, c.budget_seconds, o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
