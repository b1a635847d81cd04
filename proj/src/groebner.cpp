#include "drcomp/groebner.hpp"

#include "drcomp/errors.hpp"

#include <algorithm>
#include <set>

namespace drcomp {

namespace {

Polynomial monic(Polynomial p) {
    if (!p.is_zero()) p *= Rational(1) / p.leading_coefficient();
    return p;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
    return f.times_term(l - f.leading_monomial(), Rational(1) / f.leading_coefficient()) -
           g.times_term(l - g.leading_monomial(), Rational(1) / g.leading_coefficient());
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

}  // namespace

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis,
                       std::vector<Polynomial>& quotients) {
    quotients.assign(basis.size(), Polynomial(f.nvars()));
    Polynomial rest = f;
    Polynomial remainder(f.nvars());
    while (!rest.is_zero()) {
        const Monomial lm = rest.leading_monomial();
        const Rational lc = rest.leading_coefficient();
        bool reduced = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Polynomial& g = basis[k];
            if (!divides(g.leading_monomial(), lm)) continue;
            const Monomial q = lm - g.leading_monomial();
            const Rational c = lc / g.leading_coefficient();
            rest -= g.times_term(q, c);
            quotients[k].add_term(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.add_term(lm, lc);
            rest.add_term(lm, -lc);
        }
    }
    return remainder;
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) {
    Polynomial rest = f;
    Polynomial remainder(f.nvars());
    while (!rest.is_zero()) {
        const Monomial lm = rest.leading_monomial();
        const Rational lc = rest.leading_coefficient();
        auto it = std::find_if(basis.begin(), basis.end(),
                               [&](const Polynomial& g) { return divides(g.leading_monomial(), lm); });
        if (it == basis.end()) {
            remainder.add_term(lm, lc);
            rest.add_term(lm, -lc);
        } else {
            rest -= it->times_term(lm - it->leading_monomial(), lc / it->leading_coefficient());
        }
    }
    return remainder;
}

std::vector<Polynomial> groebner_basis(std::span<const Polynomial> generators, const GroebnerOptions& options) {
    std::vector<Polynomial> g;
    for (const Polynomial& p : generators) {
        if (p.is_zero()) throw std::invalid_argument("groebner_basis: zero generator");
        g.push_back(monic(p));
    }
    if (g.empty()) return g;

    std::vector<Pair> queue;
    std::set<std::pair<std::size_t, std::size_t>> done;
    auto add_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) queue.push_back({i, j, lcm(g[i].leading_monomial(), g[j].leading_monomial())});
    };
    for (std::size_t j = 1; j < g.size(); ++j) add_pairs(j);

    auto processed = [&](std::size_t a, std::size_t b) {
        return done.count({std::min(a, b), std::max(a, b)}) > 0;
    };

    std::size_t examined = 0;
    while (!queue.empty()) {
        // normal strategy: smallest lcm first
        auto it = std::min_element(queue.begin(), queue.end(), [](const Pair& a, const Pair& b) {
            if (a.lcm != b.lcm) return DegRevLex{}(a.lcm, b.lcm);
            return std::pair(a.i, a.j) < std::pair(b.i, b.j);
        });
        const Pair pr = *it;
        queue.erase(it);
        if (++examined > options.max_pairs)
            throw ResourceBudgetExceeded("more than " + std::to_string(options.max_pairs) + " S-pairs");

        bool skip = coprime(g[pr.i].leading_monomial(), g[pr.j].leading_monomial());
        if (!skip) {
            // chain criterion
            for (std::size_t k = 0; k < g.size() && !skip; ++k) {
                if (k == pr.i || k == pr.j) continue;
                if (divides(g[k].leading_monomial(), pr.lcm) && processed(pr.i, k) && processed(pr.j, k))
                    skip = true;
            }
        }
        done.insert({pr.i, pr.j});
        if (skip) continue;

        Polynomial r = normal_form(s_polynomial(g[pr.i], g[pr.j]), g);
        if (r.is_zero()) continue;
        g.push_back(monic(std::move(r)));
        add_pairs(g.size() - 1);
    }

    // minimalize
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t k = 0; k < g.size() && !redundant; ++k) {
            if (k == i || !divides(g[k].leading_monomial(), g[i].leading_monomial())) continue;
            redundant = g[k].leading_monomial() != g[i].leading_monomial() || k < i;
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    // interreduce
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t k = 0; k < minimal.size(); ++k)
            if (k != i) others.push_back(minimal[k]);
        const Polynomial& p = minimal[i];
        Polynomial tail = p;
        tail.add_term(p.leading_monomial(), -p.leading_coefficient());
        Polynomial r = Polynomial::monomial(p.leading_monomial(), 1) + normal_form(tail, others);
        reduced.push_back(monic(std::move(r)));
    }
    std::sort(reduced.begin(), reduced.end(), [](const Polynomial& a, const Polynomial& b) {
        return DegRevLex{}(a.leading_monomial(), b.leading_monomial());
    });

    for (const Polynomial& p : generators)
        if (!normal_form(p, reduced).is_zero())
            throw std::logic_error("groebner_basis: generator does not reduce to zero");
    return reduced;
}

}  // namespace drcomp
