#pragma once

#include "drcomp/polynomial.hpp"

#include <span>
#include <vector>

namespace drcomp {

struct GroebnerOptions {
    /// Upper bound on S-pairs examined before giving up.
    std::size_t max_pairs = 50000;
};

/// Reduced degrevlex Groebner basis (monic, sorted by leading monomial).
/// Buchberger's algorithm with the product and chain criteria.
std::vector<Polynomial> groebner_basis(std::span<const Polynomial> generators,
                                       const GroebnerOptions& options = {});

/// Fully reduced remainder of f modulo a Groebner basis.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);

/// Same, recording f = sum(quotients[i] * basis[i]) + remainder.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis,
                       std::vector<Polynomial>& quotients);

}  // namespace drcomp
