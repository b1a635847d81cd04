#include "scenario.hpp"

namespace drcomp::cli {

namespace {

const char* const kTwoPoints = R"yaml(format_version: 1
name: two_points
description: Q[x]/(x^2 - 1), two real points
algebra:
  variables: [x]
  relations: ["x^2 - 1"]
forms:
  e_plus: "(1 + x)/2"
  e_minus: "(1 - x)/2"
family:
  simplices:
    - {name: p_plus, point: ["1"]}
    - {name: p_minus, point: ["-1"]}
chains:
  - {name: z_plus, degree: 0, terms: {p_plus: 1}}
  - {name: z_minus, degree: 0, terms: {p_minus: 1}}
checks:
  - {name: H0, type: cohomology, degree: 0, max_weight: 2, expect_dimension: 2, expect_stabilized: true}
  - {name: H1, type: cohomology, degree: 1, max_weight: 2, expect_dimension: 0}
  - name: idempotent_table
    type: pairing_table
    lane: exact
    forms: [e_plus, e_minus]
    simplices: [p_plus, p_minus]
    expect: [["1", "0"], ["0", "1"]]
  - {name: multiplicativity, type: multiplicativity, lane: exact, forms: [e_plus, e_plus], chain: z_plus, expect: "1"}
  - {name: multiplicativity_cross, type: multiplicativity, lane: exact, forms: [e_plus, e_minus], chain: z_minus, expect: "0"}
)yaml";

const char* const kInterval = R"yaml(format_version: 1
name: interval
description: Q[x], the affine line; Poincare lemma on both sides
algebra:
  variables: [x]
forms:
  x_dx: "x*dx"
family:
  simplices:
    - {name: segment, dim: 1, components: ["2*t1 - 1"]}
    - {name: left, point: ["-1"]}
    - {name: right, point: ["1"]}
checks:
  - {name: H0, type: cohomology, degree: 0, max_weight: 4, expect_dimension: 1, expect_stabilized: true}
  - {name: H1, type: cohomology, degree: 1, max_weight: 4, expect_dimension: 0, expect_stabilized: true}
  - {name: xi_segment, type: xi, lane: exact, form: x_dx, simplex: segment, expect: "0"}
  - {name: poincare_lemma, type: poincare_lemma, count: 50, max_n: 3, max_degree: 6}
  - {name: stokes_random, type: stokes_random, variables: [x, y], count: 50, max_dim: 3}
  - {name: naturality_random, type: naturality_random, variables: [x, y, z], count: 30, max_dim: 3}
)yaml";

const char* const kCircle = R"yaml(format_version: 1
name: circle
description: x^2 + y^2 = 1 with four rational quarter arcs
algebra:
  variables: [x, y]
  relations: ["x^2 + y^2 - 1"]
forms:
  one: "1"
  omega: "x*dy - y*dx"
  f: "x*y^2 - 3*y"
family:
  fixture: circle
checks:
  - {name: H0, type: cohomology, degree: 0, max_weight: 5, expect_dimension: 1}
  - {name: H1, type: cohomology, degree: 1, max_weight: 5, expect_dimension: 1, expect_stabilized: true}
  - {name: arc_validity, type: validate, simplex: arc0}
  - {name: xi_arc, type: xi, form: omega, simplex: arc0, expect: "1.5707963267948966"}
  - {name: pairing, type: pairing, form: omega, chain: loop, expect: "6.283185307179586"}
  - {name: chain_map, type: chain_map, form: f}
  - {name: naturality, type: naturality, form: omega}
  - {name: multiplicativity, type: multiplicativity, forms: [one, omega], chain: loop, expect: "6.283185307179586"}
)yaml";

const char* const kCircleXPoints = R"yaml(format_version: 1
name: circle_x_points
description: circle times two points, Q[x,y,s]/(x^2 + y^2 - 1, s^2 - s)
algebra:
  variables: [x, y, s]
  relations: ["x^2 + y^2 - 1", "s^2 - s"]
forms:
  omega: "x*dy - y*dx"
  s: "s"
family:
  fixture: circle_x_points
checks:
  - {name: H0, type: cohomology, degree: 0, max_weight: 4, expect_dimension: 2, expect_stabilized: true}
  - {name: H1, type: cohomology, degree: 1, max_weight: 4, expect_dimension: 2, expect_stabilized: true}
  - {name: pairing_s1, type: pairing, form: omega, chain: loop_s1, expect: "6.283185307179586"}
  - {name: multiplicativity_s0, type: multiplicativity, forms: [s, omega], chain: loop_s0, expect: "0"}
  - {name: multiplicativity_s1, type: multiplicativity, forms: [s, omega], chain: loop_s1, expect: "6.283185307179586"}
)yaml";

const char* const kTorus = R"yaml(format_version: 1
name: torus
description: product of two circles with a 32 triangle rational fundamental cycle
algebra:
  variables: [x, y, z, w]
  relations: ["x^2 + y^2 - 1", "z^2 + w^2 - 1"]
forms:
  omega1: "x*dy - y*dx"
  omega2: "z*dw - w*dz"
family:
  fixture: torus
checks:
  - {name: H1, type: cohomology, degree: 1, max_weight: 4, expect_dimension: 2, expect_stabilized: true}
  - {name: chain_map, type: chain_map, form: omega1}
  - {name: multiplicativity, type: multiplicativity, forms: [omega1, omega2], chain: fundamental, expect: "39.47841760435743"}
)yaml";

const char* const kSphere = R"yaml(format_version: 1
name: sphere
description: x^2 + y^2 + z^2 = 1 with a stereographic triangle
algebra:
  variables: [x, y, z]
  relations: ["x^2 + y^2 + z^2 - 1"]
forms:
  area: "x*dy^dz - y*dx^dz + z*dx^dy"
  omega: "x*dy - y*dx + z*dx"
family:
  simplices:
    - name: cap
      dim: 2
      components:
        - "2*t1/(1 + t1^2 + t2^2)"
        - "2*t2/(1 + t1^2 + t2^2)"
        - "(t1^2 + t2^2 - 1)/(1 + t1^2 + t2^2)"
    - {name: bad, dim: 1, components: ["t1", "0", "0"]}
checks:
  - {name: H0, type: cohomology, degree: 0, max_weight: 4, expect_dimension: 1, expect_stabilized: true}
  - {name: H1, type: cohomology, degree: 1, max_weight: 4, expect_dimension: 0, expect_stabilized: true}
  - {name: H2, type: cohomology, degree: 2, max_weight: 4, expect_dimension: 1, expect_stabilized: true}
  - {name: cap_validity, type: validate, simplex: cap}
  - {name: off_sphere, type: validate, simplex: bad, expect_valid: false}
  - {name: xi_cap, type: xi, form: area, simplex: cap, expect: "-1.209199576156145"}
  - {name: chain_map, type: chain_map, form: omega, simplices: [cap]}
  - {name: naturality, type: naturality, form: area, simplices: [cap], max_source: 2}
)yaml";

const char* const kTauWitness = R"yaml(format_version: 1
name: tau_witness
description: integration is not multiplicative on cochains but is on cohomology
checks:
  - {name: witness, type: tau_witness, n: 2, alpha: "t1", beta: "dt1"}
  - {name: boundary_cohomology, type: tau_cohomology, complex: boundary, n: 2, max_weight: 3}
  - {name: aw_laws, type: aw_laws, n: 3, count: 20}
)yaml";

const char* const kBoundaryExtension = R"yaml(format_version: 1
name: boundary_extension
description: polynomial forms on the boundary of a simplex extend to the simplex
checks:
  - {name: extension_d2, type: extension, n: 2, count: 20}
  - {name: extension_d3, type: extension, n: 3, count: 20}
)yaml";

}  // namespace

const std::vector<Builtin>& builtins() {
    static const std::vector<Builtin> list{
        {"two_points", "Q[x]/(x^2 - 1): H^0 = 2, idempotent pairing table, exact multiplicativity", kTwoPoints},
        {"interval", "Q[x]: Poincare lemma, random Stokes and naturality properties", kInterval},
        {"circle", "the unit circle: H^1 = 1, pairing 2 pi over four rational arcs", kCircle},
        {"circle_x_points", "circle times two points: mixed degree multiplicativity", kCircleXPoints},
        {"torus", "two circles: top degree multiplicativity, (2 pi)^2", kTorus},
        {"sphere", "the 2-sphere: H^2 = 1, stereographic simplex", kSphere},
        {"tau_witness", "integration fails to be multiplicative on cochains, not on cohomology", kTauWitness},
        {"boundary_extension", "extension of forms from the boundary of a simplex", kBoundaryExtension},
    };
    return list;
}

const Builtin* find_builtin(const std::string& name) {
    for (const auto& b : builtins())
        if (b.name == name) return &b;
    return nullptr;
}

}  // namespace drcomp::cli
