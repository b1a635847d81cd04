#include "scenario.hpp"

#include "drcomp/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace drcomp::cli {

using comparison::FamilyPtr;
using comparison::ParamSimplex;
using comparison::SingularChain;
using comparison::SingularFamily;

const AlgebraicForm& Scenario::form(const std::string& name) const {
    for (const auto& [n, f] : forms)
        if (n == name) return f;
    throw ValidationError("undefined form '" + name + "'");
}

std::size_t Scenario::simplex(const std::string& name) const {
    if (family)
        if (auto i = family->find(name)) return *i;
    throw ValidationError("undefined simplex '" + name + "'");
}

const SingularChain& Scenario::chain(const std::string& name) const {
    for (const auto& [n, c] : chains)
        if (n == name) return c;
    throw ValidationError("undefined chain '" + name + "'");
}

namespace {

enum class Ref { none, form, forms, simplex, simplices, chain };

struct ParamSpec {
    const char* key;
    bool required;
    Ref ref;
};

struct CheckType {
    const char* type;
    bool needs_algebra;
    std::vector<ParamSpec> params;
};

const std::vector<CheckType>& check_types() {
    static const std::vector<CheckType> types{
        {"cohomology",
         true,
         {{"degree", true, Ref::none},
          {"max_weight", false, Ref::none},
          {"expect_dimension", false, Ref::none},
          {"expect_stabilized", false, Ref::none}}},
        {"validate", true, {{"simplex", true, Ref::simplex}, {"expect_valid", false, Ref::none}}},
        {"xi",
         true,
         {{"form", true, Ref::form}, {"simplex", true, Ref::simplex}, {"expect", false, Ref::none}}},
        {"pairing", true, {{"form", true, Ref::form}, {"chain", true, Ref::chain}, {"expect", false, Ref::none}}},
        {"pairing_table",
         true,
         {{"forms", true, Ref::forms}, {"simplices", true, Ref::simplices}, {"expect", true, Ref::none}}},
        {"chain_map", true, {{"form", true, Ref::form}, {"simplices", false, Ref::simplices}}},
        {"naturality",
         true,
         {{"form", true, Ref::form}, {"simplices", false, Ref::simplices}, {"max_source", false, Ref::none}}},
        {"multiplicativity",
         true,
         {{"forms", true, Ref::forms}, {"chain", true, Ref::chain}, {"expect", false, Ref::none}}},
        {"stokes_random",
         false,
         {{"variables", false, Ref::none},
          {"count", false, Ref::none},
          {"max_dim", false, Ref::none},
          {"max_degree", false, Ref::none}}},
        {"naturality_random",
         false,
         {{"variables", false, Ref::none},
          {"count", false, Ref::none},
          {"max_dim", false, Ref::none},
          {"max_degree", false, Ref::none}}},
        {"poincare_lemma",
         false,
         {{"count", false, Ref::none}, {"max_n", false, Ref::none}, {"max_degree", false, Ref::none}}},
        {"tau_witness", false, {{"n", true, Ref::none}, {"alpha", true, Ref::none}, {"beta", true, Ref::none}}},
        {"tau_cohomology",
         false,
         {{"complex", true, Ref::none},
          {"n", true, Ref::none},
          {"degrees", false, Ref::none},
          {"max_weight", false, Ref::none}}},
        {"aw_laws", false, {{"n", false, Ref::none}, {"count", false, Ref::none}}},
        {"extension",
         false,
         {{"n", true, Ref::none}, {"count", false, Ref::none}, {"max_degree", false, Ref::none}}},
    };
    return types;
}

template <class T>
T get(const YAML::Node& node, const std::string& what) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ValidationError(what + " has the wrong type");
    }
}

std::vector<std::string> string_list(const YAML::Node& node, const std::string& what) {
    if (!node.IsSequence()) throw ValidationError(what + " must be a list");
    std::vector<std::string> out;
    for (const auto& x : node) out.push_back(get<std::string>(x, what));
    return out;
}

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) {
    if (!node.IsMap()) throw ValidationError(where + " must be a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
    }
}

AlgebraPtr load_algebra(const YAML::Node& node) {
    check_keys(node, {"variables", "relations"}, "algebra");
    if (!node["variables"]) throw ValidationError("algebra needs variables");
    const auto vars = string_list(node["variables"], "algebra.variables");
    std::vector<std::string> rels;
    if (node["relations"]) rels = string_list(node["relations"], "algebra.relations");
    try {
        return FpAlgebra::parse(vars, rels);
    } catch (const ParseError& e) {
        throw ParseError(std::string("in algebra relations: ") + e.what());
    }
}

ParamSimplex load_simplex(const AlgebraPtr& algebra, const YAML::Node& node, const std::string& name) {
    const std::string where = "simplex '" + name + "'";
    check_keys(node, {"name", "dim", "components", "point"}, where);
    const auto n = node["dim"] ? get<unsigned>(node["dim"], where + ".dim") : 0u;
    try {
        if (node["point"]) {
            if (n != 0) throw ValidationError(where + ": a point simplex has dim 0");
            std::vector<Rational> pt;
            for (const auto& c : string_list(node["point"], where + ".point")) pt.push_back(parse_rational(c));
            return ParamSimplex::constant(algebra, 0, pt);
        }
        if (!node["components"]) throw ValidationError(where + " needs components or point");
        return ParamSimplex::parse(algebra, n, string_list(node["components"], where + ".components"));
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    } catch (const DimensionMismatch& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

struct FamilyParts {
    std::vector<ParamSimplex> simplices;
    std::vector<std::string> names;
    std::vector<std::pair<std::string, SingularChain>> fixture_chains;
};

void add_fixture(const AlgebraPtr& algebra, const std::string& fixture, FamilyParts& parts) {
    comparison::fixtures::Fixture fx;
    std::vector<std::string> chain_names;
    try {
        if (fixture == "circle") {
            fx = comparison::fixtures::circle(algebra);
            chain_names = {"loop"};
        } else if (fixture == "circle_x_points") {
            fx = comparison::fixtures::circle_times_points(algebra);
            chain_names = {"loop_s0", "loop_s1"};
        } else if (fixture == "torus") {
            fx = comparison::fixtures::torus(algebra);
            chain_names = {"fundamental"};
        } else {
            throw ValidationError("unknown fixture '" + fixture + "' (known: circle, circle_x_points, torus)");
        }
    } catch (const DimensionMismatch& e) {
        throw ValidationError("fixture '" + fixture + "' does not fit the algebra: " + e.what());
    }
    for (std::size_t i = 0; i < fx.family->size(); ++i) {
        parts.simplices.push_back(fx.family->simplex(i));
        parts.names.push_back(fx.family->name(i));
    }
    for (std::size_t k = 0; k < fx.cycles.size(); ++k) parts.fixture_chains.emplace_back(chain_names[k], fx.cycles[k]);
}

/// Re-keys a chain by simplex names onto another family.
SingularChain rebase(const SingularChain& z, const FamilyPtr& family) {
    SingularChain out{family, z.degree, {}};
    for (const auto& [i, c] : z.terms) out.add(*family->find(z.family->name(i)), c);
    return out;
}

void validate_check(const Scenario& s, CheckSpec& check, const YAML::Node& node) {
    const CheckType* type = nullptr;
    for (const auto& t : check_types())
        if (check.type == t.type) type = &t;
    if (!type) throw ValidationError("check '" + check.name + "' has unknown type '" + check.type + "'");
    if (type->needs_algebra && !s.algebra)
        throw ValidationError("check '" + check.name + "' needs an algebra section");

    std::set<std::string> allowed{"name", "type", "tolerance", "lane"};
    for (const auto& p : type->params) allowed.insert(p.key);
    check_keys(node, allowed, "check '" + check.name + "'");

    std::vector<std::size_t> touched;
    for (const auto& p : type->params) {
        const YAML::Node v = node[p.key];
        const std::string where = "check '" + check.name + "'." + p.key;
        if (!v) {
            if (p.required) throw ValidationError("check '" + check.name + "' is missing '" + p.key + "'");
            continue;
        }
        switch (p.ref) {
            case Ref::none: break;
            case Ref::form: s.form(get<std::string>(v, where)); break;
            case Ref::forms:
                for (const auto& n : string_list(v, where)) s.form(n);
                break;
            case Ref::simplex: touched.push_back(s.simplex(get<std::string>(v, where))); break;
            case Ref::simplices:
                for (const auto& n : string_list(v, where)) touched.push_back(s.simplex(n));
                break;
            case Ref::chain:
                for (const auto& [i, c] : s.chain(get<std::string>(v, where)).terms) touched.push_back(i);
                break;
        }
    }

    if (check.type == "multiplicativity") {
        const auto names = string_list(node["forms"], "forms");
        if (names.size() != 2) throw ValidationError("check '" + check.name + "' needs exactly two forms");
        const int deg = s.form(names[0]).degree() + s.form(names[1]).degree();
        if (deg != static_cast<int>(s.chain(node["chain"].as<std::string>()).degree))
            throw ValidationError("check '" + check.name + "': form degrees do not add up to the chain degree");
    }
    if (check.type == "pairing" &&
        s.form(node["form"].as<std::string>()).degree() !=
            static_cast<int>(s.chain(node["chain"].as<std::string>()).degree))
        throw ValidationError("check '" + check.name + "': form and chain degrees differ");
    if (check.type == "xi" && s.form(node["form"].as<std::string>()).degree() !=
                                  static_cast<int>(s.family->simplex(touched.front()).n()))
        throw ValidationError("check '" + check.name + "': form degree differs from the simplex dimension");

    if (node["lane"]) {
        const auto lane = get<std::string>(node["lane"], "lane");
        if (lane != "exact" && lane != "numeric")
            throw ValidationError("check '" + check.name + "': lane must be exact or numeric");
        if (lane == "exact")
            for (auto i : touched)
                if (s.family->simplex(i).lane() != comparison::Lane::exact)
                    throw ValidationError("check '" + check.name + "' is exact but simplex '" + s.family->name(i) +
                                          "' has rational components");
    }
}

}  // namespace

Scenario load_scenario(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    check_keys(root, {"format_version", "name", "description", "algebra", "forms", "family", "chains", "checks"},
               source);
    if (!root["format_version"]) throw ValidationError(source + ": missing format_version");
    if (get<int>(root["format_version"], "format_version") != kFormatVersion)
        throw ValidationError(source + ": unsupported format_version (expected " + std::to_string(kFormatVersion) +
                              ")");

    Scenario s;
    s.name = root["name"] ? get<std::string>(root["name"], "name") : source;
    if (root["description"]) s.description = get<std::string>(root["description"], "description");
    if (root["algebra"]) s.algebra = load_algebra(root["algebra"]);

    if (const auto forms = root["forms"]) {
        if (!s.algebra) throw ValidationError("forms need an algebra section");
        if (!forms.IsMap()) throw ValidationError("forms must be a mapping from names to forms");
        for (const auto& kv : forms) {
            const auto name = kv.first.as<std::string>();
            try {
                s.forms.emplace_back(name, AlgebraicForm::parse(s.algebra, get<std::string>(kv.second, name)));
            } catch (const ParseError& e) {
                throw ParseError("form '" + name + "': " + e.what());
            }
        }
    }

    FamilyParts parts;
    if (const auto fam = root["family"]) {
        if (!s.algebra) throw ValidationError("a family needs an algebra section");
        check_keys(fam, {"fixture", "simplices"}, "family");
        if (fam["fixture"]) add_fixture(s.algebra, get<std::string>(fam["fixture"], "family.fixture"), parts);
        if (const auto list = fam["simplices"]) {
            if (!list.IsSequence()) throw ValidationError("family.simplices must be a list");
            for (const auto& node : list) {
                if (!node["name"]) throw ValidationError("every simplex needs a name");
                const auto name = get<std::string>(node["name"], "simplex name");
                if (std::find(parts.names.begin(), parts.names.end(), name) != parts.names.end())
                    throw ValidationError("simplex '" + name + "' is defined twice");
                parts.simplices.push_back(load_simplex(s.algebra, node, name));
                parts.names.push_back(name);
            }
        }
    }
    if (s.algebra) s.family = std::make_shared<const SingularFamily>(s.algebra, parts.simplices, parts.names);
    for (const auto& [name, z] : parts.fixture_chains) s.chains.emplace_back(name, rebase(z, s.family));

    if (const auto chains = root["chains"]) {
        if (!s.family) throw ValidationError("chains need a family");
        if (!chains.IsSequence()) throw ValidationError("chains must be a list");
        for (const auto& node : chains) {
            check_keys(node, {"name", "degree", "terms"}, "chain");
            if (!node["name"] || !node["degree"] || !node["terms"])
                throw ValidationError("a chain needs name, degree and terms");
            const auto name = get<std::string>(node["name"], "chain name");
            SingularChain z{s.family, get<unsigned>(node["degree"], "chain '" + name + "'.degree"), {}};
            if (!node["terms"].IsMap()) throw ValidationError("chain '" + name + "'.terms must map simplices to integers");
            for (const auto& kv : node["terms"]) {
                const auto i = s.simplex(kv.first.as<std::string>());
                try {
                    z.add(i, Integer(get<long>(kv.second, "chain coefficient")));
                } catch (const DegreeMismatch& e) {
                    throw ValidationError("chain '" + name + "': " + e.what());
                }
            }
            s.chains.emplace_back(name, std::move(z));
        }
    }

    if (const auto checks = root["checks"]) {
        if (!checks.IsSequence()) throw ValidationError("checks must be a list");
        std::set<std::string> seen;
        for (const auto& node : checks) {
            if (!node.IsMap() || !node["type"]) throw ValidationError("every check needs a type");
            CheckSpec c;
            c.type = get<std::string>(node["type"], "check type");
            c.name = node["name"] ? get<std::string>(node["name"], "check name") : c.type;
            if (!seen.insert(c.name).second) throw ValidationError("check name '" + c.name + "' is used twice");
            c.params = static_cast<const YAML::Node&>(node);
            validate_check(s, c, node);
            s.checks.push_back(std::move(c));
        }
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read scenario file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str(), path);
}

}  // namespace drcomp::cli
