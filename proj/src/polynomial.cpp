#include "drcomp/polynomial.hpp"

#include "drcomp/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace drcomp {

// ---- monomials ----------------------------------------------------------

unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
    Monomial out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

Monomial operator-(const Monomial& a, const Monomial& b) {
    Monomial out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
    return out;
}

bool DegRevLex::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

int wedge_sign(IndexMask s, IndexMask t) {
    if (s & t) return 0;
    int swaps = 0;
    for (IndexMask rest = t; rest; rest &= rest - 1) {
        const IndexMask low = rest & (~rest + 1);
        // elements of s greater than this element of t must hop over it
        swaps += __builtin_popcount(s & ~((low << 1) - 1));
    }
    return (swaps % 2) ? -1 : 1;
}

// ---- polynomials --------------------------------------------------------

Polynomial::Polynomial(std::size_t nvars, const Rational& c) : nvars_(nvars) {
    if (!c.is_zero()) terms_.emplace(Monomial(nvars, 0), c);
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    Monomial m(nvars, 0);
    m.at(i) = 1;
    return monomial(std::move(m));
}

Polynomial Polynomial::monomial(Monomial m, const Rational& c) {
    Polynomial p(m.size());
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(nvars_, 0)); }

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(drcomp::total_degree(leading_monomial()));
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    if (m.size() != nvars_) throw DimensionMismatch("monomial has wrong number of variables");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {
void check_same_ring(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars())
        throw DimensionMismatch("polynomials in " + std::to_string(a.nvars()) + " and " +
                                std::to_string(b.nvars()) + " variables");
}
}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same_ring(a, b);
    Polynomial out(a.nvars());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto [it, inserted] = out.terms_.emplace(ma + mb, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result(nvars_, 1);
    Polynomial base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
    Polynomial out(nvars_);
    if (c.is_zero()) return out;
    for (const auto& [mm, cc] : terms_) out.terms_.emplace_hint(out.terms_.end(), mm + m, cc * c);
    return out;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial out(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        --d[var];
        out.add_term(d, c * m[var]);
    }
    return out;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
    if (images.size() != nvars_) throw DimensionMismatch("substitute: wrong number of images");
    const std::size_t target = images.empty() ? 0 : images.front().nvars();
    std::vector<std::vector<Polynomial>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(Polynomial(target, 1));
    Polynomial out(target);
    for (const auto& [m, c] : terms_) {
        Polynomial term(target, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            while (powers[i].size() <= m[i]) powers[i].push_back(powers[i].back() * images[i]);
            if (m[i]) term = term * powers[i][m[i]];
        }
        out += term;
    }
    return out;
}

double Polynomial::evaluate(std::span<const double> point) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
        double t = c.convert_to<double>();
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::with_nvars(std::size_t nvars) const {
    Polynomial out(nvars);
    for (const auto& [m, c] : terms_) {
        Monomial mm(nvars, 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i >= nvars) {
                if (m[i]) throw DimensionMismatch("with_nvars would drop a used variable");
                continue;
            }
            mm[i] = m[i];
        }
        out.add_term(mm, c);
    }
    return out;
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return std::nullopt;
    Polynomial rest = a;
    Polynomial quotient(a.nvars());
    const Monomial& lb = b.leading_monomial();
    const Rational& cb = b.leading_coefficient();
    while (!rest.is_zero()) {
        const Monomial& lr = rest.leading_monomial();
        if (!divides(lb, lr)) return std::nullopt;
        const Monomial q = lr - lb;
        const Rational c = rest.leading_coefficient() / cb;
        quotient.add_term(q, c);
        rest -= b.times_term(q, c);
    }
    return quotient;
}

// ---- rational functions --------------------------------------------------

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(num_.nvars(), 1) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(num_.nvars(), 1);
        return;
    }
    const Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        const Rational inv = Rational(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

Polynomial RationalFunction::to_polynomial() const {
    if (den_.is_constant()) return num_;
    auto q = divide_exact(num_, den_);
    if (!q) throw NonPolynomialCoefficient("denominator does not divide numerator");
    return *q;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.num_.is_zero()) return *this;
    if (num_.is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return RationalFunction(a.nvars());
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out(*this);
    out.num_ = -out.num_;
    return out;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
    if (den_.is_constant()) return RationalFunction(num_.derivative(var));
    return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RationalFunction RationalFunction::substitute(std::span<const Polynomial> images) const {
    return RationalFunction(num_.substitute(images), den_.substitute(images));
}

double RationalFunction::evaluate(std::span<const double> point) const {
    return num_.evaluate(point) / den_.evaluate(point);
}

RationalFunction compose(const Polynomial& p, std::span<const RationalFunction> components) {
    if (components.size() != p.nvars()) throw DimensionMismatch("compose: wrong number of components");
    const std::size_t target = components.empty() ? 0 : components.front().nvars();
    // group components by denominator
    std::vector<Polynomial> bases;
    std::vector<int> group(components.size(), -1);
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].is_polynomial()) continue;
        const Polynomial& d = components[i].denominator();
        auto it = std::find(bases.begin(), bases.end(), d);
        group[i] = static_cast<int>(it - bases.begin());
        if (it == bases.end()) bases.push_back(d);
    }
    std::vector<unsigned> need(bases.size(), 0);
    for (const auto& [m, c] : p.terms()) {
        std::vector<unsigned> used(bases.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (group[i] >= 0) used[group[i]] += m[i];
        for (std::size_t g = 0; g < bases.size(); ++g) need[g] = std::max(need[g], used[g]);
    }
    std::vector<std::vector<Polynomial>> num_pow(components.size()), base_pow(bases.size());
    auto power = [](std::vector<Polynomial>& cache, const Polynomial& x, unsigned k) -> const Polynomial& {
        if (cache.empty()) cache.push_back(Polynomial(x.nvars(), 1));
        while (cache.size() <= k) cache.push_back(cache.back() * x);
        return cache[k];
    };
    Polynomial num(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term(target, c);
        std::vector<unsigned> used(bases.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            term = term * power(num_pow[i], components[i].numerator(), m[i]);
            if (group[i] >= 0) used[group[i]] += m[i];
        }
        for (std::size_t g = 0; g < bases.size(); ++g)
            if (need[g] > used[g]) term = term * power(base_pow[g], bases[g], need[g] - used[g]);
        num += term;
    }
    Polynomial den(target, 1);
    for (std::size_t g = 0; g < bases.size(); ++g)
        if (need[g]) den = den * power(base_pow[g], bases[g], need[g]);
    return RationalFunction(std::move(num), std::move(den));
}

// ---- parsing ------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Number, Ident, Op, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            out.push_back({Token::Number, std::string(s.substr(i, j - i)), i});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Ident, std::string(s.substr(i, j - i)), i});
            i = j;
        } else if (std::string_view("+-*/^()").find(ch) != std::string_view::npos) {
            out.push_back({Token::Op, std::string(1, ch), i});
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, ch) + "' at offset " + std::to_string(i));
        }
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::span<const std::string> names, bool allow_d)
        : text_(text), tokens_(tokenize(text)), names_(names), allow_d_(allow_d) {}

    FormExpression parse() {
        FormExpression e = expr();
        if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    bool accept(const char* op) {
        if (peek().kind == Token::Op && peek().text == op) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(peek().pos) + " in \"" + std::string(text_) + "\"");
    }

    std::size_t n() const { return names_.size(); }

    FormExpression scalar(const RationalFunction& f) const {
        FormExpression e;
        if (!f.is_zero()) e.emplace(0, f);
        return e;
    }

    static void accumulate(FormExpression& into, IndexMask s, const RationalFunction& f) {
        auto [it, inserted] = into.emplace(s, f);
        if (!inserted) {
            it->second += f;
            if (it->second.is_zero()) into.erase(it);
        } else if (f.is_zero()) {
            into.erase(it);
        }
    }

    FormExpression expr() {
        FormExpression acc = term();
        for (;;) {
            if (accept("+")) {
                for (auto& [s, f] : term()) accumulate(acc, s, f);
            } else if (accept("-")) {
                for (auto& [s, f] : term()) accumulate(acc, s, -f);
            } else {
                return acc;
            }
        }
    }

    FormExpression wedge(const FormExpression& a, const FormExpression& b) const {
        FormExpression out;
        for (const auto& [s, f] : a)
            for (const auto& [t, g] : b) {
                const int sign = wedge_sign(s, t);
                if (!sign) continue;
                accumulate(out, s | t, sign > 0 ? f * g : -(f * g));
            }
        return out;
    }

    FormExpression term() {
        FormExpression acc = unary();
        for (;;) {
            if (accept("*")) {
                acc = wedge(acc, unary());
            } else if (accept("/")) {
                const FormExpression d = unary();
                if (d.size() != 1 || d.begin()->first != 0) fail("division by a non-scalar or zero");
                const RationalFunction den = d.begin()->second;
                for (auto& [s, f] : acc) f = f / den;
            } else {
                return acc;
            }
        }
    }

    FormExpression unary() {
        if (accept("-")) {
            FormExpression e = unary();
            for (auto& [s, f] : e) f = -f;
            return e;
        }
        if (accept("+")) return unary();
        return power();
    }

    FormExpression power() {
        FormExpression base = atom();
        while (accept("^")) {
            const bool scalar_base = base.empty() || (base.size() == 1 && base.begin()->first == 0);
            if (peek().kind == Token::Number && scalar_base &&
                peek().text.find('.') == std::string::npos) {
                const unsigned k = static_cast<unsigned>(std::stoul(tokens_[pos_++].text));
                RationalFunction b = base.empty() ? RationalFunction(n()) : base.begin()->second;
                RationalFunction r(Polynomial(n(), 1));
                for (unsigned i = 0; i < k; ++i) r = r * b;
                base = scalar(r);
            } else {
                base = wedge(base, atom());
            }
        }
        return base;
    }

    FormExpression atom() {
        const Token t = peek();
        if (t.kind == Token::Number) {
            ++pos_;
            return scalar(RationalFunction(Polynomial(n(), parse_rational(t.text))));
        }
        if (t.kind == Token::Ident) {
            ++pos_;
            for (std::size_t i = 0; i < n(); ++i)
                if (names_[i] == t.text) return scalar(RationalFunction(Polynomial::variable(n(), i)));
            if (allow_d_ && t.text.size() > 1 && t.text[0] == 'd') {
                const std::string base = t.text.substr(1);
                for (std::size_t i = 0; i < n(); ++i)
                    if (names_[i] == base) {
                        FormExpression e;
                        e.emplace(IndexMask{1} << i, RationalFunction(Polynomial(n(), 1)));
                        return e;
                    }
            }
            --pos_;
            fail("unknown identifier '" + t.text + "'");
        }
        if (accept("(")) {
            FormExpression e = expr();
            if (!accept(")")) fail("expected ')'");
            return e;
        }
        fail(t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    std::string_view text_;
    std::vector<Token> tokens_;
    std::span<const std::string> names_;
    bool allow_d_;
    std::size_t pos_ = 0;
};

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) {
        try {
            return Rational(text);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + text + "'");
        }
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits.find('.') != std::string::npos) throw ParseError("bad number '" + text + "'");
    Integer scale = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
    return Rational(Integer(digits)) / Rational(scale);
}

FormExpression parse_expression(std::string_view text, std::span<const std::string> names,
                                bool allow_differentials) {
    if (names.size() > 30) throw ParseError("too many variables");
    return ExpressionParser(text, names, allow_differentials).parse();
}

RationalFunction parse_rational_function(std::string_view text, std::span<const std::string> names) {
    const FormExpression e = parse_expression(text, names, false);
    if (e.empty()) return RationalFunction(names.size());
    return e.begin()->second;
}

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
    const RationalFunction f = parse_rational_function(text, names);
    if (!f.is_polynomial()) throw ParseError("expected a polynomial: \"" + std::string(text) + "\"");
    return f.numerator();
}

// ---- formatting -----------------------------------------------------------

std::string format_rational_coefficient(const Rational& c) { return c.str(); }

std::string format(const Polynomial& p, std::span<const std::string> names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        const bool negative = c < 0;
        const Rational a = negative ? Rational(-c) : c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty())
            os << a.str();
        else if (a == 1)
            os << mono;
        else
            os << a.str() << "*" << mono;
    }
    return os.str();
}

std::string format(const RationalFunction& f, std::span<const std::string> names) {
    if (f.is_polynomial()) return format(f.numerator(), names);
    return "(" + format(f.numerator(), names) + ")/(" + format(f.denominator(), names) + ")";
}

std::string format_form(const FormExpression& terms, std::span<const std::string> names) {
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [mask, f] = *it;
        if (f.is_zero()) continue;
        std::string diff;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (mask >> i & 1u) diff += (diff.empty() ? "d" : "^d") + names[i];
        std::string coeff = format(f, names);
        bool negative = false;
        const bool single = f.is_polynomial() && f.numerator().size() == 1;
        if (single && coeff.front() == '-') {
            negative = true;
            coeff.erase(0, 1);
        }
        std::string term;
        if (diff.empty())
            term = single ? coeff : "(" + coeff + ")";
        else if (coeff == "1")
            term = diff;
        else
            term = (single ? coeff : "(" + coeff + ")") + "*" + diff;
        if (out.empty())
            out = (negative ? "-" : "") + term;
        else
            out += (negative ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

std::vector<std::string> simplex_coordinate_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back("t" + std::to_string(i));
    return out;
}

}  // namespace drcomp
