#pragma once

#include "tpkit/errors.hpp"
#include "tpkit/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tpkit {

// Exponent vector of a monomial; size equals the chart dimension.
using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t mono_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

// Graded lexicographic order in the chart's variable order.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::uint64_t da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

// Multivariate polynomial over the rationals in canonical form: a term map
// without zero coefficients, ordered by grlex. nvars is fixed per instance.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial zero(int nvars) { return Polynomial(nvars); }

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        if (c != 0) p.terms_.emplace(Monomial(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }

    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Monomial m(static_cast<std::size_t>(nvars), 0);
        m.at(static_cast<std::size_t>(i)) = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static Polynomial term(int nvars, Monomial m, const Rational& c) {
        Polynomial p(nvars);
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

    std::int64_t total_degree() const { // -1 for the zero polynomial
        if (terms_.empty()) return -1;
        return static_cast<std::int64_t>(mono_degree(terms_.rbegin()->first));
    }

    // Leading term in grlex order.
    const std::pair<const Monomial, Rational>& leading() const { return *terms_.rbegin(); }

    std::uint32_t degree_in(int v) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<std::size_t>(v)]);
        return d;
    }

    bool depends_on(int v) const { return degree_in(v) > 0; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        Polynomial r(a.nvars_);
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, k * c);
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    Polynomial pow(std::uint32_t e) const {
        Polynomial r = constant(nvars_, Rational(1));
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    Polynomial derivative(int v) const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m[static_cast<std::size_t>(v)];
            if (e == 0) continue;
            Monomial dm = m;
            dm[static_cast<std::size_t>(v)] = e - 1;
            r.add_term(std::move(dm), c * Rational(e));
        }
        return r;
    }

    Rational eval_rational(const std::vector<Rational>& args) const {
        Rational acc(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t *= args[i];
            acc += t;
        }
        return acc;
    }

    double eval_double(const std::vector<double>& args) const {
        double acc = 0.0;
        for (const auto& [m, c] : terms_) {
            double t = to_double(c);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t *= args[i];
            acc += t;
        }
        return acc;
    }

    void add_term(Monomial m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    int nvars_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Exact divisibility and gcd (primitive PRS).

// Exact quotient, or nullopt when g does not divide f. Repeated leading-term
// cancellation in grlex order; exactness of the divisor keeps every step valid.
inline std::optional<Polynomial> divexact(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
    if (g.is_constant()) return f * (Rational(1) / g.constant_value());
    Polynomial q(f.nvars());
    Polynomial r = f;
    const auto& [gm, gc] = g.leading();
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading();
        Monomial qm(rm.size());
        for (std::size_t i = 0; i < rm.size(); ++i) {
            if (rm[i] < gm[i]) return std::nullopt;
            qm[i] = rm[i] - gm[i];
        }
        Rational qc = rc / gc;
        Polynomial t = Polynomial::term(f.nvars(), qm, qc);
        q = q + t;
        r = r - t * g;
    }
    return q;
}

// Coefficients of f viewed as a univariate polynomial in variable v; the keys
// are v-degrees, the values have v-exponent zero.
inline std::map<std::uint32_t, Polynomial> collect_in(const Polynomial& f, int v) {
    std::map<std::uint32_t, Polynomial> out;
    for (const auto& [m, c] : f.terms()) {
        std::uint32_t e = m[static_cast<std::size_t>(v)];
        Monomial rest = m;
        rest[static_cast<std::size_t>(v)] = 0;
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, Polynomial(f.nvars())).first;
        it->second.add_term(std::move(rest), c);
    }
    return out;
}

inline Polynomial times_var_pow(const Polynomial& f, int v, std::uint32_t e) {
    Polynomial r(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        Monomial mm = m;
        mm[static_cast<std::size_t>(v)] += e;
        r.add_term(std::move(mm), c);
    }
    return r;
}

inline Polynomial leading_coeff_in(const Polynomial& f, int v) {
    auto parts = collect_in(f, v);
    return parts.rbegin()->second;
}

// Pseudo-remainder of a by b with respect to v (deg_v a >= deg_v b > 0).
inline Polynomial prem(Polynomial a, const Polynomial& b, int v) {
    const std::uint32_t db = b.degree_in(v);
    const Polynomial lcb = leading_coeff_in(b, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        std::uint32_t da = a.degree_in(v);
        Polynomial lca = leading_coeff_in(a, v);
        a = lcb * a - times_var_pow(lca, v, da - db) * b;
    }
    return a;
}

// Positive rational content and integer-primitive part: f = sign * content * primitive,
// where primitive has integer coprime coefficients and positive leading coefficient.
struct PrimitiveDecomposition {
    Rational content; // positive; zero for the zero polynomial
    int sign;         // sign of the grlex-leading coefficient
    Polynomial primitive;
};

inline PrimitiveDecomposition primitive_decompose(const Polynomial& f) {
    if (f.is_zero()) return {Rational(0), 0, f};
    Integer g(0), l(1);
    for (const auto& [m, c] : f.terms()) {
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(num(c)));
        l = boost::multiprecision::lcm(l, den(c));
    }
    Rational content(g, l);
    int sg = sign(f.leading().second);
    Rational scale = Rational(1) / content * Rational(sg);
    return {content, sg, f * scale};
}

inline Polynomial primitive_part(const Polynomial& f) { return primitive_decompose(f).primitive; }

inline Polynomial poly_gcd(const Polynomial& f, const Polynomial& g);

inline Polynomial gcd_list(const std::vector<Polynomial>& ps) {
    Polynomial acc = ps.empty() ? Polynomial(0) : Polynomial::zero(ps.front().nvars());
    for (const auto& p : ps) acc = poly_gcd(acc, p);
    return acc;
}

// Content of f with respect to v: gcd of the coefficients of powers of v.
inline Polynomial content_in(const Polynomial& f, int v) {
    std::vector<Polynomial> coeffs;
    for (auto& [e, c] : collect_in(f, v)) coeffs.push_back(std::move(c));
    return gcd_list(coeffs);
}

// Per-variable minimum exponent vector (the monomial content).
inline Monomial monomial_content(const Polynomial& f) {
    Monomial m;
    bool first = true;
    for (const auto& [mono, c] : f.terms()) {
        if (first) {
            m = mono;
            first = false;
        } else {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], mono[i]);
        }
    }
    return m;
}

inline Polynomial shift_down(const Polynomial& f, const Monomial& m) {
    Polynomial r(f.nvars());
    for (const auto& [mono, c] : f.terms()) {
        Monomial mm = mono;
        for (std::size_t i = 0; i < mm.size(); ++i) mm[i] -= m[i];
        r.add_term(std::move(mm), c);
    }
    return r;
}

// gcd over Q[x1..xn], normalized to an integer-primitive polynomial with
// positive leading coefficient (so gcd output is canonical). Monomial content
// is split off first; the variables x_i are prime, so it factors through the
// gcd. The rest is a primitive PRS.
inline Polynomial poly_gcd(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero()) return g.is_zero() ? g : primitive_part(g);
    if (g.is_zero()) return primitive_part(f);
    if (f.is_constant() || g.is_constant())
        return Polynomial::constant(f.nvars(), Rational(1));

    Monomial mf = monomial_content(f);
    Monomial mg = monomial_content(g);
    Monomial shared(mf.size(), 0);
    bool have_shift = false;
    for (std::size_t i = 0; i < mf.size(); ++i) {
        shared[i] = std::min(mf[i], mg[i]);
        if (mf[i] > 0 || mg[i] > 0) have_shift = true;
    }
    if (have_shift) {
        Polynomial core = poly_gcd(shift_down(f, mf), shift_down(g, mg));
        Polynomial m = Polynomial::term(f.nvars(), shared, Rational(1));
        return primitive_part(m * core);
    }

    int v = -1;
    for (int i = f.nvars() - 1; i >= 0; --i)
        if (f.depends_on(i) || g.depends_on(i)) { v = i; break; }
    if (v < 0) return Polynomial::constant(f.nvars(), Rational(1));

    if (!f.depends_on(v)) return poly_gcd(content_in(g, v), f);
    if (!g.depends_on(v)) return poly_gcd(content_in(f, v), g);

    Polynomial cf = content_in(f, v);
    Polynomial cg = content_in(g, v);
    Polynomial c = poly_gcd(cf, cg);
    Polynomial a = *divexact(f, cf);
    Polynomial b = *divexact(g, cg);
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);

    Polynomial h;
    while (true) {
        Polynomial r = prem(a, b, v);
        if (r.is_zero()) { h = *divexact(b, content_in(b, v)); break; }
        if (r.degree_in(v) == 0) { h = Polynomial::constant(f.nvars(), Rational(1)); break; }
        a = std::move(b);
        b = *divexact(r, content_in(r, v));
    }
    return primitive_part(c * h);
}

// ---------------------------------------------------------------------------
// Printing in canonical (grlex-descending) order.

inline std::string mono_to_string(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

inline std::string to_string(const Polynomial& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (s.empty()) {
            if (a < 0) { s += "-"; a = -a; }
        } else {
            if (a < 0) { s += " - "; a = -a; }
            else s += " + ";
        }
        std::string ms = mono_to_string(m, vars);
        if (ms.empty()) s += to_string(a);
        else if (a == 1) s += ms;
        else s += to_string(a) + "*" + ms;
    }
    return s;
}

} // namespace tpkit
