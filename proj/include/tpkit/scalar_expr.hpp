#pragma once

#include "tpkit/chart.hpp"
#include "tpkit/polynomial.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace tpkit {

// Exact rational function on a chart, kept in canonical form:
//   gcd(numerator, denominator) = 1, both with coprime integer coefficients,
//   denominator leading coefficient (grlex) positive.
// Equality of canonical forms is structural, which makes zero-testing exact.
class ScalarExpr {
public:
    ScalarExpr() = default;

    static ScalarExpr zero(ChartPtr chart) {
        int n = chart->dim();
        return ScalarExpr(std::move(chart), Polynomial::zero(n),
                          Polynomial::constant(n, Rational(1)), false);
    }

    static ScalarExpr constant(ChartPtr chart, const Rational& c) {
        int n = chart->dim();
        return ScalarExpr(std::move(chart), Polynomial::constant(n, Rational(tpkit::num(c))),
                          Polynomial::constant(n, Rational(tpkit::den(c))), false);
    }

    static ScalarExpr one(ChartPtr chart) { return constant(std::move(chart), Rational(1)); }

    static ScalarExpr var(ChartPtr chart, int i) {
        int n = chart->dim();
        if (i < 0 || i >= n) throw DimensionError("variable index out of range");
        return ScalarExpr(std::move(chart), Polynomial::variable(n, i),
                          Polynomial::constant(n, Rational(1)), false);
    }

    static ScalarExpr var(const ChartPtr& chart, const std::string& name) {
        auto idx = chart->var_index(name);
        if (!idx) throw DimensionError("unknown variable '" + name + "' on chart " + chart->name());
        return var(chart, *idx);
    }

    static ScalarExpr from_ratio(ChartPtr chart, Polynomial num, Polynomial den) {
        return ScalarExpr(std::move(chart), std::move(num), std::move(den), true);
    }

    static ScalarExpr from_poly(ChartPtr chart, Polynomial num) {
        int n = chart->dim();
        return ScalarExpr(std::move(chart), std::move(num), Polynomial::constant(n, Rational(1)),
                          true);
    }

    const ChartPtr& chart() const { return chart_; }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
        return same_chart(a.chart_, b.chart_) && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    ScalarExpr operator-() const { return ScalarExpr(chart_, -num_, den_, false); }

    // Addition over the lcm of the denominators keeps the trailing gcd small:
    // with g = gcd(b, d), only gcd(numerator, g) can still cancel.
    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) { return add_sub(a, b, false); }
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return add_sub(a, b, true); }

    // Inputs are canonical, so after cross-cancellation the product is too
    // (up to the scaling normalization).
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
        require_same_chart(a.chart_, b.chart_, "scalar *");
        if (a.is_zero() || b.is_zero()) return zero(a.chart_);
        Polynomial g1 = poly_gcd(a.num_, b.den_);
        Polynomial g2 = poly_gcd(b.num_, a.den_);
        ScalarExpr r(a.chart_, *divexact(a.num_, g1) * *divexact(b.num_, g2),
                     *divexact(a.den_, g2) * *divexact(b.den_, g1), false);
        r.rescale_();
        return r;
    }

    friend ScalarExpr operator*(const ScalarExpr& a, const Rational& c) {
        if (c == 0) return zero(a.chart_);
        ScalarExpr r(a.chart_, a.num_ * c, a.den_, false);
        r.rescale_();
        return r;
    }
    friend ScalarExpr operator*(const Rational& c, const ScalarExpr& a) { return a * c; }

    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
        require_same_chart(a.chart_, b.chart_, "scalar /");
        if (b.is_zero()) throw DivisionByZeroError("division by the zero expression");
        if (a.is_zero()) return zero(a.chart_);
        Polynomial g1 = poly_gcd(a.num_, b.num_);
        Polynomial g2 = poly_gcd(b.den_, a.den_);
        ScalarExpr r(a.chart_, *divexact(a.num_, g1) * *divexact(b.den_, g2),
                     *divexact(a.den_, g2) * *divexact(b.num_, g1), false);
        r.rescale_();
        return r;
    }

    // gcd(n,d) = 1 implies gcd(n^e, d^e) = 1, and powers of primitive
    // polynomials stay primitive, so no reduction pass is needed.
    ScalarExpr pow(int e) const {
        if (e == 0) return one(chart_);
        if (e < 0 && is_zero()) throw DivisionByZeroError("zero raised to a negative power");
        std::uint32_t a = static_cast<std::uint32_t>(e >= 0 ? e : -e);
        Polynomial n = num_.pow(a), d = den_.pow(a);
        if (e < 0) std::swap(n, d);
        ScalarExpr r(chart_, std::move(n), std::move(d), false);
        r.rescale_();
        return r;
    }

    // Exact quotient-rule derivative, canonicalized.
    ScalarExpr partial(int v) const {
        if (v < 0 || v >= chart_->dim()) throw DimensionError("partial: variable index out of range");
        Polynomial n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
        return ScalarExpr(chart_, std::move(n), den_ * den_, true);
    }

    ScalarExpr partial(const std::string& varname) const {
        auto idx = chart_->var_index(varname);
        if (!idx) throw DimensionError("partial: unknown variable '" + varname + "'");
        return partial(*idx);
    }

    Rational eval(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != chart_->dim())
            throw DimensionError("eval: point dimension mismatch");
        Rational d = den_.eval_rational(point);
        if (d == 0)
            throw PoleError("pole of " + str() + " at " + point_str(point));
        return num_.eval_rational(point) / d;
    }

    // Numeric evaluation with a pole guard on the denominator magnitude.
    double eval_double(const std::vector<double>& point, double pole_tol = 1e-8) const {
        double d = den_.eval_double(point);
        if (std::abs(d) < pole_tol)
            throw PoleProximityError("denominator magnitude below tolerance for " + str());
        return num_.eval_double(point) / d;
    }

    // Substitute one expression per chart variable (arguments live on a common
    // chart). The denominator must not collapse to zero identically.
    ScalarExpr substitute(const std::vector<ScalarExpr>& args) const {
        if (static_cast<int>(args.size()) != chart_->dim())
            throw DimensionError("substitute: argument count mismatch");
        ChartPtr target = args.front().chart();
        ScalarExpr n = eval_poly_at(num_, args, target);
        ScalarExpr d = eval_poly_at(den_, args, target);
        if (d.is_zero())
            throw PoleError("composition sends the denominator of " + str() + " to zero identically");
        return n / d;
    }

    std::string str() const {
        if (is_polynomial() && den_.constant_value() == 1) return to_string(num_, chart_->vars());
        return "(" + to_string(num_, chart_->vars()) + ")/(" + to_string(den_, chart_->vars()) + ")";
    }

private:
    // The helpers below keep every ScalarExpr canonical. add_sub and the
    // products reduce with small gcds; rescale_ applies only the scaling part
    // of the normalization (integer-coprime coefficients, positive-leading
    // denominator), valid whenever num/den are already coprime.
    static ScalarExpr add_sub(const ScalarExpr& a, const ScalarExpr& b, bool subtract) {
        require_same_chart(a.chart_, b.chart_, subtract ? "scalar -" : "scalar +");
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        Polynomial g = poly_gcd(a.den_, b.den_);
        Polynomial bq = *divexact(b.den_, g);
        Polynomial aq = *divexact(a.den_, g);
        Polynomial n = subtract ? a.num_ * bq - b.num_ * aq : a.num_ * bq + b.num_ * aq;
        if (n.is_zero()) return zero(a.chart_);
        Polynomial d = aq * b.den_;
        // only factors of g (and units) can cancel
        Polynomial h = poly_gcd(n, g);
        if (!h.is_constant()) {
            n = *divexact(n, h);
            d = *divexact(d, h);
        }
        ScalarExpr r(a.chart_, std::move(n), std::move(d), false);
        r.rescale_();
        return r;
    }

    ScalarExpr(ChartPtr chart, Polynomial num, Polynomial den, bool canonicalize)
        : chart_(std::move(chart)), num_(std::move(num)), den_(std::move(den)) {
        if (canonicalize) canonicalize_();
        else if (num_.is_zero()) den_ = Polynomial::constant(chart_->dim(), Rational(1));
    }

    void canonicalize_() {
        if (den_.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
        if (num_.is_zero()) {
            den_ = Polynomial::constant(chart_->dim(), Rational(1));
            return;
        }
        if (!den_.is_constant()) {
            Polynomial g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = *divexact(num_, g);
                den_ = *divexact(den_, g);
            }
        }
        rescale_();
    }

    void rescale_() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(chart_->dim(), Rational(1));
            return;
        }
        auto dn = primitive_decompose(num_);
        auto dd = primitive_decompose(den_);
        // num/den = (sn*sd) * (cn/cd) * (Np/Dp); spread p/q of cn/cd over the
        // primitive parts so both carry coprime integer coefficients and the
        // denominator leads positively.
        Rational ratio = dn.content / dd.content;
        Integer p = tpkit::num(ratio), q = tpkit::den(ratio);
        int s = dn.sign * dd.sign;
        num_ = dn.primitive * Rational(s * p);
        den_ = dd.primitive * Rational(q);
    }

    static ScalarExpr eval_poly_at(const Polynomial& p, const std::vector<ScalarExpr>& args,
                                   const ChartPtr& target) {
        ScalarExpr acc = ScalarExpr::zero(target);
        for (const auto& [m, c] : p.terms()) {
            ScalarExpr t = ScalarExpr::constant(target, c);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t = t * args[i];
            acc = acc + t;
        }
        return acc;
    }

    static std::string point_str(const std::vector<Rational>& p) {
        std::string s = "(";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) s += ",";
            s += to_string(p[i]);
        }
        return s + ")";
    }

    ChartPtr chart_;
    Polynomial num_, den_;
};

inline ScalarExpr partial(const ScalarExpr& e, int v) { return e.partial(v); }
inline ScalarExpr partial(const ScalarExpr& e, const std::string& v) { return e.partial(v); }

} // namespace tpkit
