#pragma once

#include "tpkit/tensor.hpp"

#include <vector>

namespace tpkit {

// Smooth map between charts with rational-function component expressions,
// one per codomain variable.
class PolyMap {
public:
    PolyMap(ChartPtr domain, ChartPtr codomain, std::vector<ScalarExpr> components)
        : domain_(std::move(domain)), codomain_(std::move(codomain)),
          components_(std::move(components)) {
        if (static_cast<int>(components_.size()) != codomain_->dim())
            throw DimensionError("map component count must equal codomain dimension");
        for (const auto& c : components_)
            require_same_chart(c.chart(), domain_, "map component");
    }

    static PolyMap identity(const ChartPtr& chart) {
        std::vector<ScalarExpr> comps;
        for (int i = 0; i < chart->dim(); ++i) comps.push_back(ScalarExpr::var(chart, i));
        return PolyMap(chart, chart, std::move(comps));
    }

    const ChartPtr& domain() const { return domain_; }
    const ChartPtr& codomain() const { return codomain_; }
    const std::vector<ScalarExpr>& components() const { return components_; }

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        std::vector<Rational> y;
        y.reserve(components_.size());
        for (const auto& c : components_) y.push_back(c.eval(x));
        return y;
    }

    std::vector<double> apply_double(const std::vector<double>& x, double pole_tol = 1e-8) const {
        std::vector<double> y;
        y.reserve(components_.size());
        for (const auto& c : components_) y.push_back(c.eval_double(x, pole_tol));
        return y;
    }

private:
    ChartPtr domain_, codomain_;
    std::vector<ScalarExpr> components_;
};

// f on the codomain pulled back to J's domain (composition f o J).
inline ScalarExpr pullback_scalar(const PolyMap& J, const ScalarExpr& f) {
    require_same_chart(f.chart(), J.codomain(), "pullback_scalar");
    return f.substitute(J.components());
}

// g: P2 -> P3 composed with k: P1 -> P2 gives P1 -> P3.
inline PolyMap compose(const PolyMap& g, const PolyMap& k) {
    require_same_chart(g.domain(), k.codomain(), "compose");
    std::vector<ScalarExpr> comps;
    for (const auto& c : g.components()) comps.push_back(c.substitute(k.components()));
    return PolyMap(k.domain(), g.codomain(), std::move(comps));
}

// Jacobian entry (i, j) = d(component_i)/d(x_j), codomain-dim x domain-dim.
inline Mat<ScalarExpr> jacobian(const PolyMap& J) {
    ScalarOps ops(J.domain());
    Mat<ScalarExpr> m(J.codomain()->dim(), J.domain()->dim(), ops.zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = J.components()[static_cast<std::size_t>(i)].partial(j);
    return m;
}

inline Mat<Rational> jacobian_at(const PolyMap& J, const std::vector<Rational>& x) {
    Mat<ScalarExpr> sym = jacobian(J);
    Mat<Rational> m(sym.rows, sym.cols, Rational(0));
    for (int i = 0; i < sym.rows; ++i)
        for (int j = 0; j < sym.cols; ++j) m.at(i, j) = sym.at(i, j).eval(x);
    return m;
}

// Pullback of a k-form along J: coefficients are composed with J and the
// codomain coframe is replaced by the rows of the Jacobian.
inline TensorField pullback(const PolyMap& J, const TensorField& fm) {
    if (fm.variance() != Variance::form) throw DegreeError("pullback expects a form");
    require_same_chart(fm.chart(), J.codomain(), "pullback");
    const ChartPtr& dom = J.domain();
    TensorField out = TensorField::zero(dom, Variance::form, fm.degree());
    if (fm.degree() == 0) {
        if (!fm.is_zero()) out.add_term({}, pullback_scalar(J, fm.coeff({})));
        return out;
    }
    // J^* dy_a as 1-forms on the domain
    std::vector<TensorField> pulled_coframe;
    for (int a = 0; a < J.codomain()->dim(); ++a) {
        TensorField da = TensorField::zero(dom, Variance::form, 1);
        for (int j = 0; j < dom->dim(); ++j)
            da.add_term({j}, J.components()[static_cast<std::size_t>(a)].partial(j));
        pulled_coframe.push_back(std::move(da));
    }
    for (const auto& [K, c] : fm.coeffs()) {
        TensorField w = TensorField::scalar(dom, Variance::form, pullback_scalar(J, c));
        for (int k : K) w = wedge(w, pulled_coframe[static_cast<std::size_t>(k)]);
        out = out + w;
    }
    return out;
}

} // namespace tpkit
