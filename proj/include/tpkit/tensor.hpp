#pragma once

#include "tpkit/linalg.hpp"
#include "tpkit/scalar_expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace tpkit {

enum class Variance { multivector, form };

using IndexTuple = std::vector<int>; // strictly increasing, 0-based

// Sign of the permutation sorting the concatenation (I, J); 0 when the tuples
// intersect. Both inputs are strictly increasing, so only cross pairs invert.
inline int merge_sign(const IndexTuple& I, const IndexTuple& J, IndexTuple* merged = nullptr) {
    int inversions = 0;
    for (int a : I)
        for (int b : J) {
            if (a == b) return 0;
            if (a > b) ++inversions;
        }
    if (merged) {
        merged->clear();
        merged->reserve(I.size() + J.size());
        std::size_t i = 0, j = 0;
        while (i < I.size() || j < J.size()) {
            if (j >= J.size() || (i < I.size() && I[i] < J[j])) merged->push_back(I[i++]);
            else merged->push_back(J[j++]);
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

// Antisymmetric multivector field or differential form of degree k on a chart,
// stored as canonical coefficients on strictly increasing index tuples.
class TensorField {
public:
    using CoeffMap = std::map<IndexTuple, ScalarExpr>;

    TensorField() = default;

    static TensorField zero(ChartPtr chart, Variance v, int degree) {
        TensorField t;
        t.chart_ = std::move(chart);
        t.variance_ = v;
        t.degree_ = degree;
        if (degree < 0) throw DegreeError("tensor degree must be nonnegative");
        return t;
    }

    static TensorField make(ChartPtr chart, Variance v, int degree,
                            std::vector<std::pair<IndexTuple, ScalarExpr>> entries) {
        TensorField t = zero(std::move(chart), v, degree);
        for (auto& [idx, c] : entries) t.add_term(idx, c);
        return t;
    }

    static TensorField scalar(ChartPtr chart, Variance v, const ScalarExpr& value) {
        TensorField t = zero(std::move(chart), v, 0);
        t.add_term({}, value);
        return t;
    }

    // single basis vector field c * d/dx_i
    static TensorField vector(const ChartPtr& chart, int i, const ScalarExpr& c) {
        return make(chart, Variance::multivector, 1, {{IndexTuple{i}, c}});
    }

    // single basis 1-form c * dx_i
    static TensorField covector(const ChartPtr& chart, int i, const ScalarExpr& c) {
        return make(chart, Variance::form, 1, {{IndexTuple{i}, c}});
    }

    // coordinate frame / coframe elements
    static TensorField frame(const ChartPtr& chart, int i) {
        return vector(chart, i, ScalarExpr::one(chart));
    }
    static TensorField coframe(const ChartPtr& chart, int i) {
        return covector(chart, i, ScalarExpr::one(chart));
    }

    const ChartPtr& chart() const { return chart_; }
    Variance variance() const { return variance_; }
    int degree() const { return degree_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    ScalarExpr coeff(const IndexTuple& idx) const {
        auto it = coeffs_.find(idx);
        if (it != coeffs_.end()) return it->second;
        return ScalarExpr::zero(chart_);
    }

    void add_term(const IndexTuple& idx, const ScalarExpr& c) {
        validate_tuple(idx);
        require_same_chart(chart_, c.chart(), "tensor coefficient");
        if (c.is_zero()) return;
        auto it = coeffs_.find(idx);
        if (it == coeffs_.end()) coeffs_.emplace(idx, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend bool operator==(const TensorField& a, const TensorField& b) {
        return same_chart(a.chart_, b.chart_) && a.variance_ == b.variance_ &&
               a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TensorField& a, const TensorField& b) { return !(a == b); }

    TensorField operator-() const {
        TensorField t = zero(chart_, variance_, degree_);
        for (const auto& [idx, c] : coeffs_) t.coeffs_.emplace(idx, -c);
        return t;
    }

    friend TensorField operator+(const TensorField& a, const TensorField& b) {
        a.require_compatible(b, "tensor +");
        TensorField t = a;
        for (const auto& [idx, c] : b.coeffs_) t.add_term(idx, c);
        return t;
    }

    friend TensorField operator-(const TensorField& a, const TensorField& b) {
        a.require_compatible(b, "tensor -");
        TensorField t = a;
        for (const auto& [idx, c] : b.coeffs_) t.add_term(idx, -c);
        return t;
    }

    friend TensorField operator*(const ScalarExpr& s, const TensorField& a) {
        TensorField t = zero(a.chart_, a.variance_, a.degree_);
        if (s.is_zero()) return t;
        for (const auto& [idx, c] : a.coeffs_) t.add_term(idx, s * c);
        return t;
    }
    friend TensorField operator*(const TensorField& a, const ScalarExpr& s) { return s * a; }
    friend TensorField operator*(const Rational& q, const TensorField& a) {
        return ScalarExpr::constant(a.chart_, q) * a;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        for (const auto& [idx, c] : coeffs_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (std::size_t t = 0; t < idx.size(); ++t) {
                s += (t == 0 ? "*" : "^");
                s += (variance_ == Variance::form ? "d" : "d_") + chart_->var(idx[t]);
            }
        }
        return s;
    }

private:
    void require_compatible(const TensorField& b, const char* what) const {
        require_same_chart(chart_, b.chart_, what);
        if (variance_ != b.variance_) throw DegreeError(std::string(what) + ": variance mismatch");
        if (degree_ != b.degree_) throw DegreeError(std::string(what) + ": degree mismatch");
    }

    void validate_tuple(const IndexTuple& idx) const {
        if (static_cast<int>(idx.size()) != degree_)
            throw DegreeError("index tuple length does not match tensor degree");
        for (std::size_t t = 0; t < idx.size(); ++t) {
            if (idx[t] < 0 || idx[t] >= chart_->dim())
                throw DimensionError("tensor index out of chart range");
            if (t > 0 && idx[t] <= idx[t - 1])
                throw DegreeError("indices must be strictly increasing");
        }
    }

    ChartPtr chart_;
    Variance variance_ = Variance::multivector;
    int degree_ = 0;
    CoeffMap coeffs_;
};

// ---------------------------------------------------------------------------
// Exterior algebra operations.

inline TensorField wedge(const TensorField& a, const TensorField& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    if (a.variance() != b.variance()) throw DegreeError("wedge: variance mismatch");
    TensorField out = TensorField::zero(a.chart(), a.variance(), a.degree() + b.degree());
    IndexTuple merged;
    for (const auto& [I, ca] : a.coeffs())
        for (const auto& [J, cb] : b.coeffs()) {
            int s = merge_sign(I, J, &merged);
            if (s == 0) continue;
            ScalarExpr c = ca * cb;
            out.add_term(merged, s > 0 ? c : -c);
        }
    return out;
}

// Full contraction <multivector_k, form_k> with the determinant convention
// <d_{i1}^...^d_{ik}, dx_{j1}^...^dx_{jk}> = det(delta_{i_a j_b}).
inline ScalarExpr pairing(const TensorField& mv, const TensorField& fm) {
    require_same_chart(mv.chart(), fm.chart(), "pairing");
    if (mv.variance() != Variance::multivector || fm.variance() != Variance::form)
        throw DegreeError("pairing expects (multivector, form)");
    if (mv.degree() != fm.degree()) throw DegreeError("pairing: degree mismatch");
    ScalarExpr acc = ScalarExpr::zero(mv.chart());
    for (const auto& [I, c] : mv.coeffs()) acc = acc + c * fm.coeff(I);
    return acc;
}

// Interior product of a p-multivector into a k-form:
// (i_V w)(Y_1,...,Y_{k-p}) = w(V, Y_1,...,Y_{k-p}).
inline TensorField interior(const TensorField& v, const TensorField& fm) {
    require_same_chart(v.chart(), fm.chart(), "interior");
    if (v.variance() != Variance::multivector || fm.variance() != Variance::form)
        throw DegreeError("interior expects (multivector, form)");
    if (v.degree() > fm.degree()) throw DegreeError("interior: degree overflow");
    TensorField out = TensorField::zero(v.chart(), Variance::form, fm.degree() - v.degree());
    for (const auto& [I, cv] : v.coeffs())
        for (const auto& [M, cf] : fm.coeffs()) {
            // need I subset of M; K = M \ I
            IndexTuple K;
            K.reserve(M.size() - I.size());
            std::size_t ii = 0;
            bool subset = true;
            for (int m : M) {
                if (ii < I.size() && I[ii] == m) ++ii;
                else K.push_back(m);
            }
            subset = (ii == I.size());
            if (!subset) continue;
            int s = merge_sign(I, K);
            ScalarExpr c = cv * cf;
            out.add_term(K, s > 0 ? c : -c);
        }
    return out;
}

// Coordinate exterior derivative.
inline TensorField ext_d(const TensorField& fm) {
    if (fm.variance() != Variance::form) throw DegreeError("ext_d expects a form");
    TensorField out = TensorField::zero(fm.chart(), Variance::form, fm.degree() + 1);
    const int n = fm.chart()->dim();
    for (const auto& [J, c] : fm.coeffs())
        for (int i = 0; i < n; ++i) {
            ScalarExpr dc = c.partial(i);
            if (dc.is_zero()) continue;
            IndexTuple merged;
            int s = merge_sign(IndexTuple{i}, J, &merged);
            if (s == 0) continue;
            out.add_term(merged, s > 0 ? dc : -dc);
        }
    return out;
}

// Differential of a scalar as a 1-form.
inline TensorField differential(const ScalarExpr& f) {
    TensorField out = TensorField::zero(f.chart(), Variance::form, 1);
    for (int i = 0; i < f.chart()->dim(); ++i) out.add_term({i}, f.partial(i));
    return out;
}

// X(f) for a vector field X.
inline ScalarExpr apply_vector(const TensorField& X, const ScalarExpr& f) {
    if (X.variance() != Variance::multivector || X.degree() != 1)
        throw DegreeError("apply_vector expects a vector field");
    ScalarExpr acc = ScalarExpr::zero(f.chart());
    for (const auto& [I, c] : X.coeffs()) acc = acc + c * f.partial(I[0]);
    return acc;
}

inline TensorField vector_commutator(const TensorField& X, const TensorField& Y) {
    require_same_chart(X.chart(), Y.chart(), "commutator");
    if (X.degree() != 1 || Y.degree() != 1 || X.variance() != Variance::multivector ||
        Y.variance() != Variance::multivector)
        throw DegreeError("commutator expects vector fields");
    TensorField out = TensorField::zero(X.chart(), Variance::multivector, 1);
    for (const auto& [K, xk] : X.coeffs())
        for (const auto& [M, ym] : Y.coeffs()) {
            // X^k d_k (Y^m) d_m - Y^m d_m (X^k) d_k
            out.add_term(M, xk * ym.partial(K[0]));
            out.add_term(K, -(ym * xk.partial(M[0])));
        }
    return out;
}

// Cartan formula.
inline TensorField lie_derivative(const TensorField& X, const TensorField& fm) {
    if (X.degree() != 1) throw DegreeError("lie_derivative expects a vector field");
    return interior(X, ext_d(fm)) + ext_d(interior(X, fm));
}

// ---------------------------------------------------------------------------
// Schouten-Nijenhuis bracket via the decomposable expansion
//   [X_1^...^X_p, Y_1^...^Y_q] =
//     sum_{r,s} (-1)^{r+s} [X_r, Y_s] ^ X_1..^X_r^..X_p ^ Y_1..^Y_s^..Y_q
// extended bilinearly, with [X, f] = X(f) and [X, Y] the commutator. Each
// stored term c * d_I is decomposed with the coefficient on the first factor.

namespace detail {

inline TensorField wedge_fold(const ChartPtr& chart, const std::vector<TensorField>& factors,
                              const TensorField& head) {
    TensorField acc = head;
    for (const auto& f : factors) acc = wedge(acc, f);
    (void)chart;
    return acc;
}

// [A, g] for a p-multivector A (p >= 1) and scalar g:
// [X_1^...^X_p, g] = sum_r (-1)^{p-r} X_r(g) X_1^..^X_r^..^X_p.
inline TensorField schouten_with_function(const TensorField& A, const ScalarExpr& g) {
    const ChartPtr& chart = A.chart();
    const int p = A.degree();
    TensorField out = TensorField::zero(chart, Variance::multivector, p - 1);
    for (const auto& [I, a] : A.coeffs()) {
        for (int r = 0; r < p; ++r) {
            ScalarExpr v = a * g.partial(I[static_cast<std::size_t>(r)]);
            if (v.is_zero()) continue;
            IndexTuple rest;
            for (int t = 0; t < p; ++t)
                if (t != r) rest.push_back(I[static_cast<std::size_t>(t)]);
            int sgn = ((p - 1 - r) % 2 == 0) ? 1 : -1; // (-1)^{p-(r+1)}
            out.add_term(rest, sgn > 0 ? v : -v);
        }
    }
    return out;
}

} // namespace detail

inline TensorField schouten(const TensorField& A, const TensorField& B) {
    require_same_chart(A.chart(), B.chart(), "schouten");
    if (A.variance() != Variance::multivector || B.variance() != Variance::multivector)
        throw DegreeError("schouten expects multivectors");
    const ChartPtr& chart = A.chart();
    const int p = A.degree(), q = B.degree();

    if (p == 0 && q == 0) return TensorField::zero(chart, Variance::multivector, 0);
    if (q == 0) {
        ScalarExpr g = B.coeff({});
        return detail::schouten_with_function(A, g);
    }
    if (p == 0) {
        ScalarExpr f = A.coeff({});
        TensorField r = detail::schouten_with_function(B, f);
        return (q % 2 == 0) ? r : -r; // [f, B] = (-1)^q [B, f]
    }

    TensorField out = TensorField::zero(chart, Variance::multivector, p + q - 1);
    ScalarExpr one = ScalarExpr::one(chart);
    for (const auto& [I, a] : A.coeffs())
        for (const auto& [J, b] : B.coeffs())
            for (int r = 1; r <= p; ++r)
                for (int s = 1; s <= q; ++s) {
                    if (r > 1 && s > 1) continue;
                    const int ir = I[static_cast<std::size_t>(r - 1)];
                    const int js = J[static_cast<std::size_t>(s - 1)];
                    TensorField comm = TensorField::zero(chart, Variance::multivector, 1);
                    if (r == 1 && s == 1) {
                        comm.add_term({js}, a * b.partial(ir));
                        comm.add_term({ir}, -(b * a.partial(js)));
                    } else if (r == 1) {
                        comm.add_term({ir}, -a.partial(js)); // [a d_ir, d_js]
                    } else {
                        comm.add_term({js}, b.partial(ir)); // [d_ir, b d_js]
                    }
                    if (comm.is_zero()) continue;
                    std::vector<TensorField> rest;
                    for (int t = 1; t <= p; ++t) {
                        if (t == r) continue;
                        ScalarExpr c = (t == 1) ? a : one;
                        rest.push_back(TensorField::vector(chart, I[static_cast<std::size_t>(t - 1)], c));
                    }
                    for (int u = 1; u <= q; ++u) {
                        if (u == s) continue;
                        ScalarExpr c = (u == 1) ? b : one;
                        rest.push_back(TensorField::vector(chart, J[static_cast<std::size_t>(u - 1)], c));
                    }
                    TensorField term = detail::wedge_fold(chart, rest, comm);
                    out = ((r + s) % 2 == 0) ? out + term : out - term;
                }
    return out;
}

// ---------------------------------------------------------------------------
// Multilinear evaluation on coordinate-free arguments.

// w(X_1,...,X_k) for a k-form w and vector fields X_a:
// sum_J w_J det[(X_a)^{j_b}].
inline ScalarExpr form_eval_on_vectors(const TensorField& fm, const std::vector<TensorField>& Xs) {
    if (fm.variance() != Variance::form) throw DegreeError("form_eval_on_vectors expects a form");
    if (static_cast<int>(Xs.size()) != fm.degree())
        throw DegreeError("form_eval_on_vectors: argument count mismatch");
    const ChartPtr& chart = fm.chart();
    ScalarOps ops(chart);
    ScalarExpr acc = ScalarExpr::zero(chart);
    const int k = fm.degree();
    for (const auto& [J, c] : fm.coeffs()) {
        Mat<ScalarExpr> m(k, k, ops.zero());
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                m.at(a, b) = Xs[static_cast<std::size_t>(a)].coeff({J[static_cast<std::size_t>(b)]});
        acc = acc + c * det(m, ops);
    }
    return acc;
}

// T(a_1,...,a_k) for a k-multivector T and 1-forms a_i, with the determinant
// pairing convention: T(a_1,...,a_k) = <T, a_1 ^ ... ^ a_k>.
inline ScalarExpr mv_eval_on_forms(const TensorField& mv, const std::vector<TensorField>& alphas) {
    if (mv.variance() != Variance::multivector)
        throw DegreeError("mv_eval_on_forms expects a multivector");
    if (static_cast<int>(alphas.size()) != mv.degree())
        throw DegreeError("mv_eval_on_forms: argument count mismatch");
    const ChartPtr& chart = mv.chart();
    ScalarOps ops(chart);
    ScalarExpr acc = ScalarExpr::zero(chart);
    const int k = mv.degree();
    for (const auto& [I, c] : mv.coeffs()) {
        Mat<ScalarExpr> m(k, k, ops.zero());
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                m.at(a, b) = alphas[static_cast<std::size_t>(a)].coeff({I[static_cast<std::size_t>(b)]});
        acc = acc + c * det(m, ops);
    }
    return acc;
}

// Component vector of a vector field / 1-form at a rational point.
inline std::vector<Rational> components_at(const TensorField& t, const std::vector<Rational>& x) {
    if (t.degree() != 1) throw DegreeError("components_at expects degree 1");
    std::vector<Rational> out(static_cast<std::size_t>(t.chart()->dim()), Rational(0));
    for (const auto& [I, c] : t.coeffs()) out[static_cast<std::size_t>(I[0])] = c.eval(x);
    return out;
}

inline std::vector<double> components_at_double(const TensorField& t, const std::vector<double>& x,
                                                double pole_tol = 1e-8) {
    if (t.degree() != 1) throw DegreeError("components_at_double expects degree 1");
    std::vector<double> out(static_cast<std::size_t>(t.chart()->dim()), 0.0);
    for (const auto& [I, c] : t.coeffs()) out[static_cast<std::size_t>(I[0])] = c.eval_double(x, pole_tol);
    return out;
}

} // namespace tpkit
