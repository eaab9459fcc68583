#pragma once

#include "tpkit/errors.hpp"
#include "tpkit/rational.hpp"
#include "tpkit/scalar_expr.hpp"

#include <optional>
#include <vector>

namespace tpkit {

// Dense matrix over an arbitrary exact field, used both for rational matrices
// at sample points and for symbolic matrices of rational functions.
template <class F>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<F> a;

    Mat() = default;
    Mat(int r, int c, const F& fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    F& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const F& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Field operations bundle. Rational and ScalarExpr instantiations below.
struct RationalOps {
    using value_type = Rational;
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    bool is_zero(const Rational& x) const { return x == 0; }
    Rational add(const Rational& x, const Rational& y) const { return x + y; }
    Rational sub(const Rational& x, const Rational& y) const { return x - y; }
    Rational mul(const Rational& x, const Rational& y) const { return x * y; }
    Rational div(const Rational& x, const Rational& y) const { return x / y; }
    Rational neg(const Rational& x) const { return -x; }
};

struct ScalarOps {
    using value_type = ScalarExpr;
    ChartPtr chart;
    explicit ScalarOps(ChartPtr c) : chart(std::move(c)) {}
    ScalarExpr zero() const { return ScalarExpr::zero(chart); }
    ScalarExpr one() const { return ScalarExpr::one(chart); }
    bool is_zero(const ScalarExpr& x) const { return x.is_zero(); }
    ScalarExpr add(const ScalarExpr& x, const ScalarExpr& y) const { return x + y; }
    ScalarExpr sub(const ScalarExpr& x, const ScalarExpr& y) const { return x - y; }
    ScalarExpr mul(const ScalarExpr& x, const ScalarExpr& y) const { return x * y; }
    ScalarExpr div(const ScalarExpr& x, const ScalarExpr& y) const { return x / y; }
    ScalarExpr neg(const ScalarExpr& x) const { return -x; }
};

template <class F, class Ops>
Mat<F> mat_mul(const Mat<F>& A, const Mat<F>& B, const Ops& ops) {
    if (A.cols != B.rows) throw DimensionError("matrix product shape mismatch");
    Mat<F> C(A.rows, B.cols, ops.zero());
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (ops.is_zero(A.at(i, k))) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = ops.add(C.at(i, j), ops.mul(A.at(i, k), B.at(k, j)));
        }
    return C;
}

template <class F, class Ops>
Mat<F> mat_transpose(const Mat<F>& A, const Ops& ops) {
    Mat<F> T(A.cols, A.rows, ops.zero());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

// In-place reduced row echelon form; returns pivot column indices.
template <class F, class Ops>
std::vector<int> rref(Mat<F>& M, const Ops& ops) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int pr = -1;
        for (int i = r; i < M.rows; ++i)
            if (!ops.is_zero(M.at(i, c))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
        F inv = ops.div(ops.one(), M.at(r, c));
        for (int j = c; j < M.cols; ++j) M.at(r, j) = ops.mul(M.at(r, j), inv);
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || ops.is_zero(M.at(i, c))) continue;
            F f = M.at(i, c);
            for (int j = c; j < M.cols; ++j)
                M.at(i, j) = ops.sub(M.at(i, j), ops.mul(f, M.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F, class Ops>
int rank(Mat<F> M, const Ops& ops) {
    return static_cast<int>(rref(M, ops).size());
}

// Basis of the right nullspace, one vector per free column.
template <class F, class Ops>
std::vector<std::vector<F>> nullspace(Mat<F> M, const Ops& ops) {
    auto pivots = rref(M, ops);
    std::vector<bool> is_pivot(static_cast<std::size_t>(M.cols), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<F>> basis;
    for (int c = 0; c < M.cols; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        std::vector<F> v(static_cast<std::size_t>(M.cols), ops.zero());
        v[static_cast<std::size_t>(c)] = ops.one();
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            v[static_cast<std::size_t>(pivots[pi])] =
                ops.neg(M.at(static_cast<int>(pi), c));
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A x = b, or nullopt when inconsistent.
template <class F, class Ops>
std::optional<std::vector<F>> solve(const Mat<F>& A, const std::vector<F>& b, const Ops& ops) {
    Mat<F> M(A.rows, A.cols + 1, ops.zero());
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, A.cols) = b[static_cast<std::size_t>(i)];
    }
    auto pivots = rref(M, ops);
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    std::vector<F> x(static_cast<std::size_t>(A.cols), ops.zero());
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
        x[static_cast<std::size_t>(pivots[pi])] = M.at(static_cast<int>(pi), A.cols);
    return x;
}

// Determinant by Laplace expansion along the first remaining row, on column
// subsets. Exponential but exact; intended for the small symbolic matrices
// (n <= 8) this kernel works with.
template <class F, class Ops>
F det_on_columns(const Mat<F>& A, int row, std::vector<int>& cols, const Ops& ops) {
    const std::size_t k = cols.size();
    if (k == 0) return ops.one();
    if (k == 1) return A.at(row, cols[0]);
    F acc = ops.zero();
    for (std::size_t j = 0; j < k; ++j) {
        const F& pivot = A.at(row, cols[j]);
        if (ops.is_zero(pivot)) continue;
        std::vector<int> rest;
        rest.reserve(k - 1);
        for (std::size_t t = 0; t < k; ++t)
            if (t != j) rest.push_back(cols[t]);
        F sub = det_on_columns(A, row + 1, rest, ops);
        F term = ops.mul(pivot, sub);
        acc = (j % 2 == 0) ? ops.add(acc, term) : ops.sub(acc, term);
    }
    return acc;
}

template <class F, class Ops>
F det(const Mat<F>& A, const Ops& ops) {
    if (A.rows != A.cols) throw DimensionError("determinant of a non-square matrix");
    std::vector<int> cols;
    for (int j = 0; j < A.cols; ++j) cols.push_back(j);
    return det_on_columns(A, 0, cols, ops);
}

// Adjugate: adj(A)_{ij} = (-1)^{i+j} det(A with row j, column i removed).
// inverse = adj / det, exact over the field.
template <class F, class Ops>
Mat<F> adjugate(const Mat<F>& A, const Ops& ops) {
    int n = A.rows;
    if (n != A.cols) throw DimensionError("adjugate of a non-square matrix");
    Mat<F> adj(n, n, ops.zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat<F> minor(n - 1, n - 1, ops.zero());
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc) = A.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            F m = det(minor, ops);
            adj.at(i, j) = ((i + j) % 2 == 0) ? m : ops.neg(m);
        }
    return adj;
}

template <class F, class Ops>
Mat<F> inverse(const Mat<F>& A, const Ops& ops) {
    F d = det(A, ops);
    if (ops.is_zero(d)) throw NotInvertibleError("matrix determinant is zero");
    Mat<F> adj = adjugate(A, ops);
    for (auto& x : adj.a) x = ops.div(x, d);
    return adj;
}

// rank of the span of a set of vectors (rows).
template <class F, class Ops>
int span_rank(const std::vector<std::vector<F>>& vectors, int dim, const Ops& ops) {
    Mat<F> M(static_cast<int>(vectors.size()), dim, ops.zero());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (int j = 0; j < dim; ++j) M.at(static_cast<int>(i), j) = vectors[i][static_cast<std::size_t>(j)];
    return rank(std::move(M), ops);
}

// span(A-rows) == span(B-rows), decided by three rank computations.
template <class F, class Ops>
bool same_span(const std::vector<std::vector<F>>& A, const std::vector<std::vector<F>>& B, int dim,
               const Ops& ops) {
    int ra = span_rank(A, dim, ops);
    int rb = span_rank(B, dim, ops);
    if (ra != rb) return false;
    std::vector<std::vector<F>> both = A;
    both.insert(both.end(), B.begin(), B.end());
    return span_rank(both, dim, ops) == ra;
}

// Membership of v in span(rows).
template <class F, class Ops>
bool in_span(const std::vector<std::vector<F>>& rows, const std::vector<F>& v, int dim,
             const Ops& ops) {
    Mat<F> A(dim, static_cast<int>(rows.size()), ops.zero());
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (int i = 0; i < dim; ++i) A.at(i, static_cast<int>(j)) = rows[j][static_cast<std::size_t>(i)];
    return solve(A, v, ops).has_value();
}

} // namespace tpkit
