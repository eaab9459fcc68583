#pragma once

#include "tpkit/parser.hpp"
#include "tpkit/samples.hpp"
#include "tpkit/tensor.hpp"

#include <vector>

namespace tpkit::testutil {

inline ChartPtr chart_r4() { return Chart::make("R4", {"x1", "x2", "x3", "x4"}); }
inline ChartPtr chart_r2() { return Chart::make("R2", {"x1", "x2"}); }

inline ScalarExpr sc(const ChartPtr& c, const std::string& text) { return parse_expr(text, c); }

// Sorted k-subsets of {0..n-1}.
inline std::vector<IndexTuple> tuples(int n, int k) {
    std::vector<IndexTuple> out;
    IndexTuple cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline TensorField random_tensor(SampleGen& gen, const ChartPtr& chart, Variance v, int degree,
                                 int coeff_deg = 2) {
    TensorField t = TensorField::zero(chart, v, degree);
    for (const auto& idx : tuples(chart->dim(), degree))
        t.add_term(idx, gen.scalar(chart, coeff_deg, 2));
    return t;
}

// The running quartic example: Pi = x3 d1^d2 + x1 d3^d4 with the closed
// 3-form phi = ((1/x3^2)dx2 - (1/x1^2)dx4)^dx1^dx3 on R^4 minus {x1x3=0}.
inline TensorField example22_pi(const ChartPtr& c) {
    return TensorField::make(c, Variance::multivector, 2,
                             {{{0, 1}, sc(c, "x3")}, {{2, 3}, sc(c, "x1")}});
}

inline TensorField example22_phi(const ChartPtr& c) {
    return TensorField::make(c, Variance::form, 3,
                             {{{0, 1, 2}, sc(c, "-1/x3^2")}, {{0, 2, 3}, sc(c, "-1/x1^2")}});
}

inline TensorField coframe(const ChartPtr& c, int i) {
    return TensorField::covector(c, i, ScalarExpr::one(c));
}

inline TensorField frame(const ChartPtr& c, int i) {
    return TensorField::vector(c, i, ScalarExpr::one(c));
}

} // namespace tpkit::testutil
