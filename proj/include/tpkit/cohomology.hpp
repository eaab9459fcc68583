#pragma once

#include "tpkit/poisson.hpp"

#include <string>
#include <vector>

namespace tpkit {

// Differential of the twisted Poisson cochain complex on multivector fields,
// reconstructed from its values on coordinate coframe tuples:
//   (dA)(a_1,...,a_{k+1}) = - sum_i (-1)^{i+1} rho(a_i)( A(...a_i hat...) )
//                           - sum_{i<j} (-1)^{i+j} A([a_i,a_j], ...hats...)
// with the anchor rho and cotangent bracket of the chosen convention. The two
// conventions give exact negatives of each other, so the complex property and
// all dimension counts agree.
inline TensorField lichnerowicz_d(const TwistedPoissonStructure& P, const TensorField& A,
                                  Convention conv = Convention::normalized) {
    if (A.variance() != Variance::multivector) throw DegreeError("lichnerowicz_d expects a multivector");
    require_same_chart(P.chart(), A.chart(), "lichnerowicz_d");
    const ChartPtr& chart = P.chart();
    const int n = chart->dim();
    const int k = A.degree();

    std::vector<TensorField> cof, rho;
    for (int i = 0; i < n; ++i) {
        cof.push_back(TensorField::coframe(chart, i));
        rho.push_back(anchor(P.pi(), cof.back(), conv));
    }
    std::vector<std::vector<TensorField>> br(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            br[static_cast<std::size_t>(i)].push_back(
                j > i ? algebroid_bracket(P, cof[static_cast<std::size_t>(i)],
                                          cof[static_cast<std::size_t>(j)], conv)
                      : TensorField::zero(chart, Variance::form, 1));
    auto bracket_of = [&](int i, int j) {
        if (i < j) return br[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return -br[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    };

    TensorField out = TensorField::zero(chart, Variance::multivector, k + 1);
    std::vector<int> I(static_cast<std::size_t>(k + 1));
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == k + 1) {
            ScalarExpr val = ScalarExpr::zero(chart);
            for (int a = 0; a < k + 1; ++a) {
                std::vector<TensorField> rest;
                for (int t = 0; t < k + 1; ++t)
                    if (t != a) rest.push_back(cof[static_cast<std::size_t>(I[static_cast<std::size_t>(t)])]);
                ScalarExpr inner = mv_eval_on_forms(A, rest);
                ScalarExpr term = apply_vector(rho[static_cast<std::size_t>(I[static_cast<std::size_t>(a)])], inner);
                val = (a % 2 == 0) ? val - term : val + term; // -(-1)^{(a+1)+1}
            }
            for (int a = 0; a < k + 1; ++a)
                for (int b = a + 1; b < k + 1; ++b) {
                    std::vector<TensorField> args;
                    args.push_back(bracket_of(I[static_cast<std::size_t>(a)], I[static_cast<std::size_t>(b)]));
                    for (int t = 0; t < k + 1; ++t)
                        if (t != a && t != b)
                            args.push_back(cof[static_cast<std::size_t>(I[static_cast<std::size_t>(t)])]);
                    ScalarExpr term = mv_eval_on_forms(A, args);
                    // -(-1)^{(a+1)+(b+1)} = -(-1)^{a+b}
                    val = ((a + b) % 2 == 0) ? val - term : val + term;
                }
            if (!val.is_zero()) out.add_term(I, val);
            return;
        }
        for (int i = start; i < n; ++i) {
            I[static_cast<std::size_t>(pos)] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline TensorField check_d_squared(const TwistedPoissonStructure& P, const TensorField& A,
                                   Convention conv = Convention::normalized) {
    return lichnerowicz_d(P, lichnerowicz_d(P, A, conv), conv);
}

// ---------------------------------------------------------------------------
// Finite-dimensional truncation.

inline std::vector<Monomial> monomials_up_to(int nvars, int max_deg) {
    std::vector<Monomial> out;
    Monomial cur(static_cast<std::size_t>(nvars), 0);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == nvars) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(var)] = static_cast<std::uint32_t>(e);
            self(self, var + 1, remaining - e);
        }
        cur[static_cast<std::size_t>(var)] = 0;
    };
    if (max_deg >= 0) rec(rec, 0, max_deg);
    return out;
}

// Truncated cochain complex with polynomial coefficients. The graded piece of
// tensor degree k carries coefficients of polynomial degree <= max_degree - k,
// so the differential (which mixes the two gradings) stays inside the
// truncation for the constant-coefficient fixtures; any escape raises
// TruncationError instead of silently dropping terms.
class TruncatedComplex {
public:
    struct BasisElement {
        Monomial mono;
        IndexTuple tuple;
    };

    TruncatedComplex(TwistedPoissonStructure structure, int max_degree,
                     Convention conv = Convention::normalized)
        : P_(std::move(structure)), max_degree_(max_degree), conv_(conv) {
        auto poly_only = [](const TensorField& t) {
            for (const auto& [idx, c] : t.coeffs())
                if (!c.is_polynomial()) return false;
            return true;
        };
        if (!poly_only(P_.pi()) || !poly_only(P_.phi()))
            throw TruncationError(
                "truncated complex needs polynomial coefficients; rational structures are excluded");
    }

    const TwistedPoissonStructure& structure() const { return P_; }
    int max_degree() const { return max_degree_; }

    std::vector<BasisElement> basis(int k) const {
        std::vector<BasisElement> out;
        if (k < 0) return out;
        const ChartPtr& chart = P_.chart();
        std::vector<IndexTuple> idx;
        IndexTuple cur;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(cur.size()) == k) {
                idx.push_back(cur);
                return;
            }
            for (int i = start; i < chart->dim(); ++i) {
                cur.push_back(i);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        for (const auto& I : idx)
            for (const auto& m : monomials_up_to(chart->dim(), max_degree_ - k))
                out.push_back({m, I});
        return out;
    }

    // Matrix of d: C^k -> C^{k+1} in the enumerated bases (rows: target).
    Mat<Rational> differential_matrix(int k) const {
        const ChartPtr& chart = P_.chart();
        auto dom = basis(k);
        auto cod = basis(k + 1);
        std::map<std::pair<Monomial, IndexTuple>, int> index;
        for (std::size_t r = 0; r < cod.size(); ++r)
            index[{cod[r].mono, cod[r].tuple}] = static_cast<int>(r);
        Mat<Rational> M(static_cast<int>(cod.size()), static_cast<int>(dom.size()), Rational(0));
        for (std::size_t ccol = 0; ccol < dom.size(); ++ccol) {
            TensorField b = TensorField::make(
                chart, Variance::multivector, k,
                {{dom[ccol].tuple,
                  ScalarExpr::from_poly(chart, Polynomial::term(chart->dim(), dom[ccol].mono,
                                                                Rational(1)))}});
            TensorField db = lichnerowicz_d(P_, b, conv_);
            for (const auto& [I, c] : db.coeffs()) {
                if (!c.is_polynomial())
                    throw TruncationError("differential left the polynomial ring on basis element " +
                                          b.str());
                Rational scale = Rational(1) / c.den().constant_value();
                for (const auto& [m, coeff] : c.num().terms()) {
                    auto it = index.find({m, I});
                    if (it == index.end())
                        throw TruncationError(
                            "differential left the truncated space on basis element " + b.str() +
                            " (escaping monomial of degree " + std::to_string(mono_degree(m)) + ")");
                    M.at(it->second, static_cast<int>(ccol)) += coeff * scale;
                }
            }
        }
        return M;
    }

private:
    TwistedPoissonStructure P_;
    int max_degree_;
    Convention conv_;
};

struct CohomologyDims {
    int dim_cochains = 0;
    int dim_cocycles = 0;   // Z_k
    int dim_boundaries = 0; // B_k
    int dim_cohomology = 0; // H_k
};

inline CohomologyDims truncated_cohomology_dims(const TwistedPoissonStructure& P, int max_degree,
                                                int k, Convention conv = Convention::normalized) {
    TruncatedComplex C(P, max_degree, conv);
    RationalOps ops;
    int dim_k = static_cast<int>(C.basis(k).size());
    int rank_k = rank(C.differential_matrix(k), ops);
    int rank_km1 = k >= 1 ? rank(C.differential_matrix(k - 1), ops) : 0;
    CohomologyDims out;
    out.dim_cochains = dim_k;
    out.dim_cocycles = dim_k - rank_k;
    out.dim_boundaries = rank_km1;
    out.dim_cohomology = out.dim_cocycles - out.dim_boundaries;
    return out;
}

} // namespace tpkit
