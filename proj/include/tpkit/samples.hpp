#pragma once

#include "tpkit/scalar_expr.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace tpkit {

// Deterministic source of small rational sample points and small random
// polynomials. mt19937_64 output is fully specified by the standard, so equal
// seeds give equal draws on every platform; distributions are done by modulo
// for the same reason.
class SampleGen {
public:
    explicit SampleGen(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return eng_(); }

    // integer in [lo, hi]
    long long next_int(long long lo, long long hi) {
        return lo + static_cast<long long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational small_rational(int max_num = 4, int max_den = 4) {
        long long n = next_int(-max_num, max_num);
        long long d = next_int(1, max_den);
        return Rational(Integer(n), Integer(d));
    }

    Rational small_rational_nonzero(int max_num = 4, int max_den = 4) {
        Rational q = small_rational(max_num, max_den);
        while (q == 0) q = small_rational(max_num, max_den);
        return q;
    }

    // Sample point with small rational coordinates satisfying `ok`
    // (typically: off every pole of the data in play). Bounded retries.
    std::vector<Rational> point(const ChartPtr& chart,
                                const std::function<bool(const std::vector<Rational>&)>& ok,
                                int retries = 200) {
        for (int attempt = 0; attempt < retries; ++attempt) {
            std::vector<Rational> p;
            p.reserve(static_cast<std::size_t>(chart->dim()));
            for (int i = 0; i < chart->dim(); ++i) p.push_back(small_rational(4, 3));
            if (!ok || ok(p)) return p;
        }
        throw PoleError("could not draw a sample point off the excluded locus");
    }

    std::vector<Rational> point(const ChartPtr& chart) {
        return point(chart, nullptr);
    }

    // Random polynomial of total degree <= max_deg with small coefficients.
    Polynomial polynomial(const ChartPtr& chart, int max_deg, int terms = 4) {
        int n = chart->dim();
        Polynomial p(n);
        for (int t = 0; t < terms; ++t) {
            Monomial m(static_cast<std::size_t>(n), 0);
            int deg = static_cast<int>(next_int(0, max_deg));
            for (int d = 0; d < deg; ++d)
                m[static_cast<std::size_t>(next_int(0, n - 1))] += 1;
            p.add_term(std::move(m), small_rational(3, 2));
        }
        return p;
    }

    ScalarExpr scalar(const ChartPtr& chart, int max_deg, int terms = 4) {
        return ScalarExpr::from_poly(chart, polynomial(chart, max_deg, terms));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

} // namespace tpkit
