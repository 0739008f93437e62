#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace divball {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }

namespace detail {

template <class F>
double pairwise_sum_impl(std::size_t lo, std::size_t hi, const F& term) {
    const std::size_t n = hi - lo;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum_impl(lo, mid, term) + pairwise_sum_impl(mid, hi, term);
}

}  // namespace detail

// Deterministic pairwise tree reduction of term(0) + ... + term(n-1).
// Fixed association order, so results are reproducible bit-for-bit.
template <class F>
double pairwise_map_sum(std::size_t n, const F& term) {
    if (n == 0) return 0.0;
    return detail::pairwise_sum_impl(0, n, term);
}

struct GoldenResult {
    double x = 0.0;
    double value = 0.0;
};

// Maximise a unimodal function on [a, c].
template <class F>
GoldenResult golden_section_max(const F& f, double a, double c,
                                double rel_tol, int max_iter = 240) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double invphi2 = 1.0 - invphi;
    double x1 = a + invphi2 * (c - a);
    double x2 = a + invphi * (c - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(c - a) <= rel_tol * (1.0 + std::abs(x1) + std::abs(x2))) break;
        if (f1 >= f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + invphi2 * (c - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (c - a);
            f2 = f(x2);
        }
    }
    return f1 >= f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

}  // namespace divball
