#include "divball/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "divball/errors.hpp"
#include "divball/functionals.hpp"
#include "divball/numeric.hpp"

namespace divball {

namespace {

// Visit every density on the simplex grid: atom masses are multiples of
// 1/resolution summing to 1, converted back to density values.
template <class Visit>
void sweep_grid(const ScenarioSpace& space, int resolution, const Visit& visit) {
    const std::size_t n = space.size();
    if (n > 3) throw SizeError("brute-force oracle handles at most 3 atoms");
    if (n < 2) throw SizeError("brute-force oracle needs at least 2 atoms");
    if (resolution < 100) throw ValidationError("oracle resolution must be at least 100");
    const double step = 1.0 / static_cast<double>(resolution);
    DensityVector p(n);
    if (n == 2) {
        for (int i = 0; i <= resolution; ++i) {
            const double m1 = i * step;
            p[0] = m1 / space.weight(0);
            p[1] = (1.0 - m1) / space.weight(1);
            visit(p);
        }
    } else {
        for (int i = 0; i <= resolution; ++i) {
            for (int j = 0; i + j <= resolution; ++j) {
                const double m1 = i * step;
                const double m2 = j * step;
                p[0] = m1 / space.weight(0);
                p[1] = m2 / space.weight(1);
                p[2] = (1.0 - m1 - m2) / space.weight(2);
                visit(p);
            }
        }
    }
    visit(space.default_density_vector());
}

}  // namespace

double brute_force_worst_case(const IntegrandSpec& spec, const ScenarioSpace& space,
                              double k, int resolution) {
    double best = kInf;
    sweep_grid(space, resolution, [&](const DensityVector& p) {
        if (divergence_from_default(spec, space, p) <= k + 1e-12)
            best = std::min(best, space.expectation(p));
    });
    return best;
}

double brute_force_min_divergence(const IntegrandSpec& spec, const ScenarioSpace& space,
                                  double b, int resolution) {
    const double slack = 1.0 / static_cast<double>(resolution);
    double best = kInf;
    sweep_grid(space, resolution, [&](const DensityVector& p) {
        if (std::abs(space.expectation(p) - b) <= slack)
            best = std::min(best, divergence_from_default(spec, space, p));
    });
    return best;
}

double brute_force_penalised(const IntegrandSpec& spec, const ScenarioSpace& space,
                             double lambda, int resolution) {
    double best = kInf;
    sweep_grid(space, resolution, [&](const DensityVector& p) {
        const double h = divergence_from_default(spec, space, p);
        if (std::isfinite(h))
            best = std::min(best, space.expectation(p) + lambda * h);
    });
    return best;
}

}  // namespace divball
