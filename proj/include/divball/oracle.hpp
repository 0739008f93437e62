#pragma once

#include "divball/integrands.hpp"
#include "divball/scenario.hpp"

namespace divball {

/// Brute-force worst-case expected payoff on a 2- or 3-atom space: enumerate
/// densities on a simplex grid of step 1/resolution, keep those with
/// divergence at most k, return the minimal expectation. Independent of the
/// dual machinery.
double brute_force_worst_case(const IntegrandSpec& spec, const ScenarioSpace& space,
                              double k, int resolution);

/// Brute-force minimal divergence among grid densities with expectation
/// within 1/resolution of b.
double brute_force_min_divergence(const IntegrandSpec& spec, const ScenarioSpace& space,
                                  double b, int resolution);

/// Brute-force penalised value: minimal expectation + lambda * divergence
/// over the whole grid.
double brute_force_penalised(const IntegrandSpec& spec, const ScenarioSpace& space,
                             double lambda, int resolution);

}  // namespace divball
