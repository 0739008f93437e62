#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "divball/integrands.hpp"
#include "divball/numeric.hpp"
#include "divball/scenario.hpp"

namespace divball::testing {

// Two equal-weight atoms, payoffs 0 and 1, uniform default (KL-2PT).
inline ScenarioSpace kl_2pt() {
    return ScenarioSpace::build_discrete({
        Atom{"a", 0.0, 0.5, 0.0, 1.0},
        Atom{"b", 1.0, 0.5, 1.0, 1.0},
    });
}

// Quadrature space on (0,1) with mu-density 2r, payoff r, uniform p0 == 1
// (BURG-2R). Realises the reverse-relative-entropy example with b0 = 2/3.
inline ScenarioSpace burg_2r(int n = 200) {
    return ScenarioSpace::build_quadrature(
        0.0, 1.0, n, [](double r) { return 2.0 * r; }, [](double r) { return r; },
        [](double) { return 1.0; });
}

// Same measure and payoff, default density p0(r) = 1/(2r) (NEVER-BREG).
inline ScenarioSpace never_breg(int n = 200) {
    return ScenarioSpace::build_quadrature(
        0.0, 1.0, n, [](double r) { return 2.0 * r; }, [](double r) { return r; },
        [](double r) { return r > 0.0 ? 1.0 / (2.0 * r) : kInf; });
}

// Deterministic 10-atom space with unit total weight and p0 == 1, so every
// generator can run in f-divergence mode on it.
inline ScenarioSpace random_space10(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> wdist(0.5, 1.5);
    std::uniform_real_distribution<double> xdist(0.0, 1.0);
    std::vector<Atom> atoms(10);
    double wsum = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        atoms[i].node_id = "a" + std::to_string(i);
        atoms[i].coordinate = static_cast<double>(i) / 10.0;
        atoms[i].weight = wdist(rng);
        atoms[i].payoff = xdist(rng);
        atoms[i].default_density = 1.0;
        wsum += atoms[i].weight;
    }
    for (Atom& a : atoms) a.weight /= wsum;
    return ScenarioSpace::build_discrete(std::move(atoms));
}

// Random density on the space: positive values, renormalised to unit mass.
inline DensityVector random_density(const ScenarioSpace& space, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    DensityVector p(space.size());
    for (double& v : p) v = dist(rng);
    const double mass = space.total_mass(p);
    for (double& v : p) v /= mass;
    return p;
}

}  // namespace divball::testing
