#include "divball/functionals.hpp"

#include <cmath>
#include <string>

#include "divball/errors.hpp"
#include "divball/numeric.hpp"

namespace divball {

namespace {

void check_dims(const IntegrandSpec& spec, const ScenarioSpace& space) {
    if (spec.mode() == IntegrandMode::Bregman &&
        spec.reference_density().size() != space.size())
        throw DimensionError("integrand reference density has " +
                             std::to_string(spec.reference_density().size()) +
                             " entries, space has " + std::to_string(space.size()));
}

void check_vector(const ScenarioSpace& space, const DensityVector& p, const char* name) {
    if (p.size() != space.size())
        throw DimensionError(std::string(name) + " has " + std::to_string(p.size()) +
                             " entries, space has " + std::to_string(space.size()));
}

}  // namespace

double divergence_from_default(const IntegrandSpec& spec, const ScenarioSpace& space,
                               const DensityVector& p) {
    check_dims(spec, space);
    check_vector(space, p, "density vector");
    return pairwise_map_sum(space.size(), [&](std::size_t i) {
        return space.weight(i) * spec.value(i, p[i]);
    });
}

double bregman_distance(const IntegrandSpec& spec, const ScenarioSpace& space,
                        const DensityVector& p, const DensityVector& q) {
    check_dims(spec, space);
    check_vector(space, p, "density vector p");
    check_vector(space, q, "density vector q");
    return pairwise_map_sum(space.size(), [&](std::size_t i) {
        return space.weight(i) * spec.bregman_increment(p[i], q[i]);
    });
}

double dual_value(const IntegrandSpec& spec, const ScenarioSpace& space, ThetaPair theta) {
    check_dims(spec, space);
    return pairwise_map_sum(space.size(), [&](std::size_t i) {
        return space.weight(i) * spec.conjugate(i, theta.theta1 + theta.theta2 * space.payoff(i));
    });
}

bool in_family_domain(const IntegrandSpec& spec, const ScenarioSpace& space, ThetaPair theta) {
    check_dims(spec, space);
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double tau = theta.theta1 + theta.theta2 * space.payoff(i);
        const double sup = spec.deriv_limits(i).at_inf;
        if (!(tau < sup)) return false;
    }
    return true;
}

FamilyMoments dual_gradient(const IntegrandSpec& spec, const ScenarioSpace& space,
                            ThetaPair theta) {
    if (!in_family_domain(spec, space, theta))
        throw DomainError("theta outside the family parameter set");
    FamilyMoments m;
    m.mass = pairwise_map_sum(space.size(), [&](std::size_t i) {
        return space.weight(i) *
               spec.conjugate_deriv_or_inf(i, theta.theta1 + theta.theta2 * space.payoff(i));
    });
    m.payoff_moment = pairwise_map_sum(space.size(), [&](std::size_t i) {
        return space.weight(i) * space.payoff(i) *
               spec.conjugate_deriv_or_inf(i, theta.theta1 + theta.theta2 * space.payoff(i));
    });
    return m;
}

DensityVector family_density(const IntegrandSpec& spec, const ScenarioSpace& space,
                             ThetaPair theta) {
    if (!in_family_domain(spec, space, theta))
        throw DomainError("theta outside the family parameter set");
    DensityVector q(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        q[i] = spec.conjugate_deriv_or_inf(i, theta.theta1 + theta.theta2 * space.payoff(i));
    return q;
}

double pythagorean_residual(const IntegrandSpec& spec, const ScenarioSpace& space,
                            const DensityVector& p, ThetaPair theta) {
    if (!in_family_domain(spec, space, theta))
        throw DomainError("theta outside the family parameter set");
    check_vector(space, p, "density vector");
    const double h = divergence_from_default(spec, space, p);
    if (!std::isfinite(h)) throw UndefinedError("divergence of p is not finite");
    const double e = space.expectation(p);
    const double k = dual_value(spec, space, theta);
    const DensityVector q = family_density(spec, space, theta);
    const double b = bregman_distance(spec, space, p, q);
    const double plus = pairwise_map_sum(space.size(), [&](std::size_t i) {
        if (p[i] == 0.0) return 0.0;
        const double tau = theta.theta1 + theta.theta2 * space.payoff(i);
        return space.weight(i) * pos_part(spec.deriv_limits(i).at_zero - tau) * p[i];
    });
    return h - (theta.theta1 + theta.theta2 * e - k + b + plus);
}

}  // namespace divball
