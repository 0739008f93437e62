#pragma once

#include "divball/integrands.hpp"
#include "divball/scenario.hpp"

namespace divball {

struct ThetaPair {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

struct FamilyMoments {
    double mass = 0.0;           // integral of the family density
    double payoff_moment = 0.0;  // integral of X times the family density
};

/// H(p): the divergence of p from the default, i.e. the integral of
/// beta(r, p(r)). Zero at p = p0, strictly positive at any other density.
double divergence_from_default(const IntegrandSpec& spec, const ScenarioSpace& space,
                               const DensityVector& p);

/// Generalised Bregman distance B(p, q) built from the integrand.
double bregman_distance(const IntegrandSpec& spec, const ScenarioSpace& space,
                        const DensityVector& p, const DensityVector& q);

/// K(theta) = integral of beta*(r, theta1 + theta2 X(r)); +inf exactly when
/// some atom falls in the +inf region of the conjugate.
double dual_value(const IntegrandSpec& spec, const ScenarioSpace& space, ThetaPair theta);

/// Membership in the family parameter set: theta1 + theta2 X(r) strictly
/// below beta'(r, +inf) at every atom.
bool in_family_domain(const IntegrandSpec& spec, const ScenarioSpace& space, ThetaPair theta);

/// Gradient of K: mass and payoff moment of the family density at theta.
FamilyMoments dual_gradient(const IntegrandSpec& spec, const ScenarioSpace& space,
                            ThetaPair theta);

/// The dual family member p_theta(r) = (beta*)'(r, theta1 + theta2 X(r)).
/// Nonnegative, not necessarily of unit mass.
DensityVector family_density(const IntegrandSpec& spec, const ScenarioSpace& space,
                             ThetaPair theta);

/// Defect of the generalised Pythagorean identity at (p, theta):
///   H(p) - [theta1 + theta2 E(p) - K(theta) + B(p, p_theta) + plus-part term].
/// Vanishes identically; the return value is pure roundoff.
double pythagorean_residual(const IntegrandSpec& spec, const ScenarioSpace& space,
                            const DensityVector& p, ThetaPair theta);

}  // namespace divball
