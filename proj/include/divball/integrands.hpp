#pragma once

#include <cstddef>
#include <vector>

#include "divball/scenario.hpp"

namespace divball {

/// Built-in strictly convex generators, normalised so that f(1) = 0.
enum class Generator { KL, Burg, Squared, Chi2 };

enum class IntegrandMode { FDivergence, Bregman };

struct DerivLimits {
    double at_zero = 0.0;  // beta'(r, 0), limit from above
    double at_inf = 0.0;   // beta'(r, +inf), limit
};

/// A convex integrand family beta(r, s): either an autonomous generator f(s)
/// (f-divergence mode) or its Bregman lift Delta_f(s, p0(r)) around a
/// reference density (Bregman mode). Immutable once constructed.
class IntegrandSpec {
  public:
    static IntegrandSpec f_divergence(Generator g);
    /// Bregman lift around the space's default density column. Also captures
    /// the space's boundary samples so the dual domain endpoint can be placed.
    static IntegrandSpec bregman(Generator g, const ScenarioSpace& space);
    /// Bregman lift around a custom per-atom reference (no boundary samples).
    static IntegrandSpec bregman(Generator g, std::vector<double> reference);

    /// beta(r, s); +inf for s < 0, limit value at s = 0.
    double value(std::size_t atom, double s) const;
    /// beta*(r, tau) = sup_s (s tau - beta(r, s)).
    double conjugate(std::size_t atom, double tau) const;
    /// (beta*)'(r, tau); 0 at or below beta'(r,0), strictly increasing in
    /// between, undefined at/above a finite beta'(r,+inf).
    double conjugate_deriv(std::size_t atom, double tau) const;
    /// Same, but returns +inf instead of throwing at/above the upper limit.
    double conjugate_deriv_or_inf(std::size_t atom, double tau) const;
    DerivLimits deriv_limits(std::size_t atom) const;

    /// Bregman increment Delta(s, t) of the integrand in its second argument.
    /// Independent of mode and atom: the lift leaves second differences alone.
    double bregman_increment(double s, double t) const;

    /// beta'(r, +inf) for a point whose reference density is t (used for
    /// massless boundary samples).
    double deriv_sup_at_reference(double t) const;

    Generator generator() const { return generator_; }
    IntegrandMode mode() const { return mode_; }
    bool autonomous() const { return mode_ == IntegrandMode::FDivergence; }
    bool cofinite() const;
    /// c = lim f(s)/s; +inf exactly when cofinite.
    double linear_growth() const;
    double f_prime_at_zero() const;
    double f_prime_at_inf() const;
    const std::vector<double>& reference_density() const { return reference_; }
    const std::vector<double>& reference_boundary() const { return reference_boundary_; }

  private:
    IntegrandSpec(Generator g, IntegrandMode m) : generator_(g), mode_(m) {}
    double reference_at(std::size_t atom) const;

    Generator generator_;
    IntegrandMode mode_;
    std::vector<double> reference_;           // per atom, Bregman mode only
    std::vector<double> reference_boundary_;  // per boundary sample, Bregman mode only
};

}  // namespace divball
