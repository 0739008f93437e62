#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divball/functionals.hpp"
#include "divball/integrands.hpp"
#include "divball/scenario.hpp"

namespace divball {

enum class InnerCase { Interior, Boundary };
enum class Regime { AlwaysWcd, Critical, NeverWcdObserved };
enum class TrivialBranch { None, KZero, KGeKmax };

/// One point of the dual curve G(theta2) = min_theta1 [K(theta) - theta1],
/// together with the minimiser and the moments of the family density there.
struct DualCurvePoint {
    double theta2 = 0.0;
    double g_value = 0.0;
    double theta1_star = 0.0;
    InnerCase inner_case = InnerCase::Interior;
    double mass = 0.0;           // Interior: 1 within tolerance; Boundary: < 1
    double payoff_moment = 0.0;
};

struct WorstCaseReport {
    double k = 0.0;
    double v = 0.0;  // worst-case expected payoff V(k)
    double theta2_star = 0.0;
    double theta1_star = 0.0;
    DensityVector localiser;     // q_hat_k; empty in the k >= k_max branch
    double localiser_mass = 0.0;
    bool is_density = false;
    bool is_wcd = false;
    TrivialBranch trivial_branch = TrivialBranch::None;
};

struct ClassifyReport {
    Regime regime = Regime::AlwaysWcd;
    std::optional<double> k_critical;       // threshold above which no WCD exists
    std::optional<double> theta_tilde_min;  // boundary-mass crossing parameter
    std::optional<double> sigma;            // sup of theta2 with finite boundary mass
    double theta_min = 0.0;                 // left endpoint of the dual projection
    std::vector<std::pair<double, double>> probe_grid;  // (theta2, localiser mass)
    std::string note;
    std::optional<double> probe_k;
    std::optional<bool> wcd_at_probe_k;
};

struct AwcdCertificate {
    double epsilon = 0.0;
    double gamma = 0.0;
    bool is_awcd = false;
    double bregman_to_localiser = 0.0;  // B(p, q_hat_k)
    double bound = 0.0;                 // gamma - theta2* epsilon
    bool bound_holds = false;
};

/// Inner minimisation over theta1 at fixed theta2. The mass of the family
/// density is nondecreasing in theta1; the minimiser has unit mass (Interior)
/// or sits at the upper endpoint of the theta1-domain with mass < 1 (Boundary).
DualCurvePoint solve_inner(const IntegrandSpec& spec, const ScenarioSpace& space, double theta2);

/// Worst-case expected payoff over the divergence ball of radius k, with the
/// worst-case localiser. Trivial branches: v = b0 at k = 0, v = m at k >= k_max.
WorstCaseReport value_at_k(const IntegrandSpec& spec, const ScenarioSpace& space, double k);

/// Penalised worst case W(lambda) = -lambda G(-1/lambda).
double penalised_value(const IntegrandSpec& spec, const ScenarioSpace& space, double lambda);

/// Minimal divergence among densities with expectation b (m <= b <= b0),
/// computed as the conjugate of the dual curve.
double min_divergence(const IntegrandSpec& spec, const ScenarioSpace& space, double b);

/// Limit of min_divergence(b) as b decreases to m, detected over a dyadic
/// sweep; +inf when the sweep does not stabilise.
double k_max_estimate(const IntegrandSpec& spec, const ScenarioSpace& space);

/// Existence classification of a worst-case density across thresholds k.
ClassifyReport classify(const IntegrandSpec& spec, const ScenarioSpace& space,
                        std::optional<double> k_probe = std::nullopt);

/// Certify an almost-worst-case density: p may violate the radius by at most
/// gamma and give up at most epsilon of payoff; every such p lies in the
/// Bregman ball of radius gamma - theta2* epsilon around the localiser.
AwcdCertificate certify_awcd(const IntegrandSpec& spec, const ScenarioSpace& space,
                             const DensityVector& p, double k, double epsilon, double gamma);

/// [E(p) + lambda H(p)] - [W(lambda) + lambda B(p, q_{-1/lambda})]; nonnegative.
double penalised_gap(const IntegrandSpec& spec, const ScenarioSpace& space,
                     const DensityVector& p, double lambda);

const char* to_string(InnerCase c);
const char* to_string(Regime r);
const char* to_string(TrivialBranch b);

}  // namespace divball
