#include "divball/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "divball/errors.hpp"
#include "divball/numeric.hpp"

namespace divball {

namespace {

constexpr double kTolMass = 1e-10;
constexpr double kTolTheta2 = 1e-10;
constexpr int kMaxExpand = 200;

// H(p0) = 0 is a standing assumption of the whole dual machinery; it fails
// e.g. for f-divergence mode on a scenario whose p0 column is not the
// uniform density of a probability measure.
void validate_standing(const IntegrandSpec& spec, const ScenarioSpace& space) {
    const double h0 = divergence_from_default(spec, space, space.default_density_vector());
    if (!(std::abs(h0) <= 1e-6))
        throw ValidationError("standing assumption H(p0) = 0 violated (H(p0) = " +
                              std::to_string(h0) + "); for f-divergence mode the scenario "
                              "must carry p0 = 1 on a probability measure");
}

// Upper endpoint of the theta1-domain at fixed theta2: the infimum of
// beta'(r,+inf) - theta2 X(r) over the atoms and over the massless boundary
// samples. The boundary samples realise the continuum essential bounds of the
// payoff, so quadrature spaces keep the dual geometry of the space they
// discretise; purely discrete spaces reduce to the atomwise minimum.
double theta1_domain_sup(const IntegrandSpec& spec, const ScenarioSpace& space, double theta2) {
    double hi = kInf;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double sup = spec.deriv_limits(i).at_inf;
        if (sup == kInf) continue;
        hi = std::min(hi, sup - theta2 * space.payoff(i));
    }
    const auto& boundary = space.boundary_samples();
    if (spec.autonomous()) {
        const double c = spec.linear_growth();
        if (c != kInf) {
            for (const BoundarySample& s : boundary)
                hi = std::min(hi, c - theta2 * s.payoff);
        }
    } else if (spec.reference_boundary().size() == boundary.size()) {
        for (std::size_t j = 0; j < boundary.size(); ++j) {
            const double sup = spec.deriv_sup_at_reference(spec.reference_boundary()[j]);
            if (sup == kInf) continue;
            hi = std::min(hi, sup - theta2 * boundary[j].payoff);
        }
    }
    return hi;
}

// Mass and payoff moment of the family density at (theta1, theta2). Atoms
// sitting at or above the conjugate's blow-up point push the mass to +inf.
FamilyMoments moments_at(const IntegrandSpec& spec, const ScenarioSpace& space,
                         double theta1, double theta2) {
    FamilyMoments m;
    bool infinite = false;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double q = spec.conjugate_deriv_or_inf(i, theta1 + theta2 * space.payoff(i));
        if (q == kInf) {
            infinite = true;
            break;
        }
    }
    if (infinite) {
        m.mass = kInf;
        m.payoff_moment = kInf;
        return m;
    }
    m.mass = pairwise_map_sum(space.size(), [&](std::size_t i) {
        return space.weight(i) *
               spec.conjugate_deriv_or_inf(i, theta1 + theta2 * space.payoff(i));
    });
    m.payoff_moment = pairwise_map_sum(space.size(), [&](std::size_t i) {
        return space.weight(i) * space.payoff(i) *
               spec.conjugate_deriv_or_inf(i, theta1 + theta2 * space.payoff(i));
    });
    return m;
}

DualCurvePoint make_point(const IntegrandSpec& spec, const ScenarioSpace& space,
                          double theta1, double theta2, InnerCase c) {
    DualCurvePoint pt;
    pt.theta2 = theta2;
    pt.theta1_star = theta1;
    pt.inner_case = c;
    const FamilyMoments m = moments_at(spec, space, theta1, theta2);
    pt.mass = m.mass;
    pt.payoff_moment = m.payoff_moment;
    pt.g_value = dual_value(spec, space, ThetaPair{theta1, theta2}) - theta1;
    if (!std::isfinite(pt.g_value))
        throw DomainError("dual curve infinite at theta2 = " + std::to_string(theta2));
    return pt;
}

DualCurvePoint solve_inner_impl(const IntegrandSpec& spec, const ScenarioSpace& space,
                                double theta2) {
    const double up = theta1_domain_sup(spec, space, theta2);
    auto mass_at = [&](double t1) { return moments_at(spec, space, t1, theta2).mass; };

    double hi;
    if (std::isfinite(up)) {
        const double mass_up = mass_at(up);
        if (mass_up < 1.0 - kTolMass)
            return make_point(spec, space, up, theta2, InnerCase::Boundary);
        if (mass_up <= 1.0 + kTolMass)
            return make_point(spec, space, up, theta2, InnerCase::Interior);
        hi = up;
    } else {
        hi = 1.0;
        int expand = 0;
        while (mass_at(hi) < 1.0) {
            hi *= 2.0;
            if (++expand > kMaxExpand)
                throw ConvergenceError("no upper bracket for the inner mass equation");
        }
    }

    double width = std::max(1.0, std::abs(hi));
    double lo = hi - width;
    int expand = 0;
    while (!(mass_at(lo) < 1.0)) {
        width *= 2.0;
        lo = hi - width;
        if (++expand > kMaxExpand)
            throw ConvergenceError("no lower bracket for the inner mass equation");
    }

    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double mass = mass_at(mid);
        if (std::abs(mass - 1.0) <= kTolMass)
            return make_point(spec, space, mid, theta2, InnerCase::Interior);
        if (mass < 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * std::max(1.0, std::abs(mid))) {
            const double m_lo = mass_at(lo);
            if (std::abs(m_lo - 1.0) <= 1e-7)
                return make_point(spec, space, lo, theta2, InnerCase::Interior);
            break;
        }
    }
    throw ConvergenceError("inner bisection did not reach the mass tolerance at theta2 = " +
                           std::to_string(theta2));
}

// Locate the maximum of a unimodal function over u > 0 by marching the dyadic
// grid away from u = 1 until the value drops, then golden-section refine.
template <class F>
GoldenResult dyadic_peak_max(const F& f, const char* what) {
    double u_mid = 1.0;
    double f_mid = f(u_mid);
    double u_up = 2.0;
    double f_up = f(u_up);
    double u_dn = 0.5;
    double f_dn = f(u_dn);
    if (f_up > f_mid && f_up >= f_dn) {
        int expand = 0;
        while (f_up > f_mid) {
            u_dn = u_mid;
            u_mid = u_up;
            f_mid = f_up;
            u_up *= 2.0;
            f_up = f(u_up);
            if (++expand > kMaxExpand)
                throw ConvergenceError(std::string("no bracket while maximising ") + what);
        }
    } else if (f_dn > f_mid) {
        int expand = 0;
        while (f_dn > f_mid) {
            u_up = u_mid;
            u_mid = u_dn;
            f_mid = f_dn;
            u_dn *= 0.5;
            f_dn = f(u_dn);
            if (++expand > kMaxExpand)
                throw ConvergenceError(std::string("no bracket while maximising ") + what);
        }
    }
    return golden_section_max(f, u_dn, u_up, kTolTheta2);
}

double min_divergence_impl(const IntegrandSpec& spec, const ScenarioSpace& space, double b) {
    // maximise theta2 b - G(theta2) over theta2 <= 0, in the variable u = -theta2
    auto objective = [&](double u) {
        const DualCurvePoint pt = solve_inner_impl(spec, space, -u);
        return -u * b - pt.g_value;
    };
    const GoldenResult best = dyadic_peak_max(objective, "the divergence conjugate");
    return std::max(0.0, best.value);
}

// Dyadic sweep of min_divergence toward b = m: F(m + span 2^-j), j = 1..40.
// The sequence is nondecreasing; its limit is k_max. Reported as +inf when
// the last step still moves by more than the stabilisation tolerance.
double sweep_k_max(const IntegrandSpec& spec, const ScenarioSpace& space) {
    const double m = space.min_payoff();
    const double span = space.default_expectation() - m;
    double prev = 0.0, cur = 0.0;
    for (int j = 1; j <= 40; ++j) {
        prev = cur;
        cur = min_divergence_impl(spec, space, m + span * std::ldexp(1.0, -j));
    }
    const bool stabilised = std::abs(cur - prev) <= 1e-6 * std::max(1.0, std::abs(cur));
    return stabilised ? cur : kInf;
}

// k < k_max, decided by the same sweep with an early exit: each sweep value
// is a lower bound for k_max, so the first value above k settles the question.
bool below_k_max(const IntegrandSpec& spec, const ScenarioSpace& space, double k) {
    const double m = space.min_payoff();
    const double span = space.default_expectation() - m;
    double prev = 0.0, cur = 0.0;
    for (int j = 1; j <= 40; ++j) {
        prev = cur;
        cur = min_divergence_impl(spec, space, m + span * std::ldexp(1.0, -j));
        if (cur > k) return true;
    }
    const bool stabilised = std::abs(cur - prev) <= 1e-6 * std::max(1.0, std::abs(cur));
    return !stabilised;  // unstabilised sweep means k_max = +inf
}

// Mass of the family density at the upper endpoint of the theta1-domain.
// Its crossing of 1 separates thresholds with and without a worst-case
// density; +inf when the endpoint is infinite or an atom sits on it.
double boundary_mass(const IntegrandSpec& spec, const ScenarioSpace& space, double theta2) {
    const double up = theta1_domain_sup(spec, space, theta2);
    if (!std::isfinite(up)) return kInf;
    return moments_at(spec, space, up, theta2).mass;
}

struct CriticalThreshold {
    double theta_tilde = 0.0;
    double k_critical = 0.0;
    bool sup_mass_below_one = false;  // exceptional: boundary mass < 1 wherever finite
};

// Solve boundary_mass(theta2) = 1. The function is continuous and strictly
// increasing in theta2 where finite, tends to 0 as theta2 -> -inf, and is
// +inf near 0. Returns nullopt when the boundary mass is +inf at every probe
// (the mass equation then always has an interior solution).
std::optional<CriticalThreshold> critical_threshold(const IntegrandSpec& spec,
                                                    const ScenarioSpace& space) {
    double hi = -0.5;  // want boundary mass >= 1 here
    double lo = -4.0;  // want boundary mass < 1 here
    bool sup_below_one = false;
    int expand = 0;
    while (boundary_mass(spec, space, hi) < 1.0) {
        hi *= 0.5;
        if (++expand > kMaxExpand) {
            sup_below_one = true;
            break;
        }
    }
    expand = 0;
    while (!(boundary_mass(spec, space, lo) < 1.0)) {
        if (boundary_mass(spec, space, lo) == kInf && lo < -std::ldexp(1.0, 60))
            return std::nullopt;
        lo *= 2.0;
        if (++expand > kMaxExpand) return std::nullopt;
    }
    CriticalThreshold out;
    out.sup_mass_below_one = sup_below_one;
    if (!sup_below_one) {
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (boundary_mass(spec, space, mid) < 1.0)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
        }
        out.theta_tilde = 0.5 * (lo + hi);
    } else {
        out.theta_tilde = hi;
    }
    const DualCurvePoint pt = solve_inner_impl(spec, space, out.theta_tilde);
    // right derivative of the dual curve from the payoff moment (envelope)
    out.k_critical = out.theta_tilde * pt.payoff_moment - pt.g_value;
    return out;
}

std::vector<double> probe_grid_theta2() {
    // 64 log-spaced probes in [-2^20, -2^-10]
    std::vector<double> probes(64);
    for (int j = 0; j < 64; ++j) {
        const double expo = 20.0 - 30.0 * static_cast<double>(j) / 63.0;
        probes[static_cast<std::size_t>(j)] = -std::pow(2.0, expo);
    }
    return probes;
}

}  // namespace

DualCurvePoint solve_inner(const IntegrandSpec& spec, const ScenarioSpace& space, double theta2) {
    validate_standing(spec, space);
    return solve_inner_impl(spec, space, theta2);
}

WorstCaseReport value_at_k(const IntegrandSpec& spec, const ScenarioSpace& space, double k) {
    validate_standing(spec, space);
    if (std::isnan(k) || k < 0.0) throw ValidationError("threshold k must be nonnegative");

    WorstCaseReport rep;
    rep.k = k;
    if (k == 0.0) {
        const DualCurvePoint pt = solve_inner_impl(spec, space, 0.0);
        rep.v = space.default_expectation();
        rep.theta2_star = 0.0;
        rep.theta1_star = pt.theta1_star;
        rep.localiser = family_density(spec, space, ThetaPair{pt.theta1_star, 0.0});
        rep.localiser_mass = pt.mass;
        rep.is_density = std::abs(pt.mass - 1.0) <= kTolMass;
        rep.is_wcd = rep.is_density;
        rep.trivial_branch = TrivialBranch::KZero;
        return rep;
    }
    if (!below_k_max(spec, space, k)) {
        rep.v = space.min_payoff();
        rep.theta2_star = std::numeric_limits<double>::quiet_NaN();
        rep.theta1_star = std::numeric_limits<double>::quiet_NaN();
        rep.localiser_mass = 0.0;
        rep.is_density = false;
        rep.is_wcd = false;
        rep.trivial_branch = TrivialBranch::KGeKmax;
        return rep;
    }

    // V(k) is the slope of the supporting line to the dual curve through
    // (0, -k): maximise (k + G(theta2)) / theta2 over theta2 < 0.
    auto slope = [&](double u) {
        const DualCurvePoint pt = solve_inner_impl(spec, space, -u);
        return (k + pt.g_value) / (-u);
    };
    const GoldenResult best = dyadic_peak_max(slope, "the supporting-line slope");
    const double theta2_star = -best.x;
    const DualCurvePoint pt = solve_inner_impl(spec, space, theta2_star);

    rep.v = (k + pt.g_value) / theta2_star;
    rep.theta2_star = theta2_star;
    rep.theta1_star = pt.theta1_star;
    rep.localiser = family_density(spec, space, ThetaPair{pt.theta1_star, theta2_star});
    rep.localiser_mass = pt.mass;
    rep.is_density = std::abs(pt.mass - 1.0) <= kTolMass;
    if (rep.is_density && spec.autonomous() && !spec.cofinite()) {
        const std::optional<CriticalThreshold> crit = critical_threshold(spec, space);
        rep.is_wcd = !crit || !(k > crit->k_critical);
    } else {
        rep.is_wcd = rep.is_density;
    }
    rep.trivial_branch = TrivialBranch::None;

    const double fb = min_divergence_impl(spec, space, rep.v);
    if (std::abs(fb - k) > 1e-3 * (1.0 + std::abs(k)))
        throw ConvergenceError("duality self-check failed: F(V(k)) = " + std::to_string(fb) +
                               " for k = " + std::to_string(k));
    return rep;
}

double penalised_value(const IntegrandSpec& spec, const ScenarioSpace& space, double lambda) {
    validate_standing(spec, space);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ValidationError("lambda must be positive and finite");
    const DualCurvePoint pt = solve_inner_impl(spec, space, -1.0 / lambda);
    return -lambda * pt.g_value;
}

double min_divergence(const IntegrandSpec& spec, const ScenarioSpace& space, double b) {
    validate_standing(spec, space);
    const double m = space.min_payoff();
    const double b0 = space.default_expectation();
    if (std::isnan(b) || b < m - 1e-12 || b > b0 + 1e-12)
        throw DomainError("payoff level b must lie in [m, b0]");
    return min_divergence_impl(spec, space, std::clamp(b, m, b0));
}

double k_max_estimate(const IntegrandSpec& spec, const ScenarioSpace& space) {
    validate_standing(spec, space);
    return sweep_k_max(spec, space);
}

ClassifyReport classify(const IntegrandSpec& spec, const ScenarioSpace& space,
                        std::optional<double> k_probe) {
    validate_standing(spec, space);
    ClassifyReport rep;
    rep.theta_min = -kInf;

    if (spec.autonomous() && spec.cofinite()) {
        // dom K contains the whole theta1-axis; the localiser is a density at
        // every threshold.
        rep.regime = Regime::AlwaysWcd;
    } else if (spec.autonomous()) {
        const std::vector<double> probes = probe_grid_theta2();
        bool any_finite = false;
        for (double t2 : probes) {
            const double g = boundary_mass(spec, space, t2);
            rep.probe_grid.emplace_back(t2, g);
            if (std::isfinite(g)) any_finite = true;
        }
        const std::optional<CriticalThreshold> crit =
            any_finite ? critical_threshold(spec, space) : std::nullopt;
        if (!crit) {
            // the family mass passes 1 strictly inside the theta1-domain at
            // every probed theta2
            rep.regime = Regime::AlwaysWcd;
        } else {
            rep.regime = Regime::Critical;
            rep.theta_tilde_min = crit->theta_tilde;
            rep.k_critical = crit->k_critical;
            if (crit->sup_mass_below_one) {
                rep.sigma = crit->theta_tilde;
                rep.note = "boundary mass stays below 1 wherever finite; "
                           "theta_tilde_min reported at the finite supremum";
            }
        }
    } else {
        const std::vector<double> probes = probe_grid_theta2();
        std::size_t n_boundary_deficit = 0;
        std::size_t n_density = 0;
        for (double t2 : probes) {
            const DualCurvePoint pt = solve_inner_impl(spec, space, t2);
            rep.probe_grid.emplace_back(t2, pt.mass);
            if (pt.inner_case == InnerCase::Boundary && pt.mass < 1.0)
                ++n_boundary_deficit;
            else if (std::abs(pt.mass - 1.0) <= kTolMass)
                ++n_density;
        }
        if (n_boundary_deficit == rep.probe_grid.size()) {
            rep.regime = Regime::NeverWcdObserved;
            rep.note = "evidential verdict over the probe grid, not a symbolic proof: "
                       "the localiser mass stayed below 1 at every probed theta2";
        } else if (n_density == rep.probe_grid.size()) {
            rep.regime = Regime::AlwaysWcd;
            rep.note = "evidential verdict over the probe grid: the localiser was a "
                       "density at every probed theta2";
        } else {
            const std::optional<CriticalThreshold> crit = critical_threshold(spec, space);
            rep.regime = Regime::Critical;
            if (crit) {
                rep.theta_tilde_min = crit->theta_tilde;
                rep.k_critical = crit->k_critical;
            }
            rep.note = "mixed probe evidence; critical threshold from the boundary-mass "
                       "crossing";
        }
    }

    if (k_probe) {
        rep.probe_k = *k_probe;
        rep.wcd_at_probe_k = value_at_k(spec, space, *k_probe).is_wcd;
    }
    return rep;
}

AwcdCertificate certify_awcd(const IntegrandSpec& spec, const ScenarioSpace& space,
                             const DensityVector& p, double k, double epsilon, double gamma) {
    validate_standing(spec, space);
    if (!(epsilon >= 0.0) || !(gamma >= 0.0))
        throw ValidationError("epsilon and gamma must be nonnegative");
    if (std::abs(space.total_mass(p) - 1.0) > 1e-8)
        throw ValidationError("p is not a density");
    if (!(k > 0.0)) throw ValidationError("certification needs k in (0, k_max)");
    const WorstCaseReport wc = value_at_k(spec, space, k);
    if (wc.trivial_branch == TrivialBranch::KGeKmax)
        throw ValidationError("certification needs k in (0, k_max)");

    AwcdCertificate cert;
    cert.epsilon = epsilon;
    cert.gamma = gamma;
    const double h = divergence_from_default(spec, space, p);
    const double e = space.expectation(p);
    const double slack = 1e-9 * (1.0 + std::abs(k));
    cert.is_awcd = (h <= k + gamma + slack) && (e <= wc.v + epsilon + slack);
    cert.bregman_to_localiser = bregman_distance(spec, space, p, wc.localiser);
    cert.bound = gamma - wc.theta2_star * epsilon;
    cert.bound_holds = cert.bregman_to_localiser <= cert.bound + 1e-9;
    return cert;
}

double penalised_gap(const IntegrandSpec& spec, const ScenarioSpace& space,
                     const DensityVector& p, double lambda) {
    validate_standing(spec, space);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ValidationError("lambda must be positive and finite");
    if (std::abs(space.total_mass(p) - 1.0) > 1e-8)
        throw ValidationError("p is not a density");
    const double h = divergence_from_default(spec, space, p);
    if (!std::isfinite(h)) throw UndefinedError("divergence of p is not finite");
    const DualCurvePoint pt = solve_inner_impl(spec, space, -1.0 / lambda);
    const double w = -lambda * pt.g_value;
    const DensityVector q =
        family_density(spec, space, ThetaPair{pt.theta1_star, -1.0 / lambda});
    const double b = bregman_distance(spec, space, p, q);
    return (space.expectation(p) + lambda * h) - (w + lambda * b);
}

const char* to_string(InnerCase c) {
    return c == InnerCase::Interior ? "INTERIOR" : "BOUNDARY";
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::AlwaysWcd: return "ALWAYS_WCD";
        case Regime::Critical: return "CRITICAL";
        case Regime::NeverWcdObserved: return "NEVER_WCD_OBSERVED";
    }
    return "?";
}

const char* to_string(TrivialBranch b) {
    switch (b) {
        case TrivialBranch::None: return "NONE";
        case TrivialBranch::KZero: return "K_ZERO";
        case TrivialBranch::KGeKmax: return "K_GE_KMAX";
    }
    return "?";
}

}  // namespace divball
