// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are fixed here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "divball/functionals.hpp"
#include "divball/integrands.hpp"
#include "divball/numeric.hpp"
#include "divball/oracle.hpp"
#include "divball/scenario.hpp"
#include "divball/solver.hpp"
#include "test_support.hpp"

using namespace divball;
using namespace divball::testing;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        g_notes.push_back(what);
    }
}

bool flush_criterion(int idx, const std::string& title) {
    const bool ok = g_notes.empty();
    std::printf("[%s] criterion %d: %s", ok ? "PASS" : "FAIL", idx, title.c_str());
    if (!ok) {
        std::printf("  --");
        for (const auto& n : g_notes) std::printf(" {%s}", n.c_str());
    }
    std::printf("\n");
    g_notes.clear();
    return ok;
}

bool close(double got, double want, double tol) { return std::abs(got - want) <= tol; }

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    auto space = burg_2r(200);
    auto burg = IntegrandSpec::f_divergence(Generator::Burg);
    const auto rep = value_at_k(burg, space, 1.0);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    note(close(rep.v, std::exp(-1.5), 1e-5), "V(1) = " + num(rep.v));
    note(close(rep.theta2_star, -std::exp(1.5), 1e-4),
         "theta2* = " + num(rep.theta2_star));
    note(close(rep.localiser_mass, 2.0 * std::exp(-1.5), 1e-5),
         "localiser mass = " + num(rep.localiser_mass));
    note(!rep.is_density, "is_density should be false");
    note(elapsed < 1.0, "runtime " + num(elapsed) + " s");
    flush_criterion(1, "reverse-relative-entropy closed form at k = 1 (< 1 s)");
}

void criterion2() {
    auto space = burg_2r(200);
    auto burg = IntegrandSpec::f_divergence(Generator::Burg);
    const auto cls = classify(burg, space);
    note(cls.regime == Regime::Critical, "regime");
    note(cls.theta_tilde_min && close(*cls.theta_tilde_min, -2.0, 1e-6),
         "theta_tilde_min = " + num(cls.theta_tilde_min.value_or(kInf)));
    note(cls.k_critical && close(*cls.k_critical, std::log(2.0) - 0.5, 1e-5),
         "k_critical = " + num(cls.k_critical.value_or(kInf)));
    const auto low = value_at_k(burg, space, 0.10);
    note(low.is_wcd, "is_wcd at k = 0.10");
    const double h = divergence_from_default(burg, space, low.localiser);
    note(close(h, 0.10, 1e-5), "H(localiser) = " + num(h));
    const auto high = value_at_k(burg, space, 0.50);
    note(!high.is_wcd, "is_wcd at k = 0.50 should be false");
    flush_criterion(2, "critical threshold log 2 - 1/2 and existence on both sides");
}

void criterion3() {
    auto space = never_breg(200);
    auto spec = IntegrandSpec::bregman(Generator::Burg, space);
    const auto cls = classify(spec, space);
    note(cls.regime == Regime::NeverWcdObserved, "regime");
    for (double k : {0.1, 1.0, 5.0}) {
        const auto rep = value_at_k(spec, space, k);
        note(rep.localiser_mass < 1.0 - 1e-3,
             "mass at k = " + num(k) + " is " + num(rep.localiser_mass));
    }
    flush_criterion(3, "Bregman-ball nonexistence: mass deficit at every threshold");
}

void criterion4() {
    auto space = kl_2pt();
    auto kl = IntegrandSpec::f_divergence(Generator::KL);
    for (double k : {0.05, 0.2, 0.5}) {
        const double v = value_at_k(kl, space, k).v;
        const double bf = brute_force_worst_case(kl, space, k, 20000);
        note(close(v, bf, 1e-4), "V vs oracle at k = " + num(k));
    }
    for (double lam : {0.5, 1.0, 2.0}) {
        const double w = penalised_value(kl, space, lam);
        const double bf = brute_force_penalised(kl, space, lam, 20000);
        note(close(w, bf, 1e-3), "W vs oracle at lambda = " + num(lam));
    }
    const double kmax = k_max_estimate(kl, space);
    note(close(kmax, std::log(2.0), 1e-6), "k_max = " + num(kmax));
    flush_criterion(4, "brute-force oracle equivalence on the two-point space");
}

void criterion5() {
    auto space = burg_2r(200);
    auto burg = IntegrandSpec::f_divergence(Generator::Burg);
    const double w = penalised_value(burg, space, 0.25);
    note(close(w, 0.125 + 0.25 * std::log(4.0), 1e-5), "W(0.25) = " + num(w));
    DensityVector p0(space.size(), 1.0);
    const double gap = penalised_gap(burg, space, p0, 0.25);
    note(close(gap, 0.0, 1e-6), "gap = " + num(gap));
    DensityVector q(space.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = 1.0 / (4.0 * space.coordinate(i));
    const double lb = 0.25 * bregman_distance(burg, space, p0, q);
    note(close(lb, 0.1950930, 1e-5), "lambda B = " + num(lb));
    flush_criterion(5, "penalised identity W(0.25) and its exact Bregman split");
}

void criterion6() {
    std::mt19937 rng(101);
    auto space = random_space10(17);
    const std::vector<Generator> gens = {Generator::KL, Generator::Burg, Generator::Squared,
                                         Generator::Chi2};
    int active_plus = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Generator g = gens[static_cast<std::size_t>(trial) % gens.size()];
        auto spec = IntegrandSpec::f_divergence(g);
        auto p = random_density(space, rng);
        std::uniform_real_distribution<double> t2dist(-3.0, -0.1);
        std::uniform_real_distribution<double> shift(0.05, 2.0);
        const double theta2 = t2dist(rng);
        double sup = kInf;
        for (std::size_t i = 0; i < space.size(); ++i) {
            const double s = spec.deriv_limits(i).at_inf;
            if (std::isfinite(s)) sup = std::min(sup, s - theta2 * space.payoff(i));
        }
        const ThetaPair th{(std::isfinite(sup) ? sup : 1.0) - shift(rng), theta2};
        for (std::size_t i = 0; i < space.size(); ++i) {
            if (spec.deriv_limits(i).at_zero >= th.theta1 + th.theta2 * space.payoff(i))
                ++active_plus;
        }
        const double h = divergence_from_default(spec, space, p);
        const double res = pythagorean_residual(spec, space, p, th);
        note(std::abs(res) <= 1e-9 * (1.0 + std::abs(h)),
             "residual " + num(res) + " on trial " + std::to_string(trial));
    }
    note(active_plus > 0, "no draw exercised the plus-part term");
    flush_criterion(6, "generalised Pythagorean identity, 100 random (p, theta)");
}

void criterion7() {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> tdist(0.0, 1.0);
    struct Probe {
        ScenarioSpace space;
        IntegrandSpec spec;
        double k;
        const char* name;
    };
    std::vector<Probe> probes;
    probes.push_back({burg_2r(), IntegrandSpec::f_divergence(Generator::Burg), 1.0, "burg-2r"});
    probes.push_back({kl_2pt(), IntegrandSpec::f_divergence(Generator::KL), 0.2, "kl-2pt"});
    {
        auto nb = never_breg();
        probes.push_back({nb, IntegrandSpec::bregman(Generator::Burg, nb), 1.0, "never-breg"});
    }
    for (const auto& probe : probes) {
        const auto rep = value_at_k(probe.spec, probe.space, probe.k);
        const auto base = probe.space.default_density_vector();
        for (int trial = 0; trial < 100; ++trial) {
            const double t = tdist(rng);
            DensityVector p(probe.space.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = (1.0 - t) * rep.localiser[i] + t * base[i];
            const double mass = probe.space.total_mass(p);
            for (double& v : p) v /= mass;
            const double eps = pos_part(probe.space.expectation(p) - rep.v);
            const double gamma =
                pos_part(divergence_from_default(probe.spec, probe.space, p) - probe.k);
            const double b = bregman_distance(probe.spec, probe.space, p, rep.localiser);
            note(b <= gamma - rep.theta2_star * eps + 1e-9,
                 std::string(probe.name) + " trial " + std::to_string(trial));
        }
    }
    {
        auto space = burg_2r();
        auto burg = IntegrandSpec::f_divergence(Generator::Burg);
        DensityVector p0(space.size(), 1.0);
        const auto cert = certify_awcd(burg, space, p0, 1.0, 0.45, 0.0);
        note(cert.is_awcd, "certify example is_awcd");
        note(close(cert.bregman_to_localiser, 0.987793, 1e-4),
             "B = " + num(cert.bregman_to_localiser));
        note(close(cert.bound, 2.016760, 1e-4), "bound = " + num(cert.bound));
        note(cert.bound_holds, "certify example bound_holds");
    }
    flush_criterion(7, "clustering bound for 100 random almost-worst-case densities");
}

void criterion8() {
    auto burg_space = burg_2r();
    auto burg = IntegrandSpec::f_divergence(Generator::Burg);
    auto kl_space = kl_2pt();
    auto kl = IntegrandSpec::f_divergence(Generator::KL);
    for (double k : {0.05, 0.2, 0.5, 1.0}) {
        const double fb = min_divergence(burg, burg_space, value_at_k(burg, burg_space, k).v);
        note(close(fb, k, 1e-6), "burg-2r F(V(k)) = " + num(fb) + " at k = " + num(k));
        if (k < std::log(2.0)) {
            const double fk = min_divergence(kl, kl_space, value_at_k(kl, kl_space, k).v);
            note(close(fk, k, 1e-6), "kl-2pt F(V(k)) = " + num(fk) + " at k = " + num(k));
        }
    }
    flush_criterion(8, "duality round trip F(V(k)) = k on both named spaces");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = elapsed < 30.0;
    if (!in_budget) ++g_failures;
    std::printf("[%s] full acceptance suite in %.2f s (budget 30 s)\n",
                in_budget ? "PASS" : "FAIL", elapsed);
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d check(s) failed\n", g_failures);
    return 1;
}
