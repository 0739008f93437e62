// Command-line front end: loads scenario files, runs the solver, prints
// key=value reports and writes machine-readable curve tables.

#include <clocale>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divball/errors.hpp"
#include "divball/functionals.hpp"
#include "divball/integrands.hpp"
#include "divball/oracle.hpp"
#include "divball/scenario.hpp"
#include "divball/solver.hpp"

namespace {

using namespace divball;

constexpr int kExitValidation = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitCertification = 3;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

const char* fmt(bool b) { return b ? "true" : "false"; }

Generator parse_generator(const std::string& name) {
    if (name == "kl") return Generator::KL;
    if (name == "burg") return Generator::Burg;
    if (name == "squared") return Generator::Squared;
    if (name == "chi2") return Generator::Chi2;
    throw ValidationError("unknown divergence '" + name + "' (use kl, burg, squared, chi2)");
}

struct ProblemArgs {
    std::string scenario;
    std::string divergence;
    bool bregman = false;
};

void add_problem_flags(CLI::App* cmd, ProblemArgs& args) {
    cmd->add_option("--scenario", args.scenario, "scenario csv file")->required();
    cmd->add_option("--divergence", args.divergence, "kl, burg, squared or chi2")->required();
    cmd->add_flag("--bregman", args.bregman,
                  "Bregman mode: centre the ball at the scenario's p0 column");
}

struct Problem {
    ScenarioSpace space;
    IntegrandSpec spec;
};

Problem load_problem(const ProblemArgs& args) {
    ScenarioSpace space = load_scenario_csv(args.scenario);
    const Generator gen = parse_generator(args.divergence);
    IntegrandSpec spec = args.bregman ? IntegrandSpec::bregman(gen, space)
                                      : IntegrandSpec::f_divergence(gen);
    return Problem{std::move(space), std::move(spec)};
}

void print_report(const WorstCaseReport& rep) {
    std::cout << "k=" << fmt(rep.k) << "\n"
              << "v=" << fmt(rep.v) << "\n"
              << "theta2_star=" << fmt(rep.theta2_star) << "\n"
              << "theta1_star=" << fmt(rep.theta1_star) << "\n"
              << "localiser_mass=" << fmt(rep.localiser_mass) << "\n"
              << "is_density=" << fmt(rep.is_density) << "\n"
              << "is_wcd=" << fmt(rep.is_wcd) << "\n"
              << "trivial_branch=" << to_string(rep.trivial_branch) << "\n";
}

DensityVector load_density_csv(const std::string& path, const ScenarioSpace& space) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open density file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("density file '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "node_id,p")
        throw ValidationError("density file header must be 'node_id,p'");
    DensityVector p;
    p.reserve(space.size());
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("density file: expected 'node_id,p' rows");
        const std::string id = line.substr(0, comma);
        if (row >= space.size() || id != space.node_id(row))
            throw ValidationError("density file row '" + id +
                                  "' does not match the scenario atom order");
        p.push_back(std::stod(line.substr(comma + 1)));
        ++row;
    }
    if (p.size() != space.size())
        throw ValidationError("density file has " + std::to_string(p.size()) +
                              " rows, scenario has " + std::to_string(space.size()));
    return p;
}

int run_check(const std::string& gcurve_path, std::optional<double> b0) {
    std::ifstream in(gcurve_path);
    if (!in) throw ValidationError("cannot open gcurve file '" + gcurve_path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        line != "theta2,G,theta1_star,case,mass,payoff_moment")
        throw ValidationError("unexpected gcurve header");
    std::vector<double> t2, g;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> tok;
        while (std::getline(ss, field, ',')) tok.push_back(field);
        if (tok.size() != 6) throw ValidationError("malformed gcurve row");
        t2.push_back(std::stod(tok[0]));
        g.push_back(std::stod(tok[1]));
    }
    bool ok = true;
    for (std::size_t i = 1; i + 1 < t2.size(); ++i) {
        const double t = (t2[i] - t2[i - 1]) / (t2[i + 1] - t2[i - 1]);
        const double chord = (1.0 - t) * g[i - 1] + t * g[i + 1];
        if (g[i] > chord + 1e-9) {
            std::cerr << "convexity violated at theta2=" << fmt(t2[i]) << "\n";
            ok = false;
        }
    }
    for (std::size_t i = 0; i < t2.size(); ++i) {
        if (t2[i] == 0.0 && std::abs(g[i]) > 1e-9) {
            std::cerr << "G(0) != 0\n";
            ok = false;
        }
        if (b0 && g[i] < t2[i] * *b0 - 1e-9) {
            std::cerr << "supporting-line bound violated at theta2=" << fmt(t2[i]) << "\n";
            ok = false;
        }
    }
    std::cout << "points=" << t2.size() << "\n"
              << "convex=" << fmt(ok) << "\n";
    return ok ? 0 : kExitValidation;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"worst-case expected payoffs over divergence balls"};
    app.require_subcommand(1);

    ProblemArgs vk_args;
    double vk_k = 0.0;
    auto* vk = app.add_subcommand("vk", "worst-case expected payoff V(k) and localiser");
    add_problem_flags(vk, vk_args);
    vk->add_option("--k", vk_k, "divergence ball radius")->required();

    ProblemArgs wl_args;
    double wl_lambda = 0.0;
    auto* wl = app.add_subcommand("wlambda", "penalised worst case W(lambda)");
    add_problem_flags(wl, wl_args);
    wl->add_option("--lambda", wl_lambda, "penalty weight")->required();

    ProblemArgs loc_args;
    double loc_k = 0.0;
    std::string loc_out;
    auto* loc = app.add_subcommand("localiser", "write the worst-case localiser table");
    add_problem_flags(loc, loc_args);
    loc->add_option("--k", loc_k, "divergence ball radius")->required();
    loc->add_option("--out", loc_out, "output csv file")->required();

    ProblemArgs cls_args;
    std::optional<double> cls_k;
    auto* cls = app.add_subcommand("classify", "worst-case density existence across k");
    add_problem_flags(cls, cls_args);
    cls->add_option("--k", cls_k, "also probe this threshold");

    ProblemArgs cert_args;
    std::string cert_p;
    double cert_k = 0.0, cert_eps = 0.0, cert_gamma = 0.0;
    auto* cert = app.add_subcommand("certify", "certify an almost-worst-case density");
    add_problem_flags(cert, cert_args);
    cert->add_option("--p", cert_p, "density csv file (node_id,p)")->required();
    cert->add_option("--k", cert_k, "divergence ball radius")->required();
    cert->add_option("--eps", cert_eps, "payoff slack epsilon")->required();
    cert->add_option("--gamma", cert_gamma, "divergence slack gamma")->required();

    ProblemArgs gc_args;
    double gc_from = 0.0, gc_to = 0.0;
    int gc_steps = 0;
    std::string gc_out;
    auto* gc = app.add_subcommand("gcurve", "tabulate the dual curve G(theta2)");
    add_problem_flags(gc, gc_args);
    gc->add_option("--theta2-from", gc_from)->required();
    gc->add_option("--theta2-to", gc_to)->required();
    gc->add_option("--steps", gc_steps, "number of grid points (>= 2)")->required();
    gc->add_option("--out", gc_out, "output csv file")->required();

    ProblemArgs fc_args;
    double fc_from = 0.0, fc_to = 0.0;
    int fc_steps = 0;
    std::string fc_out;
    auto* fc = app.add_subcommand("fcurve", "tabulate the divergence floor F(b)");
    add_problem_flags(fc, fc_args);
    fc->add_option("--b-from", fc_from)->required();
    fc->add_option("--b-to", fc_to)->required();
    fc->add_option("--steps", fc_steps, "number of grid points (>= 2)")->required();
    fc->add_option("--out", fc_out, "output csv file")->required();

    std::string chk_gcurve;
    std::optional<double> chk_b0;
    auto* chk = app.add_subcommand("check", "validate a gcurve table");
    chk->add_option("--gcurve", chk_gcurve, "gcurve csv file")->required();
    chk->add_option("--b0", chk_b0, "default expectation for the supporting-line bound");

    CLI11_PARSE(app, argc, argv);

    if (vk->parsed()) {
        Problem pb = load_problem(vk_args);
        print_report(value_at_k(pb.spec, pb.space, vk_k));
        return 0;
    }
    if (wl->parsed()) {
        Problem pb = load_problem(wl_args);
        std::cout << "lambda=" << fmt(wl_lambda) << "\n"
                  << "w=" << fmt(penalised_value(pb.spec, pb.space, wl_lambda)) << "\n";
        return 0;
    }
    if (loc->parsed()) {
        Problem pb = load_problem(loc_args);
        const WorstCaseReport rep = value_at_k(pb.spec, pb.space, loc_k);
        std::ofstream out(loc_out);
        if (!out) throw ValidationError("cannot write '" + loc_out + "'");
        out << "node_id,coordinate,q_hat\n";
        for (std::size_t i = 0; i < rep.localiser.size(); ++i) {
            out << pb.space.node_id(i) << ',' << fmt(pb.space.coordinate(i)) << ','
                << fmt(rep.localiser[i]) << '\n';
        }
        print_report(rep);
        return 0;
    }
    if (cls->parsed()) {
        Problem pb = load_problem(cls_args);
        const ClassifyReport rep = classify(pb.spec, pb.space, cls_k);
        std::cout << "regime=" << to_string(rep.regime) << "\n";
        if (rep.k_critical) std::cout << "k_critical=" << fmt(*rep.k_critical) << "\n";
        if (rep.theta_tilde_min)
            std::cout << "theta_tilde_min=" << fmt(*rep.theta_tilde_min) << "\n";
        if (rep.sigma) std::cout << "sigma=" << fmt(*rep.sigma) << "\n";
        std::cout << "theta_min=" << fmt(rep.theta_min) << "\n";
        if (!rep.note.empty()) std::cout << "note=" << rep.note << "\n";
        if (rep.probe_k) {
            std::cout << "probe_k=" << fmt(*rep.probe_k) << "\n"
                      << "is_wcd_at_probe_k=" << fmt(*rep.wcd_at_probe_k) << "\n";
        }
        std::cout << "probes=" << rep.probe_grid.size() << "\n";
        for (const auto& [t2, mass] : rep.probe_grid)
            std::cout << "probe=" << fmt(t2) << "," << fmt(mass) << "\n";
        return 0;
    }
    if (cert->parsed()) {
        Problem pb = load_problem(cert_args);
        const DensityVector p = load_density_csv(cert_p, pb.space);
        const AwcdCertificate c =
            certify_awcd(pb.spec, pb.space, p, cert_k, cert_eps, cert_gamma);
        std::cout << "epsilon=" << fmt(c.epsilon) << "\n"
                  << "gamma=" << fmt(c.gamma) << "\n"
                  << "is_awcd=" << fmt(c.is_awcd) << "\n"
                  << "bregman_to_localiser=" << fmt(c.bregman_to_localiser) << "\n"
                  << "bound=" << fmt(c.bound) << "\n"
                  << "bound_holds=" << fmt(c.bound_holds) << "\n";
        return c.bound_holds ? 0 : kExitCertification;
    }
    if (gc->parsed()) {
        if (gc_steps < 2) throw ValidationError("gcurve needs --steps >= 2");
        Problem pb = load_problem(gc_args);
        std::ofstream out(gc_out);
        if (!out) throw ValidationError("cannot write '" + gc_out + "'");
        out << "theta2,G,theta1_star,case,mass,payoff_moment\n";
        for (int i = 0; i < gc_steps; ++i) {
            const double t2 = gc_from + (gc_to - gc_from) * i / (gc_steps - 1);
            const DualCurvePoint pt = solve_inner(pb.spec, pb.space, t2);
            out << fmt(t2) << ',' << fmt(pt.g_value) << ',' << fmt(pt.theta1_star) << ','
                << to_string(pt.inner_case) << ',' << fmt(pt.mass) << ','
                << fmt(pt.payoff_moment) << '\n';
        }
        std::cout << "points=" << gc_steps << "\nout=" << gc_out << "\n";
        return 0;
    }
    if (fc->parsed()) {
        if (fc_steps < 2) throw ValidationError("fcurve needs --steps >= 2");
        Problem pb = load_problem(fc_args);
        std::ofstream out(fc_out);
        if (!out) throw ValidationError("cannot write '" + fc_out + "'");
        out << "b,F\n";
        for (int i = 0; i < fc_steps; ++i) {
            const double b = fc_from + (fc_to - fc_from) * i / (fc_steps - 1);
            out << fmt(b) << ',' << fmt(min_divergence(pb.spec, pb.space, b)) << '\n';
        }
        std::cout << "points=" << fc_steps << "\nout=" << fc_out << "\n";
        return 0;
    }
    if (chk->parsed()) return run_check(chk_gcurve, chk_b0);
    return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    try {
        return dispatch(argc, argv);
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
