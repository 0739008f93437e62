#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "divball/errors.hpp"
#include "divball/functionals.hpp"
#include "divball/integrands.hpp"
#include "divball/oracle.hpp"
#include "divball/scenario.hpp"
#include "divball/solver.hpp"

namespace py = pybind11;
using namespace divball;

PYBIND11_MODULE(_divball, m) {
    m.doc() = "worst-case expected payoffs over divergence balls";

    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<DimensionError>(m, "DimensionError");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<SizeError>(m, "SizeError");
    py::register_exception<UndefinedError>(m, "UndefinedError");

    py::enum_<Generator>(m, "Generator")
        .value("KL", Generator::KL)
        .value("BURG", Generator::Burg)
        .value("SQUARED", Generator::Squared)
        .value("CHI2", Generator::Chi2);

    py::enum_<IntegrandMode>(m, "IntegrandMode")
        .value("F_DIVERGENCE", IntegrandMode::FDivergence)
        .value("BREGMAN", IntegrandMode::Bregman);

    py::enum_<InnerCase>(m, "InnerCase")
        .value("INTERIOR", InnerCase::Interior)
        .value("BOUNDARY", InnerCase::Boundary);

    py::enum_<Regime>(m, "Regime")
        .value("ALWAYS_WCD", Regime::AlwaysWcd)
        .value("CRITICAL", Regime::Critical)
        .value("NEVER_WCD_OBSERVED", Regime::NeverWcdObserved);

    py::enum_<TrivialBranch>(m, "TrivialBranch")
        .value("NONE", TrivialBranch::None)
        .value("K_ZERO", TrivialBranch::KZero)
        .value("K_GE_KMAX", TrivialBranch::KGeKmax);

    py::class_<Atom>(m, "Atom")
        .def(py::init([](std::string node_id, double coordinate, double weight, double payoff,
                         double p0) {
                 return Atom{std::move(node_id), coordinate, weight, payoff, p0};
             }),
             py::arg("node_id"), py::arg("coordinate"), py::arg("weight"), py::arg("payoff"),
             py::arg("p0"))
        .def_readonly("node_id", &Atom::node_id)
        .def_readonly("coordinate", &Atom::coordinate)
        .def_readonly("weight", &Atom::weight)
        .def_readonly("payoff", &Atom::payoff)
        .def_readonly("p0", &Atom::default_density);

    py::class_<ScenarioSpace>(m, "ScenarioSpace")
        .def_static("build_discrete",
                    py::overload_cast<std::vector<Atom>>(&ScenarioSpace::build_discrete),
                    py::arg("atoms"))
        .def_static("build_quadrature", &ScenarioSpace::build_quadrature, py::arg("a"),
                    py::arg("b"), py::arg("n"), py::arg("mu_density"), py::arg("payoff"),
                    py::arg("p0"))
        .def_property_readonly("size", &ScenarioSpace::size)
        .def_property_readonly("m", &ScenarioSpace::min_payoff)
        .def_property_readonly("M", &ScenarioSpace::max_payoff)
        .def_property_readonly("b0", &ScenarioSpace::default_expectation)
        .def("node_id", &ScenarioSpace::node_id)
        .def("coordinate", &ScenarioSpace::coordinate)
        .def("weight", &ScenarioSpace::weight)
        .def("payoff", &ScenarioSpace::payoff)
        .def("default_density_vector", &ScenarioSpace::default_density_vector)
        .def("total_mass", &ScenarioSpace::total_mass, py::arg("p"))
        .def("expectation", &ScenarioSpace::expectation, py::arg("p"));

    m.def("load_scenario_csv", &load_scenario_csv, py::arg("path"));
    m.def("save_scenario_csv", &save_scenario_csv, py::arg("space"), py::arg("path"));

    py::class_<DerivLimits>(m, "DerivLimits")
        .def_readonly("at_zero", &DerivLimits::at_zero)
        .def_readonly("at_inf", &DerivLimits::at_inf);

    py::class_<IntegrandSpec>(m, "IntegrandSpec")
        .def_static("f_divergence", &IntegrandSpec::f_divergence, py::arg("generator"))
        .def_static("bregman",
                    py::overload_cast<Generator, const ScenarioSpace&>(&IntegrandSpec::bregman),
                    py::arg("generator"), py::arg("space"))
        .def_static("bregman",
                    py::overload_cast<Generator, std::vector<double>>(&IntegrandSpec::bregman),
                    py::arg("generator"), py::arg("reference"))
        .def("value", &IntegrandSpec::value, py::arg("atom"), py::arg("s"))
        .def("conjugate", &IntegrandSpec::conjugate, py::arg("atom"), py::arg("tau"))
        .def("conjugate_deriv", &IntegrandSpec::conjugate_deriv, py::arg("atom"), py::arg("tau"))
        .def("deriv_limits", &IntegrandSpec::deriv_limits, py::arg("atom"))
        .def("bregman_increment", &IntegrandSpec::bregman_increment, py::arg("s"), py::arg("t"))
        .def_property_readonly("generator", &IntegrandSpec::generator)
        .def_property_readonly("mode", &IntegrandSpec::mode)
        .def_property_readonly("cofinite", &IntegrandSpec::cofinite)
        .def_property_readonly("linear_growth", &IntegrandSpec::linear_growth)
        .def_property_readonly("f_prime_at_zero", &IntegrandSpec::f_prime_at_zero)
        .def_property_readonly("f_prime_at_inf", &IntegrandSpec::f_prime_at_inf)
        .def_property_readonly("reference_density", &IntegrandSpec::reference_density);

    py::class_<ThetaPair>(m, "ThetaPair")
        .def(py::init([](double t1, double t2) { return ThetaPair{t1, t2}; }),
             py::arg("theta1"), py::arg("theta2"))
        .def_readonly("theta1", &ThetaPair::theta1)
        .def_readonly("theta2", &ThetaPair::theta2);

    py::class_<FamilyMoments>(m, "FamilyMoments")
        .def_readonly("mass", &FamilyMoments::mass)
        .def_readonly("payoff_moment", &FamilyMoments::payoff_moment);

    m.def("divergence_from_default", &divergence_from_default, py::arg("spec"),
          py::arg("space"), py::arg("p"));
    m.def("bregman_distance", &bregman_distance, py::arg("spec"), py::arg("space"),
          py::arg("p"), py::arg("q"));
    m.def("dual_value", &dual_value, py::arg("spec"), py::arg("space"), py::arg("theta"));
    m.def("dual_gradient", &dual_gradient, py::arg("spec"), py::arg("space"), py::arg("theta"));
    m.def("in_family_domain", &in_family_domain, py::arg("spec"), py::arg("space"),
          py::arg("theta"));
    m.def("family_density", &family_density, py::arg("spec"), py::arg("space"),
          py::arg("theta"));
    m.def("pythagorean_residual", &pythagorean_residual, py::arg("spec"), py::arg("space"),
          py::arg("p"), py::arg("theta"));

    py::class_<DualCurvePoint>(m, "DualCurvePoint")
        .def_readonly("theta2", &DualCurvePoint::theta2)
        .def_readonly("g_value", &DualCurvePoint::g_value)
        .def_readonly("theta1_star", &DualCurvePoint::theta1_star)
        .def_readonly("inner_case", &DualCurvePoint::inner_case)
        .def_readonly("mass", &DualCurvePoint::mass)
        .def_readonly("payoff_moment", &DualCurvePoint::payoff_moment);

    py::class_<WorstCaseReport>(m, "WorstCaseReport")
        .def_readonly("k", &WorstCaseReport::k)
        .def_readonly("v", &WorstCaseReport::v)
        .def_readonly("theta2_star", &WorstCaseReport::theta2_star)
        .def_readonly("theta1_star", &WorstCaseReport::theta1_star)
        .def_readonly("localiser", &WorstCaseReport::localiser)
        .def_readonly("localiser_mass", &WorstCaseReport::localiser_mass)
        .def_readonly("is_density", &WorstCaseReport::is_density)
        .def_readonly("is_wcd", &WorstCaseReport::is_wcd)
        .def_readonly("trivial_branch", &WorstCaseReport::trivial_branch);

    py::class_<ClassifyReport>(m, "ClassifyReport")
        .def_readonly("regime", &ClassifyReport::regime)
        .def_readonly("k_critical", &ClassifyReport::k_critical)
        .def_readonly("theta_tilde_min", &ClassifyReport::theta_tilde_min)
        .def_readonly("sigma", &ClassifyReport::sigma)
        .def_readonly("theta_min", &ClassifyReport::theta_min)
        .def_readonly("probe_grid", &ClassifyReport::probe_grid)
        .def_readonly("note", &ClassifyReport::note)
        .def_readonly("probe_k", &ClassifyReport::probe_k)
        .def_readonly("wcd_at_probe_k", &ClassifyReport::wcd_at_probe_k);

    py::class_<AwcdCertificate>(m, "AwcdCertificate")
        .def_readonly("epsilon", &AwcdCertificate::epsilon)
        .def_readonly("gamma", &AwcdCertificate::gamma)
        .def_readonly("is_awcd", &AwcdCertificate::is_awcd)
        .def_readonly("bregman_to_localiser", &AwcdCertificate::bregman_to_localiser)
        .def_readonly("bound", &AwcdCertificate::bound)
        .def_readonly("bound_holds", &AwcdCertificate::bound_holds);

    m.def("solve_inner", &solve_inner, py::arg("spec"), py::arg("space"), py::arg("theta2"));
    m.def("value_at_k", &value_at_k, py::arg("spec"), py::arg("space"), py::arg("k"));
    m.def("penalised_value", &penalised_value, py::arg("spec"), py::arg("space"),
          py::arg("lambda_"));
    m.def("min_divergence", &min_divergence, py::arg("spec"), py::arg("space"), py::arg("b"));
    m.def("k_max_estimate", &k_max_estimate, py::arg("spec"), py::arg("space"));
    m.def("classify", &classify, py::arg("spec"), py::arg("space"),
          py::arg("k_probe") = py::none());
    m.def("certify_awcd", &certify_awcd, py::arg("spec"), py::arg("space"), py::arg("p"),
          py::arg("k"), py::arg("epsilon"), py::arg("gamma"));
    m.def("penalised_gap", &penalised_gap, py::arg("spec"), py::arg("space"), py::arg("p"),
          py::arg("lambda_"));

    m.def("brute_force_worst_case", &brute_force_worst_case, py::arg("spec"), py::arg("space"),
          py::arg("k"), py::arg("resolution"));
    m.def("brute_force_min_divergence", &brute_force_min_divergence, py::arg("spec"),
          py::arg("space"), py::arg("b"), py::arg("resolution"));
    m.def("brute_force_penalised", &brute_force_penalised, py::arg("spec"), py::arg("space"),
          py::arg("lambda_"), py::arg("resolution"));

#ifdef DIVBALL_VERSION
    m.attr("__version__") = DIVBALL_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
