#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace divball {

/// One weighted atom of the scenario measure: mu({node}) = weight,
/// payoff X(node) and default density p0(node).
struct Atom {
    std::string node_id;
    double coordinate = 0.0;
    double weight = 0.0;
    double payoff = 0.0;
    double default_density = 0.0;
};

/// Massless witness of the underlying continuum, produced by the quadrature
/// constructor (endpoints and a fine grid). Carries no mu-mass; it only pins
/// where the payoff/default density can go between and beyond the atoms, which
/// fixes the upper endpoint of the dual theta1-domain.
struct BoundarySample {
    double coordinate = 0.0;
    double payoff = 0.0;
    double default_density = 0.0;
};

/// Nonnegative values of a mu-density at the atoms.
using DensityVector = std::vector<double>;

class ScenarioSpace {
  public:
    static ScenarioSpace build_discrete(std::vector<Atom> atoms);
    static ScenarioSpace build_discrete(std::vector<Atom> atoms,
                                        std::vector<BoundarySample> boundary);

    /// Gauss-Legendre discretisation of a 1-D continuum (a, b).
    /// Atom weight = quadrature weight * mu_density(node); payoff and p0 are
    /// sampled at the nodes. The p0 column is rescaled to exact unit mass when
    /// its quadrature mass is within 1e-6 of 1, otherwise construction fails.
    static ScenarioSpace build_quadrature(double a, double b, int n,
                                          const std::function<double(double)>& mu_density,
                                          const std::function<double(double)>& payoff,
                                          const std::function<double(double)>& default_density);

    std::size_t size() const { return atoms_.size(); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<BoundarySample>& boundary_samples() const { return boundary_; }

    const std::string& node_id(std::size_t i) const { return atoms_[i].node_id; }
    double coordinate(std::size_t i) const { return atoms_[i].coordinate; }
    double weight(std::size_t i) const { return atoms_[i].weight; }
    double payoff(std::size_t i) const { return atoms_[i].payoff; }
    double default_density(std::size_t i) const { return atoms_[i].default_density; }

    double min_payoff() const { return min_payoff_; }   // m
    double max_payoff() const { return max_payoff_; }   // M
    double default_expectation() const { return b0_; }  // b0

    DensityVector default_density_vector() const;

    double total_mass(const DensityVector& p) const;
    double expectation(const DensityVector& p) const;

  private:
    ScenarioSpace() = default;
    void validate_and_derive();

    std::vector<Atom> atoms_;
    std::vector<BoundarySample> boundary_;
    double min_payoff_ = 0.0;
    double max_payoff_ = 0.0;
    double b0_ = 0.0;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on (a, b).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b);

/// Scenario file, one sample per line, header `node_id,coordinate,weight,payoff,p0`.
/// Rows with weight 0 encode massless boundary samples.
ScenarioSpace load_scenario_csv(const std::string& path);
void save_scenario_csv(const ScenarioSpace& space, const std::string& path);

}  // namespace divball
