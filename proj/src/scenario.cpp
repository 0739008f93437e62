#include "divball/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "divball/errors.hpp"
#include "divball/numeric.hpp"

namespace divball {

namespace {

constexpr double kDefaultMassTol = 1e-8;    // p0 must be a probability density
constexpr double kQuadratureGate = 1e-6;    // absorbable quadrature error in p0 mass
constexpr int kBoundaryGridSize = 2049;     // fine closed grid, endpoints included

std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(const std::string& tok, int line_no) {
    if (tok == "inf" || tok == "+inf") return kInf;
    if (tok == "-inf") return -kInf;
    if (tok == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ValidationError("scenario file line " + std::to_string(line_no) +
                              ": cannot parse number '" + tok + "'");
    }
    return v;
}

}  // namespace

void ScenarioSpace::validate_and_derive() {
    if (atoms_.empty()) throw ValidationError("scenario space needs at least one atom");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (!(a.weight > 0.0) || !std::isfinite(a.weight))
            throw ValidationError("atom '" + a.node_id + "': weight must be positive and finite");
        if (!std::isfinite(a.payoff))
            throw ValidationError("atom '" + a.node_id + "': payoff must be finite");
        if (!(a.default_density >= 0.0) || !std::isfinite(a.default_density))
            throw ValidationError("atom '" + a.node_id + "': p0 must be finite and nonnegative");
    }
    const std::size_t n = atoms_.size();
    const double mass = pairwise_map_sum(n, [&](std::size_t i) {
        return atoms_[i].weight * atoms_[i].default_density;
    });
    if (std::abs(mass - 1.0) > kDefaultMassTol)
        throw ValidationError("p0 is not a probability density: total mass " + fmt17(mass));
    b0_ = pairwise_map_sum(n, [&](std::size_t i) {
        return atoms_[i].weight * atoms_[i].default_density * atoms_[i].payoff;
    });
    min_payoff_ = atoms_[0].payoff;
    max_payoff_ = atoms_[0].payoff;
    for (const Atom& a : atoms_) {
        min_payoff_ = std::min(min_payoff_, a.payoff);
        max_payoff_ = std::max(max_payoff_, a.payoff);
    }
    if (!(min_payoff_ < b0_ && b0_ < max_payoff_))
        throw ValidationError("need min payoff < default expectation < max payoff, got m=" +
                              fmt17(min_payoff_) + " b0=" + fmt17(b0_) + " M=" + fmt17(max_payoff_));
    for (const BoundarySample& s : boundary_) {
        if (!std::isfinite(s.payoff))
            throw ValidationError("boundary sample payoff must be finite");
        if (std::isnan(s.default_density) || s.default_density < 0.0)
            throw ValidationError("boundary sample p0 must be nonnegative");
    }
}

ScenarioSpace ScenarioSpace::build_discrete(std::vector<Atom> atoms) {
    return build_discrete(std::move(atoms), {});
}

ScenarioSpace ScenarioSpace::build_discrete(std::vector<Atom> atoms,
                                            std::vector<BoundarySample> boundary) {
    ScenarioSpace s;
    s.atoms_ = std::move(atoms);
    s.boundary_ = std::move(boundary);
    s.validate_and_derive();
    return s;
}

ScenarioSpace ScenarioSpace::build_quadrature(double a, double b, int n,
                                              const std::function<double(double)>& mu_density,
                                              const std::function<double(double)>& payoff,
                                              const std::function<double(double)>& default_density) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw ValidationError("quadrature interval requires finite a < b");
    if (n < 2) throw ValidationError("quadrature needs n >= 2 nodes");
    auto [nodes, weights] = gauss_legendre(n, a, b);

    std::vector<Atom> atoms(static_cast<std::size_t>(n));
    int width = 1;
    for (int t = n; t >= 10; t /= 10) width = std::min(width + 1, 9);
    for (int i = 0; i < n; ++i) {
        const double r = nodes[static_cast<std::size_t>(i)];
        const double mu = mu_density(r);
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw ValidationError("mu_density must be positive and finite at node " + fmt17(r));
        char id[32];
        std::snprintf(id, sizeof(id), "q%0*d", width, i + 1);
        Atom& atom = atoms[static_cast<std::size_t>(i)];
        atom.node_id = id;
        atom.coordinate = r;
        atom.weight = weights[static_cast<std::size_t>(i)] * mu;
        atom.payoff = payoff(r);
        atom.default_density = default_density(r);
        if (!std::isfinite(atom.payoff))
            throw ValidationError("payoff must be finite at node " + fmt17(r));
        if (std::isnan(atom.default_density) || atom.default_density < 0.0 ||
            std::isinf(atom.default_density))
            throw ValidationError("p0 must be finite and nonnegative at node " + fmt17(r));
    }

    const double raw_mass = pairwise_map_sum(atoms.size(), [&](std::size_t i) {
        return atoms[i].weight * atoms[i].default_density;
    });
    if (std::abs(raw_mass - 1.0) >= kQuadratureGate)
        throw ValidationError("quadrature mass of p0 deviates from 1 by " +
                              fmt17(std::abs(raw_mass - 1.0)) + "; refine p0 or raise n");
    for (Atom& atom : atoms) atom.default_density /= raw_mass;

    // Massless witnesses of the continuum, endpoints included. They carry the
    // essential range of the payoff and default density between the nodes.
    std::vector<BoundarySample> boundary;
    boundary.reserve(kBoundaryGridSize);
    for (int j = 0; j < kBoundaryGridSize; ++j) {
        const double r = a + (b - a) * static_cast<double>(j) / (kBoundaryGridSize - 1);
        const double x = payoff(r);
        if (!std::isfinite(x)) continue;
        double p0 = default_density(r);
        if (std::isnan(p0) || p0 < 0.0) continue;
        boundary.push_back(BoundarySample{r, x, p0});
    }
    return build_discrete(std::move(atoms), std::move(boundary));
}

DensityVector ScenarioSpace::default_density_vector() const {
    DensityVector p(size());
    for (std::size_t i = 0; i < size(); ++i) p[i] = atoms_[i].default_density;
    return p;
}

double ScenarioSpace::total_mass(const DensityVector& p) const {
    if (p.size() != size())
        throw DimensionError("density vector has " + std::to_string(p.size()) +
                             " entries, space has " + std::to_string(size()));
    return pairwise_map_sum(size(), [&](std::size_t i) { return atoms_[i].weight * p[i]; });
}

double ScenarioSpace::expectation(const DensityVector& p) const {
    if (p.size() != size())
        throw DimensionError("density vector has " + std::to_string(p.size()) +
                             " entries, space has " + std::to_string(size()));
    return pairwise_map_sum(size(),
                            [&](std::size_t i) { return atoms_[i].weight * p[i] * atoms_[i].payoff; });
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n, double a, double b) {
    if (n < 1) throw ValidationError("gauss_legendre needs n >= 1");
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    const double eps = 1e-15;
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        // Newton on the Legendre polynomial, standard asymptotic initial guess.
        double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
        double z1 = 0.0, pp = 0.0;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > eps);
        x[static_cast<std::size_t>(i - 1)] = xm - xl * z;
        x[static_cast<std::size_t>(n - i)] = xm + xl * z;
        w[static_cast<std::size_t>(i - 1)] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        w[static_cast<std::size_t>(n - i)] = w[static_cast<std::size_t>(i - 1)];
    }
    return {std::move(x), std::move(w)};
}

ScenarioSpace load_scenario_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("scenario file '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "node_id,coordinate,weight,payoff,p0")
        throw ValidationError("scenario file header must be 'node_id,coordinate,weight,payoff,p0'");

    std::vector<Atom> atoms;
    std::vector<BoundarySample> boundary;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> tok;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) tok.push_back(field);
        if (tok.size() != 5)
            throw ValidationError("scenario file line " + std::to_string(line_no) +
                                  ": expected 5 fields, got " + std::to_string(tok.size()));
        const double coord = parse_double(tok[1], line_no);
        const double weight = parse_double(tok[2], line_no);
        const double payoff = parse_double(tok[3], line_no);
        const double p0 = parse_double(tok[4], line_no);
        if (weight == 0.0) {
            boundary.push_back(BoundarySample{coord, payoff, p0});
        } else if (weight > 0.0) {
            atoms.push_back(Atom{tok[0], coord, weight, payoff, p0});
        } else {
            throw ValidationError("scenario file line " + std::to_string(line_no) +
                                  ": negative weight");
        }
    }
    return ScenarioSpace::build_discrete(std::move(atoms), std::move(boundary));
}

void save_scenario_csv(const ScenarioSpace& space, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write scenario file '" + path + "'");
    out << "node_id,coordinate,weight,payoff,p0\n";
    for (const Atom& a : space.atoms()) {
        out << a.node_id << ',' << fmt17(a.coordinate) << ',' << fmt17(a.weight) << ','
            << fmt17(a.payoff) << ',' << fmt17(a.default_density) << '\n';
    }
    std::size_t j = 0;
    for (const BoundarySample& s : space.boundary_samples()) {
        out << 'b' << j++ << ',' << fmt17(s.coordinate) << ",0," << fmt17(s.payoff) << ','
            << fmt17(s.default_density) << '\n';
    }
}

}  // namespace divball
