#include "divball/integrands.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "divball/errors.hpp"
#include "divball/numeric.hpp"

namespace divball {

namespace {

// Generator primitives. All closed-form; there is no numeric conjugation in
// the library.

double gen_value(Generator g, double s) {
    switch (g) {
        case Generator::KL:
            return s == 0.0 ? 0.0 : s * std::log(s);
        case Generator::Burg:
            return -std::log(s);  // +inf at s = 0
        case Generator::Squared:
            return s * s - 1.0;
        case Generator::Chi2:
            return (s - 1.0) * (s - 1.0);
    }
    return 0.0;
}

double gen_value_at_zero(Generator g) {
    switch (g) {
        case Generator::KL: return 0.0;
        case Generator::Burg: return kInf;
        case Generator::Squared: return -1.0;
        case Generator::Chi2: return 1.0;
    }
    return 0.0;
}

double gen_deriv(Generator g, double t) {
    switch (g) {
        case Generator::KL:
            return t == 0.0 ? -kInf : std::log(t) + 1.0;
        case Generator::Burg:
            return t == 0.0 ? -kInf : -1.0 / t;
        case Generator::Squared:
            return 2.0 * t;
        case Generator::Chi2:
            return 2.0 * (t - 1.0);
    }
    return 0.0;
}

double gen_deriv_at_zero(Generator g) {
    switch (g) {
        case Generator::KL: return -kInf;
        case Generator::Burg: return -kInf;
        case Generator::Squared: return 0.0;
        case Generator::Chi2: return -2.0;
    }
    return 0.0;
}

// f'(+inf) coincides with the linear growth constant c.
double gen_deriv_at_inf(Generator g) {
    switch (g) {
        case Generator::KL: return kInf;
        case Generator::Burg: return 0.0;
        case Generator::Squared: return kInf;
        case Generator::Chi2: return kInf;
    }
    return 0.0;
}

double gen_conjugate(Generator g, double tau) {
    switch (g) {
        case Generator::KL:
            return std::exp(tau - 1.0);
        case Generator::Burg:
            return tau < 0.0 ? -1.0 - std::log(-tau) : kInf;
        case Generator::Squared: {
            const double p = pos_part(tau);
            return 1.0 + 0.25 * p * p;
        }
        case Generator::Chi2:
            return tau >= -2.0 ? tau + 0.25 * tau * tau : -1.0;
    }
    return 0.0;
}

double gen_conjugate_deriv_or_inf(Generator g, double tau) {
    switch (g) {
        case Generator::KL:
            return std::exp(tau - 1.0);
        case Generator::Burg:
            return tau < 0.0 ? -1.0 / tau : kInf;
        case Generator::Squared:
            return 0.5 * pos_part(tau);
        case Generator::Chi2:
            return pos_part(1.0 + 0.5 * tau);
    }
    return 0.0;
}

}  // namespace

IntegrandSpec IntegrandSpec::f_divergence(Generator g) {
    return IntegrandSpec(g, IntegrandMode::FDivergence);
}

IntegrandSpec IntegrandSpec::bregman(Generator g, const ScenarioSpace& space) {
    IntegrandSpec spec(g, IntegrandMode::Bregman);
    spec.reference_.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        spec.reference_.push_back(space.default_density(i));
    spec.reference_boundary_.reserve(space.boundary_samples().size());
    for (const BoundarySample& s : space.boundary_samples())
        spec.reference_boundary_.push_back(s.default_density);
    if (gen_deriv_at_zero(g) == -kInf) {
        for (std::size_t i = 0; i < spec.reference_.size(); ++i) {
            if (!(spec.reference_[i] > 0.0))
                throw ValidationError("Bregman mode with f'(0) = -inf requires a strictly "
                                      "positive reference density at every atom");
        }
    }
    return spec;
}

IntegrandSpec IntegrandSpec::bregman(Generator g, std::vector<double> reference) {
    IntegrandSpec spec(g, IntegrandMode::Bregman);
    spec.reference_ = std::move(reference);
    if (spec.reference_.empty())
        throw ValidationError("Bregman mode needs a nonempty reference density");
    for (double t : spec.reference_) {
        if (std::isnan(t) || t < 0.0 || std::isinf(t))
            throw ValidationError("reference density values must be finite and nonnegative");
        if (gen_deriv_at_zero(g) == -kInf && !(t > 0.0))
            throw ValidationError("Bregman mode with f'(0) = -inf requires a strictly "
                                  "positive reference density at every atom");
    }
    return spec;
}

double IntegrandSpec::reference_at(std::size_t atom) const {
    if (atom >= reference_.size())
        throw DomainError("atom index " + std::to_string(atom) +
                          " outside the bound reference density");
    return reference_[atom];
}

double IntegrandSpec::value(std::size_t atom, double s) const {
    if (std::isnan(s)) return s;
    if (s < 0.0) return kInf;
    if (autonomous()) {
        if (std::isinf(s)) {
            // limit of f along s -> +inf
            return generator_ == Generator::Burg ? -kInf : kInf;
        }
        return gen_value(generator_, s);
    }
    return bregman_increment(s, reference_at(atom));
}

double IntegrandSpec::conjugate(std::size_t atom, double tau) const {
    if (autonomous()) return gen_conjugate(generator_, tau);
    const double t = reference_at(atom);
    const double fp = t == 0.0 ? gen_deriv_at_zero(generator_) : gen_deriv(generator_, t);
    const double fv = t == 0.0 ? gen_value_at_zero(generator_) : gen_value(generator_, t);
    return gen_conjugate(generator_, tau + fp) + fv - fp * t;
}

double IntegrandSpec::conjugate_deriv_or_inf(std::size_t atom, double tau) const {
    if (autonomous()) return gen_conjugate_deriv_or_inf(generator_, tau);
    const double t = reference_at(atom);
    const double fp = t == 0.0 ? gen_deriv_at_zero(generator_) : gen_deriv(generator_, t);
    return gen_conjugate_deriv_or_inf(generator_, tau + fp);
}

double IntegrandSpec::conjugate_deriv(std::size_t atom, double tau) const {
    const double sup = deriv_limits(atom).at_inf;
    if (std::isfinite(sup) && tau >= sup)
        throw DomainError("conjugate derivative undefined at tau >= beta'(r,+inf)");
    return conjugate_deriv_or_inf(atom, tau);
}

DerivLimits IntegrandSpec::deriv_limits(std::size_t atom) const {
    const double f0 = gen_deriv_at_zero(generator_);
    const double finf = gen_deriv_at_inf(generator_);
    if (autonomous()) return DerivLimits{f0, finf};
    const double t = reference_at(atom);
    const double fp = t == 0.0 ? f0 : gen_deriv(generator_, t);
    return DerivLimits{f0 == -kInf ? -kInf : f0 - fp, finf == kInf ? kInf : finf - fp};
}

double IntegrandSpec::deriv_sup_at_reference(double t) const {
    const double finf = gen_deriv_at_inf(generator_);
    if (autonomous() || finf == kInf) return finf;
    double fp;
    if (t == 0.0) fp = gen_deriv_at_zero(generator_);
    else if (std::isinf(t)) fp = finf;
    else fp = gen_deriv(generator_, t);
    if (fp == -kInf) return kInf;
    return finf - fp;
}

double IntegrandSpec::bregman_increment(double s, double t) const {
    const Generator g = generator_;
    if (std::isnan(s) || std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (s < 0.0 || t < 0.0) return kInf;
    if (std::isinf(s)) return kInf;  // Delta(s, t) -> +inf as s -> +inf
    if (t == 0.0) {
        const double f0 = gen_value_at_zero(g);
        if (f0 == kInf) return s == 0.0 ? 0.0 : kInf;
        if (s == 0.0) return 0.0;
        const double fp0 = gen_deriv_at_zero(g);
        if (fp0 == -kInf) return kInf;
        const double d = gen_value(g, s) - f0 - fp0 * s;
        return d > 0.0 ? d : 0.0;
    }
    const double fs = s == 0.0 ? gen_value_at_zero(g) : gen_value(g, s);
    if (fs == kInf) return kInf;
    const double d = fs - gen_value(g, t) - gen_deriv(g, t) * (s - t);
    return d > 0.0 ? d : 0.0;
}

bool IntegrandSpec::cofinite() const { return gen_deriv_at_inf(generator_) == kInf; }

double IntegrandSpec::linear_growth() const { return gen_deriv_at_inf(generator_); }

double IntegrandSpec::f_prime_at_zero() const { return gen_deriv_at_zero(generator_); }

double IntegrandSpec::f_prime_at_inf() const { return gen_deriv_at_inf(generator_); }

}  // namespace divball
