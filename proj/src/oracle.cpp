#include "floqa/oracle.hpp"

#include <algorithm>

namespace floqa {

SchwingerRabiClosedForm schwinger_rabi_closed_form(const SchwingerRabiParams& p) {
    p.validate();
    SchwingerRabiClosedForm c;
    c.params = p;
    c.Omega = std::sqrt(p.omega0 * p.omega0 + p.omega * p.omega -
                        2.0 * p.omega * p.omega0 * std::cos(p.theta));
    return c;
}

double SchwingerRabiClosedForm::overlap(double t) const {
    const double s = params.omega * std::sin(params.theta);
    if (s == 0.0) return 1.0;  // also covers Omega -> 0, reachable only at theta = 0
    const double x = (s / Omega) * std::sin(0.5 * Omega * t);
    return std::sqrt(std::max(0.0, 1.0 - x * x));
}

double SchwingerRabiClosedForm::max_excited_population() const {
    if (std::sin(params.theta) == 0.0) return 0.0;
    const double r = params.omega * std::sin(params.theta) / Omega;
    return r * r;
}

double SchwingerRabiClosedForm::exact_criterion() const {
    return 0.5 * max_excited_population();
}

std::array<double, 2> SchwingerRabiClosedForm::quasienergy_pair() const {
    const double w = params.omega;
    double a = fold_to_zone(0.5 * (w + Omega), w);
    double b = fold_to_zone(0.5 * (w - Omega), w);
    if (a > b) std::swap(a, b);
    return {a, b};
}

double SchwingerRabiClosedForm::coupling() const {
    return 0.5 * params.omega * std::sin(params.theta);
}

std::vector<double> SchwingerRabiClosedForm::resonance_frequencies(int k_max) const {
    // Crossings solve Omega(omega) = k * omega, i.e.
    // (k^2 - 1) omega^2 + 2 omega0 cos(theta) omega - omega0^2 = 0.
    std::vector<double> out;
    const double c = std::cos(params.theta);
    const double w0 = params.omega0;
    for (int k = 1; k <= k_max; ++k) {
        if (k == 1) {
            if (c > 0.0) out.push_back(w0 / (2.0 * c));
            continue;
        }
        const double K = static_cast<double>(k) * k - 1.0;
        out.push_back(w0 * (std::sqrt(c * c + K) - c) / K);
    }
    return out;
}

DualClosedForm dual_closed_form(const SchwingerRabiParams& p) {
    p.validate();
    DualClosedForm c;
    c.params = p;
    c.Omega = std::sqrt(p.omega0 * p.omega0 + p.omega * p.omega -
                        2.0 * p.omega * p.omega0 * std::cos(p.theta));
    if (!(c.Omega > 0.0)) {
        throw InvalidParameter("dual_closed_form: zero effective splitting");
    }
    c.period = 2.0 * M_PI / c.Omega;
    return c;
}

double DualClosedForm::overlap(double t) const {
    const double s = std::sin(params.theta) * std::sin(0.5 * params.omega * t);
    return std::sqrt(std::max(0.0, 1.0 - s * s));
}

double DualClosedForm::exact_criterion() const {
    const double s = std::sin(params.theta);
    return 0.5 * s * s;
}

std::array<double, 2> DualClosedForm::quasienergy_pair() const {
    double a = fold_to_zone(-0.5 * (Omega + params.omega), Omega);
    double b = fold_to_zone(-0.5 * (Omega - params.omega), Omega);
    if (a > b) std::swap(a, b);
    return {a, b};
}

TwoToneClosedForm two_tone_closed_form(const TwoToneParams& p) {
    p.validate();
    TwoToneClosedForm c;
    c.params = p;
    c.detuning = p.omega - p.omega0;
    c.OmegaPrime = std::sqrt(c.detuning * c.detuning + p.V * p.V);
    c.OmegaR = std::sqrt(p.omega0 * p.omega0 + 4.0 * p.V * p.V);
    return c;
}

double TwoToneClosedForm::rwa_transition_probability(double t) const {
    const double r = params.V / OmegaPrime;
    const double s = std::sin(0.5 * OmegaPrime * t);
    return r * r * s * s;
}

std::array<double, 2> TwoToneClosedForm::rwa_quasienergies() const {
    const double e = 0.5 * (params.omega + OmegaR);
    return {-e, e};
}

double TwoToneClosedForm::instantaneous_gap(double t) const {
    const double v = params.V * std::cos(params.omega * t);
    return std::sqrt(params.omega0 * params.omega0 + 4.0 * v * v);
}

double TwoToneClosedForm::instantaneous_gap_sine_variant(double t) const {
    const double v = params.V * std::sin(params.omega * t);
    return std::sqrt(params.omega0 * params.omega0 + 4.0 * v * v);
}

bool TwoToneClosedForm::rwa_trusted() const {
    return std::abs(detuning) <= 10.0 * params.V && params.V <= 0.1 * params.omega0;
}

}  // namespace floqa
