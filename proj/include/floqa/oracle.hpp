#pragma once

#include <array>
#include <vector>

#include "floqa/models.hpp"

namespace floqa {

/// Closed-form reference results for the circularly driven two-level system,
/// used as ground truth in tests and acceptance runs.
struct SchwingerRabiClosedForm {
    SchwingerRabiParams params;
    double Omega = 0.0;  // sqrt(omega0^2 + omega^2 - 2 omega omega0 cos theta)

    /// |<E_0(t)| U(t,0) |E_0(0)>| for evolution started in the ground state.
    double overlap(double t) const;

    /// Long-time supremum of the excited-state population, (omega sin theta / Omega)^2.
    double max_excited_population() const;

    /// (omega sin theta / Omega)^2 / 2; "<< 1" is the exact long-time criterion.
    double exact_criterion() const;

    /// Monodromy quasienergies folded into (-omega/2, omega/2], ascending.
    /// The eigenphase pair is {(omega + Omega)/2, (omega - Omega)/2} mod omega.
    std::array<double, 2> quasienergy_pair() const;

    /// The t-independent coupling, omega sin(theta) / 2.
    double coupling() const;

    /// Drive frequencies with a quasienergy crossing (Omega(omega) = k omega):
    ///   k = 1: omega0 / (2 cos theta)               (absent for theta >= pi/2)
    ///   k >= 2: omega0 [sqrt(cos^2 theta + k^2 - 1) - cos theta] / (k^2 - 1)
    /// Returned for k = 1..k_max, descending in omega.
    std::vector<double> resonance_frequencies(int k_max = 10) const;
};

SchwingerRabiClosedForm schwinger_rabi_closed_form(const SchwingerRabiParams& p);

/// Closed forms for the counter-evolving partner of the model above.
struct DualClosedForm {
    SchwingerRabiParams params;
    double Omega = 0.0;
    double period = 0.0;  // 2*pi/Omega

    /// sqrt(1 - sin^2 theta sin^2(omega t / 2))
    double overlap(double t) const;

    /// sin^2(theta)/2; "<< 1" is the exact long-time criterion.
    double exact_criterion() const;

    /// Monodromy quasienergies folded into (-Omega/2, Omega/2], ascending;
    /// the eigenphase pair is {-(Omega + omega)/2, -(Omega - omega)/2} mod Omega.
    std::array<double, 2> quasienergy_pair() const;
};

DualClosedForm dual_closed_form(const SchwingerRabiParams& p);

/// Rotating-wave reference results for the two-tone model near resonance of
/// the fast tone (slow tone neglected).
struct TwoToneClosedForm {
    TwoToneParams params;
    double detuning = 0.0;     // omega - omega0
    double OmegaPrime = 0.0;   // sqrt(detuning^2 + V^2)
    double OmegaR = 0.0;       // sqrt(omega0^2 + 4 V^2)

    /// (V/Omega')^2 sin^2(Omega' t / 2), the rotating-wave transition probability.
    double rwa_transition_probability(double t) const;

    /// Rotating-wave quasienergies +-(omega + Omega_R)/2 (unfolded).
    std::array<double, 2> rwa_quasienergies() const;

    /// Instantaneous gap of the truncated model by direct diagonalization:
    /// sqrt(omega0^2 + 4 V^2 cos^2(omega t)).
    double instantaneous_gap(double t) const;

    /// Sine-squared variant of the gap expression, recorded for reference;
    /// tests validate instantaneous_gap against the eigensolver.
    double instantaneous_gap_sine_variant(double t) const;

    /// Trust region of the rotating-wave results: |detuning| <= 10 V and V <= 0.1 omega0.
    bool rwa_trusted() const;
};

TwoToneClosedForm two_tone_closed_form(const TwoToneParams& p);

}  // namespace floqa
