#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floqa/common.hpp"

namespace floqa {

struct IntegratorConfig;  // propagator.hpp

/// A time-periodic Hermitian Hamiltonian H(t) = H(t+T), hbar = 1.
/// Immutable after construction; evaluate/derivative are pure functions of t
/// and safe to call concurrently.
struct PeriodicHamiltonian {
    int dimension = 0;
    double period = 0.0;
    std::function<Matrix(double)> evaluate;
    std::function<Matrix(double)> derivative;  // dH/dt; empty if not available
    std::string label;
    nlohmann::json params;  // builder-recorded parameters

    // Integrators cap their step at this value. Models whose evaluation
    // carries structure faster than `period` (the dual construction) set it.
    double max_step_hint = std::numeric_limits<double>::infinity();

    bool has_derivative() const { return static_cast<bool>(derivative); }

    /// Analytic derivative when present, otherwise central differences with
    /// step h = period * 1e-6.
    Matrix derivative_or_fd(double t) const;

    double angular_frequency() const { return 2.0 * M_PI / period; }
};

struct SchwingerRabiParams {
    double omega0 = 1.0;  // level splitting
    double theta = 0.0;   // mixing angle, in [0, pi)
    double omega = 1.0;   // drive angular frequency

    void validate() const;
};

struct TwoToneParams {
    double omega0 = 1.0;
    double V = 0.05;       // fast-tone amplitude
    double Vprime = 0.0;   // slow-tone amplitude
    double omega = 1.0;    // fast-tone angular frequency
    int n_tone = 1;        // slow tone at omega/n_tone; full period 2*pi*n_tone/omega

    void validate() const;
};

/// One harmonic of a real Fourier series:
///   cos_coeff * cos(k w t) + sin_coeff * sin(k w t), both Hermitian.
struct FourierTerm {
    int harmonic = 0;
    Matrix cos_coeff;
    Matrix sin_coeff;  // ignored for harmonic 0; may be empty
};

/// Circularly driven two-level system with level splitting omega0 and mixing
/// angle theta; period 2*pi/omega.
PeriodicHamiltonian build_schwinger_rabi(const SchwingerRabiParams& p);

/// Counter-evolving partner -U^dag(t) H(t) U(t) of `base`, where U is the
/// evolution operator of `base` from t = 0, realized by propagation and
/// conjugation. The period is supplied by the caller or, for a
/// Schwinger-Rabi base, derived as 2*pi/Omega with
/// Omega = sqrt(omega0^2 + omega^2 - 2 omega omega0 cos theta).
PeriodicHamiltonian build_dual(const PeriodicHamiltonian& base,
                               const IntegratorConfig& cfg,
                               std::optional<double> dual_period = std::nullopt);

/// Two-level system driven by a fast tone at omega plus a weak slow tone at
/// omega/n_tone. `truncated` drops the slow tone (period becomes 2*pi/omega).
PeriodicHamiltonian build_two_tone(const TwoToneParams& p, bool truncated = false);

/// Hamiltonian assembled from a real Fourier series; exactly periodic by
/// construction. Every coefficient must be Hermitian within 1e-12.
PeriodicHamiltonian build_generic(int dimension, double period,
                                  const std::vector<FourierTerm>& terms);

/// Builds a model from a JSON config {"model": ..., "params": {...}}.
/// Model names: schwinger_rabi, dual, two_tone, generic (hyphens accepted).
PeriodicHamiltonian model_from_json(const nlohmann::json& config,
                                    const IntegratorConfig& cfg);

}  // namespace floqa
