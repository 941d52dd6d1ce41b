#pragma once

#include "floqa/floquet.hpp"
#include "floqa/spectrum.hpp"

namespace floqa {

/// Quantification of "much less than": A << B is operationalized as
/// A/B <= delta_T.
struct Threshold {
    double delta_T = 0.05;

    void validate() const;  // 0 < delta_T < 1
};

/// Ratio max-coupling / min-gap. "<= delta_T" is the traditional criterion.
double traditional_condition(const CouplingProfile& profile);

/// Ratio omega / min-gap, with omega the angular frequency of the
/// Hamiltonian's period (for multi-tone drives, the slowest tone).
double frequency_condition(double omega, const CouplingProfile& profile);

struct FloquetConditionResult {
    double ratio = 0.0;          // LHS / RHS of the Floquet criterion
    double delta = 0.0;          // sin^2(sqrt(N-1) T max_coupling / 2) / gap_factor^2
    double gap_factor = 0.0;     // min |sin((eps_i - eps_j) T / 2)|
    bool domain_violation = false;  // sqrt(N-1) T max_coupling > pi/2
};

/// The Floquet criterion: max coupling against
/// (omega / (pi sqrt(2(N-1)))) * gap_factor, plus the time-independent bound
/// parameter delta. The derivation requires sqrt(N-1) T max_coupling <= pi/2;
/// beyond it the result carries domain_violation = true.
FloquetConditionResult floquet_condition(const CouplingProfile& profile,
                                         const FloquetDecomposition& d, int dimension);

/// Lower bound sqrt(1 - 4 delta) on the evolved/instantaneous overlap
/// modulus; 0 once delta >= 1/4 (bound vacuous).
double overlap_lower_bound(double delta);

struct FiniteTimeResult {
    double ratio = 0.0;               // tau sqrt(N-1) max_coupling / sqrt(2)
    double overlap_drop_bound = 0.0;  // 2 sin^2(sqrt(N-1) tau max_coupling / 2)
};

/// Finite-horizon criterion: evolution up to tau keeps 1 - |d_m| below
/// overlap_drop_bound; ratio <= delta_T certifies adiabaticity up to tau.
FiniteTimeResult finite_time_condition(const CouplingProfile& profile, int dimension,
                                       double tau);

/// Everything the pipeline knows about one parameter point.
struct ConditionReport {
    nlohmann::json params;
    int dimension = 0;
    double period = 0.0;
    double omega = 0.0;
    std::vector<double> quasienergies;
    double max_coupling = 0.0;
    double min_gap = 0.0;
    double gap_factor = 0.0;
    double delta = 0.0;
    double traditional_ratio = 0.0;
    double frequency_ratio = 0.0;
    double floquet_ratio = 0.0;
    bool domain_violation = false;
    double bound_overlap = 0.0;  // clamped to [0, 1], never NaN
    double delta_T = 0.05;
    bool traditional_verdict = false;
    bool frequency_verdict = false;
    bool floquet_verdict = false;

    double finite_time_ratio(double tau) const;
    double finite_time_overlap_drop_bound(double tau) const;

    nlohmann::json to_json() const;
};

/// Full pipeline: coupling profile -> monodromy -> Floquet decomposition ->
/// all criteria. Deterministic for a given configuration. Sub-errors
/// propagate typed (DegenerateSpectrum, DegenerateQuasienergies, ...).
ConditionReport analyze(const PeriodicHamiltonian& H, double t0,
                        const IntegratorConfig& cfg, const Threshold& thr,
                        int profile_samples = 2048);

}  // namespace floqa
