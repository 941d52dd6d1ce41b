#pragma once

#include "floqa/models.hpp"

namespace floqa {

struct IntegratorConfig;

/// Instantaneous eigensystem of H(t): energies ascending, orthonormal
/// eigenvectors with a deterministic gauge (largest-modulus component made
/// real positive).
struct InstantaneousSpectrum {
    double t = 0.0;
    Eigen::VectorXd energies;
    Matrix states;  // column n is |E_n(t)>
};

InstantaneousSpectrum eigensystem(const PeriodicHamiltonian& H, double t);

/// max_{m != n} |<E_m| dH/dt |E_n>| / |E_n - E_m| at time t. Gauge invariant
/// by construction. Throws DegenerateSpectrum if the smallest gap is below
/// 1e-10 * ||H||.
double coupling(const PeriodicHamiltonian& H, double t);

/// Dense-grid maximum of the coupling and minimum spectral gap over one
/// period, sampled at `samples` points spanning [t0, t0 + T] inclusive.
struct CouplingProfile {
    Eigen::VectorXd times;
    Eigen::VectorXd coupling_values;
    double max_coupling = 0.0;
    double min_gap = 0.0;
    double sample_spacing = 0.0;  // grid resolution metadata
};

CouplingProfile coupling_profile(const PeriodicHamiltonian& H, double t0,
                                 int samples = 2048);

/// Dynamical phase -int E_n dt and geometric phase i int <E_n|dE_n/dt> dt of
/// level n over [t0, t1], computed on the propagation grid with a smooth
/// gauge (each eigenvector phase-aligned with its predecessor). For a closed
/// path (t1 = t0 + T) the geometric phase is the Berry phase of the cycle.
struct PhasePair {
    double dynamical = 0.0;
    double geometric = 0.0;
};

PhasePair phases(const PeriodicHamiltonian& H, int level, double t0, double t1,
                 const IntegratorConfig& cfg);

}  // namespace floqa
