#pragma once

#include <vector>

#include "floqa/propagator.hpp"

namespace floqa {

/// Quasienergies in the first Brillouin zone (-omega/2, omega/2] and the
/// Floquet modes at t0 (orthonormal columns of modes_t0), obtained from the
/// monodromy operator. Sorted by quasienergy.
struct FloquetDecomposition {
    std::vector<double> quasienergies;
    Matrix modes_t0;
    double t0 = 0.0;
    double omega = 0.0;   // Brillouin-zone width, 2*pi/period
    double period = 0.0;
};

/// Expansion of a state in the Floquet-mode basis: amplitudes a_i and
/// weights c_i = |a_i|^2 (sum = 1 for a normalized state).
struct FloquetExpansion {
    std::vector<Complex> amplitudes;
    std::vector<double> weights;

    double weight_sum() const;
    /// sum_{i<j} c_i c_j, the pairwise weight product controlled by delta.
    double pair_product_sum() const;
};

/// Diagonalizes the (unitary) monodromy operator. Quasienergies are
/// -arg(lambda)/T folded into (-omega/2, omega/2]; ties at the zone edge map
/// to +omega/2. Throws NumericalFailure if an eigenvalue is off the unit
/// circle by more than 1e-8, InvalidParameter if omega does not match the
/// monodromy interval.
FloquetDecomposition decompose(const UnitaryPropagator& mono, double omega);

/// Floquet modes at time t >= t0: |phi_i(t)> = e^{+i eps_i (t-t0)} U(t,t0) |phi_i(t0)>.
std::vector<Vector> mode_at(const FloquetDecomposition& d, const PeriodicHamiltonian& H,
                            const IntegratorConfig& cfg, double t);
std::vector<Vector> mode_at(const FloquetDecomposition& d, const EvolutionCache& cache,
                            double t);

/// Expands `state` (normalized within 1e-10) in the Floquet modes at time t.
FloquetExpansion expand_state(const FloquetDecomposition& d, const Vector& state,
                              const PeriodicHamiltonian& H, const IntegratorConfig& cfg,
                              double t);
FloquetExpansion expand_state(const FloquetDecomposition& d, const Vector& state,
                              const EvolutionCache& cache, double t);

/// min over i != j of |sin((eps_i - eps_j) T / 2)|; invariant under
/// Brillouin-zone refolding. Throws DegenerateQuasienergies below 1e-12.
double gap_factor(const FloquetDecomposition& d, double T);

/// Same quantity without the degeneracy guard (for diagnostics/sweeps).
double gap_factor_value(const FloquetDecomposition& d, double T);

}  // namespace floqa
