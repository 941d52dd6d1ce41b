#pragma once

#include <random>

#include "floqa/models.hpp"

namespace floqa::testing {

/// Random Hermitian matrix with entries of magnitude ~ scale.
Matrix random_hermitian(std::mt19937_64& rng, int n, double scale);

/// Random normalized complex vector.
Vector random_state(std::mt19937_64& rng, int n);

/// Random Fourier-series model: a static diagonal part with level spacing
/// ~ gap_scale plus `max_harmonic` Hermitian harmonics of magnitude
/// ~ drive_scale. Weak drive_scale relative to gap_scale keeps the bound
/// parameter delta small.
PeriodicHamiltonian random_fourier_model(std::mt19937_64& rng, int dimension,
                                         int max_harmonic, double gap_scale,
                                         double drive_scale, double period);

}  // namespace floqa::testing
