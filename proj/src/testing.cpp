#include "floqa/testing.hpp"

namespace floqa::testing {

Matrix random_hermitian(std::mt19937_64& rng, int n, double scale) {
    std::uniform_real_distribution<double> uni(-scale, scale);
    Matrix M(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            M(r, c) = Complex(uni(rng), uni(rng));
        }
    }
    return 0.5 * (M + M.adjoint());
}

Vector random_state(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

PeriodicHamiltonian random_fourier_model(std::mt19937_64& rng, int dimension,
                                         int max_harmonic, double gap_scale,
                                         double drive_scale, double period) {
    std::uniform_real_distribution<double> jitter(0.85, 1.15);
    std::vector<FourierTerm> terms;

    FourierTerm dc;
    dc.harmonic = 0;
    Matrix A0 = Matrix::Zero(dimension, dimension);
    double level = 0.0;
    for (int i = 0; i < dimension; ++i) {
        A0(i, i) = level;
        level += gap_scale * jitter(rng);
    }
    // small static Hermitian perturbation on top of the diagonal
    dc.cos_coeff = A0 + random_hermitian(rng, dimension, 0.1 * drive_scale);
    terms.push_back(std::move(dc));

    for (int k = 1; k <= max_harmonic; ++k) {
        FourierTerm t;
        t.harmonic = k;
        t.cos_coeff = random_hermitian(rng, dimension, drive_scale / k);
        t.sin_coeff = random_hermitian(rng, dimension, drive_scale / k);
        terms.push_back(std::move(t));
    }
    return build_generic(dimension, period, terms);
}

}  // namespace floqa::testing
