#include "floqa/floquet.hpp"

#include <algorithm>
#include <numeric>

namespace floqa {

double FloquetExpansion::weight_sum() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double FloquetExpansion::pair_product_sum() const {
    double s = 0.0, s2 = 0.0;
    for (double c : weights) {
        s += c;
        s2 += c * c;
    }
    return 0.5 * (s * s - s2);
}

FloquetDecomposition decompose(const UnitaryPropagator& mono, double omega) {
    const double T = mono.t_end - mono.t_start;
    if (!(T > 0.0) || !(omega > 0.0) || std::abs(omega * T - 2.0 * M_PI) > 1e-8) {
        throw InvalidParameter(
            "decompose: omega must equal 2*pi over the monodromy interval");
    }
    const auto es = unitary_eigensystem(mono.matrix);
    const auto n = es.eigenvalues.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(std::abs(es.eigenvalues(i)) - 1.0) > 1e-8) {
            throw NumericalFailure(
                "decompose: monodromy eigenvalue off the unit circle by " +
                std::to_string(std::abs(std::abs(es.eigenvalues(i)) - 1.0)));
        }
    }
    if (es.residual > 1e-8) {
        throw NumericalFailure("decompose: eigendecomposition residual " +
                               std::to_string(es.residual));
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> eps(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        eps[i] = fold_to_zone(-std::arg(es.eigenvalues(i)) / T, omega);
    }
    std::sort(order.begin(), order.end(),
              [&eps](int a, int b) { return eps[a] < eps[b]; });

    FloquetDecomposition d;
    d.t0 = mono.t_start;
    d.omega = omega;
    d.period = T;
    d.quasienergies.resize(n);
    d.modes_t0.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d.quasienergies[i] = eps[order[i]];
        d.modes_t0.col(i) = es.eigenvectors.col(order[i]);
    }
    return d;
}

namespace {

std::vector<Vector> modes_from_matrix(const FloquetDecomposition& d, const Matrix& U,
                                      double dt) {
    const auto n = d.modes_t0.cols();
    std::vector<Vector> out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out[i] = std::polar(1.0, d.quasienergies[i] * dt) * (U * d.modes_t0.col(i));
    }
    return out;
}

}  // namespace

std::vector<Vector> mode_at(const FloquetDecomposition& d, const PeriodicHamiltonian& H,
                            const IntegratorConfig& cfg, double t) {
    if (t < d.t0) throw InvalidParameter("mode_at: t must be >= t0");
    return modes_from_matrix(d, propagate(H, d.t0, t, cfg).matrix, t - d.t0);
}

std::vector<Vector> mode_at(const FloquetDecomposition& d, const EvolutionCache& cache,
                            double t) {
    if (t < d.t0) throw InvalidParameter("mode_at: t must be >= t0");
    return modes_from_matrix(d, cache.matrix_at(t), t - d.t0);
}

namespace {

FloquetExpansion expand_with_modes(const std::vector<Vector>& modes,
                                   const Vector& state) {
    if (std::abs(state.norm() - 1.0) > 1e-10) {
        throw InvalidParameter("expand_state: state must be normalized");
    }
    FloquetExpansion e;
    e.amplitudes.reserve(modes.size());
    e.weights.reserve(modes.size());
    for (const auto& phi : modes) {
        const Complex a = phi.dot(state);
        e.amplitudes.push_back(a);
        e.weights.push_back(std::norm(a));
    }
    return e;
}

}  // namespace

FloquetExpansion expand_state(const FloquetDecomposition& d, const Vector& state,
                              const PeriodicHamiltonian& H, const IntegratorConfig& cfg,
                              double t) {
    return expand_with_modes(mode_at(d, H, cfg, t), state);
}

FloquetExpansion expand_state(const FloquetDecomposition& d, const Vector& state,
                              const EvolutionCache& cache, double t) {
    return expand_with_modes(mode_at(d, cache, t), state);
}

double gap_factor_value(const FloquetDecomposition& d, double T) {
    const auto n = d.quasienergies.size();
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double x = 0.5 * (d.quasienergies[i] - d.quasienergies[j]) * T;
            g = std::min(g, std::abs(std::sin(x)));
        }
    }
    return g;
}

double gap_factor(const FloquetDecomposition& d, double T) {
    if (d.quasienergies.size() < 2) {
        throw InvalidParameter("gap_factor: need at least two levels");
    }
    const double g = gap_factor_value(d, T);
    if (g < 1e-12) {
        throw DegenerateQuasienergies("gap_factor: quasienergy degeneracy (gap " +
                                      std::to_string(g) + ")");
    }
    return g;
}

}  // namespace floqa
