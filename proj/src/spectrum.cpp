#include "floqa/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include "floqa/propagator.hpp"

namespace floqa {

namespace {

void fix_gauge(Matrix& states) {
    // Largest-modulus component made real positive; deterministic across runs.
    for (Eigen::Index c = 0; c < states.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < states.rows(); ++r) {
            const double a = std::abs(states(r, c));
            if (a > best) {
                best = a;
                imax = r;
            }
        }
        const Complex z = states(imax, c);
        if (std::abs(z) > 0.0) {
            states.col(c) *= std::conj(z) / std::abs(z);
        }
    }
}

double spectral_norm(const Eigen::VectorXd& energies) {
    return energies.cwiseAbs().maxCoeff();
}

double min_adjacent_gap(const Eigen::VectorXd& energies) {
    double g = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < energies.size(); ++i) {
        g = std::min(g, energies(i) - energies(i - 1));
    }
    return g;
}

}  // namespace

InstantaneousSpectrum eigensystem(const PeriodicHamiltonian& H, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H.evaluate(t));
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("eigensystem: solver failed at t = " + std::to_string(t));
    }
    InstantaneousSpectrum s;
    s.t = t;
    s.energies = es.eigenvalues();
    s.states = es.eigenvectors();
    fix_gauge(s.states);
    return s;
}

namespace {

double coupling_from(const InstantaneousSpectrum& s, const Matrix& dH, double t) {
    const auto n = s.energies.size();
    const double tol = 1e-10 * spectral_norm(s.energies);
    if (min_adjacent_gap(s.energies) <= tol) {
        throw DegenerateSpectrum("coupling: degenerate spectrum at t = " +
                                 std::to_string(t));
    }
    // |<E_m| dH/dt |E_n>| / |E_n - E_m|: gauge-invariant replacement for
    // differentiating eigenvectors.
    const Matrix W = s.states.adjoint() * dH * s.states;
    double best = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index nn = m + 1; nn < n; ++nn) {
            best = std::max(best, std::abs(W(m, nn)) / (s.energies(nn) - s.energies(m)));
        }
    }
    return best;
}

}  // namespace

double coupling(const PeriodicHamiltonian& H, double t) {
    return coupling_from(eigensystem(H, t), H.derivative_or_fd(t), t);
}

CouplingProfile coupling_profile(const PeriodicHamiltonian& H, double t0, int samples) {
    if (samples < 64) throw InvalidParameter("coupling_profile: need >= 64 samples");
    CouplingProfile p;
    p.times.resize(samples);
    p.coupling_values.resize(samples);
    p.sample_spacing = H.period / (samples - 1);
    p.max_coupling = 0.0;
    p.min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double t = t0 + k * p.sample_spacing;
        const auto s = eigensystem(H, t);
        const double c = coupling_from(s, H.derivative_or_fd(t), t);
        p.times(k) = t;
        p.coupling_values(k) = c;
        p.max_coupling = std::max(p.max_coupling, c);
        p.min_gap = std::min(p.min_gap, min_adjacent_gap(s.energies));
    }
    return p;
}

PhasePair phases(const PeriodicHamiltonian& H, int level, double t0, double t1,
                 const IntegratorConfig& cfg) {
    cfg.validate();
    if (level < 0 || level >= H.dimension) {
        throw InvalidParameter("phases: level out of range");
    }
    if (!(t1 > t0)) throw InvalidParameter("phases: need t1 > t0");

    double needed = cfg.steps_per_period * (t1 - t0) / H.period;
    if (std::isfinite(H.max_step_hint) && H.max_step_hint > 0.0) {
        needed = std::max(needed, (t1 - t0) / H.max_step_hint);
    }
    long K = std::max<long>(2, static_cast<long>(std::ceil(needed)));
    if (K % 2 != 0) ++K;  // composite Simpson wants an even interval count
    const double h = (t1 - t0) / static_cast<double>(K);

    double simpson = 0.0;
    Vector transported;
    Vector end_reference;
    for (long k = 0; k <= K; ++k) {
        const auto s = eigensystem(H, t0 + k * h);
        const double tol = 1e-10 * spectral_norm(s.energies);
        if (min_adjacent_gap(s.energies) <= tol) {
            throw DegenerateSpectrum("phases: spectral gap collapse at t = " +
                                     std::to_string(t0 + k * h));
        }
        const double w = (k == 0 || k == K) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        simpson += w * s.energies(level);
        const Vector raw = s.states.col(level);
        if (k == 0) {
            transported = raw;
        } else {
            const Complex z = transported.dot(raw);
            if (std::abs(z) < 0.1) {
                throw NumericalFailure(
                    "phases: eigenvector continuation lost (grid too coarse)");
            }
            transported = raw * (std::conj(z) / std::abs(z));
        }
        if (k == K) end_reference = raw;
    }

    PhasePair out;
    out.dynamical = -(h / 3.0) * simpson;
    // Parallel transport keeps the local connection zero; the geometric phase
    // is the mismatch against the reference gauge at the endpoint. For a
    // closed cycle this is the Berry phase.
    out.geometric = std::arg(end_reference.dot(transported));
    return out;
}

}  // namespace floqa
