#include "floqa/propagator.hpp"

namespace floqa {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

Matrix magnus4_generator(const PeriodicHamiltonian& H, double t, double h) {
    // Two-node Gauss quadrature fourth-order Magnus generator.
    const double c1 = t + h * (0.5 - kSqrt3 / 6.0);
    const double c2 = t + h * (0.5 + kSqrt3 / 6.0);
    const Matrix H1 = H.evaluate(c1);
    const Matrix H2 = H.evaluate(c2);
    Matrix G = (0.5 * h) * (H1 + H2);
    G -= Complex(0.0, kSqrt3 * h * h / 12.0) * (H2 * H1 - H1 * H2);
    return G;
}

Matrix step_matrix(const PeriodicHamiltonian& H, double t, double h, Scheme scheme) {
    if (scheme == Scheme::magnus4) {
        return hermitian_generator_exp(magnus4_generator(H, t, h));
    }
    return hermitian_generator_exp(Matrix(h * H.evaluate(t + 0.5 * h)));
}

long step_count(const PeriodicHamiltonian& H, double dt, const IntegratorConfig& cfg) {
    double needed = cfg.steps_per_period * dt / H.period;
    if (std::isfinite(H.max_step_hint) && H.max_step_hint > 0.0) {
        needed = std::max(needed, dt / H.max_step_hint);
    }
    return std::max<long>(1, static_cast<long>(std::ceil(needed - 1e-9)));
}

}  // namespace

Scheme scheme_from_string(const std::string& name) {
    if (name == "magnus4") return Scheme::magnus4;
    if (name == "midpoint_exponential" || name == "midpoint") {
        return Scheme::midpoint_exponential;
    }
    throw InvalidParameter("unknown integration scheme \"" + name + "\"");
}

std::string to_string(Scheme s) {
    return s == Scheme::magnus4 ? "magnus4" : "midpoint_exponential";
}

void IntegratorConfig::validate() const {
    if (steps_per_period < 16) {
        throw InvalidParameter("steps_per_period must be >= 16");
    }
    if (!(unitarity_tol > 0.0)) {
        throw InvalidParameter("unitarity_tol must be positive");
    }
}

UnitaryPropagator propagate(const PeriodicHamiltonian& H, double t0, double t1,
                            const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(t1 >= t0)) throw InvalidParameter("propagate: t1 must be >= t0");

    UnitaryPropagator out;
    out.t_start = t0;
    out.t_end = t1;
    if (t1 == t0) {
        out.matrix = Matrix::Identity(H.dimension, H.dimension);
        return out;
    }
    const long steps = step_count(H, t1 - t0, cfg);
    const double h = (t1 - t0) / static_cast<double>(steps);
    Matrix U = Matrix::Identity(H.dimension, H.dimension);
    for (long k = 0; k < steps; ++k) {
        U = step_matrix(H, t0 + k * h, h, cfg.scheme) * U;
    }
    out.matrix = std::move(U);
    out.steps_used = steps;
    out.unitarity_defect = unitarity_defect(out.matrix);
    if (out.unitarity_defect > cfg.unitarity_tol) {
        throw PropagationFailure("propagate: unitarity defect " +
                                 std::to_string(out.unitarity_defect) +
                                 " exceeds tolerance over [" + std::to_string(t0) +
                                 ", " + std::to_string(t1) + "]");
    }
    return out;
}

UnitaryPropagator monodromy(const PeriodicHamiltonian& H, double t0,
                            const IntegratorConfig& cfg) {
    return propagate(H, t0, t0 + H.period, cfg);
}

EvolutionCache::EvolutionCache(const PeriodicHamiltonian& H, double t0,
                               const IntegratorConfig& cfg)
    : H_(H), cfg_(cfg), t0_(t0), period_(H.period) {
    cfg_.validate();
    const long steps = step_count(H_, period_, cfg_);
    step_ = period_ / static_cast<double>(steps);
    table_.reserve(steps + 1);
    table_.push_back(Matrix::Identity(H_.dimension, H_.dimension));
    for (long k = 0; k < steps; ++k) {
        table_.push_back(step_matrix(H_, t0_ + k * step_, step_, cfg_.scheme) *
                         table_.back());
    }
    monodromy_.matrix = table_.back();
    monodromy_.t_start = t0_;
    monodromy_.t_end = t0_ + period_;
    monodromy_.steps_used = steps;
    monodromy_.unitarity_defect = unitarity_defect(monodromy_.matrix);
    if (monodromy_.unitarity_defect > cfg_.unitarity_tol) {
        throw PropagationFailure("EvolutionCache: unitarity defect exceeds tolerance");
    }
    eig_ = unitary_eigensystem(monodromy_.matrix);
    if (eig_.residual > 1e-8) {
        throw NumericalFailure("EvolutionCache: monodromy eigendecomposition residual " +
                               std::to_string(eig_.residual));
    }
}

Matrix EvolutionCache::matrix_at(double t) const {
    const double s = t - t0_;
    double nf = std::floor(s / period_);
    double r = s - nf * period_;
    if (r < 0.0) r = 0.0;
    if (r >= period_) {
        r -= period_;
        nf += 1.0;
    }
    const auto n = static_cast<long long>(nf);
    const long steps = static_cast<long>(table_.size()) - 1;
    long k = static_cast<long>(r / step_);
    if (k > steps - 1) k = steps - 1;
    double rem = r - k * step_;
    if (rem < 0.0) rem = 0.0;

    Matrix U = table_[k];
    if (rem > 1e-14 * period_) {
        U = step_matrix(H_, t0_ + k * step_, rem, cfg_.scheme) * U;
    }
    if (n != 0) {
        U = U * unitary_power(eig_, n);
    }
    return U;
}

}  // namespace floqa
