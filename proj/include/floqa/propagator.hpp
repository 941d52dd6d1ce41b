#pragma once

#include "floqa/linalg.hpp"
#include "floqa/models.hpp"

namespace floqa {

enum class Scheme {
    magnus4,              // two-node Gauss fourth-order Magnus generator per step
    midpoint_exponential  // exp(-i h H(t + h/2)), second order
};

Scheme scheme_from_string(const std::string& name);
std::string to_string(Scheme s);

struct IntegratorConfig {
    int steps_per_period = 4096;
    Scheme scheme = Scheme::magnus4;
    double unitarity_tol = 1e-10;

    void validate() const;  // steps_per_period >= 16, tol > 0
};

struct UnitaryPropagator {
    Matrix matrix;
    double t_start = 0.0;
    double t_end = 0.0;
    long steps_used = 0;
    double unitarity_defect = 0.0;  // max-norm of U^dag U - I
};

/// Evolution operator U(t1, t0) of the time-dependent Schroedinger equation.
/// Fixed-step integration; every step is exactly unitary (exponential of a
/// Hermitian generator). Throws PropagationFailure if the accumulated
/// unitarity defect exceeds cfg.unitarity_tol, InvalidParameter if t1 < t0.
UnitaryPropagator propagate(const PeriodicHamiltonian& H, double t0, double t1,
                            const IntegratorConfig& cfg = {});

/// One-period evolution operator U(t0 + T, t0).
UnitaryPropagator monodromy(const PeriodicHamiltonian& H, double t0,
                            const IntegratorConfig& cfg = {});

/// Precomputed one-period table of propagators plus the eigendecomposition of
/// the monodromy operator; yields U(t, t0) for arbitrary t in O(1) by
/// composing a table checkpoint, one partial step, and an exact monodromy
/// power. All state is immutable after construction.
class EvolutionCache {
  public:
    EvolutionCache(const PeriodicHamiltonian& H, double t0,
                   const IntegratorConfig& cfg = {});

    /// U(t, t0); t may lie anywhere (negative offsets use inverse powers).
    Matrix matrix_at(double t) const;

    const UnitaryPropagator& monodromy() const { return monodromy_; }
    const UnitaryEigensystem& monodromy_eigensystem() const { return eig_; }
    double t0() const { return t0_; }
    double period() const { return period_; }
    long steps_per_period() const { return static_cast<long>(table_.size()) - 1; }

  private:
    const PeriodicHamiltonian H_;
    IntegratorConfig cfg_;
    double t0_;
    double period_;
    double step_;
    std::vector<Matrix> table_;  // U(t0 + k*step, t0), k = 0..steps
    UnitaryPropagator monodromy_;
    UnitaryEigensystem eig_;
};

}  // namespace floqa
