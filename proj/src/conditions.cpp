#include "floqa/conditions.hpp"

namespace floqa {

void Threshold::validate() const {
    if (!(delta_T > 0.0) || !(delta_T < 1.0)) {
        throw InvalidParameter("delta_T must lie in (0, 1)");
    }
}

double traditional_condition(const CouplingProfile& profile) {
    if (!(profile.min_gap > 0.0)) {
        throw DegenerateSpectrum("traditional_condition: vanishing spectral gap");
    }
    return profile.max_coupling / profile.min_gap;
}

double frequency_condition(double omega, const CouplingProfile& profile) {
    if (!(profile.min_gap > 0.0)) {
        throw DegenerateSpectrum("frequency_condition: vanishing spectral gap");
    }
    return omega / profile.min_gap;
}

FloquetConditionResult floquet_condition(const CouplingProfile& profile,
                                         const FloquetDecomposition& d, int dimension) {
    if (dimension < 2) throw InvalidParameter("floquet_condition: need N >= 2");
    FloquetConditionResult r;
    r.gap_factor = gap_factor(d, d.period);
    const double sqn = std::sqrt(static_cast<double>(dimension - 1));
    const double rhs = d.omega / (M_PI * std::sqrt(2.0 * (dimension - 1))) * r.gap_factor;
    r.ratio = profile.max_coupling / rhs;
    const double arc = sqn * d.period * profile.max_coupling;
    const double s = std::sin(0.5 * arc);
    r.delta = (s * s) / (r.gap_factor * r.gap_factor);
    r.domain_violation = arc > 0.5 * M_PI;
    return r;
}

double overlap_lower_bound(double delta) {
    if (delta < 0.0) throw InvalidParameter("overlap_lower_bound: delta must be >= 0");
    if (delta >= 0.25) return 0.0;  // bound vacuous
    return std::sqrt(1.0 - 4.0 * delta);
}

FiniteTimeResult finite_time_condition(const CouplingProfile& profile, int dimension,
                                       double tau) {
    if (!(tau > 0.0)) throw InvalidParameter("finite_time_condition: tau must be > 0");
    const double sqn = std::sqrt(static_cast<double>(dimension - 1));
    FiniteTimeResult r;
    r.ratio = tau * sqn * profile.max_coupling / std::sqrt(2.0);
    const double s = std::sin(0.5 * sqn * tau * profile.max_coupling);
    r.overlap_drop_bound = 2.0 * s * s;
    return r;
}

double ConditionReport::finite_time_ratio(double tau) const {
    return tau * std::sqrt(static_cast<double>(dimension - 1)) * max_coupling /
           std::sqrt(2.0);
}

double ConditionReport::finite_time_overlap_drop_bound(double tau) const {
    const double s =
        std::sin(0.5 * std::sqrt(static_cast<double>(dimension - 1)) * tau * max_coupling);
    return 2.0 * s * s;
}

nlohmann::json ConditionReport::to_json() const {
    return {
        {"params", params},
        {"dimension", dimension},
        {"period", period},
        {"omega", omega},
        {"quasienergies", quasienergies},
        {"max_coupling", max_coupling},
        {"min_gap", min_gap},
        {"gap_factor", gap_factor},
        {"delta", delta},
        {"ratios",
         {{"traditional", traditional_ratio},
          {"frequency", frequency_ratio},
          {"floquet", floquet_ratio}}},
        {"verdicts",
         {{"traditional", traditional_verdict},
          {"frequency", frequency_verdict},
          {"floquet", floquet_verdict}}},
        {"domain_violation", domain_violation},
        {"bound_overlap", bound_overlap},
        {"delta_T", delta_T},
    };
}

ConditionReport analyze(const PeriodicHamiltonian& H, double t0,
                        const IntegratorConfig& cfg, const Threshold& thr,
                        int profile_samples) {
    thr.validate();
    ConditionReport rep;
    rep.params = H.params;
    rep.dimension = H.dimension;
    rep.period = H.period;
    rep.omega = H.angular_frequency();
    rep.delta_T = thr.delta_T;

    const CouplingProfile profile = coupling_profile(H, t0, profile_samples);
    rep.max_coupling = profile.max_coupling;
    rep.min_gap = profile.min_gap;

    const auto mono = monodromy(H, t0, cfg);
    const auto d = decompose(mono, rep.omega);
    rep.quasienergies = d.quasienergies;

    rep.traditional_ratio = traditional_condition(profile);
    rep.frequency_ratio = frequency_condition(rep.omega, profile);
    const auto fc = floquet_condition(profile, d, H.dimension);
    rep.floquet_ratio = fc.ratio;
    rep.delta = fc.delta;
    rep.gap_factor = fc.gap_factor;
    rep.domain_violation = fc.domain_violation;
    rep.bound_overlap = overlap_lower_bound(fc.delta);

    rep.traditional_verdict = rep.traditional_ratio <= thr.delta_T;
    rep.frequency_verdict = rep.frequency_ratio <= thr.delta_T;
    rep.floquet_verdict = rep.floquet_ratio <= thr.delta_T;
    return rep;
}

}  // namespace floqa
