#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "floqa/conditions.hpp"
#include "floqa/oracle.hpp"

namespace floqa {

struct AxisSpec {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    bool log_scale = false;

    std::vector<double> values() const;
    nlohmann::json to_json() const;
    static AxisSpec from_json(const nlohmann::json& j);
};

/// Declarative grid sweep: a model, one or two swept parameters, and the
/// quantities to record per grid point.
struct SweepSpec {
    nlohmann::json model;  // {"model": ..., "params": {...}}; axis values override params
    std::vector<AxisSpec> axes;
    std::vector<std::string> quantities;  // see quantity_columns() in experiments.cpp
    int evolution_horizon = 20;           // periods, for overlap_min
    int overlap_samples_per_period = 256;
    Threshold threshold{};
    IntegratorConfig integrator{};
    int profile_samples = 2048;
    double resonance_flag_tol = 1e-3;  // rows with gap_factor below are flagged
    bool resonance_mask = false;       // nudge axis values off exact quasienergy crossings

    void validate() const;
    nlohmann::json to_json() const;
    static SweepSpec from_json(const nlohmann::json& j);
};

/// Tabular grid output. Rows are emitted in deterministic row-major axis
/// order regardless of worker scheduling; all floats are written with 17
/// significant digits, so identical spec + config gives byte-identical CSV.
struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;  // "ok" or an error label per row
    nlohmann::json metadata;          // config_hash, integrator, timestamp

    std::size_t column_index(const std::string& name) const;
    void write_csv(std::ostream& os) const;
    std::string csv() const;
};

SweepResult run_sweep(const SweepSpec& spec);

/// Excited-population-versus-bound curves: for each mixing angle, sweeps the
/// drive frequency and records the closed-form long-time excited population
/// next to 2*delta from the numeric pipeline. Quasienergy-crossing
/// frequencies are injected as flagged extra rows, and the window around
/// omega/omega0 = 1 is sampled more densely.
struct PopulationBoundOptions {
    std::vector<double> thetas{0.05, 0.1, 0.2};
    double omega0 = 1.0;
    double omega_min = 0.1;
    double omega_max = 3.0;
    int points = 256;
    double inset_min = 0.8;
    double inset_max = 1.2;
    int inset_points = 128;
    bool inject_resonances = true;
    int resonance_k_max = 10;
    Threshold threshold{};
    IntegratorConfig integrator{};
    int profile_samples = 2048;
    double resonance_flag_tol = 1e-3;
};

SweepResult population_bound_sweep(const PopulationBoundOptions& opt = {});

/// Region classification of the counter-evolving-partner model over a
/// (theta, omega) grid: for each point, whether the exact criterion, the
/// traditional ratio, the frequency ratio, and the Floquet ratio pass at the
/// given threshold.
struct RegionMapOptions {
    double omega0 = 1.0;
    double theta_min = 0.0;
    double theta_max = M_PI / 2;
    int theta_points = 200;
    double omega_min = 0.01;
    double omega_max = 3.0;
    int omega_points = 200;
    Threshold threshold{};
    IntegratorConfig integrator{};
    int profile_samples = 2048;
};

SweepResult condition_region_map(const RegionMapOptions& opt = {});

/// The two named parameter points demonstrating that the traditional
/// criterion is neither sufficient nor necessary. Returns a JSON report with
/// per-point ratios, verdicts, and the exact minimum overlap.
nlohmann::json counterexample_report(const IntegratorConfig& cfg = {},
                                     const Threshold& thr = {});

/// Minimum of |<E_level(t)|psi(t)>| over `periods` periods for evolution
/// started in |E_level(t0)>, sampled on a uniform grid.
double min_overlap(const PeriodicHamiltonian& H, int level, double t0, int periods,
                   int samples_per_period, const IntegratorConfig& cfg);

struct OverlapSeries {
    std::vector<double> t;
    std::vector<double> overlap;           // |<E_level(t)|psi(t)>|
    std::vector<double> excited_population;  // 1 - overlap^2
};

OverlapSeries overlap_series(const PeriodicHamiltonian& H, int level, double t0,
                             int periods, int samples_per_period,
                             const IntegratorConfig& cfg);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The library's invariant suite (models, propagator, Floquet machinery,
/// spectrum, bounds, counterexamples); prints one line per check when run
/// through the CLI `verify` subcommand.
std::vector<CheckResult> run_verification(const IntegratorConfig& cfg = {});

/// Worker count for grid parallelism: hardware concurrency capped by the
/// FLOQUET_THREADS environment variable and the job count.
unsigned worker_count(std::size_t jobs);

/// Runs fn(i) for i in [0, n) on worker_count(n) threads. Results must be
/// written to caller-owned per-index slots; ordering is the caller's concern.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// CLI entry point (subcommands: analyze, evolve, sweep, fig1, fig2,
/// counterexamples, verify). Returns the process exit code: 0 on success,
/// 2 on invalid arguments or config, 3 on numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace floqa
