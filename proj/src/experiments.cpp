#include "floqa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <set>
#include <sstream>
#include <thread>

#include "floqa/testing.hpp"

namespace floqa {

// ---------------------------------------------------------------- axes/specs

std::vector<double> AxisSpec::values() const {
    if (points < 2) throw InvalidParameter("axis \"" + name + "\": need >= 2 points");
    if (!(max > min)) throw InvalidParameter("axis \"" + name + "\": need max > min");
    if (log_scale && !(min > 0.0)) {
        throw InvalidParameter("axis \"" + name + "\": log scale needs min > 0");
    }
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        v[i] = log_scale ? min * std::pow(max / min, f) : min + f * (max - min);
    }
    return v;
}

nlohmann::json AxisSpec::to_json() const {
    return {{"name", name}, {"min", min}, {"max", max},
            {"points", points}, {"scale", log_scale ? "log" : "linear"}};
}

AxisSpec AxisSpec::from_json(const nlohmann::json& j) {
    AxisSpec a;
    a.name = j.at("name").get<std::string>();
    a.min = j.at("min").get<double>();
    a.max = j.at("max").get<double>();
    a.points = j.at("points").get<int>();
    a.log_scale = j.value("scale", "linear") == std::string("log");
    return a;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2) {
        throw InvalidParameter("sweep needs 1 or 2 axes");
    }
    for (const auto& a : axes) (void)a.values();
    threshold.validate();
    integrator.validate();
    if (evolution_horizon < 1) throw InvalidParameter("evolution_horizon must be >= 1");
}

nlohmann::json SweepSpec::to_json() const {
    nlohmann::json axesj = nlohmann::json::array();
    for (const auto& a : axes) axesj.push_back(a.to_json());
    return {{"model", model},
            {"axes", axesj},
            {"quantities", quantities},
            {"evolution_horizon", evolution_horizon},
            {"overlap_samples_per_period", overlap_samples_per_period},
            {"delta_T", threshold.delta_T},
            {"integrator",
             {{"steps_per_period", integrator.steps_per_period},
              {"scheme", to_string(integrator.scheme)},
              {"unitarity_tol", integrator.unitarity_tol}}},
            {"profile_samples", profile_samples},
            {"resonance_flag_tol", resonance_flag_tol},
            {"resonance_mask", resonance_mask}};
}

SweepSpec SweepSpec::from_json(const nlohmann::json& j) {
    SweepSpec s;
    s.model = j.at("model");
    for (const auto& aj : j.at("axes")) s.axes.push_back(AxisSpec::from_json(aj));
    s.quantities = j.value("quantities", std::vector<std::string>{});
    s.evolution_horizon = j.value("evolution_horizon", 20);
    s.overlap_samples_per_period = j.value("overlap_samples_per_period", 256);
    s.threshold.delta_T = j.value("delta_T", 0.05);
    if (j.contains("integrator")) {
        const auto& ij = j.at("integrator");
        s.integrator.steps_per_period = ij.value("steps_per_period", 4096);
        s.integrator.scheme = scheme_from_string(ij.value("scheme", "magnus4"));
        s.integrator.unitarity_tol = ij.value("unitarity_tol", 1e-10);
    }
    s.profile_samples = j.value("profile_samples", 2048);
    s.resonance_flag_tol = j.value("resonance_flag_tol", 1e-3);
    s.resonance_mask = j.value("resonance_mask", false);
    return s;
}

// --------------------------------------------------------------- SweepResult

std::size_t SweepResult::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw InvalidParameter("no column \"" + name + "\"");
    return static_cast<std::size_t>(it - columns.begin());
}

void SweepResult::write_csv(std::ostream& os) const {
    os << "# config=" << metadata.value("config_hash", std::string("-"));
    if (metadata.contains("integrator")) {
        const auto& ij = metadata.at("integrator");
        os << " scheme=" << ij.value("scheme", std::string())
           << " steps_per_period=" << ij.value("steps_per_period", 0);
    }
    os << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << columns[c] << ",";
    }
    os << "status\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (double v : rows[r]) os << format_g17(v) << ",";
        os << (r < status.size() ? status[r] : std::string("ok")) << "\n";
    }
}

std::string SweepResult::csv() const {
    std::ostringstream ss;
    write_csv(ss);
    return ss.str();
}

// ----------------------------------------------------------------- threading

unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("FLOQUET_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(jobs, 1)));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = worker_count(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ----------------------------------------------------------------- evolution

OverlapSeries overlap_series(const PeriodicHamiltonian& H, int level, double t0,
                             int periods, int samples_per_period,
                             const IntegratorConfig& cfg) {
    if (level < 0 || level >= H.dimension) {
        throw InvalidParameter("overlap_series: level out of range");
    }
    if (periods < 1 || samples_per_period < 1) {
        throw InvalidParameter("overlap_series: need periods and samples >= 1");
    }
    const EvolutionCache cache(H, t0, cfg);
    const Vector psi0 = eigensystem(H, t0).states.col(level);
    const long total = static_cast<long>(periods) * samples_per_period;
    const double dt = H.period / samples_per_period;

    OverlapSeries out;
    out.t.resize(total + 1);
    out.overlap.resize(total + 1);
    out.excited_population.resize(total + 1);
    for (long k = 0; k <= total; ++k) {
        const double t = t0 + k * dt;
        const Vector psi = cache.matrix_at(t) * psi0;
        const auto s = eigensystem(H, t);
        const double d = std::abs(s.states.col(level).dot(psi));
        out.t[k] = t;
        out.overlap[k] = d;
        out.excited_population[k] = std::max(0.0, 1.0 - d * d);
    }
    return out;
}

double min_overlap(const PeriodicHamiltonian& H, int level, double t0, int periods,
                   int samples_per_period, const IntegratorConfig& cfg) {
    const auto series = overlap_series(H, level, t0, periods, samples_per_period, cfg);
    return *std::min_element(series.overlap.begin(), series.overlap.end());
}

// ------------------------------------------------------------------- sweeps

namespace {

std::string error_label(const Error& e) {
    if (dynamic_cast<const DegenerateQuasienergies*>(&e)) return "DegenerateQuasienergies";
    if (dynamic_cast<const DegenerateSpectrum*>(&e)) return "DegenerateSpectrum";
    if (dynamic_cast<const PropagationFailure*>(&e)) return "PropagationFailure";
    if (dynamic_cast<const NumericalFailure*>(&e)) return "NumericalFailure";
    if (dynamic_cast<const InvalidParameter*>(&e)) return "InvalidParameter";
    return "Error";
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Closed-form long-time excited population where the model has one.
double closed_form_population(const PeriodicHamiltonian& H) {
    const std::string model = H.params.value("model", std::string());
    if (model == "schwinger_rabi" || model == "dual") {
        const auto& pj = H.params.at("params");
        SchwingerRabiParams p;
        p.omega0 = pj.at("omega0").get<double>();
        p.theta = pj.at("theta").get<double>();
        p.omega = pj.at("omega").get<double>();
        if (model == "schwinger_rabi") {
            return schwinger_rabi_closed_form(p).max_excited_population();
        }
        const double s = std::sin(p.theta);
        return s * s;  // long-time supremum for the counter-evolving partner
    }
    return kNaN;
}

nlohmann::json sweep_metadata(const nlohmann::json& canonical_spec,
                              const IntegratorConfig& cfg) {
    char stamp[32] = "";
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return {{"config_hash", hex64(fnv1a(canonical_spec.dump()))},
            {"integrator",
             {{"scheme", to_string(cfg.scheme)},
              {"steps_per_period", cfg.steps_per_period},
              {"unitarity_tol", cfg.unitarity_tol}}},
            {"timestamp", stamp}};
}

struct PointResult {
    ConditionReport report;
    double gap_value = kNaN;  // non-throwing gap factor
    bool have_report = false;
    std::string status = "ok";
};

/// analyze() with resonance-tolerant gap handling: quasienergy degeneracy is
/// recorded in-row instead of aborting the grid.
PointResult analyze_point(const PeriodicHamiltonian& H, double t0,
                          const IntegratorConfig& cfg, const Threshold& thr,
                          int profile_samples, double flag_tol) {
    PointResult out;
    ConditionReport& rep = out.report;
    rep.params = H.params;
    rep.dimension = H.dimension;
    rep.period = H.period;
    rep.omega = H.angular_frequency();
    rep.delta_T = thr.delta_T;

    const CouplingProfile profile = coupling_profile(H, t0, profile_samples);
    rep.max_coupling = profile.max_coupling;
    rep.min_gap = profile.min_gap;
    rep.traditional_ratio = traditional_condition(profile);
    rep.frequency_ratio = frequency_condition(rep.omega, profile);
    rep.traditional_verdict = rep.traditional_ratio <= thr.delta_T;
    rep.frequency_verdict = rep.frequency_ratio <= thr.delta_T;

    const auto mono = monodromy(H, t0, cfg);
    const auto d = decompose(mono, rep.omega);
    rep.quasienergies = d.quasienergies;
    out.gap_value = gap_factor_value(d, d.period);
    rep.gap_factor = out.gap_value;

    if (out.gap_value < 1e-12) {
        out.status = "DegenerateQuasienergies";
        rep.floquet_ratio = kNaN;
        rep.delta = kNaN;
        rep.bound_overlap = 0.0;
        rep.floquet_verdict = false;
    } else {
        const auto fc = floquet_condition(profile, d, H.dimension);
        rep.floquet_ratio = fc.ratio;
        rep.delta = fc.delta;
        rep.domain_violation = fc.domain_violation;
        rep.bound_overlap = overlap_lower_bound(fc.delta);
        rep.floquet_verdict = rep.floquet_ratio <= thr.delta_T;
        if (out.gap_value < flag_tol) out.status = "DegenerateQuasienergies";
    }
    out.have_report = true;
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();

    // Axis grids, with optional nudging off quasienergy crossings.
    std::vector<std::vector<double>> axis_values;
    for (const auto& a : spec.axes) axis_values.push_back(a.values());
    const std::string model_name = spec.model.value("model", std::string());
    if (spec.resonance_mask &&
        (model_name == "schwinger_rabi" || model_name == "dual")) {
        SchwingerRabiParams p;
        const auto pj = spec.model.value("params", nlohmann::json::object());
        p.omega0 = pj.value("omega0", 1.0);
        p.theta = pj.value("theta", 0.0);
        p.omega = pj.value("omega", 1.0);
        bool theta_swept = false;
        for (const auto& a : spec.axes) theta_swept |= a.name == "theta";
        if (!theta_swept) {
            const auto res = schwinger_rabi_closed_form(p).resonance_frequencies(32);
            for (std::size_t ai = 0; ai < spec.axes.size(); ++ai) {
                if (spec.axes[ai].name != "omega") continue;
                for (double& v : axis_values[ai]) {
                    for (double r : res) {
                        if (std::abs(v - r) < 1e-9 * std::max(1.0, v)) {
                            v += 1e-7 * std::max(1.0, v);
                        }
                    }
                }
            }
        }
    }

    // Expand requested quantities into columns.
    const bool want_overlap_min =
        std::count(spec.quantities.begin(), spec.quantities.end(), "overlap_min") > 0;
    bool need_analysis = false;
    std::vector<std::string> cols;
    for (const auto& a : spec.axes) cols.push_back(a.name);
    int dimension = 2;
    {
        // Probe the model once to learn the dimension (for quasienergy columns).
        nlohmann::json probe = spec.model;
        for (std::size_t ai = 0; ai < spec.axes.size(); ++ai) {
            probe["params"][spec.axes[ai].name] = axis_values[ai].front();
        }
        dimension = model_from_json(probe, spec.integrator).dimension;
    }
    for (const auto& q : spec.quantities) {
        if (q == "ratios") {
            cols.insert(cols.end(),
                        {"ratio_traditional", "ratio_frequency", "ratio_floquet"});
            need_analysis = true;
        } else if (q == "verdicts") {
            cols.insert(cols.end(),
                        {"verdict_traditional", "verdict_frequency", "verdict_floquet"});
            need_analysis = true;
        } else if (q == "delta") {
            cols.push_back("delta");
            need_analysis = true;
        } else if (q == "two_delta") {
            cols.push_back("two_delta");
            need_analysis = true;
        } else if (q == "gap_factor") {
            cols.push_back("gap_factor");
            need_analysis = true;
        } else if (q == "bound_overlap") {
            cols.push_back("bound_overlap");
            need_analysis = true;
        } else if (q == "max_coupling") {
            cols.push_back("max_coupling");
            need_analysis = true;
        } else if (q == "min_gap") {
            cols.push_back("min_gap");
            need_analysis = true;
        } else if (q == "quasienergies") {
            for (int i = 0; i < dimension; ++i) {
                cols.push_back("quasienergy_" + std::to_string(i));
            }
            need_analysis = true;
        } else if (q == "exact_population") {
            cols.push_back("exact_population");
        } else if (q == "overlap_min") {
            cols.push_back("overlap_min");
        } else {
            throw InvalidParameter("unknown sweep quantity \"" + q + "\"");
        }
    }

    const std::size_t n_outer = axis_values[0].size();
    const std::size_t n_inner = spec.axes.size() == 2 ? axis_values[1].size() : 1;
    const std::size_t total = n_outer * n_inner;

    SweepResult result;
    result.columns = cols;
    result.rows.assign(total, {});
    result.status.assign(total, "ok");
    result.metadata = sweep_metadata(spec.to_json(), spec.integrator);

    parallel_for(total, [&](std::size_t idx) {
        const std::size_t io = idx / n_inner;
        const std::size_t ii = idx % n_inner;
        std::vector<double> row;
        row.reserve(cols.size());
        row.push_back(axis_values[0][io]);
        if (spec.axes.size() == 2) row.push_back(axis_values[1][ii]);

        nlohmann::json cfgj = spec.model;
        cfgj["params"][spec.axes[0].name] = axis_values[0][io];
        if (spec.axes.size() == 2) {
            cfgj["params"][spec.axes[1].name] = axis_values[1][ii];
        }

        std::string status = "ok";
        PointResult pr;
        double overlap_min_value = kNaN;
        double population = kNaN;
        try {
            const PeriodicHamiltonian H = model_from_json(cfgj, spec.integrator);
            population = closed_form_population(H);
            if (need_analysis) {
                pr = analyze_point(H, 0.0, spec.integrator, spec.threshold,
                                   spec.profile_samples, spec.resonance_flag_tol);
                status = pr.status;
            }
            if (want_overlap_min) {
                overlap_min_value =
                    min_overlap(H, 0, 0.0, spec.evolution_horizon,
                                spec.overlap_samples_per_period, spec.integrator);
            }
        } catch (const Error& e) {
            status = error_label(e);
        }

        const ConditionReport& rep = pr.report;
        for (const auto& q : spec.quantities) {
            const bool ok = pr.have_report;
            if (q == "ratios") {
                row.push_back(ok ? rep.traditional_ratio : kNaN);
                row.push_back(ok ? rep.frequency_ratio : kNaN);
                row.push_back(ok ? rep.floquet_ratio : kNaN);
            } else if (q == "verdicts") {
                row.push_back(ok ? (rep.traditional_verdict ? 1.0 : 0.0) : kNaN);
                row.push_back(ok ? (rep.frequency_verdict ? 1.0 : 0.0) : kNaN);
                row.push_back(ok ? (rep.floquet_verdict ? 1.0 : 0.0) : kNaN);
            } else if (q == "delta") {
                row.push_back(ok ? rep.delta : kNaN);
            } else if (q == "two_delta") {
                row.push_back(ok ? 2.0 * rep.delta : kNaN);
            } else if (q == "gap_factor") {
                row.push_back(ok ? pr.gap_value : kNaN);
            } else if (q == "bound_overlap") {
                row.push_back(ok ? rep.bound_overlap : kNaN);
            } else if (q == "max_coupling") {
                row.push_back(ok ? rep.max_coupling : kNaN);
            } else if (q == "min_gap") {
                row.push_back(ok ? rep.min_gap : kNaN);
            } else if (q == "quasienergies") {
                for (int i = 0; i < dimension; ++i) {
                    row.push_back(ok && i < static_cast<int>(rep.quasienergies.size())
                                      ? rep.quasienergies[i]
                                      : kNaN);
                }
            } else if (q == "exact_population") {
                row.push_back(population);
            } else if (q == "overlap_min") {
                row.push_back(overlap_min_value);
            }
        }
        result.rows[idx] = std::move(row);
        result.status[idx] = status;
    });
    return result;
}

SweepResult population_bound_sweep(const PopulationBoundOptions& opt) {
    opt.threshold.validate();
    opt.integrator.validate();
    if (opt.points < 2) throw InvalidParameter("population_bound_sweep: points >= 2");
    for (double th : opt.thetas) {
        if (!(th >= 0.0) || th >= M_PI) {
            throw InvalidParameter("population_bound_sweep: theta must lie in [0, pi)");
        }
    }

    struct RowSpec {
        double theta;
        double omega;
        bool injected;
    };
    std::vector<RowSpec> points;
    for (double th : opt.thetas) {
        std::set<double> omegas;
        for (int i = 0; i < opt.points; ++i) {
            omegas.insert(opt.omega_min +
                          (opt.omega_max - opt.omega_min) * i / (opt.points - 1));
        }
        for (int i = 0; i < opt.inset_points; ++i) {
            omegas.insert(opt.inset_min +
                          (opt.inset_max - opt.inset_min) * i /
                              std::max(1, opt.inset_points - 1));
        }
        std::set<double> injected;
        if (opt.inject_resonances) {
            SchwingerRabiParams p{opt.omega0, th, 1.0};
            for (double r :
                 schwinger_rabi_closed_form(p).resonance_frequencies(opt.resonance_k_max)) {
                if (r >= opt.omega_min && r <= opt.omega_max) {
                    injected.insert(r);
                    omegas.insert(r);
                }
            }
        }
        for (double w : omegas) {
            points.push_back({th, w, injected.count(w) > 0});
        }
    }

    SweepResult result;
    result.columns = {"theta",      "omega",      "exact_population",
                      "delta",      "two_delta",  "gap_factor",
                      "ratio_floquet", "resonance_injected"};
    result.rows.assign(points.size(), {});
    result.status.assign(points.size(), "ok");
    nlohmann::json canonical = {{"op", "population_bound_sweep"},
                                {"thetas", opt.thetas},
                                {"omega0", opt.omega0},
                                {"omega_min", opt.omega_min},
                                {"omega_max", opt.omega_max},
                                {"points", opt.points},
                                {"inset", {opt.inset_min, opt.inset_max, opt.inset_points}},
                                {"inject", opt.inject_resonances},
                                {"delta_T", opt.threshold.delta_T},
                                {"steps", opt.integrator.steps_per_period},
                                {"profile_samples", opt.profile_samples}};
    result.metadata = sweep_metadata(canonical, opt.integrator);

    parallel_for(points.size(), [&](std::size_t idx) {
        const auto& pt = points[idx];
        SchwingerRabiParams p{opt.omega0, pt.theta, pt.omega};
        const auto closed = schwinger_rabi_closed_form(p);
        std::vector<double> row{pt.theta, pt.omega, closed.max_excited_population(),
                                kNaN,     kNaN,     kNaN,
                                kNaN,     pt.injected ? 1.0 : 0.0};
        std::string status = "ok";
        try {
            const auto H = build_schwinger_rabi(p);
            const auto pr = analyze_point(H, 0.0, opt.integrator, opt.threshold,
                                          opt.profile_samples, opt.resonance_flag_tol);
            row[3] = pr.report.delta;
            row[4] = 2.0 * pr.report.delta;
            row[5] = pr.gap_value;
            row[6] = pr.report.floquet_ratio;
            status = pr.status;
        } catch (const Error& e) {
            status = error_label(e);
        }
        result.rows[idx] = std::move(row);
        result.status[idx] = status;
    });
    return result;
}

SweepResult condition_region_map(const RegionMapOptions& opt) {
    opt.threshold.validate();
    opt.integrator.validate();
    if (opt.theta_points < 2 || opt.omega_points < 2) {
        throw InvalidParameter("condition_region_map: need >= 2 points per axis");
    }

    std::vector<double> thetas(opt.theta_points), omegas(opt.omega_points);
    for (int i = 0; i < opt.theta_points; ++i) {
        thetas[i] = opt.theta_min +
                    (opt.theta_max - opt.theta_min) * i / (opt.theta_points - 1);
    }
    for (int i = 0; i < opt.omega_points; ++i) {
        omegas[i] = opt.omega_min +
                    (opt.omega_max - opt.omega_min) * i / (opt.omega_points - 1);
    }

    SweepResult result;
    result.columns = {"theta",
                      "omega",
                      "exact",
                      "traditional",
                      "frequency",
                      "floquet",
                      "exact_criterion",
                      "ratio_traditional",
                      "ratio_frequency",
                      "ratio_floquet",
                      "gap_factor"};
    const std::size_t total =
        static_cast<std::size_t>(opt.theta_points) * opt.omega_points;
    result.rows.assign(total, {});
    result.status.assign(total, "ok");
    nlohmann::json canonical = {{"op", "condition_region_map"},
                                {"omega0", opt.omega0},
                                {"theta", {opt.theta_min, opt.theta_max, opt.theta_points}},
                                {"omega", {opt.omega_min, opt.omega_max, opt.omega_points}},
                                {"delta_T", opt.threshold.delta_T},
                                {"steps", opt.integrator.steps_per_period},
                                {"profile_samples", opt.profile_samples}};
    result.metadata = sweep_metadata(canonical, opt.integrator);

    parallel_for(total, [&](std::size_t idx) {
        const double th = thetas[idx / opt.omega_points];
        const double w = omegas[idx % opt.omega_points];
        SchwingerRabiParams p{opt.omega0, th, w};
        const double s = std::sin(th);
        const double exact_criterion = 0.5 * s * s;
        const bool exact = exact_criterion <= opt.threshold.delta_T;
        std::vector<double> row{th,   w,    exact ? 1.0 : 0.0,
                                kNaN, kNaN, kNaN,
                                exact_criterion, kNaN, kNaN, kNaN, kNaN};
        std::string status = "ok";
        try {
            const auto dual = build_dual(build_schwinger_rabi(p), opt.integrator);
            const auto pr = analyze_point(dual, 0.0, opt.integrator, opt.threshold,
                                          opt.profile_samples, 1e-12);
            row[3] = pr.report.traditional_verdict ? 1.0 : 0.0;
            row[4] = pr.report.frequency_verdict ? 1.0 : 0.0;
            row[5] = pr.report.floquet_verdict ? 1.0 : 0.0;
            row[7] = pr.report.traditional_ratio;
            row[8] = pr.report.frequency_ratio;
            row[9] = pr.report.floquet_ratio;
            row[10] = pr.gap_value;
            status = pr.status;
        } catch (const Error& e) {
            status = error_label(e);
            row[5] = 0.0;  // a point the pipeline cannot certify never passes
        }
        result.rows[idx] = std::move(row);
        result.status[idx] = status;
    });
    return result;
}

nlohmann::json counterexample_report(const IntegratorConfig& cfg, const Threshold& thr) {
    nlohmann::json out;
    out["delta_T"] = thr.delta_T;
    out["points"] = nlohmann::json::array();
    const std::array<SchwingerRabiParams, 2> pts{
        SchwingerRabiParams{1.0, 0.1, 1.0},
        SchwingerRabiParams{1.0, M_PI - 0.1, 20.0}};
    const std::array<const char*, 2> names{
        "traditional passes but evolution leaves the eigenstate",
        "traditional fails but evolution stays adiabatic"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto H = build_schwinger_rabi(p);
        auto rep = analyze(H, 0.0, cfg, thr);
        const auto closed = schwinger_rabi_closed_form(p);
        nlohmann::json pj = rep.to_json();
        pj["name"] = names[i];
        pj["exact_min_overlap"] = std::sqrt(
            std::max(0.0, 1.0 - closed.max_excited_population()));
        pj["numeric_min_overlap"] = min_overlap(H, 0, 0.0, 20, 256, cfg);
        out["points"].push_back(std::move(pj));
    }
    return out;
}

// -------------------------------------------------------------- verification

namespace {

using testing::random_fourier_model;
using testing::random_state;

struct CheckRunner {
    std::vector<CheckResult> results;

    void add(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }

    void run(const std::string& name, const std::function<std::string()>& body) {
        try {
            const std::string detail = body();  // empty detail means pass
            add(name, detail.empty(), detail.empty() ? "ok" : detail);
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    }
};

std::string check_models(const IntegratorConfig& cfg) {
    std::mt19937_64 rng(411u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<PeriodicHamiltonian> models;
    models.push_back(build_schwinger_rabi({1.0, 1.2, 0.9}));
    models.push_back(build_two_tone({1.0, 0.05, 0.004, 1.0, 3}));
    models.push_back(random_fourier_model(rng, 3, 2, 1.0, 0.05, 5.0));
    for (const auto& H : models) {
        for (int k = 0; k < 256; ++k) {
            const double t = uni(rng) * H.period;
            const Matrix M = H.evaluate(t);
            if (hermiticity_defect(M) > 1e-12 * std::max(1.0, M.cwiseAbs().maxCoeff())) {
                return H.label + ": Hermiticity defect at t=" + std::to_string(t);
            }
            if ((H.evaluate(t + H.period) - M).cwiseAbs().maxCoeff() > 1e-12) {
                return H.label + ": periodicity defect at t=" + std::to_string(t);
            }
        }
    }
    const auto dual = build_dual(models.front(), cfg);
    for (int k = 0; k < 64; ++k) {
        const double t = uni(rng) * dual.period;
        if ((dual.evaluate(t + dual.period) - dual.evaluate(t)).cwiseAbs().maxCoeff() >
            1e-8) {
            return "dual: periodicity defect at t=" + std::to_string(t);
        }
    }
    return {};
}

std::string check_derivatives(const IntegratorConfig& cfg) {
    std::mt19937_64 rng(412u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<PeriodicHamiltonian> models;
    models.push_back(build_schwinger_rabi({1.0, 0.4, 1.7}));
    models.push_back(build_two_tone({1.0, 0.05, 0.004, 1.3, 4}));
    models.push_back(random_fourier_model(rng, 2, 3, 1.0, 0.1, 3.0));
    models.push_back(build_dual(build_schwinger_rabi({1.0, 0.3, 0.7}), cfg));
    for (const auto& H : models) {
        const double h = H.period * 1e-6;
        for (int k = 0; k < 16; ++k) {
            const double t = uni(rng) * H.period;
            const Matrix fd = (H.evaluate(t + h) - H.evaluate(t - h)) / (2.0 * h);
            const Matrix an = H.derivative(t);
            const double scale = 1.0 + an.cwiseAbs().maxCoeff();
            if ((fd - an).cwiseAbs().maxCoeff() > 1e-6 * scale) {
                return H.label + ": derivative mismatch at t=" + std::to_string(t);
            }
        }
    }
    return {};
}

std::string check_propagator(const IntegratorConfig& cfg) {
    const auto H = build_schwinger_rabi({1.0, M_PI / 3, 1.0});
    const double T = H.period;
    const auto U10 = propagate(H, 0.0, 0.4 * T, cfg);
    const auto U21 = propagate(H, 0.4 * T, T, cfg);
    const auto U20 = propagate(H, 0.0, T, cfg);
    if ((U21.matrix * U10.matrix - U20.matrix).cwiseAbs().maxCoeff() > 1e-9) {
        return "composition defect";
    }
    if (std::abs(std::abs(U20.matrix.determinant()) - 1.0) > 1e-10) {
        return "determinant off the unit circle";
    }
    const auto Ushift = propagate(H, T, 2.0 * T, cfg);
    if ((Ushift.matrix - U20.matrix).cwiseAbs().maxCoeff() > 1e-9) {
        return "time-translation covariance defect";
    }
    return {};
}

std::string check_convergence_order() {
    const auto H = build_schwinger_rabi({1.0, 1.0, 2.3});
    IntegratorConfig ref_cfg;
    ref_cfg.steps_per_period = 8192;
    const Matrix ref = monodromy(H, 0.0, ref_cfg).matrix;
    auto err_at = [&](int steps) {
        IntegratorConfig c;
        c.steps_per_period = steps;
        return (monodromy(H, 0.0, c).matrix - ref).cwiseAbs().maxCoeff();
    };
    const double ratio = err_at(32) / err_at(128);
    if (!(ratio > 64.0 && ratio < 1024.0)) {
        return "4x refinement ratio " + std::to_string(ratio) + " outside [64, 1024]";
    }
    return {};
}

std::string check_floquet_machinery(const IntegratorConfig& cfg) {
    std::mt19937_64 rng(413u);
    for (int rep = 0; rep < 6; ++rep) {
        const auto H = rep % 2 == 0
                           ? build_schwinger_rabi({1.0, 0.2 + 0.2 * rep, 0.8})
                           : random_fourier_model(rng, 2 + rep % 2, 2, 1.0, 0.04, 4.0);
        const EvolutionCache cache(H, 0.0, cfg);
        const auto d = decompose(cache.monodromy(), H.angular_frequency());
        // reconstruction of an arbitrary state from mode expansion
        const Vector psi0 = random_state(rng, H.dimension);
        const double t = 1.7 * H.period;
        const auto modes = mode_at(d, cache, t);
        Vector rec = Vector::Zero(H.dimension);
        for (int i = 0; i < H.dimension; ++i) {
            const Complex a = d.modes_t0.col(i).dot(psi0);
            rec += a * std::polar(1.0, -d.quasienergies[i] * t) * modes[i];
        }
        const Vector direct = cache.matrix_at(t) * psi0;
        if ((rec - direct).cwiseAbs().maxCoeff() > 1e-8) return "reconstruction defect";
        // modes return to themselves after one period
        const auto modesT = mode_at(d, cache, H.period);
        for (int i = 0; i < H.dimension; ++i) {
            if ((modesT[i] - Vector(d.modes_t0.col(i))).cwiseAbs().maxCoeff() > 1e-8) {
                return "mode periodicity defect";
            }
        }
        // one-period fidelity identity: direct overlap vs mode-weight formula
        for (int m = 0; m < H.dimension; ++m) {
            const Vector em = eigensystem(H, 0.0).states.col(m);
            const auto ex = expand_state(d, em, cache, 0.0);
            double fid = 1.0;
            for (int i = 0; i < H.dimension; ++i) {
                for (int j = 0; j < i; ++j) {
                    const double sij = std::sin(
                        0.5 * (d.quasienergies[i] - d.quasienergies[j]) * H.period);
                    fid -= 4.0 * ex.weights[i] * ex.weights[j] * sij * sij;
                }
            }
            const Vector evolved = cache.monodromy().matrix * em;
            const double direct_fid = std::norm(em.dot(evolved));
            if (std::abs(fid - direct_fid) > 1e-7) return "fidelity identity defect";
        }
    }
    return {};
}

std::string check_spectrum(const IntegratorConfig&) {
    const auto H = build_schwinger_rabi({1.0, 0.1, 1.0});
    const auto profile = coupling_profile(H, 0.0, 256);
    const double expected = 0.5 * std::sin(0.1);
    double mean = 0.0;
    for (int i = 0; i < profile.coupling_values.size(); ++i) {
        mean += profile.coupling_values(i);
    }
    mean /= profile.coupling_values.size();
    double sd = 0.0;
    for (int i = 0; i < profile.coupling_values.size(); ++i) {
        sd += std::pow(profile.coupling_values(i) - mean, 2);
    }
    sd = std::sqrt(sd / profile.coupling_values.size());
    if (std::abs(mean - expected) > 1e-10) return "coupling mean off";
    if (sd > 1e-10) return "coupling not time-independent";
    if (std::abs(profile.min_gap - 1.0) > 1e-10) return "minimum gap off";
    return {};
}

std::string check_overlap_bound(const IntegratorConfig& cfg) {
    std::mt19937_64 rng(414u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int accepted = 0;
    for (int it = 0; it < 60 && accepted < 24; ++it) {
        PeriodicHamiltonian H =
            it % 3 == 2
                ? build_dual(build_schwinger_rabi(
                                 {1.0, 0.05 + 0.25 * uni(rng), 0.3 + 2.0 * uni(rng)}),
                             cfg)
                : random_fourier_model(rng, 2 + it % 2, 2, 1.0, 0.02 + 0.02 * uni(rng),
                                       2.0 + 4.0 * uni(rng));
        ConditionReport rep;
        try {
            rep = analyze(H, 0.0, cfg, Threshold{});
        } catch (const Error&) {
            continue;
        }
        if (!(rep.delta < 0.25)) continue;
        ++accepted;
        for (int m = 0; m < H.dimension; ++m) {
            const double lo = min_overlap(H, m, 0.0, 20, 128, cfg);
            if (lo < rep.bound_overlap - 1e-6) {
                return "bound violated: min overlap " + std::to_string(lo) +
                       " < " + std::to_string(rep.bound_overlap);
            }
        }
    }
    if (accepted < 12) return "not enough small-delta samples";
    return {};
}

std::string check_finite_time_bound(const IntegratorConfig& cfg) {
    std::mt19937_64 rng(415u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int it = 0; it < 24; ++it) {
        const PeriodicHamiltonian H =
            it % 2 == 0 ? build_schwinger_rabi({1.0, uni(rng) * 0.6, 0.4 + 2.0 * uni(rng)})
                        : random_fourier_model(rng, 2 + it % 3 % 2, 2, 1.0,
                                               0.05 + 0.1 * uni(rng), 3.0);
        const auto profile = coupling_profile(H, 0.0, 512);
        const double sqn = std::sqrt(H.dimension - 1.0);
        if (profile.max_coupling <= 0.0) continue;
        const double tau_max = 0.5 * M_PI / (sqn * profile.max_coupling);
        const double tau = (0.1 + 0.9 * uni(rng)) * tau_max;
        const auto ft = finite_time_condition(profile, H.dimension, tau);
        const auto U = propagate(H, 0.0, tau, cfg);
        const auto s0 = eigensystem(H, 0.0);
        const auto s1 = eigensystem(H, tau);
        for (int m = 0; m < H.dimension; ++m) {
            const double dm = std::abs(s1.states.col(m).dot(U.matrix * s0.states.col(m)));
            if (1.0 - dm > ft.overlap_drop_bound + 1e-7) {
                return "finite-horizon bound violated at tau=" + std::to_string(tau);
            }
        }
    }
    return {};
}

std::string check_counterexamples(const IntegratorConfig& cfg) {
    const auto rep = counterexample_report(cfg, Threshold{});
    const auto& p0 = rep["points"][0];
    const auto& p1 = rep["points"][1];
    if (std::abs(p0["ratios"]["traditional"].get<double>() - 0.049916708323414076) > 5e-7)
        return "point 1 traditional ratio off";
    if (std::abs(p0["numeric_min_overlap"].get<double>() - 0.049979169270678329) > 1e-4)
        return "point 1 minimum overlap off";
    if (!p0["verdicts"]["traditional"].get<bool>()) return "point 1 verdict wrong";
    if (p0["verdicts"]["floquet"].get<bool>()) return "point 1 not rejected";
    if (std::abs(p1["ratios"]["traditional"].get<double>() - 0.99833416646828152) > 1e-5)
        return "point 2 traditional ratio off";
    if (std::abs(p1["numeric_min_overlap"].get<double>() - 0.99546762930147419) > 1e-5)
        return "point 2 minimum overlap off";
    if (p1["verdicts"]["traditional"].get<bool>()) return "point 2 verdict wrong";
    return {};
}

std::string check_oracle_overlap(const IntegratorConfig& cfg) {
    std::mt19937_64 rng(416u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int it = 0; it < 6; ++it) {
        SchwingerRabiParams p{1.0, uni(rng) * M_PI * 0.98, 0.1 + 2.9 * uni(rng)};
        const auto H = build_schwinger_rabi(p);
        const auto closed = schwinger_rabi_closed_form(p);
        const auto series = overlap_series(H, 0, 0.0, 20, 64, cfg);
        for (std::size_t k = 0; k < series.t.size(); ++k) {
            if (std::abs(series.overlap[k] - closed.overlap(series.t[k])) > 1e-8) {
                return "overlap mismatch at t=" + std::to_string(series.t[k]);
            }
        }
    }
    return {};
}

std::string check_resonance_degeneracy(const IntegratorConfig& cfg) {
    SchwingerRabiParams p{1.0, 0.1, 1.0};
    const auto res = schwinger_rabi_closed_form(p).resonance_frequencies(3);
    for (double wk : res) {
        SchwingerRabiParams q{1.0, 0.1, wk};
        const auto H = build_schwinger_rabi(q);
        const auto d = decompose(monodromy(H, 0.0, cfg), H.angular_frequency());
        if (gap_factor_value(d, d.period) > 1e-3) {
            return "no quasienergy crossing at omega=" + std::to_string(wk);
        }
    }
    return {};
}

}  // namespace

std::vector<CheckResult> run_verification(const IntegratorConfig& cfg) {
    CheckRunner r;
    r.run("models: Hermiticity and periodicity", [&] { return check_models(cfg); });
    r.run("models: analytic derivative vs central differences",
          [&] { return check_derivatives(cfg); });
    r.run("propagator: composition, determinant, covariance",
          [&] { return check_propagator(cfg); });
    r.run("propagator: fourth-order convergence", [] { return check_convergence_order(); });
    r.run("floquet: reconstruction, mode periodicity, fidelity identity",
          [&] { return check_floquet_machinery(cfg); });
    r.run("spectrum: coupling constancy for the driven two-level model",
          [&] { return check_spectrum(cfg); });
    r.run("conditions: overlap lower bound on random models",
          [&] { return check_overlap_bound(cfg); });
    r.run("conditions: finite-horizon bound on random models",
          [&] { return check_finite_time_bound(cfg); });
    r.run("counterexamples: reference values", [&] { return check_counterexamples(cfg); });
    r.run("oracle: closed-form overlap matches evolution",
          [&] { return check_oracle_overlap(cfg); });
    r.run("oracle: quasienergy crossings are degenerate",
          [&] { return check_resonance_degeneracy(cfg); });
    return r.results;
}

}  // namespace floqa
