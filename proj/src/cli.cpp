#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "floqa/experiments.hpp"

namespace floqa {

namespace {

struct ModelFlags {
    std::string model = "schwinger-rabi";
    double omega0 = 1.0;
    double theta = 0.0;
    double omega = 1.0;
    double V = 0.05;
    double Vprime = 0.0;
    int n_tone = 1;
    bool truncated = false;
    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model,
                        "schwinger-rabi | dual | two-tone | generic (generic needs --config)");
        cmd->add_option("--omega0", omega0, "level splitting");
        cmd->add_option("--theta", theta, "mixing angle in [0, pi)");
        cmd->add_option("--omega", omega, "drive angular frequency");
        cmd->add_option("--V", V, "fast-tone amplitude (two-tone)");
        cmd->add_option("--Vprime", Vprime, "slow-tone amplitude (two-tone)");
        cmd->add_option("--ntone", n_tone, "slow-tone divisor (two-tone)");
        cmd->add_flag("--truncated", truncated, "drop the slow tone (two-tone)");
        cmd->add_option("--config", config_path, "JSON model config file");
    }

    nlohmann::json to_config() const {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw InvalidParameter("cannot open config file " + config_path);
            nlohmann::json j;
            in >> j;
            return j;
        }
        std::string name = model;
        for (auto& ch : name) {
            if (ch == '-') ch = '_';
        }
        nlohmann::json params{{"omega0", omega0}, {"theta", theta}, {"omega", omega}};
        if (name == "two_tone") {
            params = {{"omega0", omega0}, {"V", V},     {"Vprime", Vprime},
                      {"omega", omega},   {"n_tone", n_tone}, {"truncated", truncated}};
        }
        return {{"model", name}, {"params", params}};
    }
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open output file " + path);
    out << text;
}

void print_report(const ConditionReport& rep, std::ostream& os) {
    const auto verdict = [](bool v) { return v ? "pass" : "FAIL"; };
    os << "model: " << rep.params.value("model", std::string("?"))
       << "  params: " << rep.params.value("params", nlohmann::json::object()).dump()
       << "\n";
    os << "period: " << rep.period << "  omega: " << rep.omega << "\n";
    os << "quasienergies:";
    for (double e : rep.quasienergies) os << " " << e;
    os << "\n";
    os << "max coupling: " << rep.max_coupling << "  min gap: " << rep.min_gap
       << "  gap factor: " << rep.gap_factor << "\n";
    os << "delta: " << rep.delta << "  overlap lower bound: " << rep.bound_overlap;
    if (rep.domain_violation) os << "  [finite-horizon domain exceeded]";
    os << "\n";
    os << "traditional ratio: " << rep.traditional_ratio << "  ("
       << verdict(rep.traditional_verdict) << " at " << rep.delta_T << ")\n";
    os << "frequency   ratio: " << rep.frequency_ratio << "  ("
       << verdict(rep.frequency_verdict) << ")\n";
    os << "floquet     ratio: " << rep.floquet_ratio << "  ("
       << verdict(rep.floquet_verdict) << ")\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Adiabaticity conditions for periodically driven quantum systems"};
    app.require_subcommand(1);
    app.fallthrough();

    IntegratorConfig integrator;
    std::string scheme_name = "magnus4";
    app.add_option("--steps", integrator.steps_per_period, "integrator steps per period");
    app.add_option("--scheme", scheme_name, "magnus4 | midpoint_exponential");
    app.add_option("--unitarity-tol", integrator.unitarity_tol,
                   "maximum tolerated unitarity defect");

    Threshold thr;

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "evaluate all criteria at one point");
    ModelFlags analyze_model;
    analyze_model.attach(analyze_cmd);
    double analyze_t0 = 0.0;
    int analyze_profile_samples = 2048;
    bool analyze_json = false;
    std::string analyze_out;
    analyze_cmd->add_option("--t0", analyze_t0, "initial time");
    analyze_cmd->add_option("--profile-samples", analyze_profile_samples,
                            "coupling-profile grid size");
    analyze_cmd->add_option("--delta-t", thr.delta_T, "threshold quantifying \"<<\"");
    analyze_cmd->add_flag("--json", analyze_json, "emit the JSON report");
    analyze_cmd->add_option("--out", analyze_out, "output path (default stdout)");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "track the eigenstate overlap in time");
    ModelFlags evolve_model;
    evolve_model.attach(evolve_cmd);
    int evolve_level = 0, evolve_periods = 20, evolve_spp = 256;
    std::string evolve_out;
    evolve_cmd->add_option("--level", evolve_level, "initial eigenstate index");
    evolve_cmd->add_option("--periods", evolve_periods, "horizon in periods");
    evolve_cmd->add_option("--samples-per-period", evolve_spp, "output samples per period");
    evolve_cmd->add_option("--out", evolve_out, "CSV output path (default stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep from a JSON spec");
    std::string sweep_config, sweep_out;
    sweep_cmd->add_option("--config", sweep_config, "sweep spec JSON file")->required();
    sweep_cmd->add_option("--out", sweep_out, "CSV output path (default stdout)");

    // fig1
    auto* fig1_cmd =
        app.add_subcommand("fig1", "excited population and 2*delta vs drive frequency");
    PopulationBoundOptions f1;
    std::string fig1_thetas = "0.05,0.1,0.2", fig1_out;
    fig1_cmd->add_option("--thetas", fig1_thetas, "comma-separated mixing angles");
    fig1_cmd->add_option("--omega-min", f1.omega_min, "lower drive frequency");
    fig1_cmd->add_option("--omega-max", f1.omega_max, "upper drive frequency");
    fig1_cmd->add_option("--points", f1.points, "base grid points");
    fig1_cmd->add_option("--inset-points", f1.inset_points,
                         "extra points in the near-resonant window");
    fig1_cmd->add_option("--delta-t", f1.threshold.delta_T, "threshold");
    fig1_cmd->add_option("--profile-samples", f1.profile_samples, "profile grid size");
    fig1_cmd->add_option("--out", fig1_out, "CSV output path (default stdout)");

    // fig2
    auto* fig2_cmd = app.add_subcommand("fig2", "condition region map for the dual model");
    RegionMapOptions f2;
    std::string fig2_out;
    fig2_cmd->add_option("--theta-points", f2.theta_points, "grid points along theta");
    fig2_cmd->add_option("--omega-points", f2.omega_points, "grid points along omega");
    fig2_cmd->add_option("--theta-min", f2.theta_min, "lower mixing angle");
    fig2_cmd->add_option("--theta-max", f2.theta_max, "upper mixing angle");
    fig2_cmd->add_option("--omega-min", f2.omega_min, "lower drive frequency");
    fig2_cmd->add_option("--omega-max", f2.omega_max, "upper drive frequency");
    fig2_cmd->add_option("--delta-t", f2.threshold.delta_T, "threshold");
    fig2_cmd->add_option("--profile-samples", f2.profile_samples, "profile grid size");
    fig2_cmd->add_option("--out", fig2_out, "CSV output path (default stdout)");

    // counterexamples
    auto* ce_cmd = app.add_subcommand(
        "counterexamples", "the two points where the traditional criterion misleads");
    bool ce_json = false;
    std::string ce_out;
    ce_cmd->add_flag("--json", ce_json, "emit the JSON report");
    ce_cmd->add_option("--delta-t", thr.delta_T, "threshold");
    ce_cmd->add_option("--out", ce_out, "output path (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the library invariant suite");

    try {
        app.parse(argc, argv);
        integrator.scheme = scheme_from_string(scheme_name);
        integrator.validate();

        if (*analyze_cmd) {
            const auto H = model_from_json(analyze_model.to_config(), integrator);
            const auto rep =
                analyze(H, analyze_t0, integrator, thr, analyze_profile_samples);
            if (analyze_json) {
                write_text(analyze_out, rep.to_json().dump(2) + "\n");
            } else {
                std::ostringstream ss;
                print_report(rep, ss);
                write_text(analyze_out, ss.str());
            }
        } else if (*evolve_cmd) {
            const auto config = evolve_model.to_config();
            const auto H = model_from_json(config, integrator);
            const auto series =
                overlap_series(H, evolve_level, 0.0, evolve_periods, evolve_spp, integrator);
            const std::string model_name = config.value("model", std::string());
            std::function<double(double)> oracle;
            if (model_name == "schwinger_rabi" && evolve_level == 0) {
                SchwingerRabiParams p;
                p.omega0 = config["params"].value("omega0", 1.0);
                p.theta = config["params"].value("theta", 0.0);
                p.omega = config["params"].value("omega", 1.0);
                oracle = [c = schwinger_rabi_closed_form(p)](double t) {
                    return c.overlap(t);
                };
            } else if (model_name == "dual" && evolve_level == 0) {
                SchwingerRabiParams p;
                p.omega0 = config["params"].value("omega0", 1.0);
                p.theta = config["params"].value("theta", 0.0);
                p.omega = config["params"].value("omega", 1.0);
                oracle = [c = dual_closed_form(p)](double t) { return c.overlap(t); };
            }
            std::ostringstream ss;
            ss << "t,overlap,excited_population";
            if (oracle) ss << ",overlap_oracle";
            ss << "\n";
            for (std::size_t k = 0; k < series.t.size(); ++k) {
                ss << format_g17(series.t[k]) << "," << format_g17(series.overlap[k])
                   << "," << format_g17(series.excited_population[k]);
                if (oracle) ss << "," << format_g17(oracle(series.t[k]));
                ss << "\n";
            }
            write_text(evolve_out, ss.str());
        } else if (*sweep_cmd) {
            std::ifstream in(sweep_config);
            if (!in) throw InvalidParameter("cannot open sweep spec " + sweep_config);
            nlohmann::json j;
            in >> j;
            auto spec = SweepSpec::from_json(j);
            if (!sweep_cmd->get_option("--steps")->empty() ||
                !j.contains("integrator")) {
                spec.integrator = integrator;
            }
            write_text(sweep_out, run_sweep(spec).csv());
        } else if (*fig1_cmd) {
            f1.integrator = integrator;
            f1.thetas.clear();
            std::stringstream ss(fig1_thetas);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (!tok.empty()) f1.thetas.push_back(std::stod(tok));
            }
            if (f1.thetas.empty()) throw InvalidParameter("no mixing angles given");
            write_text(fig1_out, population_bound_sweep(f1).csv());
        } else if (*fig2_cmd) {
            f2.integrator = integrator;
            write_text(fig2_out, condition_region_map(f2).csv());
        } else if (*ce_cmd) {
            const auto rep = counterexample_report(integrator, thr);
            if (ce_json) {
                write_text(ce_out, rep.dump(2) + "\n");
            } else {
                std::ostringstream ss;
                for (const auto& pj : rep["points"]) {
                    ss << pj["name"].get<std::string>() << "\n";
                    ss << "  params: " << pj["params"]["params"].dump() << "\n";
                    ss << "  traditional ratio: " << pj["ratios"]["traditional"]
                       << "  verdict: "
                       << (pj["verdicts"]["traditional"].get<bool>() ? "pass" : "fail")
                       << "\n";
                    ss << "  floquet ratio: " << pj["ratios"]["floquet"] << "  verdict: "
                       << (pj["verdicts"]["floquet"].get<bool>() ? "pass" : "fail")
                       << "\n";
                    ss << "  exact min overlap: " << pj["exact_min_overlap"]
                       << "  numeric: " << pj["numeric_min_overlap"] << "\n";
                }
                write_text(ce_out, ss.str());
            }
        } else if (*verify_cmd) {
            const auto checks = run_verification(integrator);
            bool all = true;
            for (const auto& c : checks) {
                std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name;
                if (!c.pass) std::cout << "  (" << c.detail << ")";
                std::cout << "\n";
                all &= c.pass;
            }
            std::cout << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
            if (!all) return 3;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace floqa
