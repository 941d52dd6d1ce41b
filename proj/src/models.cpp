#include "floqa/models.hpp"

#include <iostream>
#include <memory>

#include "floqa/linalg.hpp"
#include "floqa/propagator.hpp"

namespace floqa {

namespace {

Matrix json_to_matrix(const nlohmann::json& j, int n, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw InvalidParameter(std::string(what) + ": expected " + std::to_string(n) +
                               " rows");
    }
    Matrix M(n, n);
    for (int r = 0; r < n; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw InvalidParameter(std::string(what) + ": row " + std::to_string(r) +
                                   " must have " + std::to_string(n) + " entries");
        }
        for (int c = 0; c < n; ++c) {
            const auto& e = row[c];
            if (e.is_number()) {
                M(r, c) = Complex(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                M(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw InvalidParameter(std::string(what) +
                                       ": entries must be numbers or [re, im] pairs");
            }
        }
    }
    return M;
}

void require_finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw InvalidParameter(std::string(name) + " must be finite and positive");
    }
}

}  // namespace

Matrix PeriodicHamiltonian::derivative_or_fd(double t) const {
    if (derivative) return derivative(t);
    const double h = period * 1e-6;
    return (evaluate(t + h) - evaluate(t - h)) / (2.0 * h);
}

void SchwingerRabiParams::validate() const {
    require_finite_positive(omega0, "omega0");
    require_finite_positive(omega, "omega");
    if (!std::isfinite(theta) || theta < 0.0 || theta >= M_PI) {
        throw InvalidParameter("theta must lie in [0, pi)");
    }
}

void TwoToneParams::validate() const {
    require_finite_positive(omega0, "omega0");
    require_finite_positive(omega, "omega");
    require_finite_positive(V, "V");
    if (!std::isfinite(Vprime) || Vprime < 0.0) {
        throw InvalidParameter("Vprime must be finite and >= 0");
    }
    if (n_tone < 1) throw InvalidParameter("n_tone must be a positive integer");
}

PeriodicHamiltonian build_schwinger_rabi(const SchwingerRabiParams& p) {
    p.validate();
    const double a = 0.5 * p.omega0 * std::cos(p.theta);
    const double b = 0.5 * p.omega0 * std::sin(p.theta);
    const double w = p.omega;

    PeriodicHamiltonian H;
    H.dimension = 2;
    H.period = 2.0 * M_PI / w;
    H.label = "schwinger_rabi";
    H.params = {{"model", "schwinger_rabi"},
                {"params",
                 {{"omega0", p.omega0}, {"theta", p.theta}, {"omega", p.omega}}}};
    H.evaluate = [a, b, w](double t) {
        Matrix M(2, 2);
        const Complex e = std::polar(1.0, -w * t);
        M(0, 0) = a;
        M(0, 1) = b * e;
        M(1, 0) = b * std::conj(e);
        M(1, 1) = -a;
        return M;
    };
    H.derivative = [b, w](double t) {
        Matrix M(2, 2);
        const Complex e = std::polar(1.0, -w * t);
        M(0, 0) = 0.0;
        M(0, 1) = Complex(0.0, -w) * b * e;
        M(1, 0) = Complex(0.0, w) * b * std::conj(e);
        M(1, 1) = 0.0;
        return M;
    };
    return H;
}

PeriodicHamiltonian build_dual(const PeriodicHamiltonian& base,
                               const IntegratorConfig& cfg,
                               std::optional<double> dual_period) {
    double Tbar = 0.0;
    if (dual_period) {
        Tbar = *dual_period;
        if (!std::isfinite(Tbar) || Tbar <= 0.0) {
            throw InvalidParameter("dual period must be finite and positive");
        }
    } else if (base.label == "schwinger_rabi") {
        const auto& pj = base.params.at("params");
        const double w0 = pj.at("omega0").get<double>();
        const double th = pj.at("theta").get<double>();
        const double w = pj.at("omega").get<double>();
        const double Om =
            std::sqrt(w0 * w0 + w * w - 2.0 * w * w0 * std::cos(th));
        if (Om <= 0.0) {
            throw InvalidParameter(
                "dual period undefined: base has zero effective splitting");
        }
        Tbar = 2.0 * M_PI / Om;
    } else {
        throw InvalidParameter(
            "build_dual: period detection only available for a schwinger_rabi "
            "base; pass dual_period explicitly");
    }

    // U(t) from one precomputed base period plus exact monodromy powers.
    auto cache = std::make_shared<EvolutionCache>(base, 0.0, cfg);
    if (cache->monodromy().unitarity_defect > cfg.unitarity_tol) {
        throw PropagationFailure("build_dual: inner evolution failed unitarity check");
    }

    PeriodicHamiltonian dual;
    dual.dimension = base.dimension;
    dual.period = Tbar;
    dual.label = "dual";
    dual.params = {{"model", "dual"},
                   {"params", base.params.value("params", nlohmann::json::object())}};
    // The dual's time dependence carries the base-period structure, so cap
    // integration steps relative to the base period, not just the dual one.
    dual.max_step_hint = std::min(base.max_step_hint, base.period / 256.0);

    const auto base_eval = base.evaluate;
    dual.evaluate = [cache, base_eval](double t) {
        const Matrix U = cache->matrix_at(t);
        return Matrix(-(U.adjoint() * base_eval(t) * U));
    };
    if (base.has_derivative()) {
        // d/dt [-U^dag H U] = -U^dag dH/dt U: the commutator terms cancel.
        const auto base_deriv = base.derivative;
        dual.derivative = [cache, base_deriv](double t) {
            const Matrix U = cache->matrix_at(t);
            return Matrix(-(U.adjoint() * base_deriv(t) * U));
        };
    }
    return dual;
}

PeriodicHamiltonian build_two_tone(const TwoToneParams& p, bool truncated) {
    p.validate();
    if (p.Vprime > 0.1 * p.V || p.V > 0.1 * p.omega0) {
        std::cerr << "floqa: two_tone parameters outside the weak-drive regime "
                     "(want Vprime << V << omega0): V'="
                  << p.Vprime << " V=" << p.V << " omega0=" << p.omega0 << "\n";
    }
    const double w0 = p.omega0, V = p.V, Vp = truncated ? 0.0 : p.Vprime;
    const double w = p.omega;
    const double ws = p.omega / p.n_tone;

    PeriodicHamiltonian H;
    H.dimension = 2;
    H.period = truncated ? 2.0 * M_PI / w : 2.0 * M_PI * p.n_tone / w;
    H.label = truncated ? "two_tone_truncated" : "two_tone";
    H.params = {{"model", H.label},
                {"params",
                 {{"omega0", p.omega0},
                  {"V", p.V},
                  {"Vprime", p.Vprime},
                  {"omega", p.omega},
                  {"n_tone", p.n_tone}}}};
    H.evaluate = [w0, V, Vp, w, ws](double t) {
        const double v = V * std::cos(w * t) + Vp * std::cos(ws * t);
        Matrix M(2, 2);
        M(0, 0) = -0.5 * w0;
        M(0, 1) = -v;
        M(1, 0) = -v;
        M(1, 1) = 0.5 * w0;
        return M;
    };
    H.derivative = [V, Vp, w, ws](double t) {
        const double dv = -V * w * std::sin(w * t) - Vp * ws * std::sin(ws * t);
        Matrix M(2, 2);
        M(0, 0) = 0.0;
        M(0, 1) = -dv;
        M(1, 0) = -dv;
        M(1, 1) = 0.0;
        return M;
    };
    return H;
}

PeriodicHamiltonian build_generic(int dimension, double period,
                                  const std::vector<FourierTerm>& terms) {
    if (dimension < 1) throw InvalidParameter("dimension must be >= 1");
    require_finite_positive(period, "period");

    struct Prepared {
        int k;
        Matrix A;
        Matrix B;
    };
    auto prepared = std::make_shared<std::vector<Prepared>>();
    for (const auto& term : terms) {
        if (term.harmonic < 0) throw InvalidParameter("harmonic indices must be >= 0");
        Prepared pt;
        pt.k = term.harmonic;
        auto check = [&](const Matrix& M, const char* what) {
            if (M.rows() != dimension || M.cols() != dimension) {
                throw InvalidParameter(std::string(what) + " has wrong shape");
            }
            const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
            if (hermiticity_defect(M) > 1e-12 * scale) {
                throw InvalidParameter(std::string(what) + " is not Hermitian");
            }
            return Matrix(0.5 * (M + M.adjoint()));
        };
        pt.A = check(term.cos_coeff, "cos coefficient");
        if (term.sin_coeff.size() > 0 && term.harmonic > 0) {
            pt.B = check(term.sin_coeff, "sin coefficient");
        } else {
            pt.B = Matrix::Zero(dimension, dimension);
        }
        prepared->push_back(std::move(pt));
    }

    const double w = 2.0 * M_PI / period;
    PeriodicHamiltonian H;
    H.dimension = dimension;
    H.period = period;
    H.label = "generic";
    H.params = {{"model", "generic"},
                {"params", {{"dimension", dimension}, {"period", period}}}};
    H.evaluate = [prepared, dimension, w](double t) {
        Matrix M = Matrix::Zero(dimension, dimension);
        for (const auto& pt : *prepared) {
            M += pt.A * std::cos(pt.k * w * t);
            if (pt.k > 0) M += pt.B * std::sin(pt.k * w * t);
        }
        return M;
    };
    H.derivative = [prepared, dimension, w](double t) {
        Matrix M = Matrix::Zero(dimension, dimension);
        for (const auto& pt : *prepared) {
            if (pt.k == 0) continue;
            const double kw = pt.k * w;
            M += -pt.A * kw * std::sin(kw * t) + pt.B * kw * std::cos(kw * t);
        }
        return M;
    };
    return H;
}

PeriodicHamiltonian model_from_json(const nlohmann::json& config,
                                    const IntegratorConfig& cfg) {
    if (!config.is_object() || !config.contains("model")) {
        throw InvalidParameter("model config must be an object with a \"model\" key");
    }
    std::string name = config.at("model").get<std::string>();
    for (auto& ch : name) {
        if (ch == '-') ch = '_';
    }
    const nlohmann::json params = config.value("params", nlohmann::json::object());

    auto sr_params = [&params]() {
        SchwingerRabiParams p;
        p.omega0 = params.value("omega0", 1.0);
        p.theta = params.value("theta", 0.0);
        p.omega = params.value("omega", 1.0);
        return p;
    };

    if (name == "schwinger_rabi") {
        return build_schwinger_rabi(sr_params());
    }
    if (name == "dual") {
        return build_dual(build_schwinger_rabi(sr_params()), cfg);
    }
    if (name == "two_tone") {
        TwoToneParams p;
        p.omega0 = params.value("omega0", 1.0);
        p.V = params.value("V", 0.05);
        p.Vprime = params.value("Vprime", 0.0);
        p.omega = params.value("omega", 1.0);
        p.n_tone = params.value("n_tone", 1);
        return build_two_tone(p, params.value("truncated", false));
    }
    if (name == "generic") {
        if (!params.contains("dimension") || !params.contains("period")) {
            throw InvalidParameter("generic model needs dimension and period");
        }
        const int n = params.at("dimension").get<int>();
        std::vector<FourierTerm> terms;
        for (const auto& tj : params.value("terms", nlohmann::json::array())) {
            FourierTerm term;
            term.harmonic = tj.at("harmonic").get<int>();
            term.cos_coeff = json_to_matrix(tj.at("cos"), n, "cos coefficient");
            if (tj.contains("sin")) {
                term.sin_coeff = json_to_matrix(tj.at("sin"), n, "sin coefficient");
            }
            terms.push_back(std::move(term));
        }
        return build_generic(n, params.at("period").get<double>(), terms);
    }
    throw InvalidParameter("unknown model \"" + name + "\"");
}

}  // namespace floqa
