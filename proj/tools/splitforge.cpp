// splitforge: command-line front end for the splitting study.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "splitforge/errors.hpp"
#include "splitforge/serialize.hpp"

using namespace splitforge;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumeric = 2;
constexpr int kPartial = 3;

struct Common {
    std::string config;
    std::string delta = "0.05";
    std::string sigma;
    std::string precision = "auto";
    std::string out;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Window {
    double y_min = 40, y_max = 80;
    std::string min_text = "40", max_text = "80";
    int n = 9;
};

Window parse_window(const std::string& text) {
    Window w;
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        throw UsageError("--window expects MIN:MAX:N");
    try {
        w.y_min = std::stod(a);
        w.y_max = std::stod(b);
        w.n = std::stoi(c);
    } catch (const std::exception&) {
        throw UsageError("--window expects MIN:MAX:N");
    }
    w.min_text = a;
    w.max_text = b;
    return w;
}

Json load_config(const Common& c) {
    if (c.config.empty()) throw UsageError("--config is required");
    try {
        return read_json_file(c.config);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

double alpha0_of(const Json& j) {
    const Json& s = j.contains("spec") ? j.at("spec") : j;
    if (!s.contains("alpha0")) return 1.0;
    const auto& a = s.at("alpha0");
    return a.is_string() ? std::stod(a.get<std::string>()) : a.get<double>();
}

PrecisionContext resolve(const std::string& flag, const PrecisionContext& automatic) {
    if (flag == "auto") return automatic;
    try {
        const long bits = std::stol(flag);
        if (bits < 64) throw UsageError("--precision must be at least 64 bits");
        return PrecisionContext{bits};
    } catch (const std::invalid_argument&) {
        throw UsageError("--precision expects BITS or auto");
    }
}

Real sigma_of(const Common& c, const Json& j) {
    if (!c.sigma.empty()) return Real(std::string_view(c.sigma));
    return j.contains("sigma") ? real_from_json(j.at("sigma")) : Real(0);
}

void emit(const Common& c, const std::string& name, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    fs::create_directories(c.out);
    std::ofstream(fs::path(c.out) / name) << text << (text.empty() || text.back() != '\n' ? "\n" : "");
}

int numeric_failure(const Common& c, const std::string& name, const std::exception& e) {
    Json j{{"error", e.what()}};
    if (const auto* ne = dynamic_cast<const NumericError*>(&e)) j["kind"] = to_string(ne->kind());
    emit(c, name, j.dump(2));
    return kNumeric;
}

int cmd_equilibria(const Common& c) {
    const Json cfg = load_config(c);
    PrecisionScope scope(resolve(c.precision, PrecisionContext::for_splitting(alpha0_of(cfg), std::stod(c.delta))));
    try {
        const UnfoldingSpec spec = spec_from_json(cfg);
        const ParamPoint p{Real(std::string_view(c.delta)), sigma_of(c, cfg)};
        const auto eqs = find_fixed_points(spec, p);
        Json out{{"delta", p.delta.str()}, {"sigma", p.sigma.str()}, {"plus", to_json(eqs.first)},
                 {"minus", to_json(eqs.second)}};
        emit(c, "equilibria.json", out.dump(2));
        return kOk;
    } catch (const std::exception& e) {
        return numeric_failure(c, "equilibria.json", e);
    }
}

int cmd_split(const Common& c, const std::string& eps_text, const std::string& norm) {
    const Json cfg = load_config(c);
    PrecisionScope scope(resolve(c.precision, PrecisionContext::for_splitting(alpha0_of(cfg), std::stod(c.delta))));
    try {
        const UnfoldingSpec spec = spec_from_json(cfg);
        const ParamPoint p{Real(std::string_view(c.delta)), sigma_of(c, cfg)};
        if (const auto v = validate(spec, p); !v.empty()) throw NumericError(ErrorKind::InvalidInput, v.front());
        const Real eps = eps_text.empty() ? default_seed_eps() : Real(std::string_view(eps_text));
        ShootOptions opts;
        if (norm == "sum") opts.norm = DistanceNorm::sum;
        const auto s = splitting(spec, p, eps, IntegratorConfig::for_precision(PrecisionContext{thread_precision()}), opts);
        emit(c, "split.csv", sample_csv_header() + "\n" + to_csv_row(s) + "\n");
        return kOk;
    } catch (const std::exception& e) {
        return numeric_failure(c, "split.json", e);
    }
}

PrecisionContext inner_precision(const Json& cfg, const Window& w) {
    const double a = std::abs(alpha0_of(cfg));
    return PrecisionContext{static_cast<long>(std::ceil(a * w.y_max / std::log(2.0))) + 128};
}

InnerOptions inner_options(const Json& cfg) {
    StudyConfig sc = study_config_from_json(cfg);
    return sc.inner;
}

int cmd_inner(const Common& c, const std::string& window, const std::string& branch) {
    const Json cfg = load_config(c);
    const Window w = parse_window(window);
    if (branch != "u" && branch != "s") throw UsageError("--branch expects u or s");
    PrecisionScope scope(resolve(c.precision, inner_precision(cfg, w)));
    try {
        const auto ip = InnerParams::from_spec(spec_from_json(cfg));
        std::vector<Complex> targets;
        const Real lo(std::string_view(w.min_text)), hi(std::string_view(w.max_text));
        for (int k = 0; k < w.n; ++k)
            targets.emplace_back(Real(0), -(w.n == 1 ? lo : lo + (hi - lo) * Real(k) / Real(w.n - 1)));
        const auto sol = solve_inner(ip, branch == "u" ? Branch::u : Branch::s, targets,
                                     IntegratorConfig::for_precision(PrecisionContext{thread_precision()}),
                                     inner_options(cfg));
        Json samples = Json::array();
        for (const auto& s : sol.samples)
            samples.push_back(Json{{"s", complex_to_json(s.s)}, {"psi", complex_to_json(s.psi)},
                                   {"psibar", complex_to_json(s.psib)}});
        emit(c, "inner.json", Json{{"branch", branch}, {"seed_order", sol.seed_order}, {"samples", samples}}.dump(2));
        return kOk;
    } catch (const std::exception& e) {
        return numeric_failure(c, "inner.json", e);
    }
}

int cmd_stokes(const Common& c, const std::string& window) {
    const Json cfg = load_config(c);
    const Window w = parse_window(window);
    PrecisionScope scope(resolve(c.precision, inner_precision(cfg, w)));
    try {
        const auto ip = InnerParams::from_spec(spec_from_json(cfg));
        const auto r = stokes_constant(ip, {Real(std::string_view(w.min_text)), Real(std::string_view(w.max_text))}, w.n,
                                       IntegratorConfig::for_precision(PrecisionContext{thread_precision()}),
                                       inner_options(cfg));
        emit(c, "stokes.json", to_json(r).dump(2));
        return kOk;
    } catch (const std::exception& e) {
        return numeric_failure(c, "stokes.json", e);
    }
}

Complex parse_cin(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return Complex(Real(std::string_view(text)));
        return Complex(Real(std::string_view(text).substr(0, comma)), Real(std::string_view(text).substr(comma + 1)));
    } catch (const std::invalid_argument&) {
        throw UsageError("--cin expects RE or RE,IM");
    }
}

int cmd_predict(const Common& c, const std::string& cin) {
    const Json cfg = load_config(c);
    if (cin.empty()) throw UsageError("--cin is required");
    PrecisionScope scope(resolve(c.precision, PrecisionContext::for_splitting(alpha0_of(cfg), std::stod(c.delta))));
    const Complex C = parse_cin(cin);
    try {
        const UnfoldingSpec spec = spec_from_json(cfg);
        const ParamPoint p{Real(std::string_view(c.delta)), sigma_of(c, cfg)};
        emit(c, "predict.json", to_json(predict_split(C, spec, p)).dump(2));
        return kOk;
    } catch (const std::exception& e) {
        return numeric_failure(c, "predict.json", e);
    }
}

int cmd_study(Common c) {
    const Json cfg = load_config(c);
    PrecisionScope scope(resolve(c.precision, precision_from_json(cfg)));
    StudyConfig sc;
    try {
        sc = study_config_from_json(cfg);
        if (!c.sigma.empty()) sc.sigma = Real(std::string_view(c.sigma));
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (c.out.empty()) c.out = sc.output_dir;
    try {
        const StudyReport r = run_study(sc);
        fs::create_directories(c.out);
        std::ofstream(fs::path(c.out) / "report.json") << to_json(r).dump(2) << '\n';
        std::ofstream samples(fs::path(c.out) / "samples.csv");
        samples << sample_csv_header() << '\n';
        for (const auto& g : r.grid)
            if (g.sample) samples << to_csv_row(*g.sample) << '\n';
        if (r.fit) std::ofstream(fs::path(c.out) / "fit.csv") << fit_csv(*r.fit);
        std::ofstream(fs::path(c.out) / "prediction.csv") << prediction_csv(r);
        std::cout << prediction_csv(r);
        if (r.fit)
            std::cout << "extrapolated_C_star " << r.fit->extrapolated_C_star.str(12) << "  slope " << r.fit->slope.str(12)
                      << '\n';
        if (r.stokes) std::cout << "abs_C_in " << abs(r.stokes->C_in).str(12) << '\n';
        return r.partial ? kPartial : kOk;
    } catch (const std::exception& e) {
        return numeric_failure(c, "report.json", e);
    }
}

void add_common(CLI::App* app, Common& c, bool with_delta) {
    app->add_option("--config", c.config, "Configuration JSON")->required();
    if (with_delta) {
        app->add_option("--delta", c.delta, "Rescaled parameter delta");
        app->add_option("--sigma", c.sigma, "Rescaled parameter sigma");
    }
    app->add_option("--precision", c.precision, "Working precision in bits, or auto");
    app->add_option("--out", c.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponentially small splitting of separatrices in Hopf-zero unfoldings"};
    app.require_subcommand(1);

    Common c;
    std::string eps, norm = "euclidean", window = "40:80:9", branch = "u", cin;

    auto* eq = app.add_subcommand("equilibria", "Saddle-foci S+ and S- with their spectra");
    add_common(eq, c, true);
    auto* split = app.add_subcommand("split", "Splitting distance at one parameter point (CSV)");
    add_common(split, c, true);
    split->add_option("--eps", eps, "Seed distance along the eigenvector");
    split->add_option("--norm", norm, "euclidean or sum")->check(CLI::IsMember({"euclidean", "sum"}));
    auto* inner = app.add_subcommand("inner", "Inner-equation solutions at s = -iy");
    add_common(inner, c, false);
    inner->add_option("--window", window, "MIN:MAX:N");
    inner->add_option("--branch", branch, "u or s");
    auto* stokes = app.add_subcommand("stokes", "Stokes constant of the inner equation");
    add_common(stokes, c, false);
    stokes->add_option("--window", window, "MIN:MAX:N");
    auto* predict = app.add_subcommand("predict", "Asymptotic prediction of the splitting");
    add_common(predict, c, true);
    predict->add_option("--cin", cin, "Stokes constant RE or RE,IM")->required();
    auto* study = app.add_subcommand("study", "Full study over the configured delta grid");
    add_common(study, c, false);
    study->add_option("--sigma", c.sigma, "Override sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*eq) return cmd_equilibria(c);
        if (*split) return cmd_split(c, eps, norm);
        if (*inner) return cmd_inner(c, window, branch);
        if (*stokes) return cmd_stokes(c, window);
        if (*predict) return cmd_predict(c, cin);
        if (*study) return cmd_study(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
