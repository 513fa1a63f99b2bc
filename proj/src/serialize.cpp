#include "splitforge/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "splitforge/errors.hpp"

namespace splitforge {

namespace {

std::string number_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number()) return j.dump();
    throw NumericError(ErrorKind::InvalidInput, "expected a number or decimal string, got " + j.dump());
}

double as_double(const Json& j) { return std::stod(number_text(j)); }

const Json& spec_node(const Json& j) { return j.contains("spec") ? j.at("spec") : j; }

Json vec_to_json(const std::vector<Real>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(real_to_json(x));
    return a;
}

}  // namespace

Real real_from_json(const Json& j) {
    try {
        return Real(number_text(j));
    } catch (const std::invalid_argument& e) {
        throw NumericError(ErrorKind::InvalidInput, e.what());
    }
}

Json real_to_json(const Real& x) { return x.str(); }

Json complex_to_json(const Complex& z) { return Json{{"re", z.re.str()}, {"im", z.im.str()}}; }

Json to_json(const Polynomial5& p) {
    Json a = Json::array();
    for (const auto& m : p.monomials()) {
        Json e = Json::array();
        for (int k : m.exps) e.push_back(k);
        a.push_back(Json{{"coeff", m.coeff.str()}, {"exps", e}});
    }
    return a;
}

Polynomial5 polynomial_from_json(const Json& j) {
    if (j.is_null()) return {};
    if (!j.is_array()) throw NumericError(ErrorKind::InvalidInput, "polynomial must be an array of monomials");
    std::vector<Polynomial5::Monomial> ms;
    for (const auto& m : j) {
        const auto& e = m.at("exps");
        if (!e.is_array() || e.size() != 5)
            throw NumericError(ErrorKind::InvalidInput, "monomial exps must list 5 integers");
        std::array<int, 5> exps{};
        for (std::size_t k = 0; k < 5; ++k) exps[k] = e[k].get<int>();
        ms.push_back({real_from_json(m.at("coeff")), exps});
    }
    return Polynomial5(std::move(ms));
}

Json to_json(const UnfoldingSpec& s) {
    return Json{{"alpha0", s.alpha0.str()}, {"alpha1", s.alpha1.str()}, {"b", s.b.str()}, {"c", s.c.str()},
                {"d", s.d.str()}, {"f", to_json(s.f)}, {"g", to_json(s.g)}, {"h", to_json(s.h)}};
}

UnfoldingSpec spec_from_json(const Json& root) {
    const Json& j = spec_node(root);
    UnfoldingSpec s;
    if (j.contains("alpha0")) s.alpha0 = real_from_json(j.at("alpha0"));
    if (j.contains("alpha1")) s.alpha1 = real_from_json(j.at("alpha1"));
    if (j.contains("b")) s.b = real_from_json(j.at("b"));
    if (j.contains("c")) s.c = real_from_json(j.at("c"));
    if (j.contains("d")) s.d = real_from_json(j.at("d"));
    s.f = polynomial_from_json(j.value("f", Json()));
    s.g = polynomial_from_json(j.value("g", Json()));
    s.h = polynomial_from_json(j.value("h", Json()));
    return s;
}

PrecisionContext precision_from_json(const Json& j) {
    const Json p = j.value("precision", Json("auto"));
    if (!(p.is_string() && p.get<std::string>() == "auto")) {
        const long bits = std::stol(number_text(p));
        return PrecisionContext{bits};
    }
    const Json& s = spec_node(j);
    const double alpha0 = s.contains("alpha0") ? as_double(s.at("alpha0")) : 1.0;
    double dmin = 0.05;
    if (j.contains("delta_grid") && !j.at("delta_grid").empty()) {
        dmin = as_double(j.at("delta_grid").front());
        for (const auto& d : j.at("delta_grid")) dmin = std::min(dmin, as_double(d));
    }
    double ymax = 80;
    if (j.contains("inner_window")) ymax = as_double(j.at("inner_window").at("y_max"));
    return study_precision(alpha0, dmin, ymax);
}

StudyConfig study_config_from_json(const Json& j) {
    StudyConfig c;
    c.spec = spec_from_json(j);
    if (j.contains("delta_grid"))
        for (const auto& d : j.at("delta_grid")) c.delta_grid.push_back(real_from_json(d));
    c.sigma = j.contains("sigma") ? real_from_json(j.at("sigma")) : Real(0);
    const Json p = j.value("precision", Json("auto"));
    if (!(p.is_string() && p.get<std::string>() == "auto")) c.precision = {false, std::stol(number_text(p))};
    if (j.contains("integrator")) {
        const auto& in = j.at("integrator");
        if (in.contains("rel_tol")) c.integrator.rel_tol = real_from_json(in.at("rel_tol"));
        if (in.contains("abs_tol")) c.integrator.abs_tol = real_from_json(in.at("abs_tol"));
        if (in.contains("order")) c.integrator.order = in.at("order").get<int>();
        if (in.contains("max_step")) c.integrator.max_step = real_from_json(in.at("max_step"));
    }
    if (j.contains("inner_window")) {
        const auto& w = j.at("inner_window");
        c.inner_window.y_min = real_from_json(w.at("y_min"));
        c.inner_window.y_max = real_from_json(w.at("y_max"));
        c.inner_window.n_points = w.value("n_points", 9);
    }
    if (j.contains("inner")) {
        const auto& in = j.at("inner");
        if (in.contains("S0")) c.inner.S0 = real_from_json(in.at("S0"));
        if (in.contains("beta0")) c.inner.beta0 = real_from_json(in.at("beta0"));
        if (in.contains("rho")) c.inner.rho = real_from_json(in.at("rho"));
        c.inner.seed_terms = in.value("seed_terms", 0);
        c.inner.staircase = in.value("staircase", false);
    }
    if (j.contains("seed_eps")) c.seed_eps = real_from_json(j.at("seed_eps"));
    if (j.value("norm", std::string("euclidean")) == "sum") c.shoot.norm = DistanceNorm::sum;
    c.output_dir = j.value("output_dir", std::string("out"));
    return c;
}

Json to_json(const Equilibrium& eq) {
    Json ev = Json::array();
    for (const auto& l : eq.eigenvalues) ev.push_back(complex_to_json(l));
    return Json{{"kind", eq.kind == EquilibriumKind::plus ? "plus" : "minus"},
                {"point", vec_to_json({eq.point[0], eq.point[1], eq.point[2]})},
                {"eigenvalues", ev},
                {"real_eigvec", vec_to_json({eq.real_eigvec[0], eq.real_eigvec[1], eq.real_eigvec[2]})},
                {"newton_residuals", vec_to_json(eq.newton_residuals)}};
}

std::string sample_csv_header() { return "delta,sigma,dx,dy,dist,dist_unscaled"; }

std::string to_csv_row(const SplittingSample& s) {
    std::ostringstream os;
    os << s.p.delta.str() << ',' << s.p.sigma.str() << ',' << s.delta_xy[0].str() << ',' << s.delta_xy[1].str()
       << ',' << s.dist.str() << ',' << s.dist_unscaled.str();
    return os.str();
}

Json to_json(const SplittingSample& s) {
    return Json{{"delta", s.p.delta.str()},
                {"sigma", s.p.sigma.str()},
                {"cross_u", vec_to_json({s.cross_u[0], s.cross_u[1]})},
                {"cross_s", vec_to_json({s.cross_s[0], s.cross_s[1]})},
                {"dx", s.delta_xy[0].str()},
                {"dy", s.delta_xy[1].str()},
                {"dist", s.dist.str()},
                {"dist_unscaled", s.dist_unscaled.str()}};
}

Json to_json(const StokesResult& r) {
    Json raw = Json::array();
    for (const auto& e : r.raw)
        raw.push_back(Json{{"y", e.y.str()}, {"estimate", complex_to_json(e.estimate)}, {"chi2_scaled", e.chi2_scaled.str()}});
    return Json{{"C_in", complex_to_json(r.C_in)},
                {"abs_C_in", abs(r.C_in).str()},
                {"c1", complex_to_json(r.c1)},
                {"err_estimate", r.err_estimate.str()},
                {"fit_window", vec_to_json({r.fit_window[0], r.fit_window[1]})},
                {"seed_order", r.seed_order},
                {"S0", r.S0.str()},
                {"raw", raw}};
}

Json to_json(const FitResult& r) {
    Json pts = Json::array();
    for (const auto& p : r.points)
        pts.push_back(Json{{"delta", p.delta.str()}, {"y", p.y.str()}, {"fitted", p.fitted.str()}});
    return Json{{"slope", r.slope.str()},
                {"C_star_fit", r.C_star_fit.str()},
                {"extrapolated_C_star", r.extrapolated_C_star.str()},
                {"kappa", r.kappa.str()},
                {"residuals", vec_to_json(r.residuals)},
                {"rms", r.rms.str()},
                {"window", vec_to_json({r.window[0], r.window[1]})},
                {"points", pts}};
}

std::string fit_csv(const FitResult& r) {
    std::ostringstream os;
    os << "delta,y,fitted\n";
    for (const auto& p : r.points) os << p.delta.str() << ',' << p.y.str() << ',' << p.fitted.str() << '\n';
    return os.str();
}

Json to_json(const Prediction& p) {
    return Json{{"delta", p.p.delta.str()},
                {"sigma", p.p.sigma.str()},
                {"first_component", complex_to_json(p.first)},
                {"second_component", complex_to_json(p.second)},
                {"modulus", p.modulus.str()},
                {"modulus_unscaled", (p.p.delta * p.modulus).str()}};
}

Json to_json(const StudyReport& r) {
    Json grid = Json::array();
    for (const auto& g : r.grid) {
        Json e = g.sample ? to_json(*g.sample) : Json{{"delta", g.p.delta.str()}, {"sigma", g.p.sigma.str()}};
        e["error"] = g.error.empty() ? Json() : Json(g.error);
        grid.push_back(e);
    }
    Json table = Json::array();
    for (const auto& row : r.prediction_table)
        table.push_back(Json{{"delta", row.delta.str()},
                             {"predicted", row.predicted.str()},
                             {"measured", row.measured.str()},
                             {"ratio", row.ratio.str()}});
    Json out;
    out["partial"] = r.partial;
    out["environment"] = Json{{"bits", r.environment.bits},
                              {"rel_tol", r.environment.rel_tol.str()},
                              {"abs_tol", r.environment.abs_tol.str()},
                              {"order", r.environment.order},
                              {"seed_eps", r.environment.seed_eps.str()}};
    out["samples"] = grid;
    out["stokes"] = r.stokes ? to_json(*r.stokes) : Json();
    out["stokes_error"] = r.stokes_error.empty() ? Json() : Json(r.stokes_error);
    out["fit"] = r.fit ? to_json(*r.fit) : Json();
    out["fit_skipped"] = r.fit_skipped.empty() ? Json() : Json(r.fit_skipped);
    out["prediction_table"] = table;
    return out;
}

std::string prediction_csv(const StudyReport& r) {
    std::ostringstream os;
    os << "delta,predicted,measured,ratio\n";
    for (const auto& row : r.prediction_table)
        os << row.delta.str() << ',' << row.predicted.str() << ',' << row.measured.str() << ',' << row.ratio.str()
           << '\n';
    return os.str();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace splitforge
