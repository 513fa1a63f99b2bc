#include "splitforge/study.hpp"

#include <algorithm>
#include <cmath>

#include "splitforge/errors.hpp"
#include "splitforge/parallel.hpp"

namespace splitforge {

PrecisionContext study_precision(double alpha0, double delta_min, double y_max) {
    const long shoot = PrecisionContext::for_splitting(alpha0, delta_min).bits;
    const long inner = static_cast<long>(std::ceil(std::abs(alpha0) * y_max / std::log(2.0))) + 128;
    return PrecisionContext{std::max(shoot, inner)};
}

IntegratorConfig make_integrator_config(const PrecisionContext& ctx, const IntegratorOverrides& o) {
    IntegratorConfig c = IntegratorConfig::for_precision(ctx);
    if (o.rel_tol) c.rel_tol = *o.rel_tol;
    if (o.abs_tol) c.abs_tol = *o.abs_tol;
    if (o.order) c.order = *o.order;
    if (o.max_step) c.max_step = *o.max_step;
    return c;
}

std::vector<std::string> validate(const StudyConfig& cfg) {
    std::vector<std::string> out;
    if (cfg.delta_grid.empty()) out.emplace_back("delta_grid is empty");
    for (std::size_t i = 0; i < cfg.delta_grid.size(); ++i) {
        if (i > 0 && !(cfg.delta_grid[i] < cfg.delta_grid[i - 1]))
            out.emplace_back("delta_grid must be strictly decreasing");
        for (const auto& v : validate(cfg.spec, ParamPoint{cfg.delta_grid[i], cfg.sigma}))
            out.push_back("delta=" + cfg.delta_grid[i].str(6) + ": " + v);
    }
    if (!(cfg.inner_window.y_min < cfg.inner_window.y_max)) out.emplace_back("inner_window needs y_min < y_max");
    if (cfg.inner_window.n_points < 2) out.emplace_back("inner_window needs at least 2 points");
    if (!cfg.precision.automatic && cfg.precision.bits < 64) out.emplace_back("precision must be at least 64 bits");
    return out;
}

StudyReport run_study(const StudyConfig& cfg) {
    if (const auto problems = validate(cfg); !problems.empty()) {
        std::string msg = "invalid study configuration:";
        for (const auto& p : problems) msg += " " + p + ";";
        throw NumericError(ErrorKind::InvalidInput, msg);
    }
    const PrecisionContext ctx{thread_precision()};
    const IntegratorConfig icfg = make_integrator_config(ctx, cfg.integrator);
    icfg.validate();
    const Real eps = cfg.seed_eps ? *cfg.seed_eps : default_seed_eps();

    StudyReport report;
    report.environment = {ctx.bits, icfg.rel_tol, icfg.abs_tol, icfg.effective_order(), eps};

    report.grid = parallel_map(cfg.delta_grid.size(), [&](std::size_t i) {
        GridPoint g{ParamPoint{cfg.delta_grid[i], cfg.sigma}, std::nullopt, {}};
        try {
            g.sample = splitting(cfg.spec, g.p, eps, icfg, cfg.shoot);
        } catch (const std::exception& e) {
            g.error = e.what();
        }
        return g;
    });

    try {
        report.stokes = stokes_constant(InnerParams::from_spec(cfg.spec), {cfg.inner_window.y_min, cfg.inner_window.y_max},
                                        cfg.inner_window.n_points, icfg, cfg.inner);
    } catch (const std::exception& e) {
        report.stokes_error = e.what();
    }

    std::vector<SplittingSample> good;
    for (const auto& g : report.grid)
        if (g.sample) good.push_back(*g.sample);
    if (cfg.spec.unperturbed()) {
        report.fit_skipped = "zero splitting";
    } else if (good.size() < 4) {
        report.fit_skipped = "fewer than 4 successful grid points";
    } else {
        try {
            report.fit = fit_stokes_from_measurements(good, cfg.spec);
        } catch (const std::exception& e) {
            report.fit_skipped = e.what();
        }
    }

    const Real nan = Real(0) / Real(0);
    for (const auto& g : report.grid) {
        PredictionRow row{g.p.delta, nan, nan, nan};
        if (report.stokes) row.predicted = predict_split(report.stokes->C_in, cfg.spec, g.p).modulus;
        if (g.sample) row.measured = g.sample->dist;
        row.ratio = row.measured / row.predicted;
        report.prediction_table.push_back(row);
    }

    report.partial = !report.stokes_error.empty() ||
                     std::any_of(report.grid.begin(), report.grid.end(), [](const GridPoint& g) { return !g.sample; });
    return report;
}

}  // namespace splitforge
