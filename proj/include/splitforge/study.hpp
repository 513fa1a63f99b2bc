// End-to-end study: splitting over a delta grid, the inner Stokes constant, and the fit between them.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitforge/asymptotics.hpp"
#include "splitforge/inner.hpp"
#include "splitforge/manifolds.hpp"

namespace splitforge {

struct PrecisionPolicy {
    bool automatic = true;
    long bits = 0;  // used when not automatic
};

struct InnerWindow {
    Real y_min{40};
    Real y_max{80};
    int n_points = 9;
};

// Overrides on top of IntegratorConfig::for_precision; unset fields keep the defaults.
struct IntegratorOverrides {
    std::optional<Real> rel_tol;
    std::optional<Real> abs_tol;
    std::optional<int> order;
    std::optional<Real> max_step;
};

struct StudyConfig {
    UnfoldingSpec spec;
    std::vector<Real> delta_grid;
    Real sigma;
    PrecisionPolicy precision;
    IntegratorOverrides integrator;
    InnerWindow inner_window;
    InnerOptions inner;
    std::optional<Real> seed_eps;
    ShootOptions shoot;
    std::string output_dir = "out";
};

// Bits for a study: the larger of the shooting rule at the smallest delta and the inner-window rule.
PrecisionContext study_precision(double alpha0, double delta_min, double y_max);

IntegratorConfig make_integrator_config(const PrecisionContext& ctx, const IntegratorOverrides& o);

// Empty when the configuration is usable.
std::vector<std::string> validate(const StudyConfig& cfg);

struct GridPoint {
    ParamPoint p;
    std::optional<SplittingSample> sample;
    std::string error;
};

struct PredictionRow {
    Real delta;
    Real predicted;
    Real measured;
    Real ratio;  // measured / predicted
};

struct StudyEnvironment {
    long bits = 0;
    Real rel_tol, abs_tol;
    int order = 0;
    Real seed_eps;
};

struct StudyReport {
    std::vector<GridPoint> grid;
    std::optional<StokesResult> stokes;
    std::string stokes_error;
    std::optional<FitResult> fit;
    std::string fit_skipped;  // reason when no fit was produced
    std::vector<PredictionRow> prediction_table;
    StudyEnvironment environment;
    bool partial = false;
};

// Runs under the caller's precision scope.
StudyReport run_study(const StudyConfig& cfg);

}  // namespace splitforge
