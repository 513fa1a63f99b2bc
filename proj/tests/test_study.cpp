#include <cmath>

#include "common.hpp"
#include "splitforge/parallel.hpp"
#include "splitforge/serialize.hpp"
#include "splitforge/study.hpp"

using namespace splitforge;
using sftest::cubic_family;

namespace {

StudyConfig small_study() {
    StudyConfig c;
    c.spec = cubic_family();
    for (const char* d : {"0.12", "0.11", "0.1", "0.09"}) c.delta_grid.emplace_back(d);
    c.sigma = Real(0);
    c.precision = PrecisionPolicy{false, 160};
    c.inner_window = InnerWindow{Real(20), Real(24), 3};
    c.inner.S0 = Real(240);
    return c;
}

}  // namespace

TEST_CASE("real_from_json accepts strings and numbers") {
    PrecisionScope s(PrecisionContext{128});
    CHECK(real_from_json(Json("0.1")) == Real("0.1"));
    CHECK(real_from_json(Json(0.1)) == Real("0.1"));
    CHECK(real_from_json(Json(3)) == Real(3));
    CHECK(real_to_json(Real("0.25")) == Json("2.5e-1"));
    CHECK_THROWS(real_from_json(Json("abc")));
    CHECK_THROWS(real_from_json(Json::array()));
}

TEST_CASE("spec round-trips through JSON") {
    PrecisionScope s(PrecisionContext{192});
    const auto spec = cubic_family();
    const auto back = spec_from_json(to_json(spec));
    CHECK(back.alpha0 == spec.alpha0);
    CHECK(back.alpha1 == spec.alpha1);
    CHECK(back.c == spec.c);
    CHECK(back.d == spec.d);
    CHECK(to_json(back) == to_json(spec));
    CHECK(h0_of(back) == h0_of(spec));
}

TEST_CASE("shipped configuration files parse") {
    PrecisionScope s(PrecisionContext{192});
    const auto cubic = read_json_file(SF_SOURCE_DIR "/configs/cubic.json");
    CHECK(precision_from_json(cubic).bits == study_precision(1.0, 0.04, 80.0).bits);
    const auto cfg = study_config_from_json(cubic);
    CHECK(cfg.delta_grid.size() == 5);
    CHECK(cfg.precision.automatic);
    CHECK(cfg.inner_window.n_points == 9);
    CHECK(to_json(cfg.spec) == to_json(cubic_family()));
    CHECK(validate(cfg).empty());

    const auto un = study_config_from_json(read_json_file(SF_SOURCE_DIR "/configs/unperturbed.json"));
    CHECK(un.spec.unperturbed());
    CHECK(precision_from_json(read_json_file(SF_SOURCE_DIR "/configs/unperturbed.json")).bits == 256);
}

TEST_CASE("study precision takes the larger rule") {
    // shooting: ceil(pi/(2*0.04)/ln 2) + 128 = 185; inner: ceil(80/ln 2) + 128 = 244
    CHECK(study_precision(1.0, 0.04, 80.0).bits == 244);
    CHECK(study_precision(1.0, 0.01, 80.0).bits == static_cast<long>(std::ceil(M_PI / 0.02 / std::log(2.0))) + 128);
}

TEST_CASE("study configuration validation") {
    PrecisionScope s(PrecisionContext{128});
    auto c = small_study();
    CHECK(validate(c).empty());
    c.delta_grid = {Real("0.05"), Real("0.1")};
    CHECK(!validate(c).empty());
    c = small_study();
    c.inner_window.y_min = Real(30);
    CHECK(!validate(c).empty());
    c = small_study();
    c.delta_grid.clear();
    CHECK(!validate(c).empty());
    CHECK_THROWS_AS(run_study(c), NumericError);
}

TEST_CASE("parallel_map matches serial_map") {
    PrecisionScope s(PrecisionContext{160});
    const auto job = [](std::size_t i) { return exp(Real(static_cast<long>(i)) / Real(7)).str(); };
    CHECK(parallel_map(16, job) == serial_map(16, job));
    CHECK_THROWS(parallel_map(4, [](std::size_t i) -> int {
        if (i == 2) throw std::runtime_error("job failed");
        return 0;
    }));
}

TEST_CASE("unperturbed study: zero splitting and zero Stokes constant") {
    const auto doc = read_json_file(SF_SOURCE_DIR "/configs/unperturbed.json");
    PrecisionScope s(precision_from_json(doc));
    const auto cfg = study_config_from_json(doc);
    const auto r = run_study(cfg);
    CHECK(!r.partial);
    CHECK(r.fit_skipped == "zero splitting");
    REQUIRE(r.stokes);
    CHECK(r.stokes->C_in == Complex(0));
    for (const auto& g : r.grid) {
        REQUIRE(g.sample);
        CHECK(g.sample->dist <= Real(10) * max(r.environment.abs_tol, r.environment.seed_eps * r.environment.seed_eps));
    }
}

TEST_CASE("study reports are deterministic and complete") {
    PrecisionScope s(PrecisionContext{160});
    const auto cfg = small_study();
    const auto a = run_study(cfg);
    const auto b = run_study(cfg);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(prediction_csv(a) == prediction_csv(b));
    CHECK(!a.partial);
    REQUIRE(a.fit);
    CHECK(a.fit->points.size() == 4);
    CHECK(a.prediction_table.size() == 4);
    for (const auto& row : a.prediction_table) CHECK(row.ratio > Real(0));

    const auto j = to_json(a);
    CHECK(j.contains("samples"));
    CHECK(j.contains("stokes"));
    CHECK(j.contains("fit"));
    CHECK(j.contains("environment"));
    CHECK(j["environment"]["bits"] == 160);
}

TEST_CASE("failed grid points mark the report partial") {
    PrecisionScope s(PrecisionContext{128});
    auto cfg = small_study();
    // a time budget too short for any crossing
    cfg.shoot.time_budget = Real("0.5");
    cfg.inner_window = InnerWindow{Real(20), Real(22), 2};
    const auto r = run_study(cfg);
    CHECK(r.partial);
    CHECK(!r.fit);
    CHECK(r.fit_skipped == "fewer than 4 successful grid points");
    for (const auto& g : r.grid) CHECK(!g.error.empty());
    for (const auto& row : r.prediction_table) CHECK(!row.measured.is_finite());
}

TEST_CASE("integrator overrides") {
    PrecisionScope s(PrecisionContext{128});
    IntegratorOverrides o;
    const auto base = make_integrator_config(PrecisionContext{128}, o);
    CHECK(base.rel_tol == IntegratorConfig::for_precision({128}).rel_tol);
    o.order = 6;
    o.max_step = Real("1e-3");
    o.abs_tol = Real("1e-30");
    const auto icfg = make_integrator_config(PrecisionContext{128}, o);
    CHECK(icfg.order == 6);
    CHECK(icfg.max_step == Real("1e-3"));
    CHECK(icfg.abs_tol == Real("1e-30"));
    CHECK(icfg.rel_tol == base.rel_tol);
}

TEST_CASE("CSV forms") {
    PrecisionScope s(PrecisionContext{128});
    CHECK(sample_csv_header() == "delta,sigma,dx,dy,dist,dist_unscaled");
    SplittingSample smp;
    smp.p = ParamPoint{Real("0.05"), Real(0)};
    smp.delta_xy = {Real("1e-12"), Real("-2e-12")};
    smp.dist = Real("3e-12");
    smp.dist_unscaled = Real("1.5e-13");
    CHECK(to_csv_row(smp) == "5e-2,0,1e-12,-2e-12,3e-12,1.5e-13");
}
