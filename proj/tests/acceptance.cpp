// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "splitforge/asymptotics.hpp"
#include "splitforge/inner.hpp"
#include "splitforge/manifolds.hpp"
#include "splitforge/serialize.hpp"
#include "splitforge/study.hpp"

using namespace splitforge;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const Real& x, int digits = 6) { return x.str(digits); }

UnfoldingSpec cubic_spec() { return spec_from_json(read_json_file(SF_SOURCE_DIR "/configs/cubic.json")); }

std::string sample_text(const SplittingSample& s) { return to_csv_row(s); }

// Shared between criteria 2, 3 and 8.
struct CubicStudy {
    StudyReport report;
    long bits = 0;
};

const CubicStudy& cubic_study() {
    static const CubicStudy study = [] {
        const auto doc = read_json_file(SF_SOURCE_DIR "/configs/cubic.json");
        const auto ctx = precision_from_json(doc);
        PrecisionScope s(ctx);
        CubicStudy out;
        out.bits = ctx.bits;
        out.report = run_study(study_config_from_json(doc));
        return out;
    }();
    return study;
}

Outcome unperturbed_null() {
    PrecisionScope s(PrecisionContext{256});
    auto spec = cubic_spec();
    spec.f = spec.g = spec.h = Polynomial5();
    const auto cfg = IntegratorConfig::for_precision({256});
    const Real eps = default_seed_eps();
    const Real bound = Real(10) * max(cfg.abs_tol, eps * eps);
    Real worst(0);
    for (const char* d : {"0.1", "0.05", "0.02"})
        for (const Real& sigma : {Real(0), spec.d / Real(2)})
            worst = max(worst, splitting(spec, ParamPoint{Real(d), sigma}, eps, cfg).dist);
    return {worst <= bound, "max dist " + fmt(worst) + " <= bound " + fmt(bound)};
}

Outcome exponent_law() {
    const auto& st = cubic_study();
    if (!st.report.fit) return {false, "no fit: " + st.report.fit_skipped};
    PrecisionScope s(PrecisionContext{st.bits});
    const auto spec = cubic_spec();
    const Real target = -spec.alpha0 * pi() / Real(2);
    const Real rel = abs(st.report.fit->slope - target) / abs(target);
    return {rel <= Real("0.01"), "slope " + fmt(st.report.fit->slope, 8) + " vs " + fmt(target, 8) + ", rel " + fmt(rel, 3) +
                                     " (" + std::to_string(st.bits) + " bits)"};
}

Outcome stokes_cross_validation() {
    const auto& st = cubic_study();
    if (!st.report.fit || !st.report.stokes) return {false, "study incomplete"};
    PrecisionScope s(PrecisionContext{st.bits});
    const Real cin = abs(st.report.stokes->C_in);
    const Real rel = abs(st.report.fit->extrapolated_C_star - cin) / cin;

    // window consistency: an independent, shorter window agrees within the reported error
    const auto ip = InnerParams::from_spec(cubic_spec());
    const auto ctx = precision_for_window(ip.alpha, Real(60));
    Real other_abs;
    {
        PrecisionScope w(ctx);
        other_abs = abs(stokes_constant(ip, {Real(30), Real(60)}, 7, IntegratorConfig::for_precision(ctx)).C_in);
    }
    const Real shift = abs(other_abs - cin);
    const bool consistent = shift <= st.report.stokes->err_estimate;
    return {rel <= Real("0.1") && consistent,
            "extrapolated " + fmt(st.report.fit->extrapolated_C_star) + " vs |C_in| " + fmt(cin) + ", rel " + fmt(rel, 3) +
                "; window shift " + fmt(shift, 3) + " <= err " + fmt(st.report.stokes->err_estimate, 3)};
}

Outcome inner_decay() {
    PrecisionScope s(PrecisionContext{192});
    const auto ip = InnerParams::from_spec(cubic_spec());
    InnerOptions opts;
    opts.S0 = Real(2000);
    std::vector<Complex> targets;
    for (int y = 20; y <= 200; y += 20) targets.emplace_back(Real(0), Real(-y));
    const auto sol = solve_inner(ip, Branch::u, targets, IntegratorConfig::for_precision({192}), opts);
    Real sx(0), sy(0), sxx(0), sxy(0);
    const Real n(static_cast<long>(targets.size()));
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const Real x = log(abs(targets[j]));
        const Real v = log(abs(sol.samples[j].psi));
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    const Real slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const Real expo = -slope;
    return {abs(expo - Real(3)) <= Real("0.15"), "decay exponent " + fmt(expo, 6)};
}

Outcome chi_decay() {
    const auto ip = InnerParams::from_spec(cubic_spec());
    const auto ctx = precision_for_window(ip.alpha, Real(80));
    PrecisionScope s(ctx);
    const auto cfg = IntegratorConfig::for_precision(ctx);
    const auto r = stokes_constant(ip, {Real(40), Real(80)}, 9, cfg);
    Real lo, hi;
    bool first = true;
    for (const auto& raw : r.raw) {
        const Real chi = abs(raw.estimate - r.C_in) * raw.y;
        lo = first ? chi : min(lo, chi);
        hi = first ? chi : max(hi, chi);
        first = false;
    }
    const Real band = hi / lo;
    const auto m = mirrored_stokes_constant(ip, {Real(40), Real(80)}, 9, cfg);
    const Real gap = abs(m.C_in - conjugate_stokes(r));
    return {band <= Real(5) && gap <= r.err_estimate,
            "chi max/min " + fmt(band, 4) + "; mirrored gap " + fmt(gap, 3) + " <= err " + fmt(r.err_estimate, 3)};
}

Outcome equilibrium_scaling() {
    PrecisionScope s(PrecisionContext{192});
    const auto spec = cubic_spec();
    std::vector<Real> zr, xr;
    for (const char* d : {"0.1", "0.05", "0.025"}) {
        const Real delta(d);
        const auto P = find_fixed_points(spec, ParamPoint{delta, Real(0)}).first.point;
        zr.push_back((P[2] - Real(1)) / delta);
        xr.push_back(sqrt(P[0] * P[0] + P[1] * P[1]) / (delta * delta));
    }
    auto band = [](const std::vector<Real>& v) {
        Real lo = abs(v[0]), hi = abs(v[0]);
        bool same_sign = true;
        for (const auto& x : v) {
            lo = min(lo, abs(x));
            hi = max(hi, abs(x));
            same_sign = same_sign && x.sign() == v[0].sign();
        }
        return same_sign ? hi / lo : Real(0) / Real(0);
    };
    const Real bz = band(zr), bx = band(xr);
    return {bz <= Real("1.2") && bx <= Real("1.2"), "z band " + fmt(bz, 4) + ", xy band " + fmt(bx, 4)};
}

Outcome fundamental_matrix_check() {
    PrecisionScope s(PrecisionContext{192});
    const auto spec = cubic_spec();
    std::string detail;
    bool ok = true;
    Real prev;
    bool have_prev = false;
    for (const char* d : {"0.1", "0.05", "0.02"}) {
        const Real delta(d);
        const Real L = log(Real(1) / delta);
        const Complex u(Real(0), pi() / Real(2) - delta * L);
        const Real dev = fundamental_matrix(spec, ParamPoint{delta, Real(0)}, u).deviation;
        ok = ok && dev <= Real(5) / L;
        if (have_prev) ok = ok && dev < prev;
        prev = dev;
        have_prev = true;
        detail += (detail.empty() ? "" : ", ") + std::string("delta ") + d + ": " + fmt(dev, 4) + " (bound " + fmt(Real(5) / L, 4) + ")";
    }
    return {ok, detail};
}

Outcome conjugation_and_determinism() {
    constexpr long bits = 174;
    PrecisionScope s(PrecisionContext{bits});
    const auto spec = cubic_spec();
    const ParamPoint p{Real("0.05"), Real(0)};
    const auto cfg = IntegratorConfig::for_precision({bits});
    const Real eps = default_seed_eps();
    const auto a = splitting(spec, p, eps, cfg);
    const auto b = splitting(spec, p, eps, cfg);
    const bool real = a.delta_xy[0].is_finite() && a.delta_xy[1].is_finite();
    const bool same = sample_text(a) == sample_text(b);
    auto tight = cfg;
    tight.rel_tol = cfg.rel_tol / Real(100);
    tight.abs_tol = cfg.abs_tol / Real(100);
    const auto c = splitting(spec, p, eps / Real(10), tight);
    const Real rel = abs(c.dist - a.dist) / a.dist;

    // the full study is byte-identical on rerun
    const auto& st = cubic_study();
    bool study_same = false;
    {
        const auto doc = read_json_file(SF_SOURCE_DIR "/configs/cubic.json");
        PrecisionScope w(precision_from_json(doc));
        study_same = to_json(run_study(study_config_from_json(doc))).dump() == to_json(st.report).dump();
    }
    return {real && same && study_same && rel < Real("1e-10"),
            std::string("real ") + (real ? "yes" : "no") + ", rerun identical " + (same && study_same ? "yes" : "no") +
                ", refined change " + fmt(rel, 3)};
}

Outcome synthetic_fit() {
    PrecisionScope s(PrecisionContext{192});
    const auto spec = cubic_spec();
    const Real C("0.2935");
    const Real pre = pi() / Real(2) * (spec.c + spec.alpha0 * h0_of(spec));
    std::vector<SplittingSample> samples;
    for (const char* d : {"0.1", "0.08", "0.06", "0.05", "0.04"}) {
        SplittingSample smp;
        smp.p = ParamPoint{Real(d), Real(0)};
        smp.dist = pow(smp.p.delta, -(Real(1) + spec.d)) * exp(-spec.alpha0 * pi() / (Real(2) * smp.p.delta)) * exp(pre) * C;
        smp.dist_unscaled = smp.p.delta * smp.dist;
        samples.push_back(smp);
    }
    const auto fit = fit_stokes_from_measurements(samples, spec);
    const Real slope_err = abs(fit.slope + spec.alpha0 * pi() / Real(2));
    const Real c_err = max(abs(fit.C_star_fit - C), abs(fit.extrapolated_C_star - C));
    return {slope_err <= Real("1e-8") && c_err <= Real("1e-8"),
            "slope error " + fmt(slope_err, 3) + ", C* error " + fmt(c_err, 3)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"unperturbed null test", unperturbed_null},
        {"exponent law", exponent_law},
        {"Stokes cross-validation", stokes_cross_validation},
        {"inner decay", inner_decay},
        {"chi decay and mirrored constant", chi_decay},
        {"equilibrium scaling", equilibrium_scaling},
        {"fundamental matrix", fundamental_matrix_check},
        {"conjugation and determinism", conjugation_and_determinism},
        {"synthetic fit exactness", synthetic_fit},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::printf("%s %zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
