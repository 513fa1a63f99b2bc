#include "splitforge/inner.hpp"

#include <cmath>
#include <string>

#include "splitforge/errors.hpp"
#include "splitforge/parallel.hpp"

namespace splitforge {

namespace {

const Complex& imag_unit() {
    static thread_local Complex I = Complex::i();
    return I;
}

OdeTape<Complex> inner_tape(const InnerParams& ip) {
    return OdeTape<Complex>::record(2, [&](const auto& y, const auto& s) {
        auto r = ip.field(y[0], y[1], s);
        return std::vector(r.begin(), r.end());
    });
}

Real sector_beta(const InnerOptions& o) { return o.beta0.is_zero() ? pi() / Real(6) : o.beta0; }

bool in_sector(const Complex& s, Branch branch, const Real& tan_beta, const Real& rho) {
    const Real re = (branch == Branch::u) ? s.re : -s.re;
    return abs(s.im) >= tan_beta * re + rho;
}

// Smallest series order good enough at |s| = r, growing the series as needed.
InnerSeries seed_series(const InnerParams& ip, const Real& r, const Real& tol, int& K) {
    for (int cap = 16; cap <= 2048; cap *= 2) {
        InnerSeries series(ip, cap);
        K = series.terms_for(r, tol);
        if (K >= 0) return series;
        const auto& a = series.a();
        const Real last = abs(a[cap]) * pow(r, -static_cast<long>(cap));
        const Real prev = abs(a[cap - 1]) * pow(r, -static_cast<long>(cap - 1));
        if (last > prev)
            throw NumericError(ErrorKind::SeedInaccurate,
                               "asymptotic series diverges before reaching tolerance; increase S0");
    }
    throw NumericError(ErrorKind::SeedInaccurate, "asymptotic series order exceeds 2048");
}

struct TargetSolve {
    Complex psi;
    Complex psib;
    std::vector<Complex> path;
};

std::vector<Complex> build_path(Branch branch, const Complex& target, const InnerOptions& opts) {
    const Real x0 = (branch == Branch::u) ? -opts.S0 : opts.S0;
    const Real m = target.im;
    if (!opts.staircase) return {Complex(x0, m), target};
    const Real outer = m + Real(2 * m.sign());
    return {Complex(x0, outer), Complex(x0 / Real(2), outer), Complex(x0 / Real(2), m), target};
}

StokesResult fit_window(const std::vector<Real>& ys, const std::vector<Complex>& est, const std::vector<Real>& inv_pref,
                        const std::vector<Real>& chi2, bool all_zero, const Real& noise) {
    StokesResult r;
    const std::size_t n = ys.size();
    Real s0(static_cast<long>(n)), s1(0), s2(0);
    Complex b0, b1;
    for (std::size_t j = 0; j < n; ++j) {
        const Real iy = Real(1) / ys[j];
        s1 += iy;
        s2 += iy * iy;
        b0 += est[j];
        b1 += est[j] * iy;
    }
    const Real det = s0 * s2 - s1 * s1;
    if (!(abs(det) > Real(0))) throw NumericError(ErrorKind::IllConditioned, "stokes window needs distinct points");
    r.C_in = (b0 * s2 - b1 * s1) / det;
    r.c1 = (b1 * s0 - b0 * s1) / det;
    Real worst(0), worst_pref(0);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex model = r.C_in + r.c1 / ys[j];
        worst = max(worst, abs(est[j] - model));
        worst_pref = max(worst_pref, inv_pref[j]);
        r.raw.push_back({ys[j], est[j], chi2[j]});
    }
    r.err_estimate = worst + abs(r.c1) / ys.back();
    if (!all_zero) r.err_estimate += noise * worst_pref;
    if (!all_zero && worst > abs(r.C_in) / Real(2))
        throw NumericError(ErrorKind::FitResidual, "stokes fit residual exceeds half of |C_in|; move the window out");
    return r;
}

std::vector<Real> window_points(const std::array<Real, 2>& w, int n) {
    if (n < 2) throw NumericError(ErrorKind::InvalidInput, "stokes window needs at least two points");
    if (!(w[0] < w[1])) throw NumericError(ErrorKind::InvalidInput, "stokes window must satisfy y_min < y_max");
    std::vector<Real> ys;
    for (int j = 0; j < n; ++j) ys.push_back(w[0] + (w[1] - w[0]) * Real(j) / Real(n - 1));
    return ys;
}

// sign = -1: targets -iy, first component; sign = +1: targets +iy, second component.
StokesResult stokes_impl(const InnerParams& ip, const std::array<Real, 2>& y_window, int n_points,
                         const IntegratorConfig& cfg, const InnerOptions& opts_in, int sign) {
    const auto ys = window_points(y_window, n_points);
    if (ys.front() < opts_in.rho)
        throw NumericError(ErrorKind::InvalidInput, "stokes window starts below the sector parameter rho");
    InnerOptions opts = opts_in;
    opts.S0 = max(opts.S0, Real(10) * ys.back());

    std::vector<Complex> targets;
    for (const auto& y : ys) targets.emplace_back(Real(0), Real(sign) * y);
    const auto su = solve_inner(ip, Branch::u, targets, cfg, opts);
    const auto ss = solve_inner(ip, Branch::s, targets, cfg, opts);

    const Complex& I = imag_unit();
    const Real kappa = ip.c + ip.alpha * ip.h0;
    const Real noise = cfg.abs_tol * Real(10000);
    std::vector<Complex> est;
    std::vector<Real> inv_pref, chi2;
    bool all_zero = true;
    Real magnitude(0);
    for (std::size_t j = 0; j < ys.size(); ++j) {
        const Complex s = targets[j];
        const Complex d1 = su.samples[j].psi - ss.samples[j].psi;
        const Complex d2 = su.samples[j].psib - ss.samples[j].psib;
        magnitude = max(magnitude, max(abs(su.samples[j].psi), abs(su.samples[j].psib)));
        // prefactor s^d e^{-+ i(alpha s - kappa log s)}; dominant component is d1 below, d2 above
        const Complex phase = I * (ip.alpha * s - kappa * log(s));
        const Complex pref = pow(s, ip.d) * exp(sign < 0 ? -phase : phase);
        const Complex inv = Complex(1) / pref;
        const Complex& dom = sign < 0 ? d1 : d2;
        const Complex& sub = sign < 0 ? d2 : d1;
        est.push_back(dom * inv);
        inv_pref.push_back(abs(inv));
        chi2.push_back(abs(sub) * abs(inv) * ys[j] * ys[j]);
        if (!dom.is_zero() || !sub.is_zero()) all_zero = false;
    }
    if (!all_zero && magnitude > noise) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const Complex d = sign < 0 ? su.samples[j].psi - ss.samples[j].psi : su.samples[j].psib - ss.samples[j].psib;
            if (abs(d) < noise)
                throw NumericError(ErrorKind::BelowNoiseFloor,
                                   "branch difference at y=" + ys[j].str(6) + " is below the noise floor");
        }
    }
    StokesResult r = fit_window(ys, est, inv_pref, chi2, all_zero || magnitude <= noise, noise);
    r.fit_window = {ys.front(), ys.back()};
    r.seed_order = su.seed_order;
    r.S0 = opts.S0;
    return r;
}

}  // namespace

InnerParams InnerParams::from_spec(const UnfoldingSpec& spec) {
    return InnerParams{spec.alpha0, spec.b, spec.c, spec.d, h0_of(spec), spec.f.at_zero_parameters(),
                       spec.g.at_zero_parameters(), spec.h.at_zero_parameters()};
}

std::array<Complex, 2> inner_field(const InnerParams& ip, const Complex& psi, const Complex& psib, const Complex& s) {
    if (s.is_zero()) throw NumericError(ErrorKind::InvalidInput, "inner field is singular at s = 0");
    const Complex den = Complex(1) + s * s * (ip.b * psi * psib + ip.h.eval((psi + psib) / Real(2),
                                                                             (psi - psib) / (Real(2) * imag_unit()),
                                                                             -(Complex(1) / s)));
    if (!(abs(den) > ldexp(Real(1), -thread_precision() / 2)))
        throw NumericError(ErrorKind::DenominatorVanishes, "inner field denominator vanishes");
    return ip.field(psi, psib, s);
}

InnerSeries::InnerSeries(const InnerParams& ip, int order) {
    if (order < 3) throw NumericError(ErrorKind::InvalidInput, "series order must be at least 3");
    if (ip.alpha.is_zero()) throw NumericError(ErrorKind::InvalidInput, "recurrence degenerate: alpha = 0");
    const Complex I = Complex::i();
    // residual (w^2 + G) psi' + N in the variable w = 1/s
    const auto tape = Tape<Complex>::record(5, [&](const std::vector<Sym<Complex>>& in) {
        using S = Sym<Complex>;
        const S& psi = in[0];
        const S& psib = in[1];
        const S& p1 = in[2];
        const S& p2 = in[3];
        const S& w = in[4];
        const S Z = -w;
        const S X = (psi + psib) * Complex(Real(1) / Real(2));
        const S Y = (psi - psib) * Complex(Real(0), Real(-1) / Real(2));
        const S F = ip.f.eval(X, Y, Z);
        const S G = ip.g.eval(X, Y, Z);
        const S q = w * w + ip.b * psi * psib + ip.h.eval(X, Y, Z);
        const S lin = (ip.alpha - ip.c * w) * I;
        return std::vector<S>{q * p1 - lin * psi + ip.d * w * psi + F + I * G,
                              q * p2 + lin * psib + ip.d * w * psib + F - I * G};
    });
    TaylorJet<Complex> jet(tape, order + 1);
    const auto& in = tape.inputs();
    const auto& out = tape.outputs();
    jet.series(in[4])[1] = Complex(1);
    const Complex inv_ia = Complex(1) / (I * ip.alpha);
    a_.resize(static_cast<std::size_t>(order) + 1);
    abar_.resize(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        jet.compute(k);
        a_[uk] = jet.series(out[0])[uk] * inv_ia;
        abar_[uk] = -(jet.series(out[1])[uk] * inv_ia);
        jet.series(in[0])[uk] = a_[uk];
        jet.series(in[1])[uk] = abar_[uk];
        if (k >= 1) {
            jet.series(in[2])[uk - 1] = a_[uk] * Real(k);
            jet.series(in[3])[uk - 1] = abar_[uk] * Real(k);
        }
        jet.compute(k);
    }
}

std::array<Complex, 2> InnerSeries::eval(const Complex& s, int K) const {
    if (K > order()) throw NumericError(ErrorKind::InvalidInput, "requested more terms than computed");
    const Complex w = Complex(1) / s;
    Complex p, pb;
    for (int k = K; k >= 1; --k) {
        p = (p + a_[static_cast<std::size_t>(k)]) * w;
        pb = (pb + abar_[static_cast<std::size_t>(k)]) * w;
    }
    return {p, pb};
}

std::array<Complex, 2> InnerSeries::residual(const InnerParams& ip, const Complex& s, int K) const {
    const auto v = eval(s, K);
    const Complex w = Complex(1) / s;
    Complex dp, dpb;
    for (int k = K; k >= 1; --k) {
        dp = (dp - a_[static_cast<std::size_t>(k)] * Real(k)) * w;
        dpb = (dpb - abar_[static_cast<std::size_t>(k)] * Real(k)) * w;
    }
    dp = dp * w;
    dpb = dpb * w;
    const auto f = ip.field(v[0], v[1], s);
    return {dp - f[0], dpb - f[1]};
}

int InnerSeries::terms_for(const Real& r, const Real& tol) const {
    const int n = order();
    for (int K = 3; K + 2 <= n; ++K) {
        bool ok = true;
        for (int j = K + 1; j <= K + 2 && ok; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            const Real term = max(abs(a_[uj]), abs(abar_[uj])) * pow(r, -static_cast<long>(j));
            ok = term <= tol;
        }
        if (ok) return K;
    }
    return -1;
}

std::array<Complex, 2> asymptotic_seed(const InnerParams& ip, const Complex& s, int K_terms) {
    return InnerSeries(ip, K_terms).eval(s, K_terms);
}

InnerSolution solve_inner(const InnerParams& ip, Branch branch, const std::vector<Complex>& targets,
                          const IntegratorConfig& cfg, const InnerOptions& opts) {
    if (targets.empty()) throw NumericError(ErrorKind::InvalidInput, "no inner targets");
    Real max_abs(0);
    const int side = targets.front().im.sign();
    for (const auto& t : targets) {
        max_abs = max(max_abs, abs(t));
        if (t.im.sign() == 0 || t.im.sign() != side)
            throw NumericError(ErrorKind::PathLeavesSector, "targets must share one side of the real axis");
    }
    if (opts.S0 < Real(10) * max_abs)
        throw NumericError(ErrorKind::InvalidInput, "S0 must be at least 10 times the largest target modulus");

    const Real tan_beta = tan(sector_beta(opts));
    std::vector<std::vector<Complex>> paths;
    Real r_min;
    for (std::size_t j = 0; j < targets.size(); ++j) {
        auto path = build_path(branch, targets[j], opts);
        for (const auto& w : path)
            if (!in_sector(w, branch, tan_beta, opts.rho) || w.im.sign() != side)
                throw NumericError(ErrorKind::PathLeavesSector, "inner path point outside the sector");
        r_min = (j == 0) ? abs(path.front()) : min(r_min, abs(path.front()));
        paths.push_back(std::move(path));
    }

    int K = opts.seed_terms;
    const InnerSeries series = [&] {
        if (K > 0) return InnerSeries(ip, K);
        return seed_series(ip, r_min, cfg.abs_tol / Real(100), K);
    }();
    const auto tape = inner_tape(ip);

    auto job = [&](std::size_t j) {
        const auto seed = series.eval(paths[j].front(), K);
        const auto res = integrate_path(tape, {seed[0], seed[1]}, paths[j], cfg);
        const auto& last = res.states.back();
        return TargetSolve{last[0], last[1], paths[j]};
    };
    const auto solved = parallel_map(targets.size(), job);

    InnerSolution sol;
    sol.branch = branch;
    sol.seed_order = K;
    for (std::size_t j = 0; j < targets.size(); ++j) {
        sol.samples.push_back({targets[j], solved[j].psi, solved[j].psib});
        sol.path_meta.push_back(solved[j].path);
    }
    return sol;
}

StokesResult stokes_constant(const InnerParams& ip, const std::array<Real, 2>& y_window, int n_points,
                             const IntegratorConfig& cfg, const InnerOptions& opts) {
    return stokes_impl(ip, y_window, n_points, cfg, opts, -1);
}

StokesResult mirrored_stokes_constant(const InnerParams& ip, const std::array<Real, 2>& y_window, int n_points,
                                      const IntegratorConfig& cfg, const InnerOptions& opts) {
    return stokes_impl(ip, y_window, n_points, cfg, opts, +1);
}

Complex conjugate_stokes(const StokesResult& r) { return conj(r.C_in); }

PrecisionContext precision_for_window(const Real& alpha, const Real& y_max) {
    const double b = std::ceil(abs(alpha).to_double() * y_max.to_double() / std::log(2.0));
    return PrecisionContext{static_cast<long>(b) + 128};
}

}  // namespace splitforge
