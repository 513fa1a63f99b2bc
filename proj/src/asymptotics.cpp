#include "splitforge/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "splitforge/errors.hpp"

namespace splitforge {

namespace {

Real prefactor_log(const UnfoldingSpec& spec, const Real& sigma) {
    return pi() / Real(2) * (spec.c + spec.alpha0 * h0_of(spec) - spec.alpha1 * sigma);
}

// Nodes and weights on [-1, 1], cached per thread and precision.
struct GaussRule {
    long bits = 0;
    std::vector<Real> x, w;
};

const GaussRule& gauss_rule() {
    constexpr int n = 20;
    thread_local GaussRule rule;
    if (rule.bits == thread_precision()) return rule;
    rule.bits = thread_precision();
    rule.x.assign(n, Real(0));
    rule.w.assign(n, Real(0));
    const Real tol = ldexp(Real(1), -(thread_precision() - 8));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x = cos(pi() * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp;
        for (int it = 0; it < 100; ++it) {
            Real p0(1), p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Real p2 = (Real(2 * k - 1) * x * p1 - Real(k - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            dp = Real(n) * (x * p1 - p0) / (x * x - Real(1));
            const Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) <= tol) break;
        }
        const Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
        rule.x[static_cast<std::size_t>(i)] = -x;
        rule.x[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.w[static_cast<std::size_t>(i)] = w;
        rule.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

// Integral over t in [t0, t1] of u * a(t u).
std::array<Complex, 2> gauss_segment(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u,
                                     const Real& t0, const Real& t1) {
    const GaussRule& g = gauss_rule();
    const Real half = (t1 - t0) / Real(2);
    const Real mid = (t1 + t0) / Real(2);
    std::array<Complex, 2> acc{Complex(0), Complex(0)};
    for (std::size_t k = 0; k < g.x.size(); ++k) {
        const auto a = a_diag(spec, p, u * (mid + half * g.x[k]));
        acc[0] += a[0] * g.w[k];
        acc[1] += a[1] * g.w[k];
    }
    return {acc[0] * u * half, acc[1] * u * half};
}

std::array<Complex, 2> adaptive(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u, const Real& t0,
                                const Real& t1, const std::array<Complex, 2>& whole, const Real& tol, int depth) {
    const Real tm = (t0 + t1) / Real(2);
    const auto left = gauss_segment(spec, p, u, t0, tm);
    const auto right = gauss_segment(spec, p, u, tm, t1);
    const std::array<Complex, 2> sum{left[0] + right[0], left[1] + right[1]};
    const Real err = max(abs(sum[0] - whole[0]), abs(sum[1] - whole[1]));
    const Real scale = max(Real(1), max(abs(sum[0]), abs(sum[1])));
    if (err <= tol * scale) return sum;
    if (depth >= 48) throw NumericError(ErrorKind::IllConditioned, "quadrature of a_diag did not converge");
    const auto l = adaptive(spec, p, u, t0, tm, left, tol, depth + 1);
    const auto r = adaptive(spec, p, u, tm, t1, right, tol, depth + 1);
    return {l[0] + r[0], l[1] + r[1]};
}

void check_strip(const Complex& u) {
    if (!(abs(u.im) < pi() / Real(2)))
        throw NumericError(ErrorKind::InvalidInput, "u must lie in the strip |Im u| < pi/2");
}

}  // namespace

Prediction predict_split(const Complex& C_in, const UnfoldingSpec& spec, const ParamPoint& p) {
    const Real& delta = p.delta;
    const Real h0 = h0_of(spec);
    const Real amp = pow(delta, -(Real(1) + spec.d)) * exp(-spec.alpha0 * pi() / (Real(2) * delta)) *
                     exp(prefactor_log(spec, p.sigma));
    const Real theta =
        p.sigma * pi() / Real(2) + spec.alpha0 * h0 / Real(2) + (spec.c + spec.alpha0 * h0) * log(delta);
    const Complex rot(cos(theta), -sin(theta));
    Prediction out;
    out.p = p;
    out.first = C_in * rot * amp;
    out.second = conj(out.first);
    out.modulus = abs(out.first);
    return out;
}

Real predicted_distance_unscaled(const Real& C_star, const UnfoldingSpec& spec, const Real& mu, const Real& nu) {
    const Real rmu = sqrt(mu);
    return pow(mu, -spec.d / Real(2)) * exp(-spec.alpha0 * pi() / (Real(2) * rmu)) *
           exp(pi() / Real(2) * (spec.alpha0 * h0_of(spec) - spec.alpha1 * nu / rmu + spec.c)) * C_star;
}

std::array<Complex, 2> a_diag(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u) {
    const Real alpha = alpha_at(spec, p);
    const Complex z0 = -tanh(u);
    const Complex den = Complex(1) - p.delta * h0_of(spec) * z0 * z0 * z0 / (z0 * z0 - Real(1));
    if (!den.re.is_finite() || !den.im.is_finite() || abs(den) < ldexp(Real(1), -(thread_precision() / 2)))
        throw NumericError(ErrorKind::DenominatorVanishes, "a_diag denominator vanishes");
    const Complex rot = (alpha / p.delta + spec.c * z0) * Complex::i();
    const Complex rad = Complex(p.sigma) - spec.d * z0;
    return {(rad - rot) / den, (rad + rot) / den};
}

std::array<Complex, 2> integrate_a_diag(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u) {
    check_strip(u);
    if (u.re.is_zero() && u.im.is_zero()) return {Complex(0), Complex(0)};
    const Real tol = ldexp(Real(1), -(thread_precision() - 24));
    const auto whole = gauss_segment(spec, p, u, Real(0), Real(1));
    return adaptive(spec, p, u, Real(0), Real(1), whole, tol, 0);
}

FundamentalMatrix fundamental_matrix(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u) {
    check_strip(u);
    const Real alpha = alpha_at(spec, p);
    const Real h0 = h0_of(spec);
    const Complex I = Complex::i();
    const Complex lc = log(cosh(u));
    const Complex sh = sinh(u);
    const Complex bracket = lc - sh * sh / Real(2);
    // log m1 = d log cosh u - i alpha u/delta + sigma u + i alpha h0 [..] + i c log cosh u
    const Complex common = spec.d * lc + p.sigma * u;
    const Complex phase = -(alpha / p.delta) * u + alpha * h0 * bracket + spec.c * lc;
    FundamentalMatrix out;
    out.m1_closed = exp(common + I * phase);
    out.m2_closed = exp(common - I * phase);
    const auto integral = integrate_a_diag(spec, p, u);
    out.m1_quad = exp(integral[0]);
    out.m2_quad = exp(integral[1]);
    out.deviation = abs(exp(integral[0] - common - I * phase) - Complex(1));
    return out;
}

FitResult fit_stokes_from_measurements(const std::vector<SplittingSample>& samples, const UnfoldingSpec& spec) {
    if (samples.empty()) throw NumericError(ErrorKind::InvalidInput, "no samples to fit");
    const Real sigma = samples.front().p.sigma;
    std::map<std::string, int> distinct;
    for (const auto& s : samples) {
        if (s.p.sigma != sigma) throw NumericError(ErrorKind::InvalidInput, "samples must share sigma");
        if (!(s.dist > Real(0))) throw NumericError(ErrorKind::InvalidInput, "non-positive splitting distance");
        if (!(s.p.delta > Real(0)) || !(s.p.delta < Real(1)))
            throw NumericError(ErrorKind::InvalidInput, "delta must lie in (0, 1)");
        distinct[s.p.delta.str()]++;
    }
    if (distinct.size() < 4) throw NumericError(ErrorKind::InvalidInput, "need at least 4 distinct delta values");

    const std::size_t n = samples.size();
    const Real pre = prefactor_log(spec, sigma);
    const Real half_pi_a0 = spec.alpha0 * pi() / Real(2);

    // Two-parameter least squares v = a + b x.
    auto line = [&](const std::vector<Real>& x, const std::vector<Real>& v) {
        Real sx(0), sy(0), sxx(0), sxy(0);
        for (std::size_t i = 0; i < n; ++i) {
            sx += x[i];
            sy += v[i];
            sxx += x[i] * x[i];
            sxy += x[i] * v[i];
        }
        const Real N(static_cast<long>(n));
        const Real det = N * sxx - sx * sx;
        if (!(det > N * sxx * Real(1e-12)))
            throw NumericError(ErrorKind::IllConditioned, "regressors are collinear");
        const Real b = (N * sxy - sx * sy) / det;
        return std::array<Real, 2>{(sy - b * sx) / N, b};
    };

    std::vector<Real> inv_delta, inv_log, slope_v, cstar, y;
    for (const auto& s : samples) {
        const Real& dl = s.p.delta;
        const Real base = log(s.dist) + (Real(1) + spec.d) * log(dl) - pre;
        inv_delta.push_back(Real(1) / dl);
        inv_log.push_back(Real(1) / log(Real(1) / dl));
        slope_v.push_back(base);
        y.push_back(base + half_pi_a0 / dl);
        cstar.push_back(exp(y.back()));
    }

    FitResult out;
    const auto sl = line(inv_delta, slope_v);
    out.slope = sl[1];
    out.C_star_fit = exp(sl[0]);
    const auto ex = line(inv_log, cstar);
    out.extrapolated_C_star = ex[0];
    out.kappa = ex[1];

    Real ss(0);
    Real dmin = samples.front().p.delta, dmax = dmin;
    for (std::size_t i = 0; i < n; ++i) {
        const Real model = ex[0] + ex[1] * inv_log[i];
        const Real fitted = model > Real(0) ? log(model) : Real(0) / Real(0);
        out.points.push_back({samples[i].p.delta, y[i], fitted});
        out.residuals.push_back(y[i] - fitted);
        ss += out.residuals.back() * out.residuals.back();
        dmin = min(dmin, samples[i].p.delta);
        dmax = max(dmax, samples[i].p.delta);
    }
    out.rms = sqrt(ss / Real(static_cast<long>(n)));
    out.window = {dmin, dmax};
    return out;
}

}  // namespace splitforge
