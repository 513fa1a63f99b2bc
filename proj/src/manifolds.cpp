#include "splitforge/manifolds.hpp"

namespace splitforge {

namespace {

Real euclid(const std::vector<Real>& a, const Vec3& b) {
    Real s(0);
    for (int i = 0; i < 3; ++i) {
        const Real d = a[i] - b[i];
        s += d * d;
    }
    return sqrt(s);
}

CrossingPoint shoot(const UnfoldingSpec& spec, const ParamPoint& p, const Real& eps, const IntegratorConfig& cfg,
                    const ShootOptions& opts, EquilibriumKind kind) {
    const auto eqs = find_fixed_points(spec, p);
    const Equilibrium& eq = (kind == EquilibriumKind::plus) ? eqs.first : eqs.second;
    const ManifoldSeed seed = seed_manifold(eq, eps);
    const auto tape = field_tape(spec, p);

    TaylorIntegrator<Real> integ(tape, cfg);
    integ.reset(std::vector<Real>(seed.state.begin(), seed.state.end()), Real(0));
    const Real dir(seed.direction);
    const Real escape = pow(p.delta, Real(-1) / Real(3));
    const Real budget = opts.time_budget.is_zero() ? Real(20) + Real(4) * log(Real(1) / eps) : opts.time_budget;
    const Real ball = Real(10) * eps;
    const Vec3 origin{Real(0), Real(0), Real(0)};

    bool left_ball = false;
    Real elapsed(0);
    while (true) {
        const std::vector<Real> prev = integ.state();
        const Real t_prev = integ.time();
        const bool armed = left_ball;
        const Real h = integ.step(dir, budget - elapsed);
        elapsed += h;
        const auto& y = integ.state();
        if (euclid(y, origin) > escape)
            throw NumericError(ErrorKind::Escape, "orbit left the ball of radius delta^-1/3");
        if (!left_ball && euclid(y, eq.point) > ball) left_ball = true;
        const bool crossed = !prev[2].is_zero() && (y[2].is_zero() || y[2].sign() != prev[2].sign());
        if (armed && crossed) {
            const auto hit = section_cross(tape, prev, t_prev, 2, seed.direction, Real(2) * h, cfg);
            return {hit.state[0], hit.state[1], hit.t, integ.steps_taken()};
        }
        if (elapsed >= budget) throw NumericError(ErrorKind::NoCrossing, "no section crossing within the time budget");
    }
}

}  // namespace

CrossingPoint unstable_crossing(const UnfoldingSpec& spec, const ParamPoint& p, const Real& eps,
                                const IntegratorConfig& cfg, const ShootOptions& opts) {
    return shoot(spec, p, eps, cfg, opts, EquilibriumKind::plus);
}

CrossingPoint stable_crossing(const UnfoldingSpec& spec, const ParamPoint& p, const Real& eps,
                              const IntegratorConfig& cfg, const ShootOptions& opts) {
    return shoot(spec, p, eps, cfg, opts, EquilibriumKind::minus);
}

SplittingSample splitting(const UnfoldingSpec& spec, const ParamPoint& p, const Real& eps,
                          const IntegratorConfig& cfg, const ShootOptions& opts) {
    const auto u = unstable_crossing(spec, p, eps, cfg, opts);
    const auto s = stable_crossing(spec, p, eps, cfg, opts);
    SplittingSample out;
    out.p = p;
    out.cross_u = {u.x, u.y};
    out.cross_s = {s.x, s.y};
    out.delta_xy = {u.x - s.x, u.y - s.y};
    if (opts.norm == DistanceNorm::sum) out.dist = abs(out.delta_xy[0]) + abs(out.delta_xy[1]);
    else out.dist = hypot(out.delta_xy[0], out.delta_xy[1]);
    out.dist_unscaled = p.delta * out.dist;
    return out;
}

}  // namespace splitforge
