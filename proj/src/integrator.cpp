#include "splitforge/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace splitforge {

namespace {

Real real_offset(const Real& off, const Real& dir) { return off * dir; }
Real real_offset(const Complex& off, const Complex& dir) { return off.re * dir.re + off.im * dir.im; }

template <class T>
T scaled(const T& dir, const Real& h) {
    return dir * h;
}

template <class T>
void horner(T& out, const std::vector<T>& c, const T& h, T& tmp) {
    const std::size_t p = c.size() - 1;
    ops::set(out, c[p]);
    for (std::size_t k = p; k-- > 0;) {
        ops::mul(tmp, out, h);
        ops::add(out, tmp, c[k]);
    }
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid input";
        case ErrorKind::StepUnderflow: return "step-size underflow";
        case ErrorKind::NonFinite: return "non-finite state";
        case ErrorKind::DegenerateSegment: return "degenerate path segment";
        case ErrorKind::NoSignChange: return "no sign change";
        case ErrorKind::VanishingDerivative: return "vanishing section derivative";
        case ErrorKind::NewtonDivergence: return "newton divergence";
        case ErrorKind::SingularJacobian: return "singular jacobian";
        case ErrorKind::EigenClassification: return "eigenvalue classification failed";
        case ErrorKind::Escape: return "orbit escaped";
        case ErrorKind::NoCrossing: return "no crossing within time budget";
        case ErrorKind::DenominatorVanishes: return "denominator vanishes";
        case ErrorKind::PathLeavesSector: return "path leaves sector";
        case ErrorKind::SeedInaccurate: return "asymptotic seed inaccurate";
        case ErrorKind::BelowNoiseFloor: return "below noise floor";
        case ErrorKind::FitResidual: return "fit residual too large";
        case ErrorKind::IllConditioned: return "ill-conditioned fit";
    }
    return "unknown";
}

IntegratorConfig IntegratorConfig::for_precision(const PrecisionContext& ctx) {
    IntegratorConfig c;
    c.abs_tol = ldexp(Real(1), -(ctx.bits - 10));
    c.rel_tol = c.abs_tol;
    c.max_step = Real(1e6);
    c.min_step = ldexp(Real(1), -100);
    return c;
}

int IntegratorConfig::effective_order() const {
    if (order > 0) return order;
    const Real tol = min(abs_tol, rel_tol);
    const double p = std::ceil(-log(tol).to_double() / 2.0) + 1.0;
    return static_cast<int>(std::clamp(p, 8.0, 1000.0));
}

void IntegratorConfig::validate() const {
    if (!(rel_tol > Real(0)) || !(abs_tol > Real(0)))
        throw NumericError(ErrorKind::InvalidInput, "tolerances must be positive");
    if (!(min_step < max_step)) throw NumericError(ErrorKind::InvalidInput, "min_step must be below max_step");
}

template <class T>
std::vector<T> Trajectory<T>::at(const T& t) const {
    if (steps.empty()) throw NumericError(ErrorKind::InvalidInput, "empty trajectory");
    const StepRecord<T>* hit = &steps.back();
    for (const auto& s : steps) {
        const Real tau = real_offset(T(t - s.t0), s.dir);
        if (tau <= s.length) {
            hit = &s;
            break;
        }
    }
    const T h = t - hit->t0;
    std::vector<T> out(hit->coef.size());
    T tmp;
    for (std::size_t i = 0; i < out.size(); ++i) horner(out[i], hit->coef[i], h, tmp);
    return out;
}

template <class T>
TaylorIntegrator<T>::TaylorIntegrator(const OdeTape<T>& field, const IntegratorConfig& cfg)
    : field_(&field), cfg_(cfg), p_(cfg.effective_order()), jet_(field.tape, cfg.effective_order()) {
    cfg_.validate();
    const int tin = field.tape.inputs()[field.dim];
    auto& ts = jet_.series(tin);
    if (p_ >= 1) ts[1] = T(1);
}

template <class T>
void TaylorIntegrator<T>::reset(const std::vector<T>& y, const T& t) {
    if (y.size() != field_->dim) throw NumericError(ErrorKind::InvalidInput, "state dimension mismatch");
    y_ = y;
    t_ = t;
    t_prev_ = t;
}

template <class T>
void TaylorIntegrator<T>::expand() {
    const auto& tape = field_->tape;
    const std::size_t n = field_->dim;
    for (std::size_t i = 0; i < n; ++i) ops::set(jet_.series(tape.inputs()[i])[0], y_[i]);
    ops::set(jet_.series(tape.inputs()[n])[0], t_);
    for (int k = 0; k < p_; ++k) {
        jet_.compute(k);
        const auto uk = static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < n; ++i) {
            ops::div_ui(jet_.series(tape.inputs()[i])[uk + 1], jet_.series(tape.outputs()[i])[uk],
                        static_cast<unsigned long>(k + 1));
        }
    }
}

template <class T>
Real TaylorIntegrator<T>::step(const T& dir, const Real& limit) {
    if (steps_ >= cfg_.max_steps) throw NumericError(ErrorKind::StepUnderflow, "step budget exhausted");
    expand();
    const auto& tape = field_->tape;
    const std::size_t n = field_->dim;

    Real h;
    if (cfg_.fixed_step) {
        h = min(cfg_.max_step, limit);
    } else {
        Real ymax(0);
        for (const auto& v : y_) ymax = max(ymax, ops::magnitude(v));
        const Real tol = max(cfg_.abs_tol, cfg_.rel_tol * ymax);
        const Real log_tol = log(tol);
        bool bounded = false;
        Real rho;
        for (int j : {p_ - 1, p_}) {
            Real nj(0);
            for (std::size_t i = 0; i < n; ++i)
                nj = max(nj, ops::magnitude(jet_.series(tape.inputs()[i])[static_cast<std::size_t>(j)]));
            if (nj.is_zero()) continue;
            const Real r = exp((log_tol - log(nj)) / Real(j));
            if (!bounded || r < rho) rho = r;
            bounded = true;
        }
        h = bounded ? rho * exp(Real(-0.7) / Real(p_ - 1)) : cfg_.max_step;
        h = min(h, cfg_.max_step);
        if (h >= limit) h = limit;
        else if (h < cfg_.min_step)
            throw NumericError(ErrorKind::StepUnderflow, "step size " + h.str(6) + " below min_step");
    }

    const T hc = scaled(dir, h);
    T tmp;
    for (std::size_t i = 0; i < n; ++i) {
        horner(y_[i], jet_.series(tape.inputs()[i]), hc, tmp);
        if (!ops::finite(y_[i])) throw NumericError(ErrorKind::NonFinite, "state became non-finite");
    }
    t_prev_ = t_;
    t_ = t_ + hc;
    ++steps_;
    return h;
}

template <class T>
std::vector<std::vector<T>> TaylorIntegrator<T>::last_coefficients() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < field_->dim; ++i) out.push_back(jet_.series(field_->tape.inputs()[i]));
    return out;
}

template <class T>
IntegrationResult<T> integrate(const OdeTape<T>& field, const std::vector<T>& y0, const Real& t0, const Real& t1,
                               const IntegratorConfig& cfg) {
    TaylorIntegrator<T> integ(field, cfg);
    integ.reset(y0, T(t0));
    IntegrationResult<T> res;
    if (t0 == t1) {
        res.state = y0;
        res.t = T(t0);
        return res;
    }
    const T dir = (t1 > t0) ? T(1) : T(-1);
    Real remaining = abs(t1 - t0);
    while (remaining.sign() > 0) {
        const T start = integ.time();
        const Real h = integ.step(dir, remaining);
        if (cfg.dense) res.dense.steps.push_back({start, dir, h, integ.last_coefficients()});
        remaining = (h == remaining) ? Real(0) : remaining - h;
    }
    res.state = integ.state();
    res.t = T(t1);
    res.steps = integ.steps_taken();
    return res;
}

PathResult integrate_path(const OdeTape<Complex>& field, const std::vector<Complex>& y0,
                          const std::vector<Complex>& path, const IntegratorConfig& cfg) {
    if (path.size() < 2) throw NumericError(ErrorKind::InvalidInput, "path needs at least two waypoints");
    TaylorIntegrator<Complex> integ(field, cfg);
    integ.reset(y0, path.front());
    PathResult res;
    res.states.push_back(y0);
    for (std::size_t s = 1; s < path.size(); ++s) {
        const Complex delta = path[s] - path[s - 1];
        const Real len = abs(delta);
        if (len.is_zero()) throw NumericError(ErrorKind::DegenerateSegment, "zero-length path segment");
        const Complex dir = delta / len;
        Real remaining = len;
        while (remaining.sign() > 0) {
            const Real h = integ.step(dir, remaining);
            remaining = (h == remaining) ? Real(0) : remaining - h;
        }
        integ.reset(integ.state(), path[s]);
        res.states.push_back(integ.state());
    }
    res.steps = integ.steps_taken();
    return res;
}

SectionHit section_cross(const OdeTape<Real>& field, const std::vector<Real>& y_near, const Real& t_near,
                         std::size_t z_index, int direction, const Real& window, const IntegratorConfig& cfg) {
    const std::size_t n = field.dim;
    if (z_index >= n) throw NumericError(ErrorKind::InvalidInput, "section index out of range");
    SectionHit hit{y_near, t_near};
    if (y_near[z_index].is_zero()) return hit;

    const auto f0 = field.eval(y_near, t_near);
    if (abs(f0[z_index]) <= cfg.abs_tol)
        throw NumericError(ErrorKind::VanishingDerivative, "dz/dt vanishes near the section");
    // time to reach z=0 at the current rate must point along the direction of travel
    if ((-y_near[z_index] / f0[z_index]) * Real(direction) < Real(0))
        throw NumericError(ErrorKind::NoSignChange, "flow moves away from the section");

    // state (y with y[z] replaced by t), independent variable z
    const auto swapped = OdeTape<Real>::record(n, [&](const auto& Y, const auto& z) {
        using S = std::decay_t<decltype(z)>;
        std::vector<S> in(Y);
        in[z_index] = z;
        in.push_back(Y[z_index]);
        auto f = field.tape.replay(in);
        const S inv = S(1) / f[z_index];
        std::vector<S> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = (i == z_index) ? inv : f[i] * inv;
        return out;
    });

    std::vector<Real> y0(y_near);
    y0[z_index] = t_near;
    IntegratorConfig c = cfg;
    c.dense = false;
    IntegrationResult<Real> r;
    try {
        r = integrate(swapped, y0, y_near[z_index], Real(0), c);
    } catch (const NumericError& e) {
        if (e.kind() == ErrorKind::StepUnderflow || e.kind() == ErrorKind::NonFinite)
            throw NumericError(ErrorKind::VanishingDerivative, std::string("section approach failed: ") + e.what());
        throw;
    }
    hit.t = r.state[z_index];
    hit.state = r.state;
    hit.state[z_index] = Real(0);
    const Real elapsed = (hit.t - t_near) * Real(direction);
    if (elapsed < Real(0) || elapsed > window)
        throw NumericError(ErrorKind::NoSignChange, "no crossing inside the supplied window");
    return hit;
}

template struct Trajectory<Real>;
template struct Trajectory<Complex>;
template class TaylorIntegrator<Real>;
template class TaylorIntegrator<Complex>;
template IntegrationResult<Real> integrate(const OdeTape<Real>&, const std::vector<Real>&, const Real&, const Real&,
                                           const IntegratorConfig&);
template IntegrationResult<Complex> integrate(const OdeTape<Complex>&, const std::vector<Complex>&, const Real&,
                                              const Real&, const IntegratorConfig&);

}  // namespace splitforge
