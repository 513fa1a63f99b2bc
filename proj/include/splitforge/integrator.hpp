// Adaptive Taylor-series integrator over real time and complex polygonal paths.
#pragma once

#include <cstddef>
#include <vector>

#include "splitforge/complex.hpp"
#include "splitforge/errors.hpp"
#include "splitforge/real.hpp"
#include "splitforge/tape.hpp"

namespace splitforge {

struct IntegratorConfig {
    Real rel_tol;
    Real abs_tol;
    Real max_step;
    Real min_step;
    int order = 0;  // 0 selects the order from the tolerance
    bool fixed_step = false;  // take steps of exactly max_step (convergence studies)
    bool dense = false;
    std::size_t max_steps = 1000000;

    // Tolerances a few bits above the unit roundoff of the context.
    static IntegratorConfig for_precision(const PrecisionContext& ctx);
    int effective_order() const;
    void validate() const;
};

template <class T>
struct StepRecord {
    T t0;
    T dir;
    Real length;
    std::vector<std::vector<T>> coef;  // per component, Taylor coefficients at t0
};

template <class T>
struct Trajectory {
    std::vector<StepRecord<T>> steps;

    // State at time t = t0 + dir*tau of the step containing it.
    std::vector<T> at(const T& t) const;
};

template <class T>
struct IntegrationResult {
    std::vector<T> state;
    T t;
    std::size_t steps = 0;
    Trajectory<T> dense;
};

template <class T>
class TaylorIntegrator {
public:
    TaylorIntegrator(const OdeTape<T>& field, const IntegratorConfig& cfg);

    void reset(const std::vector<T>& y, const T& t);
    // One step along the unit direction dir, of length at most limit.
    Real step(const T& dir, const Real& limit);

    const std::vector<T>& state() const { return y_; }
    const T& time() const { return t_; }
    int order() const { return p_; }
    std::size_t steps_taken() const { return steps_; }
    // Coefficients of the last step, expanded at its starting point.
    std::vector<std::vector<T>> last_coefficients() const;
    const T& last_start() const { return t_prev_; }

private:
    void expand();

    const OdeTape<T>* field_;
    IntegratorConfig cfg_;
    int p_;
    TaylorJet<T> jet_;
    std::vector<T> y_;
    T t_;
    T t_prev_;
    std::size_t steps_ = 0;
};

template <class T>
IntegrationResult<T> integrate(const OdeTape<T>& field, const std::vector<T>& y0, const Real& t0, const Real& t1,
                               const IntegratorConfig& cfg);

struct PathResult {
    std::vector<std::vector<Complex>> states;  // one per waypoint, the first being y0
    std::size_t steps = 0;
};

PathResult integrate_path(const OdeTape<Complex>& field, const std::vector<Complex>& y0,
                          const std::vector<Complex>& path, const IntegratorConfig& cfg);

struct SectionHit {
    std::vector<Real> state;  // component z_index is exactly zero
    Real t;
};

// Lands on {y[z_index] = 0} from y_near by integrating with z as the independent
// variable. direction is the sign of time travel; the crossing must occur within
// window time units of t_near.
SectionHit section_cross(const OdeTape<Real>& field, const std::vector<Real>& y_near, const Real& t_near,
                         std::size_t z_index, int direction, const Real& window, const IntegratorConfig& cfg);

}  // namespace splitforge
