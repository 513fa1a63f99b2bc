#pragma once

#include <array>
#include <cstddef>

#include "splitforge/equilibria.hpp"
#include "splitforge/integrator.hpp"

namespace splitforge {

enum class DistanceNorm { euclidean, sum };

struct ShootOptions {
    Real time_budget;  // zero selects 20 + 4 log(1/eps)
    DistanceNorm norm = DistanceNorm::euclidean;
};

struct CrossingPoint {
    Real x;
    Real y;
    Real t;  // signed time from the seed
    std::size_t steps = 0;
};

struct SplittingSample {
    ParamPoint p;
    std::array<Real, 2> cross_u;
    std::array<Real, 2> cross_s;
    std::array<Real, 2> delta_xy;
    Real dist;
    Real dist_unscaled;
};

CrossingPoint unstable_crossing(const UnfoldingSpec& spec, const ParamPoint& p, const Real& eps,
                                const IntegratorConfig& cfg, const ShootOptions& opts = {});
CrossingPoint stable_crossing(const UnfoldingSpec& spec, const ParamPoint& p, const Real& eps,
                              const IntegratorConfig& cfg, const ShootOptions& opts = {});
SplittingSample splitting(const UnfoldingSpec& spec, const ParamPoint& p, const Real& eps,
                          const IntegratorConfig& cfg, const ShootOptions& opts = {});

}  // namespace splitforge
