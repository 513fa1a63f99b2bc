#pragma once

#include <array>
#include <utility>
#include <vector>

#include "splitforge/system.hpp"

namespace splitforge {

enum class EquilibriumKind { plus, minus };

struct Equilibrium {
    Vec3 point;
    std::array<Complex, 3> eigenvalues;  // real root first, then the conjugate pair
    Vec3 real_eigvec;                    // unit length
    EquilibriumKind kind = EquilibriumKind::plus;
    std::vector<Real> newton_residuals;  // max-norm residual before each iteration and at exit
};

struct NewtonOptions {
    Real tol;  // residual target; zero selects 2^-(bits-16)
    int max_iterations = 60;
};

std::pair<Equilibrium, Equilibrium> find_fixed_points(const UnfoldingSpec& spec, const ParamPoint& p,
                                                      const NewtonOptions& opts = {});

// Roots of the characteristic polynomial: real root (smallest |Im|) first; a
// complex pair is returned as exact conjugates.
std::array<Complex, 3> eigen3(const Mat3& J);

struct ManifoldSeed {
    Vec3 state;
    int direction;  // +1 integrate forward in time, -1 backward
};

ManifoldSeed seed_manifold(const Equilibrium& eq, const Real& eps);

// 10^-(digits/2) at the current precision.
Real default_seed_eps();

Vec3 solve3(const Mat3& A, const Vec3& b);

}  // namespace splitforge
