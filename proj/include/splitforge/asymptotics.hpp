// Closed-form splitting predictions and the fits that compare them with measurements.
#pragma once

#include <array>
#include <vector>

#include "splitforge/complex.hpp"
#include "splitforge/manifolds.hpp"
#include "splitforge/system.hpp"

namespace splitforge {

struct Prediction {
    ParamPoint p;
    Complex first;
    Complex second;  // conjugate of first
    Real modulus;    // |first|, rescaled coordinates
};

// delta^-(1+d) e^{-alpha0 pi/(2 delta)} e^{(pi/2)(c + alpha0 h0 - alpha1 sigma)} C_in e^{-i theta}
Prediction predict_split(const Complex& C_in, const UnfoldingSpec& spec, const ParamPoint& p);
// Distance in the original (mu, nu) coordinates, mu = delta^2, nu = delta sigma.
Real predicted_distance_unscaled(const Real& C_star, const UnfoldingSpec& spec, const Real& mu, const Real& nu);

// Diagonal of the dominant linear part of the splitting equation.
std::array<Complex, 2> a_diag(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u);

struct FundamentalMatrix {
    Complex m1_closed, m2_closed;
    Complex m1_quad, m2_quad;
    Real deviation;  // |m1_quad / m1_closed - 1|
};

FundamentalMatrix fundamental_matrix(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u);

// Integral of a_diag over the segment [0, u] by adaptive Gauss-Legendre quadrature.
std::array<Complex, 2> integrate_a_diag(const UnfoldingSpec& spec, const ParamPoint& p, const Complex& u);

struct FitPoint {
    Real delta;
    Real y;       // log C*(delta)
    Real fitted;  // log(C_inf + kappa / log(1/delta))
};

struct FitResult {
    Real slope;           // coefficient of 1/delta
    Real C_star_fit;      // exp(intercept) of the slope fit
    Real extrapolated_C_star;
    Real kappa;
    std::vector<FitPoint> points;
    std::vector<Real> residuals;  // y - fitted
    Real rms;
    std::array<Real, 2> window;   // (delta_min, delta_max)
};

FitResult fit_stokes_from_measurements(const std::vector<SplittingSample>& samples, const UnfoldingSpec& spec);

}  // namespace splitforge
