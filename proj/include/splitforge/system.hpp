// The rescaled Hopf-zero family and its complexified forms.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "splitforge/complex.hpp"
#include "splitforge/polynomial.hpp"
#include "splitforge/tape.hpp"

namespace splitforge {

struct UnfoldingSpec {
    Real alpha0{1};
    Real alpha1{0};
    Real b{0};
    Real c{0};
    Real d{1};
    Polynomial5 f;
    Polynomial5 g;
    Polynomial5 h;

    bool unperturbed() const { return f.empty() && g.empty() && h.empty(); }
};

struct ParamPoint {
    Real delta;
    Real sigma;
};

using Vec3 = std::array<Real, 3>;
using Mat3 = std::array<std::array<Real, 3>, 3>;

// Empty when the point is admissible.
std::vector<std::string> validate(const UnfoldingSpec& spec, const ParamPoint& p);

Real alpha_at(const UnfoldingSpec& spec, const ParamPoint& p);
Real h0_of(const UnfoldingSpec& spec);

// The family frozen at one parameter point, with the perturbations pre-scaled.
struct RescaledSystem {
    Real A;  // alpha(delta sigma) / delta
    Real sigma, b, c, d;
    Polynomial3 f, g, h;

    static RescaledSystem make(const UnfoldingSpec& spec, const ParamPoint& p);

    template <class S>
    std::array<S, 3> field(const S& x, const S& y, const S& z) const {
        const S radial = sigma - d * z;
        const S rot = A + c * z;
        return {x * radial + rot * y + f.eval(x, y, z),
                -(rot * x) + y * radial + g.eval(x, y, z),
                S(-1) + b * (x * x + y * y) + z * z + h.eval(x, y, z)};
    }
};

Vec3 eval_field(const UnfoldingSpec& spec, const Vec3& state, const ParamPoint& p);
Mat3 eval_jacobian(const UnfoldingSpec& spec, const Vec3& state, const ParamPoint& p);
OdeTape<Real> field_tape(const UnfoldingSpec& spec, const ParamPoint& p);

// (d xi/du, d xibar/du) in the coordinates xi = x + i y, z = -tanh(u).
std::array<Complex, 2> eval_field_xi(const UnfoldingSpec& spec, const Complex& xi, const Complex& xib,
                                     const Complex& u, const ParamPoint& p);

}  // namespace splitforge
