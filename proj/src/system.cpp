#include "splitforge/system.hpp"

#include "splitforge/errors.hpp"

namespace splitforge {

std::vector<std::string> validate(const UnfoldingSpec& spec, const ParamPoint& p) {
    std::vector<std::string> v;
    if (!(p.delta > Real(0))) v.push_back("delta must be positive");
    if (!(spec.d > Real(0))) v.push_back("d must be positive");
    if (spec.alpha0.is_zero()) v.push_back("alpha0 must be nonzero");
    if (!(abs(p.sigma) < spec.d)) v.push_back("|sigma| must be below d");
    const std::array<std::pair<const char*, const Polynomial5*>, 3> polys{
        {{"f", &spec.f}, {"g", &spec.g}, {"h", &spec.h}}};
    for (const auto& [name, poly] : polys) {
        for (const auto& m : poly->monomials()) {
            int deg = 0;
            bool negative = false;
            for (int e : m.exps) {
                deg += e;
                negative = negative || e < 0;
            }
            if (negative) v.push_back(std::string(name) + " has a negative exponent");
            else if (deg < 3) v.push_back(std::string(name) + " has a monomial of degree " + std::to_string(deg) + " < 3");
        }
        if (poly->has_duplicates()) v.push_back(std::string(name) + " has duplicate exponent tuples");
    }
    return v;
}

Real alpha_at(const UnfoldingSpec& spec, const ParamPoint& p) {
    return spec.alpha0 + spec.alpha1 * p.delta * p.sigma;
}

Real h0_of(const UnfoldingSpec& spec) {
    Real c(0);
    for (const auto& m : spec.h.monomials())
        if (m.exps == std::array<int, 5>{0, 0, 3, 0, 0}) c += m.coeff;
    return -c;
}

RescaledSystem RescaledSystem::make(const UnfoldingSpec& spec, const ParamPoint& p) {
    return RescaledSystem{alpha_at(spec, p) / p.delta, p.sigma, spec.b, spec.c, spec.d,
                          spec.f.rescaled(p.delta, p.sigma), spec.g.rescaled(p.delta, p.sigma),
                          spec.h.rescaled(p.delta, p.sigma)};
}

Vec3 eval_field(const UnfoldingSpec& spec, const Vec3& s, const ParamPoint& p) {
    return RescaledSystem::make(spec, p).field(s[0], s[1], s[2]);
}

Mat3 eval_jacobian(const UnfoldingSpec& spec, const Vec3& s, const ParamPoint& p) {
    const auto rs = RescaledSystem::make(spec, p);
    const Real& x = s[0];
    const Real& y = s[1];
    const Real& z = s[2];
    const Real radial = rs.sigma - rs.d * z;
    const Real rot = rs.A + rs.c * z;
    std::array<std::array<Real, 3>, 3> grad;
    const std::array<const Polynomial3*, 3> polys{&rs.f, &rs.g, &rs.h};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) grad[i][j] = polys[i]->partial(j).eval(x, y, z);
    Mat3 J;
    J[0] = {radial + grad[0][0], rot + grad[0][1], -rs.d * x + rs.c * y + grad[0][2]};
    J[1] = {-rot + grad[1][0], radial + grad[1][1], -rs.c * x - rs.d * y + grad[1][2]};
    J[2] = {2 * rs.b * x + grad[2][0], 2 * rs.b * y + grad[2][1], 2 * z + grad[2][2]};
    return J;
}

OdeTape<Real> field_tape(const UnfoldingSpec& spec, const ParamPoint& p) {
    const auto rs = RescaledSystem::make(spec, p);
    return OdeTape<Real>::record(3, [&](const auto& y, const auto&) {
        auto f = rs.field(y[0], y[1], y[2]);
        return std::vector(f.begin(), f.end());
    });
}

std::array<Complex, 2> eval_field_xi(const UnfoldingSpec& spec, const Complex& xi, const Complex& xib,
                                     const Complex& u, const ParamPoint& p) {
    const auto rs = RescaledSystem::make(spec, p);
    const Complex I = Complex::i();
    const Complex z0 = -tanh(u);
    const Complex X = (xi + xib) / Real(2);
    const Complex Y = (xi - xib) / (Real(2) * I);
    const Complex F = rs.f.eval(X, Y, z0);
    const Complex G = rs.g.eval(X, Y, z0);
    const Complex H = rs.h.eval(X, Y, z0);
    const Complex rot = rs.A + rs.c * z0;
    const Complex radial = rs.sigma - rs.d * z0;
    const Complex den = Complex(1) + (rs.b * xi * xib + H) / (z0 * z0 - Real(1));
    if (!(abs(den) > ldexp(Real(1), -thread_precision() / 2)))
        throw NumericError(ErrorKind::DenominatorVanishes, "complexified field denominator vanishes");
    const Complex n1 = -(rot * I * xi) + xi * radial + (F + I * G);
    const Complex n2 = rot * I * xib + xib * radial + (F - I * G);
    return {n1 / den, n2 / den};
}

}  // namespace splitforge
