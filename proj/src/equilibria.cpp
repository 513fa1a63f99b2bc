#include "splitforge/equilibria.hpp"

#include <algorithm>
#include <string>

#include "splitforge/errors.hpp"

namespace splitforge {

namespace {

Real max_norm(const Vec3& v) { return max(max(abs(v[0]), abs(v[1])), abs(v[2])); }

Real tiny() { return ldexp(Real(1), -(thread_precision() / 2)); }

Vec3 cross(const std::array<Real, 3>& a, const std::array<Real, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Real norm2(const Vec3& v) { return sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Equilibrium newton(const UnfoldingSpec& spec, const ParamPoint& p, Vec3 x, EquilibriumKind kind,
                   const NewtonOptions& opts) {
    const Real tol = opts.tol.is_zero() ? ldexp(Real(1), -(thread_precision() - 16)) : opts.tol;
    Equilibrium eq;
    eq.kind = kind;
    Real r0;
    for (int it = 0;; ++it) {
        const Vec3 F = eval_field(spec, x, p);
        const Real r = max_norm(F);
        eq.newton_residuals.push_back(r);
        if (it == 0) r0 = r;
        if (!r.is_finite() || r > max(r0, Real(1)) * Real(1e6))
            throw NumericError(ErrorKind::NewtonDivergence, "newton iteration diverged");
        if (r <= tol) break;
        if (it >= opts.max_iterations)
            throw NumericError(ErrorKind::NewtonDivergence, "newton did not converge in " +
                                                                std::to_string(opts.max_iterations) + " iterations");
        const Vec3 dx = solve3(eval_jacobian(spec, x, p), F);
        for (int i = 0; i < 3; ++i) x[i] -= dx[i];
    }
    eq.point = x;
    const Mat3 J = eval_jacobian(spec, x, p);
    eq.eigenvalues = eigen3(J);
    const Complex& lam = eq.eigenvalues[0];
    const bool pair = !eq.eigenvalues[1].im.is_zero();
    const bool sign_ok = (kind == EquilibriumKind::plus) ? lam.re.sign() > 0 : lam.re.sign() < 0;
    if (pair && sign_ok) {
        std::array<std::array<Real, 3>, 3> M = J;
        for (int i = 0; i < 3; ++i) M[i][i] -= lam.re;
        Vec3 best = cross(M[0], M[1]);
        Real bn = norm2(best);
        for (const auto& c : {cross(M[0], M[2]), cross(M[1], M[2])}) {
            const Real cn = norm2(c);
            if (cn > bn) {
                best = c;
                bn = cn;
            }
        }
        if (bn > tiny()) {
            for (auto& v : best) v /= bn;
            eq.real_eigvec = best;
        }
    }
    return eq;
}

Complex charpoly(const std::array<Real, 3>& a, const Complex& z) {
    // z^3 + a2 z^2 + a1 z + a0
    return ((z + a[2]) * z + a[1]) * z + a[0];
}

Complex charpoly_d(const std::array<Real, 3>& a, const Complex& z) {
    return (Real(3) * z + Real(2) * a[2]) * z + a[1];
}

}  // namespace

Vec3 solve3(const Mat3& Ain, const Vec3& bin) {
    Mat3 A = Ain;
    Vec3 b = bin;
    Real scale(0);
    for (const auto& row : A)
        for (const auto& v : row) scale = max(scale, abs(v));
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
        if (!(abs(A[piv][col]) > scale * ldexp(Real(1), -(thread_precision() - 8))))
            throw NumericError(ErrorKind::SingularJacobian, "singular 3x3 system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 3; ++r) {
            const Real f = A[r][col] / A[col][col];
            for (int k = col; k < 3; ++k) A[r][k] -= f * A[col][k];
            b[r] -= f * b[col];
        }
    }
    Vec3 x;
    for (int r = 2; r >= 0; --r) {
        Real s = b[r];
        for (int k = r + 1; k < 3; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return x;
}

std::array<Complex, 3> eigen3(const Mat3& J) {
    const Real tr = J[0][0] + J[1][1] + J[2][2];
    const Real minors = J[0][0] * J[1][1] - J[0][1] * J[1][0] + J[0][0] * J[2][2] - J[0][2] * J[2][0] +
                        J[1][1] * J[2][2] - J[1][2] * J[2][1];
    const Real det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    const std::array<Real, 3> a{-det, minors, -tr};  // a0, a1, a2

    // depressed cubic t^3 + P t + Q with lambda = t - a2/3
    const Real shift = a[2] / Real(3);
    const Real P = a[1] - a[2] * a[2] / Real(3);
    const Real Q = Real(2) * a[2] * a[2] * a[2] / Real(27) - a[2] * a[1] / Real(3) + a[0];
    const Complex disc = sqrt(Complex(Q * Q / Real(4) + P * P * P / Real(27)));
    Complex w1 = Complex(-Q / Real(2)) + disc;
    const Complex w2 = Complex(-Q / Real(2)) - disc;
    if (abs(w2) > abs(w1)) w1 = w2;
    const Complex u = cbrt(w1);
    const Complex omega = polar(Real(1), Real(2) * pi() / Real(3));
    std::array<Complex, 3> roots;
    Complex wk(1);
    for (int k = 0; k < 3; ++k) {
        const Complex uk = u * wk;
        const Complex vk = uk.is_zero() ? Complex(0) : Complex(-P / Real(3)) / uk;
        roots[k] = uk + vk - shift;
        wk = wk * omega;
    }
    // one Newton polish per root
    for (auto& r : roots) {
        const Complex dp = charpoly_d(a, r);
        if (abs(dp) > tiny()) r = r - charpoly(a, r) / dp;
    }

    std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) { return abs(x.im) < abs(y.im); });
    Real scale(1);
    for (const auto& r : roots) scale = max(scale, abs(r));
    const Real real_tol = scale * tiny();
    roots[0].im = Real(0);
    if (abs(roots[1].im) <= real_tol && abs(roots[2].im) <= real_tol) {
        roots[1].im = Real(0);
        roots[2].im = Real(0);
    } else {
        // enforce exact conjugacy, positive imaginary part first
        Complex m = (roots[1].im.sign() > 0) ? roots[1] : roots[2];
        const Complex other = (roots[1].im.sign() > 0) ? roots[2] : roots[1];
        m = (m + conj(other)) / Real(2);
        roots[1] = m;
        roots[2] = conj(m);
    }
    return roots;
}

std::pair<Equilibrium, Equilibrium> find_fixed_points(const UnfoldingSpec& spec, const ParamPoint& p,
                                                      const NewtonOptions& opts) {
    return {newton(spec, p, {Real(0), Real(0), Real(1)}, EquilibriumKind::plus, opts),
            newton(spec, p, {Real(0), Real(0), Real(-1)}, EquilibriumKind::minus, opts)};
}

ManifoldSeed seed_manifold(const Equilibrium& eq, const Real& eps) {
    if (!(eps > Real(0))) throw NumericError(ErrorKind::InvalidInput, "seed offset must be positive");
    Vec3 v = eq.real_eigvec;
    if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero())
        throw NumericError(ErrorKind::EigenClassification, "real eigenvector not identifiable");
    const bool plus = eq.kind == EquilibriumKind::plus;
    if ((plus && v[2].sign() > 0) || (!plus && v[2].sign() < 0))
        for (auto& c : v) c = -c;
    ManifoldSeed s;
    for (int i = 0; i < 3; ++i) s.state[i] = eq.point[i] + eps * v[i];
    s.direction = plus ? 1 : -1;
    return s;
}

Real default_seed_eps() {
    const long digits = PrecisionContext{thread_precision()}.decimal_digits();
    return pow(Real(10), -(digits / 2));
}

}  // namespace splitforge
