// Inner system near the singularity of the heteroclinic and its Stokes constant.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "splitforge/integrator.hpp"
#include "splitforge/system.hpp"

namespace splitforge {

struct InnerParams {
    Real alpha;
    Real b, c, d;
    Real h0;
    Polynomial3 f, g, h;  // spec polynomials at D = S = 0

    static InnerParams from_spec(const UnfoldingSpec& spec);
    bool forcing_free() const { return f.empty() && g.empty(); }

    // (d psi/ds, d psibar/ds)
    template <class S>
    std::array<S, 2> field(const S& psi, const S& psib, const S& s) const {
        const Complex I = Complex::i();
        const S w = S(1) / s;
        const S Z = -w;
        const S X = (psi + psib) * Complex(Real(1) / Real(2));
        const S Y = (psi - psib) * Complex(Real(0), Real(-1) / Real(2));
        const S F = f.eval(X, Y, Z);
        const S G = g.eval(X, Y, Z);
        const S H = h.eval(X, Y, Z);
        const S den = S(1) + s * s * (b * psi * psib + H);
        const S lin = (alpha - c * w) * I;
        return {(-(lin * psi) + d * w * psi + (F + I * G)) / den,
                (lin * psib + d * w * psib + (F - I * G)) / den};
    }
};

std::array<Complex, 2> inner_field(const InnerParams& ip, const Complex& psi, const Complex& psib, const Complex& s);

// Formal solution sum_k a_k s^-k of the inner system.
class InnerSeries {
public:
    InnerSeries(const InnerParams& ip, int order);

    int order() const { return static_cast<int>(a_.size()) - 1; }
    const std::vector<Complex>& a() const { return a_; }
    const std::vector<Complex>& abar() const { return abar_; }
    // Partial sums through s^-K.
    std::array<Complex, 2> eval(const Complex& s, int K) const;
    // Inner-ODE residual of the truncated series at s.
    std::array<Complex, 2> residual(const InnerParams& ip, const Complex& s, int K) const;
    // Smallest K whose next two terms are below tol at |s| = r; -1 if none.
    int terms_for(const Real& r, const Real& tol) const;

private:
    std::vector<Complex> a_;
    std::vector<Complex> abar_;
};

std::array<Complex, 2> asymptotic_seed(const InnerParams& ip, const Complex& s, int K_terms);

enum class Branch { u, s };

struct InnerOptions {
    Real S0{1000};
    Real beta0;  // zero selects pi/6
    Real rho{20};
    int seed_terms = 0;  // zero selects the order from the tolerance
    bool staircase = false;
};

struct InnerSample {
    Complex s;
    Complex psi;
    Complex psib;
};

struct InnerSolution {
    Branch branch = Branch::u;
    std::vector<InnerSample> samples;
    int seed_order = 0;
    std::vector<std::vector<Complex>> path_meta;
};

// Targets may all lie below or all above the real axis (the latter for the mirrored check).
InnerSolution solve_inner(const InnerParams& ip, Branch branch, const std::vector<Complex>& targets,
                          const IntegratorConfig& cfg, const InnerOptions& opts = {});

struct StokesRaw {
    Real y;
    Complex estimate;
    Real chi2_scaled;  // |second component of the difference| * y^2 / |prefactor|
};

struct StokesResult {
    Complex C_in;
    Complex c1;
    Real err_estimate;
    std::array<Real, 2> fit_window;
    std::vector<StokesRaw> raw;
    int seed_order = 0;
    Real S0;
};

StokesResult stokes_constant(const InnerParams& ip, const std::array<Real, 2>& y_window, int n_points,
                             const IntegratorConfig& cfg, const InnerOptions& opts = {});
// Constant of the second component from an explicit solve at s = +iy.
StokesResult mirrored_stokes_constant(const InnerParams& ip, const std::array<Real, 2>& y_window, int n_points,
                                      const IntegratorConfig& cfg, const InnerOptions& opts = {});
Complex conjugate_stokes(const StokesResult& r);

// bits = ceil(alpha*y_max/ln 2) + 128
PrecisionContext precision_for_window(const Real& alpha, const Real& y_max);

}  // namespace splitforge
