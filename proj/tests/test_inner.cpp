#include "common.hpp"
#include "splitforge/inner.hpp"

using namespace splitforge;
using sftest::cubic_family;

namespace {

InnerParams cubic_inner() { return InnerParams::from_spec(cubic_family()); }

// |C_in| on the window [20, 24] with 3 points, S0 = 1000, at the window precision rule (163 bits).
const char* const kAbsCin20 = "2.934465799315662538629312652364471952501788732377e-1";

Complex below(const char* y) { return Complex(Real(0), -Real(y)); }

}  // namespace

TEST_CASE("inner parameters from the cubic family") {
    PrecisionScope s(PrecisionContext{128});
    const auto ip = cubic_inner();
    CHECK(ip.alpha == Real(1));
    CHECK(ip.h0 == Real("0.5"));
    CHECK(!ip.forcing_free());
    CHECK(InnerParams::from_spec(sftest::unperturbed_family()).forcing_free());
}

TEST_CASE("series: leading coefficients") {
    // F = -w^3 forces a_3 = i/alpha; the w^4 balance gives a_4 = a_3 (3 + d + i c)/(i alpha)
    PrecisionScope s(PrecisionContext{160});
    const InnerSeries series(cubic_inner(), 8);
    const Real tol("1e-40");
    const Complex I = Complex::i();
    for (int k = 0; k < 3; ++k) {
        CHECK(series.a()[static_cast<std::size_t>(k)] == Complex(0));
        CHECK(series.abar()[static_cast<std::size_t>(k)] == Complex(0));
    }
    CHECK(abs(series.a()[3] - I) < tol);
    CHECK(abs(series.abar()[3] + I) < tol);
    CHECK(abs(series.a()[4] - Complex(Real(4), Real("0.25"))) < tol);
    CHECK(abs(series.abar()[4] - Complex(Real(4), Real("-0.25"))) < tol);
}

TEST_CASE("series: conjugate symmetry of the coefficients") {
    PrecisionScope s(PrecisionContext{160});
    const InnerSeries series(cubic_inner(), 30);
    for (int k = 0; k <= 30; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const Real scale = max(Real(1), abs(series.a()[uk]));
        CHECK(abs(series.abar()[uk] - conj(series.a()[uk])) <= ldexp(Real(1), -140) * scale);
    }
}

TEST_CASE("series: evaluation at s = -10i") {
    // w = i/10, w^3 = -i/1000, w^4 = 1e-4: psi = 1e-3 + (4 + 0.25 i) 1e-4, psibar = -1e-3 + (4 - 0.25 i) 1e-4
    PrecisionScope s(PrecisionContext{160});
    const InnerSeries series(cubic_inner(), 4);
    const auto v = series.eval(below("10"), 4);
    CHECK(abs(v[0] - Complex(Real("1.4e-3"), Real("2.5e-5"))) < Real("1e-40"));
    CHECK(abs(v[1] - Complex(Real("-6e-4"), Real("-2.5e-5"))) < Real("1e-40"));
    CHECK_THROWS_AS(series.eval(below("10"), 5), NumericError);
}

TEST_CASE("series: truncation residual decays with the next power") {
    PrecisionScope s(PrecisionContext{192});
    const auto ip = cubic_inner();
    const InnerSeries series(ip, 12);
    for (const int K : {6, 8}) {
        const Real r1 = abs(series.residual(ip, below("100"), K)[0]);
        const Real r2 = abs(series.residual(ip, below("200"), K)[0]);
        // leading residual term alpha a_{K+1} s^-(K+1)
        const Real order = log(r1 / r2) / log(Real(2));
        CHECK(abs(order - Real(K + 1)) < Real("0.3"));
    }
}

TEST_CASE("series: forcing-free systems have the zero solution") {
    PrecisionScope s(PrecisionContext{128});
    const auto ip = InnerParams::from_spec(sftest::unperturbed_family());
    const InnerSeries series(ip, 10);
    for (const auto& a : series.a()) CHECK(a == Complex(0));
    for (const auto& a : series.abar()) CHECK(a == Complex(0));
}

TEST_CASE("series: invalid orders and alpha") {
    PrecisionScope s(PrecisionContext{128});
    auto ip = cubic_inner();
    CHECK_THROWS_AS(InnerSeries(ip, 2), NumericError);
    ip.alpha = Real(0);
    CHECK_THROWS_AS(InnerSeries(ip, 8), NumericError);
}

TEST_CASE("inner field is singular at s = 0") {
    PrecisionScope s(PrecisionContext{128});
    CHECK_THROWS_AS(inner_field(cubic_inner(), Complex(0), Complex(0), Complex(0)), NumericError);
    const auto f = inner_field(cubic_inner(), Complex(0), Complex(0), below("10"));
    // at psi = 0 and s = -10i: Z = -1/s = -i/10, F = Z^3 = i/1000, G = 0, den = 1 + s^2 H = 1 + i/20
    const Complex expected = Complex(Real(0), Real("1e-3")) / Complex(Real(1), Real("0.05"));
    CHECK(abs(f[0] - expected) < Real("1e-35"));
    CHECK(abs(f[1] - expected) < Real("1e-35"));
}

TEST_CASE("solve_inner: independent of S0") {
    const auto ip = cubic_inner();
    PrecisionScope s(precision_for_window(ip.alpha, Real(40)));
    const auto cfg = IntegratorConfig::for_precision({thread_precision()});
    InnerOptions a;
    a.S0 = Real(1000);
    InnerOptions b = a;
    b.S0 = Real(2000);
    const std::vector<Complex> t{below("40")};
    const auto sa = solve_inner(ip, Branch::u, t, cfg, a);
    const auto sb = solve_inner(ip, Branch::u, t, cfg, b);
    const Real m = abs(sa.samples[0].psi);
    CHECK(abs(sa.samples[0].psi - sb.samples[0].psi) < Real("1e-20") * m);
    CHECK(abs(sa.samples[0].psib - sb.samples[0].psib) < Real("1e-20") * m);
}

TEST_CASE("solve_inner: s^3 psi stays near a_3 along the window") {
    const auto ip = cubic_inner();
    PrecisionScope s(precision_for_window(ip.alpha, Real(80)));
    const auto cfg = IntegratorConfig::for_precision({thread_precision()});
    std::vector<Complex> t;
    for (const char* y : {"20", "40", "60", "80"}) t.push_back(below(y));
    const auto sol = solve_inner(ip, Branch::u, t, cfg);
    Real lo, hi;
    for (std::size_t j = 0; j < t.size(); ++j) {
        const Real v = abs(t[j] * t[j] * t[j] * sol.samples[j].psi);
        lo = j == 0 ? v : min(lo, v);
        hi = j == 0 ? v : max(hi, v);
    }
    CHECK(hi / lo < Real("1.5"));
    CHECK(sol.samples.size() == 4);
    CHECK(sol.path_meta[0].front().re == Real(-1000));
}

TEST_CASE("solve_inner: staircase and straight paths agree") {
    const auto ip = cubic_inner();
    PrecisionScope s(precision_for_window(ip.alpha, Real(30)));
    const auto cfg = IntegratorConfig::for_precision({thread_precision()});
    InnerOptions straight;
    InnerOptions stairs;
    stairs.staircase = true;
    const std::vector<Complex> t{below("30")};
    for (const Branch br : {Branch::u, Branch::s}) {
        const auto a = solve_inner(ip, br, t, cfg, straight);
        const auto b = solve_inner(ip, br, t, cfg, stairs);
        CHECK(b.path_meta[0].size() == 4);
        CHECK(abs(a.samples[0].psi - b.samples[0].psi) < Real("1e-30"));
        CHECK(abs(a.samples[0].psib - b.samples[0].psib) < Real("1e-30"));
    }
}

TEST_CASE("solve_inner: seed order beyond the tolerance does not matter") {
    const auto ip = cubic_inner();
    PrecisionScope s(precision_for_window(ip.alpha, Real(20)));
    const auto cfg = IntegratorConfig::for_precision({thread_precision()});
    const std::vector<Complex> t{below("20")};
    InnerOptions a;
    a.seed_terms = 12;
    InnerOptions b;
    b.seed_terms = 16;
    const auto sa = solve_inner(ip, Branch::u, t, cfg, a);
    const auto sb = solve_inner(ip, Branch::u, t, cfg, b);
    CHECK(sa.seed_order == 12);
    CHECK(sb.seed_order == 16);
    // bounded by the first omitted term at |s| = S0
    const InnerSeries series(ip, 13);
    const Real bound = Real(10) * abs(series.a()[13]) * pow(a.S0, -13L) + Real(100) * cfg.abs_tol;
    CHECK(abs(sa.samples[0].psi - sb.samples[0].psi) < bound);
}

TEST_CASE("solve_inner: input validation") {
    PrecisionScope s(PrecisionContext{128});
    const auto ip = cubic_inner();
    const auto cfg = IntegratorConfig::for_precision({128});
    CHECK_THROWS_AS(solve_inner(ip, Branch::u, {}, cfg), NumericError);
    CHECK_THROWS_AS(solve_inner(ip, Branch::u, {below("20"), Complex(Real(0), Real(20))}, cfg), NumericError);
    InnerOptions small;
    small.S0 = Real(100);
    CHECK_THROWS_AS(solve_inner(ip, Branch::u, {below("20")}, cfg, small), NumericError);
    // outside the sector |Im s| >= tan(beta) Re s + rho
    CHECK_THROWS_AS(solve_inner(ip, Branch::u, {Complex(Real(30), Real(-20))}, cfg), NumericError);
}

TEST_CASE("Stokes constant: zero for a forcing-free system") {
    PrecisionScope s(PrecisionContext{160});
    const auto ip = InnerParams::from_spec(sftest::unperturbed_family());
    const auto r = stokes_constant(ip, {Real(20), Real(24)}, 3, IntegratorConfig::for_precision({160}));
    CHECK(r.C_in == Complex(0));
    CHECK(r.c1 == Complex(0));
}

TEST_CASE("Stokes constant: reference value on a short window") {
    const auto ip = cubic_inner();
    const auto ctx = precision_for_window(ip.alpha, Real(24));
    CHECK(ctx.bits == 163);
    PrecisionScope s(ctx);
    const auto r = stokes_constant(ip, {Real(20), Real(24)}, 3, IntegratorConfig::for_precision(ctx));
    CHECK(sftest::rel_close(abs(r.C_in), Real(kAbsCin20), Real("1e-25")));
    CHECK(r.raw.size() == 3);
    CHECK(r.fit_window[0] == Real(20));
    CHECK(r.S0 == Real(1000));
    CHECK(r.err_estimate < Real("0.05") * abs(r.C_in));
    // the subdominant component decays one power faster than the dominant one
    for (const auto& raw : r.raw) CHECK(raw.chi2_scaled < Real(1));
    CHECK(conjugate_stokes(r) == conj(r.C_in));
}

TEST_CASE("Stokes constant: seed order 6 versus 10") {
    const auto ip = cubic_inner();
    const auto ctx = precision_for_window(ip.alpha, Real(24));
    PrecisionScope s(ctx);
    const auto cfg = IntegratorConfig::for_precision(ctx);
    InnerOptions a;
    a.seed_terms = 6;
    InnerOptions b;
    b.seed_terms = 10;
    const auto ra = stokes_constant(ip, {Real(20), Real(24)}, 3, cfg, a);
    const auto rb = stokes_constant(ip, {Real(20), Real(24)}, 3, cfg, b);
    CHECK(ra.seed_order == 6);
    CHECK(rb.seed_order == 10);
    CHECK(abs(ra.C_in - rb.C_in) < min(ra.err_estimate, rb.err_estimate));
}

TEST_CASE("Stokes constant: window validation") {
    PrecisionScope s(PrecisionContext{128});
    const auto ip = cubic_inner();
    const auto cfg = IntegratorConfig::for_precision({128});
    CHECK_THROWS_AS(stokes_constant(ip, {Real(10), Real(20)}, 3, cfg), NumericError);  // below rho
    CHECK_THROWS_AS(stokes_constant(ip, {Real(30), Real(20)}, 3, cfg), NumericError);
    CHECK_THROWS_AS(stokes_constant(ip, {Real(20), Real(30)}, 1, cfg), NumericError);
}

TEST_CASE("conjugate_stokes") {
    PrecisionScope s(PrecisionContext{128});
    StokesResult r;
    r.C_in = Complex(Real("0.3"), Real("-0.1"));
    CHECK(conjugate_stokes(r) == Complex(Real("0.3"), Real("0.1")));
    r.C_in = Complex(Real("-2"), Real(0));
    CHECK(conjugate_stokes(r) == Complex(Real("-2"), Real(0)));
}

TEST_CASE("window precision rule") {
    CHECK(precision_for_window(Real(1), Real(80)).bits == 244);
    CHECK(precision_for_window(Real(2), Real(40)).bits == 244);
    CHECK(precision_for_window(Real(-1), Real(24)).bits == 163);
}

TEST_CASE("complex log uses the principal branch on the inner line") {
    PrecisionScope s(PrecisionContext{128});
    const Complex l = log(below("40"));
    CHECK(abs(l.im + pi() / Real(2)) < Real("1e-35"));
    CHECK(abs(l.re - log(Real(40))) < Real("1e-35"));
}
