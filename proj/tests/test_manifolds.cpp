#include "common.hpp"
#include "splitforge/manifolds.hpp"

using namespace splitforge;
using sftest::cubic_family;
using sftest::unperturbed_family;

namespace {

constexpr long kBits = 174;  // splitting precision rule at delta = 0.05

// Reference distance at delta = 0.05, sigma = 0 for the cubic family (order 12, tol 1e-40).
const char* const kDist005 = "8.8143885984241278199149048307719e-12";

}  // namespace

TEST_CASE("unperturbed splitting vanishes") {
    PrecisionScope s(PrecisionContext{256});
    const auto cfg = IntegratorConfig::for_precision({256});
    for (const char* d : {"0.1", "0.05"}) {
        for (const char* sg : {"0", "0.5"}) {
            const ParamPoint p{Real(d), Real(sg)};
            const Real eps = default_seed_eps();
            const auto smp = splitting(unperturbed_family(), p, eps, cfg);
            const Real bound = Real(10) * max(cfg.abs_tol, eps * eps);
            CHECK(smp.dist <= bound);
            CHECK(abs(smp.cross_u[0]) <= bound);
            CHECK(abs(smp.cross_s[1]) <= bound);
        }
    }
}

TEST_CASE("unperturbed crossing time matches the heteroclinic arctanh") {
    // z' = -1 + z^2 on the axis, so the time from 1 - eps to 0 is atanh(1 - eps)
    PrecisionScope s(PrecisionContext{192});
    const auto cfg = IntegratorConfig::for_precision({192});
    const Real eps("1e-25");
    // rounding of the seed 1 - eps is amplified by the 1/eps sensitivity of the transit time
    const Real tol = Real(100) * epsilon() / eps;
    const auto c = unstable_crossing(unperturbed_family(), ParamPoint{Real("0.1"), Real(0)}, eps, cfg);
    CHECK(abs(c.t - atanh(Real(1) - eps)) < tol);
    const auto st = stable_crossing(unperturbed_family(), ParamPoint{Real("0.1"), Real(0)}, eps, cfg);
    CHECK(abs(st.t + atanh(Real(1) - eps)) < tol);
}

TEST_CASE("splitting at delta = 0.05: two independent integrations agree") {
    PrecisionScope s(PrecisionContext{kBits});
    const auto spec = cubic_family();
    const ParamPoint p{Real("0.05"), Real(0)};
    const Real eps = default_seed_eps();

    auto hi = IntegratorConfig::for_precision({kBits});
    hi.order = 24;
    const auto a = splitting(spec, p, eps, hi);

    auto lo = IntegratorConfig::for_precision({kBits});
    lo.order = 12;
    lo.rel_tol = Real("1e-40");
    lo.abs_tol = Real("1e-40");
    const auto b = splitting(spec, p, eps, lo);

    CHECK(sftest::rel_close(a.dist, b.dist, Real("1e-25")));
    CHECK(sftest::rel_close(a.dist, Real(kDist005), Real("1e-25")));
    CHECK(sftest::rel_close(b.dist, Real(kDist005), Real("1e-25")));
}

TEST_CASE("splitting is stable under a smaller seed and a tighter tolerance") {
    PrecisionScope s(PrecisionContext{kBits});
    const auto spec = cubic_family();
    const ParamPoint p{Real("0.05"), Real(0)};
    const Real eps = default_seed_eps();
    const auto cfg = IntegratorConfig::for_precision({kBits});
    const auto a = splitting(spec, p, eps, cfg);
    auto tight = cfg;
    tight.rel_tol = cfg.rel_tol / Real(100);
    tight.abs_tol = cfg.abs_tol / Real(100);
    const auto b = splitting(spec, p, eps / Real(10), tight);
    CHECK(abs(a.dist - b.dist) / a.dist < Real("1e-10"));
}

TEST_CASE("splitting sample bookkeeping") {
    PrecisionScope s(PrecisionContext{160});
    const auto spec = cubic_family();
    const ParamPoint p{Real("0.1"), Real("0.2")};
    const auto cfg = IntegratorConfig::for_precision({160});
    const Real eps = default_seed_eps();
    const auto smp = splitting(spec, p, eps, cfg);
    CHECK(smp.delta_xy[0] == smp.cross_u[0] - smp.cross_s[0]);
    CHECK(smp.delta_xy[1] == smp.cross_u[1] - smp.cross_s[1]);
    CHECK(smp.dist == hypot(smp.delta_xy[0], smp.delta_xy[1]));
    CHECK(smp.dist_unscaled == p.delta * smp.dist);
    CHECK(smp.cross_u[0].is_finite());
    CHECK(smp.dist > Real(0));

    ShootOptions sum;
    sum.norm = DistanceNorm::sum;
    const auto l1 = splitting(spec, p, eps, cfg, sum);
    CHECK(l1.dist == abs(l1.delta_xy[0]) + abs(l1.delta_xy[1]));
    CHECK(l1.dist >= smp.dist * Real("0.999999"));
}

TEST_CASE("splitting is exponentially small in 1/delta") {
    PrecisionScope s(PrecisionContext{192});
    const auto spec = cubic_family();
    const auto cfg = IntegratorConfig::for_precision({192});
    const Real eps = default_seed_eps();
    const auto a = splitting(spec, ParamPoint{Real("0.1"), Real(0)}, eps, cfg);
    const auto b = splitting(spec, ParamPoint{Real("0.05"), Real(0)}, eps, cfg);
    // log ratio over 1/delta change of 10 tracks -alpha0 pi/2 up to the algebraic prefactor
    const Real slope = (log(b.dist) - log(a.dist)) / Real(10);
    CHECK(slope < Real(-1));
    CHECK(slope > Real(-2));
}

TEST_CASE("invalid seed offsets are rejected") {
    PrecisionScope s(PrecisionContext{128});
    const auto cfg = IntegratorConfig::for_precision({128});
    CHECK_THROWS_AS(splitting(cubic_family(), ParamPoint{Real("0.1"), Real(0)}, Real(0), cfg), NumericError);
}
