#pragma once

#include <string>

#include "doctest.h"
#include "splitforge/system.hpp"

namespace sftest {

using namespace splitforge;

// The pinned cubic family shipped as configs/cubic.json.
inline UnfoldingSpec cubic_family() {
    UnfoldingSpec s;
    s.alpha0 = Real(1);
    s.alpha1 = Real("0.5");
    s.b = Real(1);
    s.c = Real("0.25");
    s.d = Real(1);
    s.f = Polynomial5({{Real(1), {0, 0, 3, 0, 0}}});
    s.g = Polynomial5({{Real(2), {1, 0, 2, 0, 0}}});
    s.h = Polynomial5({{Real("-0.5"), {0, 0, 3, 0, 0}}});
    return s;
}

inline UnfoldingSpec unperturbed_family() {
    UnfoldingSpec s = cubic_family();
    s.f = Polynomial5();
    s.g = Polynomial5();
    s.h = Polynomial5();
    return s;
}

// |a - b| <= tol * max(1, |b|)
inline bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol * max(Real(1), abs(b)); }

inline bool rel_close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol * abs(b); }

}  // namespace sftest
