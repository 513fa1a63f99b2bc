// In-place arithmetic kernels used by the Taylor engine; avoid temporaries.
#pragma once

#include <mpfr.h>

#include "splitforge/complex.hpp"
#include "splitforge/real.hpp"

namespace splitforge::ops {

constexpr mpfr_rnd_t R = MPFR_RNDN;

inline void set(Real& r, const Real& a) { mpfr_set(r.raw(), a.raw(), R); }
inline void set_zero(Real& r) { mpfr_set_zero(r.raw(), 1); }
inline void add(Real& r, const Real& a, const Real& b) { mpfr_add(r.raw(), a.raw(), b.raw(), R); }
inline void sub(Real& r, const Real& a, const Real& b) { mpfr_sub(r.raw(), a.raw(), b.raw(), R); }
inline void neg(Real& r, const Real& a) { mpfr_neg(r.raw(), a.raw(), R); }
inline void mul(Real& r, const Real& a, const Real& b) { mpfr_mul(r.raw(), a.raw(), b.raw(), R); }
inline void div(Real& r, const Real& a, const Real& b) { mpfr_div(r.raw(), a.raw(), b.raw(), R); }
inline void div_ui(Real& r, const Real& a, unsigned long k) { mpfr_div_ui(r.raw(), a.raw(), k, R); }
inline void mul_2ui(Real& r, const Real& a, unsigned long k) { mpfr_mul_2ui(r.raw(), a.raw(), k, R); }
// acc += a*b
inline void fma_acc(Real& acc, const Real& a, const Real& b, Real& tmp) {
    mpfr_mul(tmp.raw(), a.raw(), b.raw(), R);
    mpfr_add(acc.raw(), acc.raw(), tmp.raw(), R);
}
// acc -= a*b
inline void fms_acc(Real& acc, const Real& a, const Real& b, Real& tmp) {
    mpfr_mul(tmp.raw(), a.raw(), b.raw(), R);
    mpfr_sub(acc.raw(), acc.raw(), tmp.raw(), R);
}
inline Real magnitude(const Real& a) { return abs(a); }
inline bool finite(const Real& a) { return a.is_finite(); }

inline void set(Complex& r, const Complex& a) {
    set(r.re, a.re);
    set(r.im, a.im);
}
inline void set_zero(Complex& r) {
    set_zero(r.re);
    set_zero(r.im);
}
inline void add(Complex& r, const Complex& a, const Complex& b) {
    add(r.re, a.re, b.re);
    add(r.im, a.im, b.im);
}
inline void sub(Complex& r, const Complex& a, const Complex& b) {
    sub(r.re, a.re, b.re);
    sub(r.im, a.im, b.im);
}
inline void neg(Complex& r, const Complex& a) {
    neg(r.re, a.re);
    neg(r.im, a.im);
}
// r must not alias a or b
inline void mul(Complex& r, const Complex& a, const Complex& b) {
    mpfr_fmms(r.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), R);
    mpfr_fmma(r.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), R);
}
inline void mul(Complex& r, const Complex& a, const Real& b) {
    mul(r.re, a.re, b);
    mul(r.im, a.im, b);
}
inline void div(Complex& r, const Complex& a, const Complex& b) { r = a / b; }
inline void div(Complex& r, const Complex& a, const Real& b) {
    div(r.re, a.re, b);
    div(r.im, a.im, b);
}
inline void div_ui(Complex& r, const Complex& a, unsigned long k) {
    div_ui(r.re, a.re, k);
    div_ui(r.im, a.im, k);
}
inline void mul_2ui(Complex& r, const Complex& a, unsigned long k) {
    mul_2ui(r.re, a.re, k);
    mul_2ui(r.im, a.im, k);
}
inline void fma_acc(Complex& acc, const Complex& a, const Complex& b, Complex& tmp) {
    mul(tmp, a, b);
    add(acc, acc, tmp);
}
inline void fms_acc(Complex& acc, const Complex& a, const Complex& b, Complex& tmp) {
    mul(tmp, a, b);
    sub(acc, acc, tmp);
}
inline Real magnitude(const Complex& a) { return abs(a); }
inline bool finite(const Complex& a) { return a.is_finite(); }

}  // namespace splitforge::ops
