#include "splitforge/complex.hpp"

#include <ostream>

namespace splitforge {

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    *this = *this * o;
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
}

Complex& Complex::operator*=(const Real& o) {
    re *= o;
    im *= o;
    return *this;
}

Complex& Complex::operator/=(const Real& o) {
    re /= o;
    im /= o;
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(const Complex& a, const Complex& b) {
    // scale by the larger component to keep the denominator representable
    if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
    if (abs(b.re) >= abs(b.im)) {
        const Real r = b.im / b.re;
        const Real den = b.re + b.im * r;
        return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
    }
    const Real r = b.re / b.im;
    const Real den = b.re * r + b.im;
    return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
Complex operator+(const Real& a, const Complex& b) { return {a + b.re, b.im}; }
Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
Complex operator-(const Real& a, const Complex& b) { return {a - b.re, -b.im}; }

std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << "(" << z.re << ", " << z.im << ")";
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real arg(const Complex& z) {
    if (z.im.is_zero()) return z.re.sign() < 0 ? pi() : Real(0);
    return atan2(z.im, z.re);
}

Complex exp(const Complex& z) {
    const Real m = exp(z.re);
    if (z.im.is_zero()) return {m, Real(0)};
    return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
    if (z.is_zero()) return {};
    const Real r = abs(z);
    if (z.re.sign() >= 0) {
        const Real t = sqrt((r + z.re) / 2);
        return {t, z.im / (2 * t)};
    }
    const Real t = sqrt((r - z.re) / 2);
    // arg in (-pi, pi] maps to sqrt arg in (-pi/2, pi/2]
    const Real s = z.im.sign() < 0 ? -t : t;
    return {z.im / (2 * s), s};
}

Complex pow(const Complex& z, const Complex& w) {
    if (z.is_zero()) return {};
    return exp(w * log(z));
}

Complex pow(const Complex& z, const Real& w) {
    if (z.is_zero()) return {};
    return exp(w * log(z));
}

Complex pow(const Complex& z, long n) {
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex result(1);
    Complex base = z;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

Complex cbrt(const Complex& z) {
    if (z.is_zero()) return {};
    return polar(cbrt(abs(z)), arg(z) / 3);
}

Complex sinh(const Complex& z) {
    if (z.im.is_zero()) return {sinh(z.re), Real(0)};
    return {sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im)};
}

Complex cosh(const Complex& z) {
    if (z.im.is_zero()) return {cosh(z.re), Real(0)};
    return {cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im)};
}

Complex tanh(const Complex& z) {
    if (z.im.is_zero()) return {tanh(z.re), Real(0)};
    return sinh(z) / cosh(z);
}

Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

}  // namespace splitforge
