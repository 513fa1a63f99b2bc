// Complex scalar over Real with principal-branch elementary functions.
#pragma once

#include <iosfwd>
#include <string>

#include "splitforge/real.hpp"

namespace splitforge {

class Complex {
public:
    Real re;
    Real im;

    Complex() = default;
    Complex(int v) : re(v), im(0) {}
    Complex(double v) : re(v), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}
    Complex(Real&& r) : re(std::move(r)), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}

    static Complex i() { return {Real(0), Real(1)}; }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o);
    Complex& operator/=(const Real& o);
    Complex operator-() const { return {-re, -im}; }

    friend Complex operator+(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a, const Complex& b);
    friend Complex operator*(const Complex& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Complex& b);
    friend Complex operator*(const Complex& a, const Real& b);
    friend Complex operator*(const Real& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Real& b);
    friend Complex operator+(const Complex& a, const Real& b);
    friend Complex operator+(const Real& a, const Complex& b);
    friend Complex operator-(const Complex& a, const Real& b);
    friend Complex operator-(const Real& a, const Complex& b);

    friend Complex operator*(const Complex& a, double b) { return a * Real(b); }
    friend Complex operator*(double a, const Complex& b) { return Real(a) * b; }
    friend Complex operator/(const Complex& a, double b) { return a / Real(b); }
    friend Complex operator+(const Complex& a, double b) { return a + Real(b); }
    friend Complex operator+(double a, const Complex& b) { return Real(a) + b; }
    friend Complex operator-(const Complex& a, double b) { return a - Real(b); }
    friend Complex operator-(double a, const Complex& b) { return Real(a) - b; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    bool is_finite() const { return re.is_finite() && im.is_finite(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

std::ostream& operator<<(std::ostream& os, const Complex& z);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
// Argument in (-pi, pi]; a signed-zero imaginary part on the negative axis maps to +pi.
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Complex& w);
Complex pow(const Complex& z, const Real& w);
Complex pow(const Complex& z, long n);
Complex cbrt(const Complex& z);  // principal
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
Complex tanh(const Complex& z);
Complex polar(const Real& r, const Real& theta);

}  // namespace splitforge
