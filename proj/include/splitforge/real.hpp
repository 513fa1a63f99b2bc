// Extended-precision real scalar on top of MPFR.
#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace splitforge {

// Binary precision shared by every scalar created in one pipeline run.
struct PrecisionContext {
    long bits = 256;

    int decimal_digits() const;
    // ceil(alpha0*pi/(2*delta_min)/ln 2) + 128
    static PrecisionContext for_splitting(double alpha0, double delta_min);
};

// Precision used by newly constructed Real values on the calling thread.
long thread_precision();

class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionContext& ctx);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    long saved_;
};

class Real {
public:
    Real();
    Real(int v);
    Real(long v);
    Real(unsigned long v);
    Real(double v);
    explicit Real(std::string_view text);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend Real operator+(const Real& a, double b) { return a + Real(b); }
    friend Real operator+(double a, const Real& b) { return Real(a) + b; }
    friend Real operator-(const Real& a, double b) { return a - Real(b); }
    friend Real operator-(double a, const Real& b) { return Real(a) - b; }
    friend Real operator*(const Real& a, double b) { return a * Real(b); }
    friend Real operator*(double a, const Real& b) { return Real(a) * b; }
    friend Real operator/(const Real& a, double b) { return a / Real(b); }
    friend Real operator/(double a, const Real& b) { return Real(a) / b; }

    friend bool operator==(const Real& a, const Real& b);
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const;
    long to_long() const;  // rounds toward zero
    bool is_zero() const;
    bool is_finite() const;
    int sign() const;
    long precision() const;

    // Scientific notation with enough digits to round-trip at this precision.
    std::string str() const;
    std::string str(int digits) const;

private:
    mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real atanh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& a, const Real& b);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real floor(const Real& x);
Real ceil(const Real& x);
Real pi();
Real ln2();
// 2^-e where e is the exponent of the unit in the last place of 1.
Real epsilon();

}  // namespace splitforge
