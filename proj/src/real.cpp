#include "splitforge/real.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace splitforge {

namespace {

thread_local long g_bits = 256;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

bool initialized(mpfr_srcptr v) { return v->_mpfr_d != nullptr; }

}  // namespace

int PrecisionContext::decimal_digits() const {
    return static_cast<int>(std::floor(static_cast<double>(bits) * std::log10(2.0)));
}

PrecisionContext PrecisionContext::for_splitting(double alpha0, double delta_min) {
    const double pi = std::acos(-1.0);
    const double b = std::ceil(std::abs(alpha0) * pi / (2.0 * delta_min) / std::log(2.0));
    return PrecisionContext{static_cast<long>(b) + 128};
}

long thread_precision() { return g_bits; }

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : saved_(g_bits) {
    if (ctx.bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
    g_bits = ctx.bits;
}

PrecisionScope::~PrecisionScope() { g_bits = saved_; }

Real::Real() {
    mpfr_init2(v_, g_bits);
    mpfr_set_zero(v_, 1);
}

Real::Real(int v) {
    mpfr_init2(v_, g_bits);
    mpfr_set_si(v_, v, kRnd);
}

Real::Real(long v) {
    mpfr_init2(v_, g_bits);
    mpfr_set_si(v_, v, kRnd);
}

Real::Real(unsigned long v) {
    mpfr_init2(v_, g_bits);
    mpfr_set_ui(v_, v, kRnd);
}

Real::Real(double v) {
    mpfr_init2(v_, g_bits);
    mpfr_set_d(v_, v, kRnd);
}

Real::Real(std::string_view text) {
    mpfr_init2(v_, g_bits);
    std::string s(text);
    // trim
    const auto b = s.find_first_not_of(" \t\n");
    const auto e = s.find_last_not_of(" \t\n");
    s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    if (s.empty() || mpfr_set_str(v_, s.c_str(), 10, kRnd) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    }
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, kRnd);
}

Real::Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        if (!initialized(v_)) mpfr_init2(v_, mpfr_get_prec(o.v_));
        else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, kRnd);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) {
        if (initialized(v_)) mpfr_swap(v_, o.v_);
        else {
            v_[0] = o.v_[0];
            o.v_->_mpfr_d = nullptr;
        }
    }
    return *this;
}

Real::~Real() {
    if (initialized(v_)) mpfr_clear(v_);
}

Real& Real::operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, kRnd);
    return *this;
}

Real& Real::operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, kRnd);
    return *this;
}

Real& Real::operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, kRnd);
    return *this;
}

Real& Real::operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, kRnd);
    return *this;
}

Real Real::operator-() const {
    Real r;
    mpfr_neg(r.v_, v_, kRnd);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v_, a.v_, b.v_, kRnd);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v_, a.v_, b.v_, kRnd);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v_, a.v_, b.v_, kRnd);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v_, a.v_, b.v_, kRnd);
    return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

double Real::to_double() const { return mpfr_get_d(v_, kRnd); }
long Real::to_long() const { return mpfr_get_si(v_, MPFR_RNDZ); }
bool Real::is_zero() const { return mpfr_zero_p(v_) != 0; }
bool Real::is_finite() const { return mpfr_number_p(v_) != 0; }
int Real::sign() const { return mpfr_sgn(v_); }
long Real::precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

// Shortest decimal that reads back to the same value at this precision.
std::string Real::str() const {
    const long bits = precision();
    const int digits = static_cast<int>(std::ceil(static_cast<double>(bits) * std::log10(2.0))) + 1;
    if (!is_finite() || is_zero()) return str(digits);
    mpfr_t back;
    mpfr_init2(back, bits);
    std::string out;
    for (int n = 1; n < digits; ++n) {
        out = str(n);
        mpfr_set_str(back, out.c_str(), 10, kRnd);
        if (mpfr_equal_p(back, v_)) break;
        out.clear();
    }
    mpfr_clear(back);
    return out.empty() ? str(digits) : out;
}

std::string Real::str(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, kRnd);
    std::string m(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!m.empty() && m[0] == '-') {
        sign = "-";
        m.erase(0, 1);
    }
    // strip trailing zeros of the mantissa, keep at least one digit
    while (m.size() > 1 && m.back() == '0') m.pop_back();
    std::string out = sign + m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    const long exp10 = static_cast<long>(e) - 1;
    if (exp10 != 0) out += "e" + std::to_string(exp10);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(); }

#define SPLITFORGE_UNARY(name, fn)          \
    Real name(const Real& x) {              \
        Real r;                             \
        fn(r.raw(), x.raw(), kRnd);         \
        return r;                           \
    }

SPLITFORGE_UNARY(abs, mpfr_abs)
SPLITFORGE_UNARY(sqrt, mpfr_sqrt)
SPLITFORGE_UNARY(cbrt, mpfr_cbrt)
SPLITFORGE_UNARY(exp, mpfr_exp)
SPLITFORGE_UNARY(log, mpfr_log)
SPLITFORGE_UNARY(sin, mpfr_sin)
SPLITFORGE_UNARY(cos, mpfr_cos)
SPLITFORGE_UNARY(tan, mpfr_tan)
SPLITFORGE_UNARY(sinh, mpfr_sinh)
SPLITFORGE_UNARY(cosh, mpfr_cosh)
SPLITFORGE_UNARY(tanh, mpfr_tanh)
SPLITFORGE_UNARY(atanh, mpfr_atanh)

#undef SPLITFORGE_UNARY

Real atan2(const Real& y, const Real& x) {
    Real r;
    mpfr_atan2(r.raw(), y.raw(), x.raw(), kRnd);
    return r;
}

Real hypot(const Real& a, const Real& b) {
    Real r;
    mpfr_hypot(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r;
    mpfr_pow(r.raw(), x.raw(), y.raw(), kRnd);
    return r;
}

Real pow(const Real& x, long n) {
    Real r;
    mpfr_pow_si(r.raw(), x.raw(), n, kRnd);
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r;
    if (e >= 0) mpfr_mul_2ui(r.raw(), x.raw(), static_cast<unsigned long>(e), kRnd);
    else mpfr_div_2ui(r.raw(), x.raw(), static_cast<unsigned long>(-e), kRnd);
    return r;
}

Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real floor(const Real& x) {
    Real r;
    mpfr_floor(r.raw(), x.raw());
    return r;
}

Real ceil(const Real& x) {
    Real r;
    mpfr_ceil(r.raw(), x.raw());
    return r;
}

Real pi() {
    Real r;
    mpfr_const_pi(r.raw(), kRnd);
    return r;
}

Real ln2() {
    Real r;
    mpfr_const_log2(r.raw(), kRnd);
    return r;
}

Real epsilon() { return ldexp(Real(1), -(thread_precision() - 1)); }

}  // namespace splitforge
