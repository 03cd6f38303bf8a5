#include "tunnelkit/bigreal.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace tunnelkit {

namespace {
thread_local int t_digits = 30;
}

mpfr_prec_t digits_to_bits(int digits) {
  if (digits < 1) digits = 1;
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

int working_digits() { return t_digits; }
mpfr_prec_t working_bits() { return digits_to_bits(t_digits); }

PrecisionScope::PrecisionScope(int digits) : saved_digits_(t_digits) {
  if (digits < 1) throw std::invalid_argument("precision must be positive");
  t_digits = digits;
}

PrecisionScope::~PrecisionScope() { t_digits = saved_digits_; }

BigReal::BigReal() {
  mpfr_init2(v_, working_bits());
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(int v) {
  mpfr_init2(v_, working_bits());
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(long v) {
  mpfr_init2(v_, working_bits());
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigReal::BigReal(long long v) {
  mpfr_init2(v_, working_bits());
  mpfr_set_sj(v_, static_cast<intmax_t>(v), MPFR_RNDN);
}

BigReal::BigReal(unsigned long v) {
  mpfr_init2(v_, working_bits());
  mpfr_set_ui(v_, v, MPFR_RNDN);
}

BigReal::BigReal(double v) {
  mpfr_init2(v_, working_bits());
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigReal::BigReal(const std::string& text) {
  mpfr_init2(v_, working_bits());
  if (mpfr_set_str(v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a number: '" + text + "'");
  }
}

BigReal::BigReal(const mpq_class& q) {
  mpfr_init2(v_, working_bits());
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& z) {
  mpfr_init2(v_, working_bits());
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(mpfr_srcptr src) {
  mpfr_init2(v_, working_bits());
  mpfr_set(v_, src, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    if (mpfr_get_prec(v_) < mpfr_get_prec(other.v_)) mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::pi() {
  BigReal r;
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::tiny() {
  BigReal r;
  mpfr_set_zero(r.v_, 1);
  mpfr_nextabove(r.v_);
  return r;
}

BigReal BigReal::pow10(long e) {
  BigReal r(10);
  mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

int BigReal::digits() const {
  return static_cast<int>(std::floor((mpfr_get_prec(v_) - 16) / 3.321928094887362));
}

double BigReal::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

long double BigReal::to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }

std::string BigReal::str(int significant) const {
  if (significant < 1) significant = 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", significant - 1, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string BigReal::str() const { return str(digits()); }

BigReal& BigReal::operator+=(const BigReal& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define TK_UNARY(name, fn)                 \
  BigReal name(const BigReal& x) {         \
    BigReal r;                             \
    fn(r.raw(), x.raw(), MPFR_RNDN);       \
    return r;                              \
  }

TK_UNARY(abs, mpfr_abs)
TK_UNARY(sqrt, mpfr_sqrt)
TK_UNARY(exp, mpfr_exp)
TK_UNARY(log, mpfr_log)
TK_UNARY(log10, mpfr_log10)
TK_UNARY(sin, mpfr_sin)
TK_UNARY(cos, mpfr_cos)
TK_UNARY(tan, mpfr_tan)
TK_UNARY(sinh, mpfr_sinh)
TK_UNARY(cosh, mpfr_cosh)
TK_UNARY(tanh, mpfr_tanh)
TK_UNARY(asinh, mpfr_asinh)
TK_UNARY(atan, mpfr_atan)

#undef TK_UNARY

BigReal floor(const BigReal& x) {
  BigReal r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}

BigReal ceil(const BigReal& x) {
  BigReal r;
  mpfr_ceil(r.raw(), x.raw());
  return r;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r;
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

BigReal hypot(const BigReal& x, const BigReal& y) {
  BigReal r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  auto p = os.precision();
  return os << x.str(p > 0 ? static_cast<int>(p) : 17);
}

}  // namespace tunnelkit
