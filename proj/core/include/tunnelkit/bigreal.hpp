#pragma once

// before mpfr.h so the intmax_t setters are declared
#include <cstdint>
#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace tunnelkit {

// Decimal digits -> MPFR mantissa bits, including a few guard bits.
mpfr_prec_t digits_to_bits(int digits);

// Working precision of the calling thread, in decimal digits.
int working_digits();
mpfr_prec_t working_bits();

// Sets the thread's working precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_digits_;
};

// Arbitrary precision real. New values are created at the thread's working
// precision; copies keep the precision of their source.
class BigReal {
 public:
  BigReal();
  BigReal(int v);
  BigReal(long v);
  BigReal(long long v);
  BigReal(unsigned long v);
  BigReal(double v);
  explicit BigReal(const std::string& text);
  explicit BigReal(const char* text) : BigReal(std::string(text)) {}
  explicit BigReal(const mpq_class& q);
  explicit BigReal(const mpz_class& z);
  explicit BigReal(mpfr_srcptr src);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal pi();
  static BigReal zero() { return BigReal(); }
  // Smallest positive representable value.
  static BigReal tiny();
  static BigReal pow10(long e);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  int digits() const;

  double to_double() const;
  long double to_long_double() const;
  // Scientific notation with the given number of significant digits.
  std::string str(int significant) const;
  std::string str() const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

 private:
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log10(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal asinh(const BigReal& x);
BigReal atan(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal hypot(const BigReal& x, const BigReal& y);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
BigReal floor(const BigReal& x);
BigReal ceil(const BigReal& x);

std::ostream& operator<<(std::ostream& os, const BigReal& x);

}  // namespace tunnelkit
