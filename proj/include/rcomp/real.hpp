#pragma once

// Value-semantic wrapper over an MPFR float plus the handful of directed
// rounding primitives the certified evaluators need.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "rcomp/error.hpp"

namespace rcomp {

using Bits = mpfr_prec_t;

inline constexpr Bits kDefaultPrecision = 96;

class Real {
 public:
  explicit Real(Bits prec = kDefaultPrecision) {
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
  }

  Real(double v, Bits prec) {
    mpfr_init2(value_, prec);
    mpfr_set_d(value_, v, MPFR_RNDN);
  }

  Real(const mpz_class& v, Bits prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(value_, prec);
    mpfr_set_z(value_, v.get_mpz_t(), rnd);
  }

  /// Parses a decimal literal; throws ParseError on malformed input.
  static Real parse(std::string_view text, Bits prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(prec);
    std::string s(text);
    char* end = nullptr;
    mpfr_strtofr(r.value_, s.c_str(), &end, 10, rnd);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw Error(ErrorCode::ParseError, "not a real number: '" + s + "'");
    }
    return r;
  }

  Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }

  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }

  ~Real() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  Bits precision() const { return mpfr_get_prec(value_); }

  /// Same value re-rounded to a new precision.
  Real with_precision(Bits prec, mpfr_rnd_t rnd = MPFR_RNDN) const {
    Real r(prec);
    mpfr_set(r.value_, value_, rnd);
    return r;
  }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Fixed-point rendering; MPFR's nearest rounding of the decimal output is
  /// ties-to-even.
  std::string to_fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNf", decimals, value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  std::string to_scientific(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNe", digits, value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    const int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

  friend std::partial_ordering operator<=>(const Real& a, double b) {
    const int c = mpfr_cmp_d(a.value_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.value_, b) == 0; }

 private:
  mpfr_t value_;
};

// Directed-rounding arithmetic. The result precision is the larger of the
// operand precisions unless given explicitly.

inline Bits common_precision(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

inline Real add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r(common_precision(a, b));
  mpfr_add(r.get(), a.get(), b.get(), rnd);
  return r;
}

inline Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r(common_precision(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), rnd);
  return r;
}

inline Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r(common_precision(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), rnd);
  return r;
}

inline Real div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r(common_precision(a, b));
  mpfr_div(r.get(), a.get(), b.get(), rnd);
  return r;
}

inline Real mul(const Real& a, const mpz_class& b, mpfr_rnd_t rnd) {
  Real r(a.precision());
  mpfr_mul_z(r.get(), a.get(), b.get_mpz_t(), rnd);
  return r;
}

/// x^e for a big-integer exponent, correctly rounded in direction `rnd`.
inline Real pow(const Real& x, const mpz_class& e, mpfr_rnd_t rnd) {
  Real r(x.precision());
  mpfr_pow_z(r.get(), x.get(), e.get_mpz_t(), rnd);
  return r;
}

/// 1 - x rounded in direction `rnd`.
inline Real one_minus(const Real& x, mpfr_rnd_t rnd) {
  Real r(x.precision());
  mpfr_ui_sub(r.get(), 1, x.get(), rnd);
  return r;
}

inline Real operator+(const Real& a, const Real& b) { return add(a, b, MPFR_RNDN); }
inline Real operator-(const Real& a, const Real& b) { return sub(a, b, MPFR_RNDN); }
inline Real operator*(const Real& a, const Real& b) { return mul(a, b, MPFR_RNDN); }
inline Real operator/(const Real& a, const Real& b) { return div(a, b, MPFR_RNDN); }

inline Real abs(const Real& a) {
  Real r(a.precision());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

/// 2^e as an exact Real.
inline Real exp2i(long e, Bits prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

/// Bits needed so that a quantity of size ~1 is resolved to `tol`, plus a
/// guard margin.
inline Bits bits_for_tolerance(double tol, Bits margin) {
  if (!(tol > 0)) throw Error(ErrorCode::XOutOfRange, "tolerance must be positive");
  return static_cast<Bits>(std::ceil(-std::log2(tol))) + margin;
}

}  // namespace rcomp
