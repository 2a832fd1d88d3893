#pragma once

// Thin RAII value type over mpfr_t with an explicit precision in bits.
// Binary operators produce a result at the larger operand precision, rounding to nearest.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace mzstar {

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(double x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const mpq_class& q, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) < mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (mpfr_get_prec(v_) <= mpfr_get_prec(o.v_))
      mpfr_swap(v_, o.v_);
    else
      mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }

  static Real pi(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// k^{-e}
  static Real inverse_power(unsigned long k, unsigned long e, mpfr_prec_t bits) {
    Real r(bits);
    mpfr_ui_pow_ui(r.v_, k, e, MPFR_RNDN);
    mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

  friend Real operator+(const Real& x, const Real& y) { return binary(x, y, mpfr_add); }
  friend Real operator-(const Real& x, const Real& y) { return binary(x, y, mpfr_sub); }
  friend Real operator*(const Real& x, const Real& y) { return binary(x, y, mpfr_mul); }
  friend Real operator/(const Real& x, const Real& y) { return binary(x, y, mpfr_div); }
  friend Real operator-(const Real& x) {
    Real r(x.precision());
    mpfr_neg(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& x, const Real& y) { return mpfr_less_p(x.v_, y.v_) != 0; }
  friend bool operator<=(const Real& x, const Real& y) { return mpfr_lessequal_p(x.v_, y.v_) != 0; }
  friend bool operator>(const Real& x, const Real& y) { return mpfr_greater_p(x.v_, y.v_) != 0; }
  friend bool operator>=(const Real& x, const Real& y) { return mpfr_greaterequal_p(x.v_, y.v_) != 0; }
  friend bool operator==(const Real& x, const Real& y) { return mpfr_equal_p(x.v_, y.v_) != 0; }

  friend Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& x) {
    Real r(x.precision());
    mpfr_sin(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& x, unsigned long e) {
    Real r(x.precision());
    mpfr_pow_ui(r.v_, x.v_, e, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& x) {
    Real r(x.precision());
    mpfr_log(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real max(const Real& x, const Real& y) { return x < y ? y : x; }

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  /// Scientific notation with `digits` significant digits (default: all meaningful ones).
  [[nodiscard]] std::string to_string(int digits = 0) const {
    if (digits <= 0) digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 1;
    char* buf = nullptr;
    const std::string fmt = "%." + std::to_string(digits - 1) + "Re";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

 private:
  template <class Op>
  static Real binary(const Real& x, const Real& y, Op op) {
    Real r(std::max(x.precision(), y.precision()));
    op(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

}  // namespace mzstar
