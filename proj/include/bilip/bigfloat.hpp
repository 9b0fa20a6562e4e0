#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace bilip {

/// Owning handle to an mpfr_t with an explicit bit precision. Binary
/// operations round to the larger of the operand precisions.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 256) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  BigFloat(const mpq_class& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    // Leave `o` valid (mpfr has no moved-from state).
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_ld(long double v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ld(r.v_, v, MPFR_RNDN);
    return r;
  }

  /// Decimal or scientific notation; throws std::invalid_argument on junk.
  static BigFloat from_string(const std::string& text, mpfr_prec_t prec) {
    BigFloat r(prec);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("not a decimal number: " + text);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  BigFloat with_precision(mpfr_prec_t prec) const {
    BigFloat r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  long double to_ld() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Upper bound on |this| as a long double.
  long double abs_upper() const { return mpfr_get_ld(v_, MPFR_RNDA) * (1.0L + 0x1p-60L); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  mpq_class to_rational() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

  std::string to_string(int digits = 20) const {
    if (mpfr_zero_p(v_)) return "0";
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define BILIP_BIGFLOAT_BINOP(op, fn)                                      \
  friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {     \
    BigFloat r(std::max(a.precision(), b.precision()));                  \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                      \
    return r;                                                             \
  }                                                                       \
  BigFloat& operator op##=(const BigFloat& b) {                           \
    *this = *this op b;                                                   \
    return *this;                                                         \
  }
  BILIP_BIGFLOAT_BINOP(+, mpfr_add)
  BILIP_BIGFLOAT_BINOP(-, mpfr_sub)
  BILIP_BIGFLOAT_BINOP(*, mpfr_mul)
  BILIP_BIGFLOAT_BINOP(/, mpfr_div)
#undef BILIP_BIGFLOAT_BINOP

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat cos(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sin(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  /// a^(1/n) for a >= 0.
  friend BigFloat root(const BigFloat& a, unsigned long n) {
    BigFloat r(a.precision());
    mpfr_rootn_ui(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

}  // namespace bilip
