#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bilip/bigfloat.hpp"

namespace bilip {

using Rational = mpq_class;
using Integer = mpz_class;

/// Working precision and the zero-decision threshold derived from it.
struct Precision {
  unsigned bits = 256;
  unsigned max_bits = 4096;
  /// Overrides the default threshold 2^(-bits/2) when set.
  std::optional<long double> eps_override;

  long double eps() const;
  Precision doubled() const;
};

struct ExactValue {
  Rational re;
  Rational im;
};

/// A complex ball: |true value - (re + i im)| <= err.
struct ApproxValue {
  BigFloat re;
  BigFloat im;
  long double err = 0;
  unsigned prec = 256;
};

enum class ZeroTest { Zero, NonZero, Unknown };

/// Coefficient field element: an exact Gaussian rational or a complex ball.
/// Exact op Exact stays Exact; anything touching an Approx is Approx.
class Scalar {
 public:
  Scalar() : v_(ExactValue{}) {}
  Scalar(long v) : v_(ExactValue{Rational(v), Rational(0)}) {}  // NOLINT
  Scalar(int v) : Scalar(static_cast<long>(v)) {}               // NOLINT
  Scalar(Rational re) : v_(ExactValue{std::move(re), Rational(0)}) {}  // NOLINT
  Scalar(Rational re, Rational im) : v_(ExactValue{std::move(re), std::move(im)}) {}
  explicit Scalar(ApproxValue a);

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar approx(BigFloat re, BigFloat im, long double err);

  bool is_exact() const { return std::holds_alternative<ExactValue>(v_); }
  const ExactValue& exact() const { return std::get<ExactValue>(v_); }
  const ApproxValue& approx() const { return std::get<ApproxValue>(v_); }

  /// Ball representation at `prec` bits (exact values get a rounding radius).
  ApproxValue to_approx(unsigned prec) const;
  /// Precision of an Approx value, 0 for Exact.
  unsigned precision() const;

  /// Exactly zero (Exact only). Approx values are never exactly zero.
  bool is_exact_zero() const;
  bool is_real_rational() const { return is_exact() && sgn(exact().im) == 0; }

  long double abs_center() const;
  long double abs_upper() const;
  long double radius() const { return is_exact() ? 0.0L : approx().err; }
  std::complex<double> to_complex() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar pow(long n) const;
  Scalar conj() const;

  /// "p/q+r/s*i" for Exact (zero parts omitted), decimal ball otherwise.
  std::string to_string() const;

  /// Structural identity: same representation and same numbers.
  friend bool identical(const Scalar& a, const Scalar& b);

 private:
  std::variant<ExactValue, ApproxValue> v_;
};

ZeroTest zero_test(const Scalar& s, long double eps);
/// Zero test that throws AmbiguousZero on Unknown.
bool is_zero(const Scalar& s, const Precision& p);
/// a == b decided by is_zero(a - b).
bool approx_equal(const Scalar& a, const Scalar& b, const Precision& p);

/// Lexicographic order on centers, real part first.
int lex_compare(const Scalar& a, const Scalar& b);

/// All n-th roots of z. Exact whenever the root is a Gaussian rational that
/// can be found by perfect-power tests, otherwise balls at `prec` bits.
std::vector<Scalar> nth_roots(const Scalar& z, unsigned n, unsigned prec);
/// Principal n-th root (argument in (-pi/n, pi/n]), exact where possible.
Scalar principal_root(const Scalar& z, unsigned n, unsigned prec);
/// exp(2 pi i k / n). Exact for n in {1, 2, 4}.
Scalar root_of_unity(long k, unsigned n, unsigned prec);
/// z^(p/q) through the principal q-th root.
Scalar pow_rational(const Scalar& z, const Rational& e, unsigned prec);
/// Exact square root in Q(i) if it exists.
std::optional<Scalar> exact_sqrt(const Scalar& z);

struct RootCluster {
  Scalar root;
  int multiplicity = 1;
};

/// All complex roots of sum coeffs[k] z^k with multiplicities summing to the
/// degree. Exact where closed forms or rational screening succeed.
std::vector<RootCluster> univariate_roots(std::span<const Scalar> coeffs, const Precision& p);

/// Parse "p/q+r/s*i"-style text (any constant expression of the polynomial grammar).
Scalar parse_scalar(const std::string& text);

}  // namespace bilip
