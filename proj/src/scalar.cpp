#include "bilip/scalar.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bilip/errors.hpp"

namespace bilip {

namespace {

constexpr long double kSlack = 1.0L + 0x1p-60L;
constexpr long double kInf = std::numeric_limits<long double>::infinity();

long double unit_roundoff(unsigned prec) { return std::ldexp(1.0L, 1 - static_cast<int>(prec)); }

long double up(long double x) { return x * kSlack; }

long double rational_abs_upper(const Rational& q) {
  BigFloat b(q, 80);
  return b.abs_upper();
}

long double hypot_upper(const BigFloat& re, const BigFloat& im) {
  return up(hypot(re.with_precision(80), im.with_precision(80)).to_ld() * kSlack);
}

long double hypot_lower(const BigFloat& re, const BigFloat& im) {
  return hypot(re.with_precision(80), im.with_precision(80)).to_ld() / (kSlack * kSlack);
}

Scalar make_approx(BigFloat re, BigFloat im, long double err) {
  return Scalar::approx(std::move(re), std::move(im), err);
}

unsigned working_prec(const Scalar& a, const Scalar& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

long double Precision::eps() const {
  if (eps_override) return *eps_override;
  return std::ldexp(1.0L, -static_cast<int>(bits / 2));
}

Precision Precision::doubled() const {
  if (bits * 2 > max_bits) {
    fail(ErrorKind::PrecisionExhausted,
         "cannot raise precision beyond " + std::to_string(max_bits) + " bits");
  }
  Precision p = *this;
  p.bits *= 2;
  return p;
}

Scalar::Scalar(ApproxValue a) : v_(std::move(a)) {}

Scalar Scalar::approx(BigFloat re, BigFloat im, long double err) {
  ApproxValue a{std::move(re), std::move(im), err, 0};
  a.prec = static_cast<unsigned>(std::max(a.re.precision(), a.im.precision()));
  if (a.re.precision() != a.im.precision()) {
    a.re = a.re.with_precision(a.prec);
    a.im = a.im.with_precision(a.prec);
  }
  return Scalar(std::move(a));
}

unsigned Scalar::precision() const { return is_exact() ? 0u : approx().prec; }

ApproxValue Scalar::to_approx(unsigned prec) const {
  if (is_exact()) {
    const auto& e = exact();
    ApproxValue a{BigFloat(e.re, prec), BigFloat(e.im, prec), 0, prec};
    if (e.re.get_den() != 1 || e.im.get_den() != 1 || mpz_sizeinbase(e.re.get_num_mpz_t(), 2) > prec ||
        mpz_sizeinbase(e.im.get_num_mpz_t(), 2) > prec) {
      a.err = up((rational_abs_upper(e.re) + rational_abs_upper(e.im)) * unit_roundoff(prec));
    }
    return a;
  }
  const auto& a = approx();
  if (a.prec == prec) return a;
  ApproxValue r{a.re.with_precision(prec), a.im.with_precision(prec), a.err, prec};
  if (prec < a.prec) r.err = up(r.err + hypot_upper(a.re, a.im) * unit_roundoff(prec) * 2);
  return r;
}

bool Scalar::is_exact_zero() const {
  return is_exact() && sgn(exact().re) == 0 && sgn(exact().im) == 0;
}

long double Scalar::abs_center() const {
  if (is_exact()) {
    return hypot(BigFloat(exact().re, 80), BigFloat(exact().im, 80)).to_ld();
  }
  return hypot(approx().re, approx().im).to_ld();
}

long double Scalar::abs_upper() const {
  if (is_exact()) return hypot_upper(BigFloat(exact().re, 80), BigFloat(exact().im, 80));
  return up(hypot_upper(approx().re, approx().im) + approx().err);
}

std::complex<double> Scalar::to_complex() const {
  if (is_exact()) return {exact().re.get_d(), exact().im.get_d()};
  return {static_cast<double>(approx().re.to_ld()), static_cast<double>(approx().im.to_ld())};
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-exact().re), Rational(-exact().im));
  const auto& a = approx();
  return make_approx(-a.re, -a.im, a.err);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    return Scalar(Rational(a.exact().re + b.exact().re), Rational(a.exact().im + b.exact().im));
  }
  const unsigned prec = working_prec(a, b);
  ApproxValue x = a.to_approx(prec);
  ApproxValue y = b.to_approx(prec);
  BigFloat re = x.re + y.re;
  BigFloat im = x.im + y.im;
  long double err = up(x.err + y.err + hypot_upper(re, im) * unit_roundoff(prec));
  return make_approx(std::move(re), std::move(im), err);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.exact();
    const auto& y = b.exact();
    return Scalar(Rational(x.re * y.re - x.im * y.im), Rational(x.re * y.im + x.im * y.re));
  }
  const unsigned prec = working_prec(a, b);
  ApproxValue x = a.to_approx(prec);
  ApproxValue y = b.to_approx(prec);
  BigFloat re = x.re * y.re - x.im * y.im;
  BigFloat im = x.re * y.im + x.im * y.re;
  const long double ax = hypot_upper(x.re, x.im);
  const long double ay = hypot_upper(y.re, y.im);
  long double err = up(ax * y.err + ay * x.err + x.err * y.err + 4 * ax * ay * unit_roundoff(prec));
  return make_approx(std::move(re), std::move(im), err);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_exact_zero()) fail(ErrorKind::InvalidArgument, "division by exact zero");
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.exact();
    const auto& y = b.exact();
    Rational d = y.re * y.re + y.im * y.im;
    return Scalar(Rational((x.re * y.re + x.im * y.im) / d), Rational((x.im * y.re - x.re * y.im) / d));
  }
  const unsigned prec = working_prec(a, b);
  ApproxValue y = b.to_approx(prec);
  const long double lower = hypot_lower(y.re, y.im);
  BigFloat d = y.re * y.re + y.im * y.im;
  long double err;
  if (!(lower > y.err) || d.is_zero()) {
    err = kInf;
  } else {
    err = up(y.err / (lower * (lower - y.err)) + 6 * unit_roundoff(prec) / lower);
  }
  if (d.is_zero()) d = BigFloat(1, prec);
  Scalar inv = make_approx(y.re / d, -(y.im / d), err);
  return a * inv;
}

Scalar Scalar::pow(long n) const {
  if (n < 0) return (Scalar(1) / *this).pow(-n);
  Scalar result(1);
  Scalar base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Scalar Scalar::conj() const {
  if (is_exact()) return Scalar(exact().re, Rational(-exact().im));
  return make_approx(approx().re, -approx().im, approx().err);
}

std::string Scalar::to_string() const {
  std::ostringstream out;
  if (is_exact()) {
    const auto& e = exact();
    const bool re0 = sgn(e.re) == 0;
    const bool im0 = sgn(e.im) == 0;
    if (re0 && im0) return "0";
    if (!re0) out << e.re.get_str();
    if (!im0) {
      if (!re0 && sgn(e.im) > 0) out << '+';
      out << e.im.get_str() << "*i";
    }
    return out.str();
  }
  const auto& a = approx();
  out << a.re.to_string(20);
  if (!a.im.is_zero()) {
    std::string im = a.im.to_string(20);
    if (im.front() != '-') out << '+';
    out << im << "*i";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1Le", a.err);
  out << " (+/-" << buf << ")";
  return out.str();
}

bool identical(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact().re == b.exact().re && a.exact().im == b.exact().im;
  const auto& x = a.approx();
  const auto& y = b.approx();
  return x.prec == y.prec && x.err == y.err && x.re == y.re && x.im == y.im;
}

ZeroTest zero_test(const Scalar& s, long double eps) {
  if (s.is_exact()) return s.is_exact_zero() ? ZeroTest::Zero : ZeroTest::NonZero;
  const auto& a = s.approx();
  const long double lo = hypot_lower(a.re, a.im);
  const long double hi = hypot_upper(a.re, a.im);
  if (lo > a.err + eps) return ZeroTest::NonZero;
  if (hi + a.err <= eps) return ZeroTest::Zero;
  return ZeroTest::Unknown;
}

bool is_zero(const Scalar& s, const Precision& p) {
  switch (zero_test(s, p.eps())) {
    case ZeroTest::Zero: return true;
    case ZeroTest::NonZero: return false;
    case ZeroTest::Unknown: break;
  }
  fail(ErrorKind::AmbiguousZero, "cannot decide whether " + s.to_string() + " vanishes at " +
                                      std::to_string(p.bits) + " bits");
}

bool approx_equal(const Scalar& a, const Scalar& b, const Precision& p) { return is_zero(a - b, p); }

int lex_compare(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.exact().re, b.exact().re);
    if (c != 0) return c < 0 ? -1 : 1;
    c = cmp(a.exact().im, b.exact().im);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  const unsigned prec = std::max({a.precision(), b.precision(), 128u});
  ApproxValue x = a.to_approx(prec);
  ApproxValue y = b.to_approx(prec);
  if (x.re < y.re) return -1;
  if (x.re > y.re) return 1;
  if (x.im < y.im) return -1;
  if (x.im > y.im) return 1;
  return 0;
}

namespace {

std::optional<Rational> exact_rational_root(const Rational& q, unsigned n) {
  if (sgn(q) == 0) return Rational(0);
  const bool neg = sgn(q) < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) return std::nullopt;
  Rational r(neg ? Integer(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

Scalar approx_principal_root(const Scalar& z, unsigned n, unsigned prec) {
  ApproxValue a = z.to_approx(prec + 16);
  const mpfr_prec_t wp = prec + 16;
  BigFloat mag = hypot(a.re, a.im);
  BigFloat arg = atan2(a.im, a.re);
  BigFloat r = root(mag, n);
  BigFloat phi = arg / BigFloat(static_cast<long>(n), wp);
  BigFloat re = (r * cos(phi)).with_precision(prec);
  BigFloat im = (r * sin(phi)).with_precision(prec);
  const long double lower = hypot_lower(a.re, a.im) - a.err;
  long double err;
  if (a.err == 0) {
    err = 0;
  } else if (!(lower > 0) || a.err * 2 > lower) {
    err = kInf;
  } else {
    // |d z^(1/n)| <= |dz| / (n |z|^(1-1/n)) on the ball; doubled for curvature.
    const long double rl = std::pow(lower, 1.0L - 1.0L / n);
    err = 2 * a.err / (n * rl);
  }
  err = up(err + 8 * r.abs_upper() * unit_roundoff(prec));
  return make_approx(std::move(re), std::move(im), err);
}

}  // namespace

std::optional<Scalar> exact_sqrt(const Scalar& z) {
  if (!z.is_exact()) return std::nullopt;
  const auto& e = z.exact();
  if (sgn(e.im) == 0) {
    if (sgn(e.re) >= 0) {
      auto r = exact_rational_root(e.re, 2);
      if (r) return Scalar(*r);
      return std::nullopt;
    }
    auto r = exact_rational_root(Rational(-e.re), 2);
    if (r) return Scalar(Rational(0), *r);
    return std::nullopt;
  }
  auto m = exact_rational_root(Rational(e.re * e.re + e.im * e.im), 2);
  if (!m) return std::nullopt;
  auto p = exact_rational_root(Rational((e.re + *m) / 2), 2);
  auto q = exact_rational_root(Rational((*m - e.re) / 2), 2);
  if (!p || !q) return std::nullopt;
  Rational qi = sgn(e.im) > 0 ? *q : Rational(-*q);
  return Scalar(*p, qi);
}

Scalar principal_root(const Scalar& z, unsigned n, unsigned prec) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "zeroth root");
  if (n == 1 || z.is_exact_zero()) return z;
  if (z.is_exact()) {
    const auto& e = z.exact();
    if (sgn(e.im) == 0 && sgn(e.re) > 0) {
      if (auto r = exact_rational_root(e.re, n)) return Scalar(*r);
    }
    if (n % 2 == 0) {
      // principal sqrt of a principal root is principal
      if (auto s = exact_sqrt(z)) {
        Scalar sq = *s;
        const auto& se = sq.exact();
        if (sgn(se.re) < 0 || (sgn(se.re) == 0 && sgn(se.im) < 0)) sq = -sq;
        return principal_root(sq, n / 2, prec);
      }
    }
  }
  return approx_principal_root(z, n, prec);
}

Scalar root_of_unity(long k, unsigned n, unsigned prec) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "root of unity of order 0");
  long kk = ((k % static_cast<long>(n)) + n) % n;
  if ((4 * kk) % n == 0) {
    switch ((4 * kk) / n) {
      case 0: return Scalar(1);
      case 1: return Scalar::i();
      case 2: return Scalar(-1);
      case 3: return -Scalar::i();
    }
  }
  const mpfr_prec_t wp = prec + 16;
  BigFloat angle = BigFloat::pi(wp) * BigFloat(2 * kk, wp) / BigFloat(static_cast<long>(n), wp);
  return make_approx(cos(angle).with_precision(prec), sin(angle).with_precision(prec),
                     up(4 * unit_roundoff(prec)));
}

std::vector<Scalar> nth_roots(const Scalar& z, unsigned n, unsigned prec) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "zeroth root");
  if (z.is_exact_zero()) return std::vector<Scalar>(n, Scalar(0));
  Scalar base = principal_root(z, n, prec);
  if (!base.is_exact() && z.is_real_rational() && sgn(z.exact().re) < 0 && n % 2 == 1) {
    if (auto r = exact_rational_root(z.exact().re, n)) base = Scalar(*r);
  }
  std::vector<Scalar> out;
  out.reserve(n);
  for (unsigned k = 0; k < n; ++k) out.push_back(base * root_of_unity(k, n, prec));
  return out;
}

Scalar pow_rational(const Scalar& z, const Rational& e, unsigned prec) {
  const long p = e.get_num().get_si();
  const unsigned long q = e.get_den().get_ui();
  if (q == 1) return z.pow(p);
  return principal_root(z, static_cast<unsigned>(q), prec).pow(p);
}

}  // namespace bilip
