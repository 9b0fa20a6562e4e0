// Univariate root finding for Newton-polygon edge polynomials.
//
// Exact inputs are split into squarefree factors first (Yun), so exact
// multiplicities never depend on numerics. Each factor goes through rational
// screening, then closed forms for degree <= 2, then Aberth-Ehrlich.
// Approximate inputs go straight to Aberth-Ehrlich; roots whose inclusion
// disks overlap are merged into one cluster.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bilip/errors.hpp"
#include "bilip/scalar.hpp"

namespace bilip {

namespace {

using Poly = std::vector<Scalar>;  // coefficient k multiplies z^k

constexpr long double kInf = std::numeric_limits<long double>::infinity();

void trim(Poly& p) {
  while (!p.empty() && p.back().is_exact_zero()) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Scalar(static_cast<long>(k)));
  trim(d);
  return d;
}

// Exact long division; only called on exact polynomials.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (degree(a) < degree(b)) return {q, a};
  q.assign(a.size() - b.size() + 1, Scalar(0));
  const Scalar& lead = b.back();
  for (int k = degree(a) - degree(b); k >= 0; --k) {
    Scalar c = a[k + degree(b)] / lead;
    q[k] = c;
    if (c.is_exact_zero()) continue;
    for (int j = 0; j <= degree(b); ++j) a[k + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

Poly monic(Poly p) {
  Scalar lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic(a);
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Scalar(0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
  trim(r);
  return r;
}

// Yun's squarefree decomposition: p = c * prod factors[k]^(k+1).
std::vector<std::pair<Poly, int>> squarefree_factors(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  Poly dp = derivative(p);
  Poly a = gcd(p, dp);
  Poly b = divmod(p, a).first;
  Poly c = divmod(dp, a).first;
  Poly d = sub(c, derivative(b));
  int mult = 1;
  while (degree(b) > 0) {
    Poly g = gcd(b, d);
    if (g.empty()) g = Poly{Scalar(1)};
    if (degree(g) > 0) out.emplace_back(g, mult);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = sub(c, derivative(b));
    ++mult;
  }
  return out;
}

Scalar horner(const Poly& p, const Scalar& z) {
  Scalar acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> small, large;
  Integer a = abs(n);
  for (Integer d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Rational roots of a squarefree polynomial with real rational coefficients.
std::vector<Rational> rational_roots(const Poly& p) {
  std::vector<Rational> out;
  Integer lcm_den = 1;
  for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.exact().re.get_den_mpz_t());
  std::vector<Integer> ints;
  for (const auto& c : p) ints.push_back(Integer(c.exact().re * lcm_den));
  // c_0 == 0 is handled by the caller (zero roots are stripped first).
  static const Integer kLimit("1000000000000");
  if (abs(ints.front()) > kLimit || abs(ints.back()) > kLimit) return out;
  auto num_divs = divisors(ints.front());
  auto den_divs = divisors(ints.back());
  for (const auto& u : num_divs) {
    for (const auto& v : den_divs) {
      if (gcd(u, v) != 1) continue;
      for (int sign : {1, -1}) {
        Rational cand(sign * u, v);
        cand.canonicalize();
        if (horner(p, Scalar(cand)).is_exact_zero()) out.push_back(cand);
      }
    }
  }
  return out;
}

// Complex arithmetic on BigFloat pairs for the iteration itself.
struct Cx {
  BigFloat re, im;
  Cx(mpfr_prec_t p) : re(p), im(p) {}
  Cx(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator/(const Cx& a, const Cx& b) {
    BigFloat d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  long double abs() const { return hypot(re, im).to_ld(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

struct Evaluated {
  Cx value;
  Cx deriv;
};

Evaluated eval_with_deriv(const std::vector<Cx>& c, const Cx& z, mpfr_prec_t wp) {
  Cx p(wp), dp(wp);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

struct AberthResult {
  std::vector<Cx> z;
  std::vector<long double> radius;
};

AberthResult aberth(const Poly& p, unsigned prec) {
  const int n = degree(p);
  const mpfr_prec_t wp = prec + 32;
  std::vector<Cx> c;
  std::vector<long double> cerr;
  for (const auto& s : p) {
    ApproxValue a = s.to_approx(static_cast<unsigned>(wp));
    c.emplace_back(a.re, a.im);
    cerr.push_back(a.err);
  }
  const long double lead_abs = c.back().abs();
  long double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, c[k].abs() / lead_abs);
  bound = 1 + bound;
  // Start on a circle around the centroid of the roots.
  Cx centroid = Cx(-c[n - 1].re, -c[n - 1].im) / Cx(c[n].re * BigFloat(n, wp), c[n].im * BigFloat(n, wp));
  std::vector<Cx> z;
  const long double start_radius = std::max<long double>(bound / 2, 1e-3L);
  for (int j = 0; j < n; ++j) {
    const long double ang = 2.0L * M_PIl * j / n + 0.4L;
    z.push_back(centroid + Cx(BigFloat::from_ld(start_radius * std::cos(ang), wp),
                              BigFloat::from_ld(start_radius * std::sin(ang), wp)));
  }
  const long double tiny = std::ldexp(1.0L, -static_cast<int>(prec) - 8);
  const int max_iter = 200 + static_cast<int>(prec);
  for (int iter = 0; iter < max_iter; ++iter) {
    long double worst = 0;
    for (int j = 0; j < n; ++j) {
      Evaluated e = eval_with_deriv(c, z[j], wp);
      if (e.value.is_zero()) continue;
      Cx ratio = e.value / e.deriv;
      Cx sum(wp);
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        Cx diff = z[j] - z[k];
        if (!diff.is_zero()) sum = sum + Cx(BigFloat(1, wp), BigFloat(0, wp)) / diff;
      }
      Cx denom = Cx(BigFloat(1, wp), BigFloat(0, wp)) - ratio * sum;
      Cx w = denom.is_zero() ? ratio : ratio / denom;
      z[j] = z[j] - w;
      worst = std::max(worst, w.abs() / std::max<long double>(1, z[j].abs()));
    }
    if (worst <= tiny) break;
  }
  // Inclusion disks D(z_j, n |W_j|), W_j the Weierstrass correction; the
  // coefficient radii enter through |p(z_j)|.
  AberthResult out{z, std::vector<long double>(n, kInf)};
  for (int j = 0; j < n; ++j) {
    Evaluated e = eval_with_deriv(c, z[j], wp);
    long double residual = e.value.abs();
    const long double zabs = z[j].abs();
    long double zp = 1;
    for (int k = 0; k <= n; ++k) {
      residual += cerr[k] * zp + c[k].abs() * zp * std::ldexp(1.0L, -static_cast<int>(wp) + 4);
      zp *= std::max<long double>(zabs, 1e-300L);
    }
    long double prod = lead_abs - cerr[n];
    bool degenerate = !(prod > 0);
    for (int k = 0; k < n && !degenerate; ++k) {
      if (k == j) continue;
      long double d = (z[j] - z[k]).abs();
      if (d == 0) degenerate = true;
      prod *= d;
    }
    if (!degenerate && prod > 0) out.radius[j] = n * residual / prod * (1.0L + 0x1p-50L);
  }
  return out;
}

// Newton iterations on q starting at z; returns the refined point and a radius.
std::pair<Cx, long double> polish_simple(const Poly& q, Cx z, unsigned prec) {
  const mpfr_prec_t wp = prec + 32;
  std::vector<Cx> c;
  std::vector<long double> cerr;
  for (const auto& s : q) {
    ApproxValue a = s.to_approx(static_cast<unsigned>(wp));
    c.emplace_back(a.re, a.im);
    cerr.push_back(a.err);
  }
  for (int it = 0; it < 64; ++it) {
    Evaluated e = eval_with_deriv(c, z, wp);
    if (e.value.is_zero() || e.deriv.is_zero()) break;
    Cx step = e.value / e.deriv;
    z = z - step;
    if (step.abs() <= std::ldexp(1.0L, -static_cast<int>(prec) - 8) * std::max<long double>(1, z.abs())) break;
  }
  Evaluated e = eval_with_deriv(c, z, wp);
  long double residual = e.value.abs();
  long double zp = 1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    residual += cerr[k] * zp;
    zp *= std::max<long double>(z.abs(), 1e-300L);
  }
  const long double d = e.deriv.abs();
  long double rad = d > 0 ? 2 * residual / d : kInf;
  return {z, rad};
}

Scalar to_scalar(const Cx& z, long double radius, unsigned prec) {
  return Scalar::approx(z.re.with_precision(prec), z.im.with_precision(prec),
                        radius + std::ldexp(1.0L, -static_cast<int>(prec)) * (1 + z.abs()));
}

// Roots of a polynomial of degree >= 1 with nonzero constant term, numerically.
std::vector<RootCluster> numeric_roots(const Poly& p, unsigned prec, bool expect_simple) {
  const int n = degree(p);
  AberthResult ar = aberth(p, prec);
  // Union-find over overlapping disks.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      long double d = (ar.z[a] - ar.z[b]).abs();
      if (d <= ar.radius[a] + ar.radius[b]) parent[find(a)] = find(b);
    }
  }
  std::vector<RootCluster> out;
  std::vector<bool> done(n, false);
  for (int a = 0; a < n; ++a) {
    int root = find(a);
    if (done[root]) continue;
    done[root] = true;
    std::vector<int> members;
    for (int b = 0; b < n; ++b)
      if (find(b) == root) members.push_back(b);
    const int m = static_cast<int>(members.size());
    if (m == 1) {
      if (!std::isfinite(ar.radius[a])) {
        fail(ErrorKind::AmbiguousZero, "root inclusion radius is unbounded");
      }
      out.push_back({to_scalar(ar.z[a], ar.radius[a], prec), 1});
      continue;
    }
    if (expect_simple) {
      fail(ErrorKind::AmbiguousZero, "cannot separate roots of a squarefree polynomial");
    }
    // Treat the cluster as one root of multiplicity m: it is then a simple
    // root of the (m-1)-th derivative, which Newton pins down to full precision.
    const mpfr_prec_t wp = prec + 32;
    Cx centre(wp);
    for (int b : members) centre = centre + ar.z[b];
    centre = centre / Cx(BigFloat(m, wp), BigFloat(0, wp));
    Poly q = p;
    for (int k = 1; k < m; ++k) q = derivative(q);
    auto [z, rad] = polish_simple(q, centre, prec);
    if (!std::isfinite(rad)) fail(ErrorKind::AmbiguousZero, "cannot locate multiple root");
    out.push_back({to_scalar(z, rad, prec), m});
  }
  return out;
}

std::vector<RootCluster> solve_squarefree_exact(Poly p, unsigned prec) {
  std::vector<RootCluster> out;
  bool real_rational = std::all_of(p.begin(), p.end(), [](const Scalar& s) { return s.is_real_rational(); });
  if (real_rational && degree(p) >= 3) {
    for (const auto& r : rational_roots(p)) {
      out.push_back({Scalar(r), 1});
      p = divmod(p, Poly{Scalar(Rational(-r)), Scalar(1)}).first;
    }
  }
  const int n = degree(p);
  if (n == 1) {
    out.push_back({-p[0] / p[1], 1});
  } else if (n == 2) {
    Scalar disc = p[1] * p[1] - Scalar(4) * p[2] * p[0];
    Scalar two_a = Scalar(2) * p[2];
    std::optional<Scalar> sq = exact_sqrt(disc);
    Scalar s = sq ? *sq : principal_root(disc, 2, prec);
    out.push_back({(-p[1] + s) / two_a, 1});
    out.push_back({(-p[1] - s) / two_a, 1});
  } else if (n >= 3) {
    auto num = numeric_roots(p, prec, true);
    out.insert(out.end(), num.begin(), num.end());
  }
  return out;
}

}  // namespace

std::vector<RootCluster> univariate_roots(std::span<const Scalar> coeffs, const Precision& prec) {
  Poly p(coeffs.begin(), coeffs.end());
  while (!p.empty() && is_zero(p.back(), prec)) p.pop_back();
  if (degree(p) < 1) fail(ErrorKind::InvalidArgument, "univariate_roots needs degree >= 1");
  std::vector<RootCluster> out;
  int zeros = 0;
  while (is_zero(p[zeros], prec)) ++zeros;
  if (zeros > 0) {
    out.push_back({Scalar(0), zeros});
    p.erase(p.begin(), p.begin() + zeros);
  }
  if (degree(p) < 1) return out;
  const bool exact = std::all_of(p.begin(), p.end(), [](const Scalar& s) { return s.is_exact(); });
  if (exact) {
    for (auto& [factor, mult] : squarefree_factors(p)) {
      for (auto& r : solve_squarefree_exact(factor, prec.bits)) out.push_back({r.root, mult});
    }
  } else if (degree(p) == 1) {
    out.push_back({-p[0] / p[1], 1});
  } else {
    auto num = numeric_roots(p, prec.bits, false);
    out.insert(out.end(), num.begin(), num.end());
  }
  int total = 0;
  for (const auto& r : out) total += r.multiplicity;
  if (total != degree(p) + zeros) fail(ErrorKind::Internal, "root multiplicities do not sum to the degree");
  return out;
}

}  // namespace bilip
