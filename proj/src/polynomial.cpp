#include "bilip/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "bilip/errors.hpp"

namespace bilip {

BivarPoly::BivarPoly(const Scalar& c) {
  if (!c.is_exact_zero()) terms_.emplace(Monomial{0, 0}, c);
}

BivarPoly BivarPoly::x() { return monomial(1, 0, Scalar(1)); }
BivarPoly BivarPoly::y() { return monomial(0, 1, Scalar(1)); }

BivarPoly BivarPoly::monomial(int i, int j, const Scalar& c) {
  BivarPoly p;
  p.add_term(i, j, c);
  return p;
}

Scalar BivarPoly::coeff(int i, int j) const {
  auto it = terms_.find(Monomial{i, j});
  return it == terms_.end() ? Scalar(0) : it->second;
}

void BivarPoly::add_term(int i, int j, const Scalar& c) {
  if (c.is_exact_zero()) return;
  auto [it, inserted] = terms_.emplace(Monomial{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_exact_zero()) terms_.erase(it);
  }
}

int BivarPoly::deg_x() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.i);
  return d;
}

int BivarPoly::deg_y() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.j);
  return d;
}

int BivarPoly::total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.i + terms_.rbegin()->first.j; }

int BivarPoly::order() const { return terms_.empty() ? -1 : terms_.begin()->first.i + terms_.begin()->first.j; }

bool BivarPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0}); }

BivarPoly BivarPoly::operator-() const {
  BivarPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m.i, m.j, c);
  return r;
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
  return r;
}

BivarPoly operator*(const Scalar& c, const BivarPoly& a) {
  BivarPoly r;
  for (const auto& [m, v] : a.terms_) r.add_term(m.i, m.j, c * v);
  return r;
}

BivarPoly BivarPoly::pow(int n) const {
  if (n < 0) fail(ErrorKind::InvalidArgument, "negative power of a polynomial");
  BivarPoly result(Scalar(1));
  BivarPoly base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

BivarPoly BivarPoly::dx() const {
  BivarPoly r;
  for (const auto& [m, c] : terms_)
    if (m.i > 0) r.add_term(m.i - 1, m.j, c * Scalar(static_cast<long>(m.i)));
  return r;
}

BivarPoly BivarPoly::dy() const {
  BivarPoly r;
  for (const auto& [m, c] : terms_)
    if (m.j > 0) r.add_term(m.i, m.j - 1, c * Scalar(static_cast<long>(m.j)));
  return r;
}

SparseSeries BivarPoly::column(int i) const {
  SparseSeries s;
  for (const auto& [m, c] : terms_)
    if (m.i == i) s.emplace(m.j, c);
  return s;
}

BivarPoly BivarPoly::homogeneous_part(int d) const {
  BivarPoly r;
  for (const auto& [m, c] : terms_)
    if (m.i + m.j == d) r.terms_.emplace(m, c);
  return r;
}

BivarPoly BivarPoly::cleaned(const Precision& p) const {
  BivarPoly r;
  for (const auto& [m, c] : terms_)
    if (!bilip::is_zero(c, p)) r.terms_.emplace(m, c);
  return r;
}

BivarPoly BivarPoly::truncated_y(int bound) const {
  BivarPoly r;
  for (const auto& [m, c] : terms_)
    if (m.j < bound) r.terms_.emplace(m, c);
  return r;
}

std::string BivarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = c.to_string();
    const bool unit = m.i + m.j > 0 && (cs == "1" || cs == "-1");
    const bool compound = !c.is_real_rational();
    if (!first) out << (cs.front() == '-' && !compound ? " - " : " + ");
    else if (cs.front() == '-' && !compound) out << '-';
    first = false;
    std::string mag = (cs.front() == '-' && !compound) ? cs.substr(1) : cs;
    if (compound) mag = "(" + cs + ")";
    bool need_star = false;
    if (!unit) {
      out << mag;
      need_star = true;
    }
    auto var = [&](char v, int e) {
      if (e == 0) return;
      if (need_star) out << '*';
      out << v;
      if (e > 1) out << '^' << e;
      need_star = true;
    };
    var('x', m.i);
    var('y', m.j);
  }
  return out.str();
}

bool operator==(const BivarPoly& a, const BivarPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ib = b.terms_.begin();
  for (const auto& [m, c] : a.terms_) {
    if (!(m == ib->first) || !identical(c, ib->second)) return false;
    ++ib;
  }
  return true;
}

std::vector<ConeLine> TangentCone::singular_lines() const {
  std::vector<ConeLine> out;
  for (const auto& l : lines)
    if (l.multiplicity >= 2) out.push_back(l);
  return out;
}

std::pair<BivarPoly, BivarPoly> partials(const BivarPoly& f) { return {f.dx(), f.dy()}; }

TangentCone tangent_cone(const BivarPoly& f, const Precision& p) {
  if (f.is_zero()) fail(ErrorKind::InvalidArgument, "tangent cone of the zero polynomial");
  if (!f.coeff(0, 0).is_exact_zero()) fail(ErrorKind::NotVanishingAtOrigin, "f(0,0) != 0");
  TangentCone cone;
  cone.k = f.order();
  cone.initial_form = f.homogeneous_part(cone.k);
  cone.h.assign(cone.k + 1, Scalar(0));
  for (const auto& [m, c] : cone.initial_form.terms()) cone.h[m.i] = c;
  std::vector<Scalar> h = cone.h;
  while (!h.empty() && h.back().is_exact_zero()) h.pop_back();
  if (h.size() >= 2) {
    for (auto& r : univariate_roots(h, p)) cone.lines.push_back({r.root, r.multiplicity});
  }
  std::sort(cone.lines.begin(), cone.lines.end(),
            [](const ConeLine& a, const ConeLine& b) { return lex_compare(a.lambda, b.lambda) < 0; });
  return cone;
}

bool mini_regular_check(const BivarPoly& f) {
  if (f.is_zero()) return false;
  const int k = f.order();
  return !f.coeff(k, 0).is_exact_zero();
}

namespace {

using Dense = std::vector<Scalar>;

void trim(Dense& p) {
  while (!p.empty() && p.back().is_exact_zero()) p.pop_back();
}

Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Dense dense_sub(const Dense& a, const Dense& b) {
  Dense r(std::max(a.size(), b.size()), Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// a / b where b divides a exactly.
Dense dense_exact_div(Dense a, const Dense& b) {
  trim(a);
  if (a.empty()) return {};
  if (a.size() < b.size()) fail(ErrorKind::Internal, "inexact division in Bareiss elimination");
  Dense q(a.size() - b.size() + 1, Scalar(0));
  const Scalar& lead = b.back();
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
    Scalar c = a[k + b.size() - 1] / lead;
    q[k] = c;
    if (c.is_exact_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) fail(ErrorKind::Internal, "inexact division in Bareiss elimination");
  trim(q);
  return q;
}

Dense column_dense(const BivarPoly& f, int i) {
  Dense d;
  for (const auto& [j, c] : f.column(i)) {
    if (static_cast<int>(d.size()) <= j) d.resize(j + 1, Scalar(0));
    d[j] = c;
  }
  return d;
}

}  // namespace

std::vector<Scalar> resultant_x(const BivarPoly& f, const BivarPoly& g) {
  for (const auto* p : {&f, &g})
    for (const auto& [m, c] : p->terms())
      if (!c.is_exact()) fail(ErrorKind::PreconditionNotMet, "resultant_x needs exact coefficients");
  const int m = f.deg_x();
  const int n = g.deg_x();
  if (m < 1 || n < 1) fail(ErrorKind::InvalidArgument, "resultant_x needs positive x-degrees");
  const int size = m + n;
  std::vector<std::vector<Dense>> M(size, std::vector<Dense>(size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + k] = column_dense(f, m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[n + r][r + k] = column_dense(g, n - k);

  Dense prev{Scalar(1)};
  bool negate = false;
  for (int k = 0; k < size - 1; ++k) {
    if (M[k][k].empty()) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (!M[r][k].empty()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return {};
      std::swap(M[k], M[swap_row]);
      negate = !negate;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        Dense num = dense_sub(dense_mul(M[i][j], M[k][k]), dense_mul(M[i][k], M[k][j]));
        M[i][j] = dense_exact_div(num, prev);
      }
      M[i][k].clear();
    }
    prev = M[k][k];
  }
  Dense det = M[size - 1][size - 1];
  if (negate)
    for (auto& c : det) c = -c;
  return det;
}

int y_order(const std::vector<Scalar>& univariate) {
  for (std::size_t k = 0; k < univariate.size(); ++k)
    if (!univariate[k].is_exact_zero()) return static_cast<int>(k);
  return -1;
}

bool squarefree_check(const BivarPoly& f) {
  BivarPoly fx = f.dx();
  if (fx.is_zero() || f.deg_x() < 1) return false;
  if (fx.deg_x() < 1) return true;  // f linear in x: reduced as a polynomial in x
  return y_order(resultant_x(f, fx)) >= 0;
}

SparseSeries multiply(const SparseSeries& a, const SparseSeries& b, long bound) {
  SparseSeries r;
  if (a.empty() || b.empty()) return r;
  for (const auto& [ea, ca] : a) {
    if (bound >= 0 && ea + b.begin()->first >= bound) break;
    for (const auto& [eb, cb] : b) {
      if (bound >= 0 && ea + eb >= bound) break;
      auto [it, inserted] = r.emplace(ea + eb, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  for (auto it = r.begin(); it != r.end();) it = it->second.is_exact_zero() ? r.erase(it) : std::next(it);
  return r;
}

BivarPoly shift_x(const BivarPoly& f, const SparseSeries& shift, long ybound) {
  const int dx = f.deg_x();
  BivarPoly result;
  if (dx < 0) return result;
  // powers[i] = (x + shift)^i, stored as BivarPoly, truncated in y.
  BivarPoly base;
  base.add_term(1, 0, Scalar(1));
  for (const auto& [e, c] : shift) base.add_term(0, static_cast<int>(e), c);
  std::vector<BivarPoly> powers{BivarPoly(Scalar(1))};
  for (int i = 1; i <= dx; ++i) {
    BivarPoly next;
    for (const auto& [ma, ca] : powers.back().terms())
      for (const auto& [mb, cb] : base.terms()) {
        if (ybound >= 0 && ma.j + mb.j >= ybound) continue;
        next.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
      }
    powers.push_back(std::move(next));
  }
  for (const auto& [m, c] : f.terms()) {
    if (ybound >= 0 && m.j >= ybound) continue;
    for (const auto& [mp, cp] : powers[m.i].terms()) {
      if (ybound >= 0 && mp.j + m.j >= ybound) continue;
      result.add_term(mp.i, mp.j + m.j, c * cp);
    }
  }
  return result;
}

BivarPoly stretch_y(const BivarPoly& f, int q) {
  BivarPoly r;
  for (const auto& [m, c] : f.terms()) r.add_term(m.i, m.j * q, c);
  return r;
}

SparseSeries substitute(const BivarPoly& f, const SparseSeries& x_of_s, int n, long bound) {
  SparseSeries result;
  const int dx = f.deg_x();
  if (dx < 0) return result;
  // Horner in x over columns: sum_i col_i(s^n) * P^i.
  std::vector<SparseSeries> powers{SparseSeries{{0, Scalar(1)}}};
  for (int i = 1; i <= dx; ++i) {
    powers.push_back(x_of_s.empty() ? SparseSeries{} : multiply(powers.back(), x_of_s, bound));
  }
  for (const auto& [m, c] : f.terms()) {
    const long shift = static_cast<long>(m.j) * n;
    if (bound >= 0 && shift >= bound) continue;
    for (const auto& [e, v] : powers[m.i]) {
      if (bound >= 0 && e + shift >= bound) break;
      auto [it, inserted] = result.emplace(e + shift, c * v);
      if (!inserted) it->second += c * v;
    }
  }
  for (auto it = result.begin(); it != result.end();)
    it = it->second.is_exact_zero() ? result.erase(it) : std::next(it);
  return result;
}

}  // namespace bilip
