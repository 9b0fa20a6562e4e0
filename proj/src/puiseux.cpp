#include "bilip/puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bilip/errors.hpp"

namespace bilip {

namespace {

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string exp_string(const Rational& e) {
  if (e.get_den() == 1) return e.get_str();
  return "(" + e.get_str() + ")";
}

std::string term_string(const std::vector<ArcTerm>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.to_string() << ")*y^" << exp_string(t.exp);
  }
  return os.str();
}

// Lowest j with a coefficient that tests nonzero, -1 if none.
long column_min(const SparseSeries& col, const Precision& p) {
  for (const auto& [j, c] : col)
    if (!is_zero(c, p)) return j;
  return -1;
}

std::vector<long> column_minima(const BivarPoly& G, int upto, const Precision& p) {
  std::vector<long> cols(upto + 1, -1);
  for (int i = 0; i <= upto; ++i) cols[i] = column_min(G.column(i), p);
  return cols;
}

struct Vertex {
  long i, j;
};

// Lower convex hull of points sorted by increasing i (one point per i),
// cut at the leftmost point of minimal j.
std::vector<Vertex> lower_left_hull(const std::vector<Vertex>& pts) {
  std::vector<Vertex> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Pop b when it lies on or above segment a -> p.
      const long cross = (b.i - a.i) * (p.j - a.j) - (b.j - a.j) * (p.i - a.i);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::size_t cut = 0;
  for (std::size_t k = 1; k < hull.size(); ++k)
    if (hull[k].j < hull[cut].j) cut = k;
  hull.resize(cut + 1);
  return hull;
}

struct RawEdge {
  Vertex left, right;
  long p, q;  // slope p/q in lowest terms
  std::vector<Scalar> psi;  // polynomial in w = c^q
};

std::vector<RawEdge> edges_of(const BivarPoly& G, const std::vector<Vertex>& hull,
                              const std::vector<long>& cols) {
  std::vector<RawEdge> edges;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    RawEdge e;
    e.left = hull[k];
    e.right = hull[k + 1];
    const long dj = e.left.j - e.right.j;
    const long di = e.right.i - e.left.i;
    const long g = std::gcd(dj, di);
    e.p = dj / g;
    e.q = di / g;
    for (long i = e.left.i; i <= e.right.i; i += e.q) {
      const long j_line = e.left.j - e.p * ((i - e.left.i) / e.q);
      if (cols[i] == j_line) e.psi.push_back(G.coeff(static_cast<int>(i), static_cast<int>(j_line)));
      else e.psi.push_back(Scalar(0));
    }
    edges.push_back(std::move(e));
  }
  return edges;
}

struct Branch {
  long N = 1;
  SparseSeries A;  // exponents in units of y^(1/N)
  BivarPoly G;     // F(A(s) + z, s^N)
  long last = 0;   // exponent of the last term of A
  int cluster = 0;
  bool top = true;
};

class Expander {
 public:
  Expander(const BivarPoly& F, const Rational& target, const ExpansionOptions& opts)
      : F_(F), target_(target), opts_(opts) {}

  std::vector<PuiseuxArc> run() {
    Branch b;
    b.G = F_;
    b.cluster = F_.deg_x();
    if (b.cluster < 0) fail(ErrorKind::InvalidArgument, "puiseux_roots of the zero polynomial");
    std::vector<Branch> stack{std::move(b)};
    while (!stack.empty()) {
      Branch cur = std::move(stack.back());
      stack.pop_back();
      step(std::move(cur), stack);
    }
    return std::move(out_);
  }

 private:
  const Precision& prec() const { return opts_.precision; }

  bool reached(long slope_s, long N) const { return Rational(slope_s) >= target_ * N; }

  void emit(const Branch& b, Order residual, int mult) {
    PuiseuxArc arc;
    long g = b.N;
    for (const auto& [e, c] : b.A) g = std::gcd(g, e);
    if (g == 0) g = 1;
    arc.ramification = b.N / g;
    for (const auto& [e, c] : b.A) arc.terms.push_back({make_rational(e, b.N), c});
    arc.residual = residual;
    arc.multiplicity = mult;
    out_.push_back(std::move(arc));
  }

  void check_cap(const Branch& b) const {
    if (static_cast<int>(b.A.size()) > opts_.max_terms)
      fail(ErrorKind::TruncationCapExceeded,
           "Puiseux expansion needs more than " + std::to_string(opts_.max_terms) + " terms");
  }

  void step(Branch b, std::vector<Branch>& stack) {
    if (b.cluster == 1 && !b.top) {
      newton(std::move(b));
      return;
    }
    auto cols = column_minima(b.G, b.cluster, prec());
    // Restrict to the roots of order > last: smallest i minimizing j + last*i.
    int m = -1;
    for (int i = 0; i <= b.cluster; ++i) {
      if (cols[i] < 0) continue;
      if (m < 0 || cols[i] + b.last * i < cols[m] + b.last * m) m = i;
    }
    if (m < 0) fail(ErrorKind::Internal, "empty Newton polygon");
    int i0 = 0;
    while (cols[i0] < 0) ++i0;
    if (i0 > 0) emit(b, Order::inf(), i0);
    if (i0 >= m) return;

    std::vector<Vertex> pts;
    for (int i = i0; i <= m; ++i)
      if (cols[i] >= 0) pts.push_back({i, cols[i]});
    auto hull = lower_left_hull(pts);
    auto edges = edges_of(b.G, hull, cols);

    // Edges already past the target are certified by A itself.
    int done_mult = 0;
    Rational done_residual;
    for (const auto& e : edges) {
      const bool steep = e.q == 1 ? reached(e.p, b.N) : Rational(e.p, e.q) >= target_ * b.N;
      if (b.top && Rational(e.p, e.q) < 1) continue;
      if (steep) {
        Rational r(e.p, e.q * b.N);
        r.canonicalize();
        if (done_mult == 0 || r < done_residual) done_residual = r;
        done_mult += static_cast<int>(e.right.i - e.left.i);
        continue;
      }
      for (const auto& rc : univariate_roots(e.psi, prec())) {
        if (rc.root.is_exact_zero()) continue;
        Branch nb;
        nb.top = false;
        nb.cluster = rc.multiplicity;
        Scalar c = e.q == 1 ? rc.root : principal_root(rc.root, static_cast<unsigned>(e.q), prec().bits);
        if (e.q > 1) {
          nb.N = b.N * e.q;
          for (const auto& [ex, cx] : b.A) nb.A.emplace(ex * e.q, cx);
          nb.G = stretch_y(b.G, static_cast<int>(e.q));
        } else {
          nb.N = b.N;
          nb.A = b.A;
          nb.G = b.G;
        }
        nb.A.emplace(e.p, c);
        nb.last = e.p;
        nb.G = shift_x(nb.G, SparseSeries{{e.p, c}});
        check_cap(nb);
        stack.push_back(std::move(nb));
      }
    }
    if (done_mult > 0) emit(b, Order::of(done_residual), done_mult);
  }

  // Simple root: quadratic Newton lifting on a y-truncated copy of G.
  void newton(Branch b) {
    auto cols = column_minima(b.G, std::min(b.G.deg_x(), 2), prec());
    const long w = cols[1];
    if (w < 0) fail(ErrorKind::Internal, "simple root without linear term");
    Rational need = target_ * b.N;
    const long bound = w + static_cast<long>(mpz_class(ceil_div(need)).get_si()) + 1;
    b.G = b.G.truncated_y(static_cast<int>(bound));
    for (;;) {
      const auto g0 = b.G.column(0);
      const long v0 = column_min(g0, prec());
      if (v0 < 0) {
        emit(b, exact_here(b) ? Order::inf() : Order::of(make_rational(bound - w, b.N)), 1);
        return;
      }
      const long r = v0 - w;
      if (reached(r, b.N)) {
        emit(b, Order::of(make_rational(r, b.N)), 1);
        return;
      }
      check_cap(b);
      // Terms of the correction below K are exact.
      long K = bound - w;
      for (int i = 2; i <= b.G.deg_x(); ++i) {
        const long ci = column_min(b.G.column(i), prec());
        if (ci >= 0) K = std::min(K, ci + i * r - w);
      }
      if (K <= r) fail(ErrorKind::Internal, "Newton lifting made no progress");
      const auto g1 = b.G.column(1);
      const Scalar lead = g1.at(w);
      SparseSeries delta;
      for (long n = r; n < K; ++n) {
        Scalar acc = Scalar(0);
        auto it = g0.find(n + w);
        if (it != g0.end()) acc = -it->second;
        for (const auto& [e, c] : g1) {
          if (e <= w) continue;
          if (n + w - e < r) break;
          auto q = delta.find(n + w - e);
          if (q != delta.end()) acc -= c * q->second;
        }
        if (acc.is_exact_zero()) continue;
        acc = acc / lead;
        delta.emplace(n, acc);
      }
      SparseSeries kept;
      for (const auto& [e, c] : delta)
        if (!is_zero(c, prec())) kept.emplace(e, c);
      for (const auto& [e, c] : kept) b.A.emplace(e, c);
      if (!kept.empty()) b.last = kept.rbegin()->first;
      b.G = shift_x(b.G, kept, bound);
      const long v1 = column_min(b.G.column(0), prec());
      if (v1 >= 0 && v1 - w < K) fail(ErrorKind::Internal, "Newton lifting lost accuracy");
    }
  }

  static Integer ceil_div(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
  }

  bool exact_here(const Branch& b) const {
    for (const auto& [e, c] : substitute(F_, b.A, static_cast<int>(b.N)))
      if (!is_zero(c, prec())) return false;
    return true;
  }

  const BivarPoly& F_;
  Rational target_;
  ExpansionOptions opts_;
  std::vector<PuiseuxArc> out_;
};

int compare_arcs(const PuiseuxArc& a, const PuiseuxArc& b) {
  const Order la = a.leading_exponent(), lb = b.leading_exponent();
  if (la < lb) return -1;
  if (lb < la) return 1;
  const std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.terms[k].exp != b.terms[k].exp) return a.terms[k].exp < b.terms[k].exp ? -1 : 1;
    const int c = lex_compare(a.terms[k].coeff, b.terms[k].coeff);
    if (c != 0) return c;
  }
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  return 0;
}

}  // namespace

Order PuiseuxArc::leading_exponent() const {
  return terms.empty() ? Order::inf() : Order::of(terms.front().exp);
}

Scalar PuiseuxArc::coeff_at(const Rational& e) const {
  for (const auto& t : terms)
    if (t.exp == e) return t.coeff;
  return Scalar(0);
}

SparseSeries PuiseuxArc::scaled_terms() const {
  SparseSeries s;
  for (const auto& t : terms) {
    Rational k = t.exp * ramification;
    if (k.get_den() != 1) fail(ErrorKind::Internal, "arc exponent denominator does not divide N");
    s.emplace(k.get_num().get_si(), t.coeff);
  }
  return s;
}

std::string PuiseuxArc::to_string() const {
  std::ostringstream os;
  os << "x = " << term_string(terms) << " + O(y^" << residual.to_string() << ")";
  if (ramification > 1) os << "  [N=" << ramification << "]";
  if (multiplicity > 1) os << "  [mult " << multiplicity << "]";
  return os.str();
}

Scalar GermExpansion::coeff_at(const Rational& e) const {
  for (const auto& t : terms)
    if (t.exp == e) return t.coeff;
  return Scalar(0);
}

std::string GermExpansion::to_string() const {
  return term_string(terms) + " + O(y^" + exp_string(window) + ")";
}

NewtonPolygon newton_polygon(const BivarPoly& F, const Precision& p) {
  if (F.is_zero()) fail(ErrorKind::InvalidArgument, "Newton polygon of the zero polynomial");
  NewtonPolygon np;
  const BivarPoly clean = F.cleaned(p);
  for (const auto& [m, c] : clean.terms()) np.support.push_back(m);
  std::sort(np.support.begin(), np.support.end(),
            [](const Monomial& a, const Monomial& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  const int dx = clean.deg_x();
  auto cols = column_minima(clean, dx, p);
  std::vector<Vertex> pts;
  for (int i = 0; i <= dx; ++i)
    if (cols[i] >= 0) pts.push_back({i, cols[i]});
  auto hull = lower_left_hull(pts);
  for (const auto& v : hull) np.hull.push_back({static_cast<int>(v.i), static_cast<int>(v.j)});
  for (auto& e : edges_of(clean, hull, cols)) {
    NewtonEdge edge;
    edge.left = {static_cast<int>(e.left.i), static_cast<int>(e.left.j)};
    edge.right = {static_cast<int>(e.right.i), static_cast<int>(e.right.j)};
    edge.slope = Rational(e.p, e.q);
    // Full edge polynomial in c, indexed by i - left.i.
    edge.edge_polynomial.assign(e.right.i - e.left.i + 1, Scalar(0));
    for (std::size_t k = 0; k < e.psi.size(); ++k) edge.edge_polynomial[k * e.q] = e.psi[k];
    np.edges.push_back(std::move(edge));
  }
  return np;
}

std::vector<PuiseuxArc> puiseux_roots(const BivarPoly& F, const Rational& target,
                                      const ExpansionOptions& opts) {
  auto arcs = Expander(F, target, opts).run();
  std::sort(arcs.begin(), arcs.end(),
            [](const PuiseuxArc& a, const PuiseuxArc& b) { return compare_arcs(a, b) < 0; });
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    arcs[k].conj_class = static_cast<int>(k);
    arcs[k].conj_index = 0;
  }
  return arcs;
}

std::vector<PuiseuxArc> conjugates(const PuiseuxArc& arc, unsigned prec) {
  std::vector<PuiseuxArc> out;
  const long N = arc.ramification;
  for (long j = 0; j < N; ++j) {
    PuiseuxArc c = arc;
    c.conj_index = j;
    for (auto& t : c.terms) {
      const long n = Rational(t.exp * N).get_num().get_si();
      const long k = (j * n) % N;
      if (k != 0) t.coeff = t.coeff * root_of_unity(k, static_cast<unsigned>(N), prec);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Contact contact_order(const PuiseuxArc& a, const PuiseuxArc& b, const Precision& p) {
  const Order horizon = min(a.residual, b.residual);
  std::vector<Rational> exps;
  for (const auto& t : a.terms) exps.push_back(t.exp);
  for (const auto& t : b.terms) exps.push_back(t.exp);
  std::sort(exps.begin(), exps.end());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  for (const auto& e : exps) {
    if (!(Order::of(e) < horizon)) break;
    if (!is_zero(a.coeff_at(e) - b.coeff_at(e), p)) return {e, horizon};
  }
  return {std::nullopt, horizon};
}

Contact contact_order_starred(const PuiseuxArc& a, const PuiseuxArc& b, const Precision& p) {
  std::optional<Rational> best;
  std::optional<Order> open;
  for (const auto& bc : conjugates(b, p.bits)) {
    Contact c = contact_order(a, bc, p);
    if (c.value) {
      if (!best || *c.value > *best) best = c.value;
    } else if (!open || *open < c.horizon) {
      open = c.horizon;
    }
  }
  if (!open) return {best, Order::inf()};
  Order h = *open;
  if (best && h < Order::of(*best)) h = Order::of(*best);
  return {std::nullopt, h};
}

Rational window_cap(const BivarPoly& f) { return Rational(4 * std::max(1, f.total_degree())); }

Order certified_window(const BivarPoly& f, const PuiseuxArc& arc, const Rational& probe,
                       const Precision& p) {
  if (arc.residual.infinite) return Order::inf();
  const auto A = arc.scaled_terms();
  const long N = arc.ramification;
  Order best = Order::inf();
  BivarPoly deriv = f;
  for (int d = 1; d <= f.deg_x(); ++d) {
    deriv = deriv.dx();
    const Rational shift = arc.residual.value * d;
    // Orders at or past the probe do not matter.
    Rational room = (probe - shift) * N;
    if (room <= 0) {
      best = min(best, Order::of(shift));
      continue;
    }
    Integer lim;
    mpz_cdiv_q(lim.get_mpz_t(), room.get_num_mpz_t(), room.get_den_mpz_t());
    const auto s = substitute(deriv, A, static_cast<int>(N), lim.get_si());
    long ord = -1;
    for (const auto& [e, c] : s)
      if (!is_zero(c, p)) {
        ord = e;
        break;
      }
    if (ord >= 0) best = min(best, Order::of(make_rational(ord, N) + shift));
    else best = min(best, Order::of(probe));
  }
  return best;
}

GermExpansion compose_germ(const BivarPoly& f, const PuiseuxArc& arc_in, const Rational& window,
                           const Precision& p, const RefineArc& refine) {
  if (window > window_cap(f))
    fail(ErrorKind::TruncationCapExceeded,
         "window " + window.get_str() + " exceeds cap " + window_cap(f).get_str());
  PuiseuxArc arc = arc_in;
  for (int round = 0;; ++round) {
    const Order cert = certified_window(f, arc, window, p);
    if (!(cert < Order::of(window))) break;
    if (!refine || round > 16)
      fail(ErrorKind::WindowTooSmall, "arc residual " + arc.residual.to_string() +
                                          " certifies f(arc) only below " + cert.to_string());
    Rational need = arc.residual.value + (window - cert.value);
    arc = refine(need);
  }
  const long N = arc.ramification;
  Rational lim_q = window * N;
  Integer lim;
  mpz_cdiv_q(lim.get_mpz_t(), lim_q.get_num_mpz_t(), lim_q.get_den_mpz_t());
  GermExpansion g;
  g.window = window;
  for (const auto& [e, c] : substitute(f, arc.scaled_terms(), static_cast<int>(N), lim.get_si())) {
    if (is_zero(c, p)) continue;
    g.terms.push_back({make_rational(e, N), c});
  }
  return g;
}

}  // namespace bilip
