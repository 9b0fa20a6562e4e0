#include "bilip/polar.hpp"

#include <algorithm>
#include <numeric>

#include "bilip/errors.hpp"
#include "bilip/parallel.hpp"

namespace bilip {

namespace {

long first_nonzero(const SparseSeries& s, const Precision& p) {
  for (const auto& [e, c] : s)
    if (!is_zero(c, p)) return e;
  return -1;
}

long first_nonzero(const BivarPoly& G, int i, const Precision& p) {
  return first_nonzero(G.column(i), p);
}

struct ClassData {
  PuiseuxArc rep;
  Rational dgr;
};

bool same_canyon(const PolarArc& a, const PolarArc& b, const Precision& p) {
  if (a.dgr != b.dgr) return false;
  const Contact c = contact_order_starred(a.arc, b.arc, p);
  if (c.value) return *c.value >= a.dgr;
  if (c.horizon < Order::of(a.dgr))
    fail(ErrorKind::IndistinguishableArcs, "arcs " + std::to_string(a.id) + " and " +
                                               std::to_string(b.id) + " agree up to y^" +
                                               c.horizon.to_string());
  return true;
}

}  // namespace

void require_admissible(const BivarPoly& f) {
  if (f.is_zero()) fail(ErrorKind::NotVanishingAtOrigin, "the zero polynomial is not a germ");
  const Scalar c0 = f.coeff(0, 0);
  if (!c0.is_exact_zero()) fail(ErrorKind::NotVanishingAtOrigin, "f(0,0) = " + c0.to_string());
  if (!mini_regular_check(f)) fail(ErrorKind::NotMiniRegular, "initial form vanishes at (1,0)");
  if (!squarefree_check(f)) fail(ErrorKind::MultipleRoot, "Res_x(f, f_x) vanishes identically");
}

PuiseuxArc refine_polar(const BivarPoly& fx, const PuiseuxArc& old, const Rational& need,
                        const ExpansionOptions& opts) {
  std::optional<PuiseuxArc> best;
  Order best_order;
  for (const auto& rep : puiseux_roots(fx, need, opts)) {
    for (auto& cand : conjugates(rep, opts.precision.bits)) {
      const Order o = contact_order(old, cand, opts.precision).as_order();
      if (!best || best_order < o) {
        best = std::move(cand);
        best_order = o;
      }
    }
  }
  if (!best) fail(ErrorKind::Internal, "no polar arc to refine");
  if (best_order < old.residual && !(best_order == old.residual))
    fail(ErrorKind::Internal, "refined arc does not extend " + old.to_string());
  return *best;
}

Rational gradient_degree(const BivarPoly& f, const PuiseuxArc& arc_in, const Precision& p,
                         const RefineArc& refine) {
  const BivarPoly fx = f.dx();
  const BivarPoly fy = f.dy();
  PuiseuxArc arc = arc_in;
  for (int round = 0;; ++round) {
    const long N = arc.ramification;
    const auto A = arc.scaled_terms();
    const long v0 = first_nonzero(substitute(fy, A, static_cast<int>(N)), p);
    bool ok = v0 >= 0 && (arc.residual.infinite || arc.residual.value * N > v0);
    if (v0 < 0 && arc.residual.infinite)
      fail(ErrorKind::InfiniteGradientDegree, "f vanishes identically along " + arc.to_string());
    if (ok && first_nonzero(substitute(fx, A, static_cast<int>(N), v0), p) >= 0) ok = false;
    if (!ok) {
      if (!refine || round > 16)
        fail(ErrorKind::WindowTooSmall, "arc residual too short for the gradient degree");
      const Rational need = v0 >= 0 ? Rational(v0 + 1, N) : arc.residual.value * 2;
      arc = refine(need);
      continue;
    }
    Rational best(0);
    for (const BivarPoly* g : {&fx, &fy}) {
      const BivarPoly G = shift_x(stretch_y(*g, static_cast<int>(N)), A, v0);
      for (int i = 1; i <= G.deg_x(); ++i) {
        const long j = first_nonzero(G, i, p);
        if (j < 0 || j >= v0) continue;
        Rational q(v0 - j, i);
        q.canonicalize();
        if (q > best) best = q;
      }
    }
    Rational d = best / N;
    d.canonicalize();
    return d < 1 ? Rational(1) : d;
  }
}

Tangency tangency(const PuiseuxArc& arc, const TangentCone& cone, const Precision& p) {
  Tangency t{Scalar(0), false};
  if (!arc.terms.empty() && arc.terms.front().exp == 1) t.lambda = arc.terms.front().coeff;
  for (const auto& line : cone.singular_lines())
    if (approx_equal(line.lambda, t.lambda, p)) t.tangential = true;
  return t;
}

std::vector<Canyon> canyons(std::vector<PolarArc>& arcs, const Precision& p) {
  const std::size_t n = arcs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      rel[a][b] = rel[b][a] = same_canyon(arcs[a], arcs[b], p);
      if (rel[a][b]) parent[find(a)] = find(b);
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (find(a) == find(b) && !rel[a][b])
        fail(ErrorKind::Internal, "canyon relation is not transitive on arcs " + std::to_string(a) +
                                      ", " + std::to_string(b));
  std::vector<Canyon> out;
  std::vector<int> id_of(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t r = find(a);
    if (id_of[r] < 0) {
      id_of[r] = static_cast<int>(out.size());
      out.push_back({id_of[r], {}, arcs[a].dgr});
    }
    out[id_of[r]].members.push_back(arcs[a].id);
    arcs[a].canyon = id_of[r];
  }
  return out;
}

PolarAnalysis polar_arcs(const BivarPoly& f, const PolarOptions& opts) {
  require_admissible(f);
  const Precision& p = opts.precision;
  PolarAnalysis out;
  out.cone = tangent_cone(f, p);
  const BivarPoly fx = f.dx();
  const ExpansionOptions eo{p, opts.max_terms};
  const Rational cap = window_cap(f);

  // Expand until clustered roots separate or the cap is reached.
  Rational target(out.cone.k + 1);
  auto reps = puiseux_roots(fx, target, eo);
  auto clustered = [&] {
    return std::any_of(reps.begin(), reps.end(), [](const PuiseuxArc& a) {
      return a.multiplicity > 1 && !a.residual.infinite;
    });
  };
  // Distinct arcs must differ on a certified term, or contacts are unknown.
  auto unseparated = [&] {
    std::vector<PuiseuxArc> all;
    for (const auto& r : reps)
      for (auto& c : conjugates(r, p.bits)) all.push_back(std::move(c));
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = a + 1; b < all.size(); ++b)
        if (contact_order(all[a], all[b], p).indistinguishable()) return true;
    return false;
  };
  while ((clustered() || unseparated()) && target < cap) {
    target = std::min<Rational>(target * 2, cap);
    reps = puiseux_roots(fx, target, eo);
  }

  auto refiner = [&](const PuiseuxArc& old) -> RefineArc {
    return [&fx, eo, old](const Rational& need) { return refine_polar(fx, old, need, eo); };
  };

  auto classes = parallel_map<ClassData>(reps.size(), opts.threads, [&](std::size_t c) {
    ClassData cd{reps[c], Rational(0)};
    cd.dgr = gradient_degree(f, cd.rep, p, refiner(cd.rep));
    // Canyon membership needs every arc certified up to its gradient degree.
    if (cd.rep.residual < Order::of(cd.dgr)) {
      const int cls = cd.rep.conj_class;
      cd.rep = refine_polar(fx, cd.rep, cd.dgr, eo);
      cd.rep.conj_class = cls;
      cd.rep.conj_index = 0;
    }
    return cd;
  });

  struct Slot {
    std::size_t cls;
    long j;
  };
  std::vector<Slot> slots;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (long j = 0; j < classes[c].rep.ramification; ++j) slots.push_back({c, j});

  out.arcs = parallel_map<PolarArc>(slots.size(), opts.threads, [&](std::size_t s) {
    const auto& cd = classes[slots[s].cls];
    PolarArc pa;
    pa.id = static_cast<int>(s);
    pa.arc = conjugates(cd.rep, p.bits)[slots[s].j];
    pa.arc.conj_class = static_cast<int>(slots[s].cls);
    pa.dgr = cd.dgr;
    if (slots[s].j != 0) {
      const Rational d = gradient_degree(f, pa.arc, p, refiner(pa.arc));
      if (d != cd.dgr)
        fail(ErrorKind::Internal, "conjugate arcs disagree on the gradient degree: " + d.get_str() +
                                      " vs " + cd.dgr.get_str());
    }
    const Tangency t = tangency(pa.arc, out.cone, p);
    pa.tangent_lambda = t.lambda;
    pa.tangential = t.tangential;
    // Leading term of f along the arc.
    Rational E(out.cone.k + 1);
    for (;;) {
      GermExpansion g = compose_germ(f, pa.arc, E, p, refiner(pa.arc));
      if (!g.terms.empty()) {
        pa.h0 = g.terms.front().exp;
        pa.a0 = g.terms.front().coeff;
        pa.expansion = std::move(g);
        break;
      }
      if (E >= cap) fail(ErrorKind::TruncationCapExceeded, "f(arc) vanishes below the window cap");
      E = std::min<Rational>(E * 2, cap);
    }
    return pa;
  });

  out.canyons = canyons(out.arcs, p);

  // Windows wide enough for the gradient degree and for every pair comparison.
  for (auto& a : out.arcs) {
    Rational reach = a.dgr;
    for (const auto& b : out.arcs) {
      if (b.id == a.id || b.canyon == a.canyon || b.h0 != a.h0) continue;
      if (!a.tangential || !b.tangential || !approx_equal(a.tangent_lambda, b.tangent_lambda, p)) continue;
      const Contact c = contact_order(a.arc, b.arc, p);
      if (c.value && *c.value > reach) reach = *c.value;
    }
    const Rational W = a.h0 + reach - 1;
    if (W > a.expansion.window)
      a.expansion = compose_germ(f, a.arc, W, p, refiner(a.arc));
  }
  return out;
}

}  // namespace bilip
