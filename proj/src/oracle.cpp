#include "bilip/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "bilip/errors.hpp"
#include "bilip/escalate.hpp"

namespace bilip {

namespace {

long first_nonzero(const SparseSeries& s, const Precision& p) {
  for (const auto& [e, c] : s)
    if (!is_zero(c, p)) return e;
  return -1;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long lcm_upto(int n) {
  long l = 1;
  for (int k = 2; k <= n; ++k) l = std::lcm(l, static_cast<long>(k));
  return l;
}

}  // namespace

Scalar unit_circle_point(const Rational& t) {
  const Rational d = 1 + t * t;
  return Scalar(Rational((1 - t * t) / d), Rational(2 * t / d));
}

std::string Transform::to_string() const {
  return std::string(kind == Scale ? "Scale(" : "Shear(") + value.to_string() + ")";
}

BivarPoly transform_germ(const BivarPoly& f, const Transform& t) {
  if (t.kind == Transform::Shear) return shift_x(f, SparseSeries{{1, t.value}});
  if (t.value.is_exact_zero()) fail(ErrorKind::InvalidArgument, "Scale(0) is not invertible");
  BivarPoly out;
  for (const auto& [m, c] : f.terms()) out.add_term(m.i, m.j, c * t.value.pow(m.i + m.j));
  return out;
}

Rational gradient_order(const BivarPoly& f, const PuiseuxArc& arc, const Scalar& c,
                        const Rational& q, const Rational& cap, const Precision& p) {
  const long N = arc.ramification;
  const long L = std::lcm(N, q.get_den().get_si());
  SparseSeries X;
  for (const auto& t : arc.terms) X.emplace(Rational(t.exp * L).get_num().get_si(), t.coeff);
  if (!c.is_exact_zero()) {
    const long e = Rational(q * L).get_num().get_si();
    auto [it, inserted] = X.emplace(e, c);
    if (!inserted) it->second += c;
  }
  const long bound = ceil_q(cap * L).get_si();
  Rational best = cap;
  for (const BivarPoly& g : {f.dx(), f.dy()}) {
    const long o = first_nonzero(substitute(g, X, static_cast<int>(L), bound), p);
    if (o >= 0) best = std::min(best, Rational(o, L));
  }
  best.canonicalize();
  return best;
}

Rational dgr_sampling(const BivarPoly& f, const PuiseuxArc& arc_in,
                      std::optional<std::vector<Rational>> grid, int trials, std::uint64_t seed,
                      const Precision& p) {
  PuiseuxArc arc = arc_in;
  const long N = arc.ramification;
  const long v0 = first_nonzero(substitute(f.dy(), arc.scaled_terms(), static_cast<int>(N)), p);
  if (v0 < 0) fail(ErrorKind::InfiniteGradientDegree, "f_y vanishes along the arc");
  const Rational top = Rational(v0, N) + 1;
  if (!grid) {
    grid.emplace();
    const long step = N * lcm_upto(std::max(1, f.deg_x()));
    for (Rational q(1); q <= top; q += Rational(1, step)) {
      Rational r = q;
      r.canonicalize();
      grid->push_back(r);
    }
  }
  if (grid->size() < 2) fail(ErrorKind::GridTooCoarse, "need at least two grid points");
  std::sort(grid->begin(), grid->end());
  const Rational cap = std::max(top, grid->back()) + 1;
  // Orders below cap are exact only when the truncation error lies above it.
  if (arc.residual < Order::of(cap)) {
    const ExpansionOptions eo{p, 64};
    arc = refine_polar(f.dx(), arc, cap, eo);
  }
  const Rational base = gradient_order(f, arc, Scalar(0), Rational(1), cap, p);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, 500);
  std::vector<Rational> orders;
  for (const auto& q : *grid) {
    Rational worst(-1);
    for (int t = 0; t < trials; ++t) {
      const Scalar c = unit_circle_point(Rational(pick(rng), 97));
      worst = std::max(worst, gradient_order(f, arc, c, q, cap, p));
    }
    orders.push_back(worst);
  }
  const std::size_t n = orders.size();
  if (orders[n - 1] != orders[n - 2] || orders[n - 1] != base)
    fail(ErrorKind::GridTooCoarse, "gradient order has not stabilized at q = " + grid->back().get_str());
  std::size_t k = n - 1;
  while (k > 0 && orders[k - 1] == base) --k;
  return (*grid)[k];
}

OrderSum order_sum_check(const BivarPoly& f, const PolarOptions& opts) {
  const BivarPoly fx = f.dx();
  const int dx = fx.deg_x();
  if (dx < 1) fail(ErrorKind::PreconditionNotMet, "f_x has no roots in x");
  const auto lc = fx.column(dx);
  if (lc.size() != 1 || lc.begin()->first != 0)
    fail(ErrorKind::PreconditionNotMet, "leading x-coefficient of f_x depends on y");
  const TangentCone cone = tangent_cone(f, opts.precision);
  if (f.deg_x() != cone.k)
    fail(ErrorKind::PreconditionNotMet, "f_x has roots away from the origin (deg_x f > k)");
  const PolarAnalysis polar = polar_arcs(f, opts);
  OrderSum s;
  for (const auto& a : polar.arcs) s.polar_sum += a.h0 * a.arc.multiplicity;
  s.resultant_order = y_order(resultant_x(f, fx));
  return s;
}

namespace {

struct Runner {
  std::vector<SelftestRow> rows;
  PolarOptions opts;

  template <typename Fn>
  void check(const std::string& suite, const std::string& name, const std::string& expected, Fn&& fn) {
    SelftestRow r{suite, name, expected, "", false};
    try {
      r.actual = with_escalation(opts.precision, [&](const Precision& p) {
        PolarOptions o = opts;
        o.precision = p;
        return fn(o);
      });
      r.pass = r.actual == expected || r.actual.rfind("skipped", 0) == 0;
    } catch (const std::exception& e) {
      r.actual = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(r));
  }
};

std::string leading_string(const DeltaL& d) {
  std::vector<std::string> parts;
  for (const auto& e : d.leading) parts.push_back("(" + e.h0.get_str() + "," + e.a0.to_string() + ")");
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (const auto& x : parts) s += x;
  return s;
}

std::string pairs_string(const DeltaL& d) {
  std::vector<std::string> parts;
  for (const auto& q : d.pairs)
    parts.push_back("(" + q.l0.get_str() + "," + q.m.get_str() + "," + q.nu.to_string() + ")");
  std::sort(parts.begin(), parts.end());
  std::string s;
  for (const auto& x : parts) s += x;
  return s.empty() ? "none" : s;
}

std::string arcs_string(const PolarAnalysis& pa) {
  std::string s;
  for (const auto& a : pa.arcs) {
    s += "[";
    for (const auto& t : a.arc.terms) s += t.coeff.to_string() + "*y^" + t.exp.get_str() + " ";
    s += a.arc.residual.infinite ? "exact]" : "...]";
  }
  return s;
}

bool has_witness_near(const EquivalenceReport& r, const Scalar& c, long double tol) {
  for (const auto& w : r.witnesses)
    for (const auto& line : w.candidates)
      for (const auto& cw : line)
        if ((cw.c - c).abs_upper() <= tol) return true;
  return false;
}

}  // namespace

std::vector<SelftestRow> run_selftest(std::uint64_t seed, const PolarOptions& opts) {
  Runner run;
  run.opts = opts;
  const std::string two_arc = "x^3 - 3*x*y^10 + y^12";
  const std::string two_arc_t2 = "x^3 - 12*x*y^10 + y^12";
  const std::string bc = "x^3 + x^2*y^3 + y^9 + x*y^7";
  const std::string bc_b2 = "x^3 + 2*x^2*y^3 + y^9 + x*y^7";
  const std::string degenerate = "x^3 - 3*x*y^4 + y^6";

  auto packet = [](const std::string& s, const PolarOptions& o) {
    Inv2 inv = inv2(parse_poly(s), o);
    if (inv.packets.size() != 1) fail(ErrorKind::Internal, "expected one packet");
    return inv.packets.front();
  };

  run.check("golden", "two-arc family t=1: polar arcs", "[-1*y^5 exact][1*y^5 exact]",
            [&](const PolarOptions& o) { return arcs_string(polar_arcs(parse_poly(two_arc), o)); });
  run.check("golden", "two-arc family t=1: leading data", "(12,1)(12,1)",
            [&](const PolarOptions& o) { return leading_string(packet(two_arc, o)); });
  run.check("golden", "two-arc family t=1: pair data", "(12,15,-4)(12,15,4)",
            [&](const PolarOptions& o) { return pairs_string(packet(two_arc, o)); });
  run.check("golden", "b=c=1 family: leading data", "(9,1)(9,31/27)",
            [&](const PolarOptions& o) { return leading_string(packet(bc, o)); });
  run.check("golden", "b=c=1 family: pair data", "(9,10,-18/31)(9,10,18/31)",
            [&](const PolarOptions& o) { return pairs_string(packet(bc, o)); });
  run.check("golden", "b=c=1 family: gradient degrees", "5,5", [&](const PolarOptions& o) {
    auto pa = polar_arcs(parse_poly(bc), o);
    std::string s;
    for (const auto& a : pa.arcs) s += (s.empty() ? "" : ",") + a.dgr.get_str();
    return s;
  });
  run.check("golden", "degenerate family t=1: leading data", "(6,-1)(6,3)",
            [&](const PolarOptions& o) { return leading_string(packet(degenerate, o)); });
  run.check("golden", "degenerate family t=1: pair data", "none",
            [&](const PolarOptions& o) { return pairs_string(packet(degenerate, o)); });

  // Gradient degree of the arc y^5: the support method gives 6 where 11/2 is
  // stated in the literature; the sampling oracle arbitrates.
  run.check("gradient-degree", "arc y^5 of the two-arc family (stated elsewhere as 11/2)",
            "support=6 sampling=6", [&](const PolarOptions& o) {
              const BivarPoly f = parse_poly(two_arc);
              auto pa = polar_arcs(f, o);
              const auto& a = pa.arcs.back();
              const Rational s = dgr_sampling(f, a.arc, std::vector<Rational>{2, 5, Rational(11, 2), 6, 7},
                                              5, seed, o.precision);
              return "support=" + a.dgr.get_str() + " sampling=" + s.get_str();
            });
  const std::vector<std::string> corpus = {two_arc, bc, degenerate, "x^2 - y^3", "x^2 + x*y + y^5",
                                           "x^3 + y^5", "x^3 - y^7 + x*y^5", "x^2 - y^4 + x*y^3",
                                           "x^4 + x^2*y^2 + y^6", "x^3 - 3*x*y^6 + y^9 + x^2*y^4"};
  for (const auto& g : corpus) {
    run.check("gradient-degree", "support vs sampling: " + g, "agree", [&](const PolarOptions& o) {
      const BivarPoly f = parse_poly(g);
      for (const auto& a : polar_arcs(f, o).arcs) {
        const Rational s = dgr_sampling(f, a.arc, std::nullopt, 5, seed, o.precision);
        if (s != a.dgr) return "arc " + std::to_string(a.id) + ": " + a.dgr.get_str() + " vs " + s.get_str();
      }
      return std::string("agree");
    });
  }
  for (const auto& g : corpus) {
    const BivarPoly f = parse_poly(g);
    run.check("order-sum", "sum h0 = ord Res_x(f, f_x): " + g, "equal", [&](const PolarOptions& o) {
      try {
        const OrderSum s = order_sum_check(f, o);
        return s.holds() ? std::string("equal")
                         : s.polar_sum.get_str() + " vs " + std::to_string(s.resultant_order);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::PreconditionNotMet) return std::string("skipped: ") + e.what();
        throw;
      }
    });
  }

  auto compare = [&](const std::string& a, const std::string& b, const PolarOptions& o) {
    return inv2_equivalent(inv2(parse_poly(a), o), inv2(parse_poly(b), o), o.precision);
  };
  run.check("equivalence", "two-arc family t=1 vs t=2", "NotEquivalent: c^12 = 1; c^3 in {8,-8}",
            [&](const PolarOptions& o) {
              auto r = compare(two_arc, two_arc_t2, o);
              std::string s = to_string(r.decision) + ":";
              for (const auto& ref : r.refutations)
                for (std::size_t k = 0; k < ref.constraints.size(); ++k)
                  s += (k ? "; " : " ") + ref.constraints[k];
              return s;
            });
  run.check("equivalence", "b=c=1 vs b=2,c=1", "NotEquivalent",
            [&](const PolarOptions& o) { return to_string(compare(bc, bc_b2, o).decision); });
  for (const auto& g : {two_arc, bc, degenerate}) {
    run.check("equivalence", "f vs f(2x,2y): " + g, "witness c=2", [&](const PolarOptions& o) {
      const BivarPoly f = parse_poly(g);
      auto r = inv2_equivalent(inv2(f, o), inv2(transform_germ(f, {Transform::Scale, Scalar(2)}), o),
                               o.precision);
      return has_witness_near(r, Scalar(2), 1e-30L) ? std::string("witness c=2") : to_string(r.decision);
    });
  }
  run.check("equivalence", "two-arc family vs its shear x -> x + y", "witness c=1",
            [&](const PolarOptions& o) {
              const BivarPoly f = parse_poly(two_arc);
              auto r = inv2_equivalent(inv2(f, o), inv2(transform_germ(f, {Transform::Shear, Scalar(1)}), o),
                                       o.precision);
              return has_witness_near(r, Scalar(1), 1e-30L) ? std::string("witness c=1") : to_string(r.decision);
            });
  return run.rows;
}

}  // namespace bilip
