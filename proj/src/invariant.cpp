#include "bilip/invariant.hpp"

#include <algorithm>
#include <set>

#include "bilip/errors.hpp"
#include "bilip/escalate.hpp"

namespace bilip {

std::string to_string(Exclusion e) {
  switch (e) {
    case Exclusion::None: return "None";
    case Exclusion::DifferentLine: return "DifferentLine";
    case Exclusion::ContactAtMostOne: return "ContactAtMostOne";
    case Exclusion::SameCanyon: return "SameCanyon";
    case Exclusion::DifferentH0: return "DifferentH0";
    case Exclusion::NoDifferenceInWindow: return "NoDifferenceInWindow";
  }
  return "?";
}

namespace {

GermExpansion widened(const BivarPoly& f, const PolarArc& a, const Rational& window,
                      const Precision& p) {
  if (a.expansion.window >= window) return a.expansion;
  const BivarPoly fx = f.dx();
  const ExpansionOptions eo{p, 64};
  const PuiseuxArc old = a.arc;
  return compose_germ(f, a.arc, window, p,
                      [&](const Rational& need) { return refine_polar(fx, old, need, eo); });
}

}  // namespace

PairOutcome pair_data(const BivarPoly& f, const PolarArc& a, const PolarArc& b, const Precision& p) {
  if (!approx_equal(a.tangent_lambda, b.tangent_lambda, p)) return {std::nullopt, Exclusion::DifferentLine};
  const Contact c = contact_order(a.arc, b.arc, p);
  if (!c.value)
    fail(ErrorKind::IndistinguishableArcs, "arcs " + std::to_string(a.id) + " and " +
                                               std::to_string(b.id) + " agree up to y^" +
                                               c.horizon.to_string());
  const Rational delta = *c.value;
  if (delta <= 1) return {std::nullopt, Exclusion::ContactAtMostOne};
  if (a.canyon == b.canyon) return {std::nullopt, Exclusion::SameCanyon};
  if (a.h0 != b.h0) return {std::nullopt, Exclusion::DifferentH0};

  const Rational top = a.h0 + delta - 1;
  const GermExpansion ea = widened(f, a, top, p);
  const GermExpansion eb = widened(f, b, top, p);
  const Scalar a0 = ea.coeff_at(a.h0);
  const Scalar b0 = eb.coeff_at(b.h0);
  std::set<Rational> exps;
  for (const auto& t : ea.terms) exps.insert(t.exp);
  for (const auto& t : eb.terms) exps.insert(t.exp);
  for (const auto& e : exps) {
    if (e < a.h0) continue;
    if (e >= top) break;
    const Scalar diff = ea.coeff_at(e) / a0 - eb.coeff_at(e) / b0;
    if (is_zero(diff, p)) continue;
    return {PairData{a.id, b.id, a.h0, delta, e, diff}, Exclusion::None};
  }
  return {std::nullopt, Exclusion::NoDifferenceInWindow};
}

DeltaL delta_L(const BivarPoly& f, const Scalar& lambda, const std::vector<PolarArc>& arcs,
               const Precision& p) {
  DeltaL d;
  d.lambda = lambda;
  std::vector<const PolarArc*> gamma;
  for (const auto& a : arcs)
    if (a.tangential && approx_equal(a.tangent_lambda, lambda, p)) gamma.push_back(&a);
  for (const auto* a : gamma) d.leading.push_back({a->id, a->h0, a->a0, a->arc.multiplicity});
  for (const auto* a : gamma)
    for (const auto* b : gamma) {
      if (a == b) continue;
      PairOutcome o = pair_data(f, *a, *b, p);
      if (o.data) d.pairs.push_back(std::move(*o.data));
    }
  return d;
}

Inv2 inv2(const BivarPoly& f, const PolarAnalysis& polar, const Precision& p) {
  Inv2 inv;
  inv.k = polar.cone.k;
  inv.precision_bits = p.bits;
  auto lines = polar.cone.singular_lines();
  std::sort(lines.begin(), lines.end(),
            [](const ConeLine& a, const ConeLine& b) { return lex_compare(a.lambda, b.lambda) < 0; });
  for (const auto& line : lines) inv.packets.push_back(delta_L(f, line.lambda, polar.arcs, p));
  return inv;
}

Inv2 inv2(const BivarPoly& f, const PolarOptions& opts) {
  return inv2(f, polar_arcs(f, opts), opts.precision);
}

GermAnalysis analyze_germ(const BivarPoly& f, const PolarOptions& opts) {
  return with_escalation(opts.precision, [&](const Precision& p) {
    PolarOptions o = opts;
    o.precision = p;
    GermAnalysis g;
    g.polar = polar_arcs(f, o);
    g.inv = inv2(f, g.polar, p);
    g.used = p;
    return g;
  });
}

DeltaL cstar_transform(const DeltaL& d, const Scalar& c, unsigned prec) {
  if (c.is_exact_zero()) fail(ErrorKind::InvalidArgument, "the C* action needs c != 0");
  DeltaL out = d;
  for (auto& e : out.leading) e.a0 = e.a0 * pow_rational(c, e.h0, prec);
  for (auto& q : out.pairs) q.nu = q.nu * pow_rational(c, q.m - q.l0, prec);
  return out;
}

}  // namespace bilip
