#include "bilip/json.hpp"

#include <cmath>
#include <cstdio>

#include "bilip/errors.hpp"

namespace bilip {

namespace {

std::string err_string(long double e) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.20Le", e);
  return buf;
}

int digits_for(unsigned prec) { return static_cast<int>(std::ceil(prec * 0.30103)) + 1; }

}  // namespace

Json to_json(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  const auto& a = s.approx();
  return Json{{"re", a.re.to_string(digits_for(a.prec))},
              {"im", a.im.to_string(digits_for(a.prec))},
              {"err", err_string(a.err)},
              {"prec", std::to_string(a.prec)}};
}

Json to_json(const Rational& q) { return q.get_str(); }

Json to_json(const Order& o) { return o.to_string(); }

Json to_json(const PuiseuxArc& arc) {
  Json terms = Json::array();
  for (const auto& t : arc.terms) terms.push_back({{"exp", to_json(t.exp)}, {"coeff", to_json(t.coeff)}});
  return Json{{"N", arc.ramification},
              {"terms", terms},
              {"residual", to_json(arc.residual)},
              {"mult", arc.multiplicity},
              {"class", arc.conj_class},
              {"conjugate", arc.conj_index}};
}

Json to_json(const GermExpansion& g) {
  Json terms = Json::array();
  for (const auto& t : g.terms) terms.push_back({{"exp", to_json(t.exp)}, {"coeff", to_json(t.coeff)}});
  return terms;
}

Json to_json(const PolarArc& a) {
  return Json{{"id", a.id},
              {"arc", to_json(a.arc)},
              {"d_gr", to_json(a.dgr)},
              {"tangent_lambda", to_json(a.tangent_lambda)},
              {"tangential", a.tangential},
              {"h0", to_json(a.h0)},
              {"a0", to_json(a.a0)},
              {"expansion", to_json(a.expansion)},
              {"window", to_json(a.expansion.window)},
              {"canyon", a.canyon}};
}

Json to_json(const Canyon& c) {
  return Json{{"id", c.id}, {"degree", to_json(c.degree)}, {"members", c.members}};
}

Json to_json(const TangentCone& cone) {
  Json lines = Json::array();
  for (const auto& l : cone.lines) lines.push_back({{"lambda", to_json(l.lambda)}, {"mult", l.multiplicity}});
  Json sigma = Json::array();
  for (const auto& l : cone.singular_lines()) sigma.push_back(to_json(l.lambda));
  return Json{{"k", cone.k}, {"initial_form", cone.initial_form.to_string()}, {"lines", lines},
              {"singular_lines", sigma}};
}

Json to_json(const Inv2& inv) {
  Json lines = Json::array();
  for (const auto& d : inv.packets) {
    Json leading = Json::array();
    for (const auto& e : d.leading)
      leading.push_back({{"h0", to_json(e.h0)}, {"a0", to_json(e.a0)}, {"mult", e.multiplicity}, {"arc", e.arc}});
    Json pairs = Json::array();
    for (const auto& q : d.pairs)
      pairs.push_back({{"l0", to_json(q.l0)},
                       {"m", to_json(q.m)},
                       {"nu", to_json(q.nu)},
                       {"delta", to_json(q.delta)},
                       {"alpha", q.alpha},
                       {"beta", q.beta}});
    lines.push_back({{"lambda", to_json(d.lambda)}, {"leading", leading}, {"pairs", pairs}});
  }
  return Json{{"lines", lines}, {"k", inv.k}};
}

Json to_json(const EquivalenceReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    Json c = Json::array();
    for (const auto& x : w.c) c.push_back(to_json(x));
    Json cands = Json::array();
    for (const auto& line : w.candidates) {
      Json l = Json::array();
      for (const auto& cw : line) l.push_back({{"c", to_json(cw.c)}, {"u", to_json(cw.u)}, {"D", cw.D}});
      cands.push_back(l);
    }
    witnesses.push_back({{"line_map", w.line_map}, {"c", c}, {"candidates", cands}});
  }
  Json refutations = Json::array();
  for (const auto& f : r.refutations)
    refutations.push_back({{"line_pair", {f.line1, f.line2}}, {"constraints", f.constraints}});
  return Json{{"decision", to_string(r.decision)},
              {"witnesses", witnesses},
              {"refutations", refutations},
              {"warnings", r.warnings}};
}

Json to_json(const SelftestRow& row) {
  return Json{{"suite", row.suite}, {"name", row.name}, {"expected", row.expected},
              {"actual", row.actual}, {"pass", row.pass}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (!j.is_object()) fail(ErrorKind::InvalidArgument, "scalar must be a string or an object");
  const unsigned prec = static_cast<unsigned>(std::stoul(j.at("prec").get<std::string>()));
  return Scalar::approx(BigFloat::from_string(j.at("re").get<std::string>(), prec),
                        BigFloat::from_string(j.at("im").get<std::string>(), prec),
                        std::stold(j.at("err").get<std::string>()));
}

Rational rational_from_json(const Json& j) {
  Rational q(j.get<std::string>());
  q.canonicalize();
  return q;
}

}  // namespace bilip
