// Command-line front end: analyze, compare, arcs, selftest.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "bilip/errors.hpp"
#include "bilip/escalate.hpp"
#include "bilip/json.hpp"

using namespace bilip;

namespace {

struct Options {
  std::vector<std::string> params;
  std::vector<std::string> params1;
  std::vector<std::string> params2;
  unsigned precision = 256;
  double eps = 0;
  int max_terms = 64;
  bool json = false;
  std::uint64_t seed = 1;
  std::string shear;
  int threads = 1;
  std::string order = "10";
  bool polar = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--param", o.params, "parameter binding name=value (repeatable)");
  cmd->add_option("--precision", o.precision, "working precision in bits")->check(CLI::Range(64u, 4096u));
  cmd->add_option("--eps", o.eps, "zero-test threshold (default 2^(-precision/2))");
  cmd->add_option("--max-terms", o.max_terms, "term cap per Puiseux arc")->check(CLI::PositiveNumber);
  cmd->add_flag("--json", o.json, "emit JSON");
  cmd->add_option("--seed", o.seed, "seed for randomized oracles");
  cmd->add_option("--shear", o.shear, "pre-apply the coordinate change x -> x + lambda*y");
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

std::map<std::string, Scalar> bindings(const std::vector<std::string>& base,
                                       const std::vector<std::string>& extra) {
  std::map<std::string, Scalar> out;
  for (const auto* list : {&base, &extra})
    for (const auto& b : *list) {
      const auto eq = b.find('=');
      if (eq == std::string::npos || eq == 0)
        fail(ErrorKind::InvalidArgument, "--param expects name=value, got '" + b + "'");
      out[b.substr(0, eq)] = parse_scalar(b.substr(eq + 1));
    }
  return out;
}

PolarOptions polar_options(const Options& o) {
  PolarOptions po;
  po.precision.bits = o.precision;
  po.precision.max_bits = std::max(4096u, o.precision);
  if (o.eps > 0) po.precision.eps_override = o.eps;
  po.max_terms = o.max_terms;
  po.threads = o.threads;
  return po;
}

BivarPoly load(const std::string& expr, const std::map<std::string, Scalar>& params, const Options& o) {
  BivarPoly f = parse_poly(expr, params);
  if (!o.shear.empty()) f = transform_germ(f, {Transform::Shear, parse_scalar(o.shear)});
  return f;
}

Json options_json(const Options& o) {
  return Json{{"precision", o.precision}, {"eps", o.eps > 0 ? std::to_string(o.eps) : "default"},
              {"max_terms", o.max_terms}, {"seed", o.seed}, {"shear", o.shear.empty() ? "0" : o.shear},
              {"threads", o.threads}};
}

Json params_json(const std::map<std::string, Scalar>& params) {
  Json j = Json::object();
  for (const auto& [k, v] : params) j[k] = to_json(v);
  return j;
}

std::string poly_term(const Scalar& c, const Rational& e) {
  const std::string y = e == 0 ? "" : e == 1 ? "y" : "y^" + (e.get_den() == 1 ? e.get_str() : "(" + e.get_str() + ")");
  return c.to_string() + (y.empty() ? "" : "*" + y);
}

std::string series(const std::vector<ArcTerm>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : " + ") + poly_term(t.coeff, t.exp);
  return s;
}

void print_arc(const PuiseuxArc& a) {
  std::cout << "x = " << series(a.terms);
  if (a.residual.infinite) std::cout << "  (exact)";
  else std::cout << " + O(y^" << a.residual.to_string() << ")";
  std::cout << "  N=" << a.ramification;
  if (a.multiplicity > 1) std::cout << "  multiplicity " << a.multiplicity;
}

void print_analysis(const BivarPoly& f, const GermAnalysis& g) {
  const auto& cone = g.polar.cone;
  std::cout << "germ: " << f.to_string() << "\n";
  std::cout << "multiplicity k = " << cone.k << "\n";
  std::cout << "mini-regular: yes\nsquarefree: yes\n";
  std::cout << "tangent cone: " << cone.initial_form.to_string() << "\n";
  const auto sigma = cone.singular_lines();
  std::cout << "singular lines (Σ_f):";
  if (sigma.empty()) std::cout << " none";
  for (const auto& l : sigma) std::cout << "  x = " << l.lambda.to_string() << "*y (mult " << l.multiplicity << ")";
  std::cout << "\npolar arcs:\n";
  for (const auto& a : g.polar.arcs) {
    std::cout << "  #" << a.id << "  ";
    print_arc(a.arc);
    std::cout << "\n      d_gr=" << a.dgr.get_str() << "  tangent lambda=" << a.tangent_lambda.to_string()
              << (a.tangential ? " (tangential)" : " (not tangential)") << "  h0=" << a.h0.get_str()
              << "  a0=" << a.a0.to_string() << "  canyon " << a.canyon << "\n";
    std::cout << "      f(arc) = " << series(a.expansion.terms) << " + O(y^" << a.expansion.window.get_str() << ")\n";
  }
  std::cout << "canyons:\n";
  for (const auto& c : g.polar.canyons) {
    std::cout << "  " << c.id << ": degree " << c.degree.get_str() << ", arcs {";
    for (std::size_t k = 0; k < c.members.size(); ++k) std::cout << (k ? "," : "") << c.members[k];
    std::cout << "}\n";
  }
  if (g.inv.packets.empty()) {
    std::cout << "Σ_f empty; Inv² = {}\n";
    return;
  }
  std::cout << "Inv²:\n";
  for (const auto& d : g.inv.packets) {
    std::cout << "  line x = " << d.lambda.to_string() << "*y: {";
    bool first = true;
    for (const auto& e : d.leading) {
      std::cout << (first ? "" : ", ") << poly_term(e.a0, e.h0);
      if (e.multiplicity > 1) std::cout << " (x" << e.multiplicity << ")";
      first = false;
    }
    std::cout << ";";
    first = true;
    for (const auto& q : d.pairs) {
      std::cout << (first ? " " : ", ") << "(" << q.l0.get_str() << ", " << poly_term(q.nu, q.m) << ")";
      first = false;
    }
    std::cout << "}\n";
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::PrecisionExhausted: return 3;
    case ErrorKind::TruncationCapExceeded: return 4;
    case ErrorKind::SyntaxError:
    case ErrorKind::UnboundParameter:
    case ErrorKind::NonIntegerExponent:
    case ErrorKind::NotVanishingAtOrigin:
    case ErrorKind::NotMiniRegular:
    case ErrorKind::MultipleRoot:
    case ErrorKind::InfiniteGradientDegree:
    case ErrorKind::InvalidArgument: return 2;
    default: return 5;
  }
}

int cmd_analyze(const std::string& expr, const Options& o) {
  const auto params = bindings(o.params, {});
  const BivarPoly f = load(expr, params, o);
  const GermAnalysis g = analyze_germ(f, polar_options(o));
  if (!o.json) {
    print_analysis(f, g);
    return 0;
  }
  Json arcs = Json::array();
  for (const auto& a : g.polar.arcs) arcs.push_back(to_json(a));
  Json canyons = Json::array();
  for (const auto& c : g.polar.canyons) canyons.push_back(to_json(c));
  Json out{{"input", {{"expr", expr}, {"params", params_json(params)}, {"polynomial", f.to_string()}}},
           {"options", options_json(o)},
           {"analysis",
            {{"k", g.polar.cone.k},
             {"mini_regular", true},
             {"squarefree", true},
             {"precision_used", g.used.bits},
             {"tangent_cone", to_json(g.polar.cone)},
             {"polar_arcs", arcs},
             {"canyons", canyons},
             {"inv2", to_json(g.inv)}}}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_compare(const std::string& e1, const std::string& e2, const Options& o) {
  const auto p1 = bindings(o.params, o.params1);
  const auto p2 = bindings(o.params, o.params2);
  const BivarPoly f = load(e1, p1, o);
  const BivarPoly g = load(e2, p2, o);
  const PolarOptions po = polar_options(o);
  const EquivalenceReport r = with_escalation(po.precision, [&](const Precision& p) {
    PolarOptions q = po;
    q.precision = p;
    const GermAnalysis a = analyze_germ(f, q);
    const GermAnalysis b = analyze_germ(g, q);
    return inv2_equivalent(a.inv, b.inv, p);
  });
  if (o.json) {
    Json out{{"input", {{"first", {{"expr", e1}, {"params", params_json(p1)}}},
                        {"second", {{"expr", e2}, {"params", params_json(p2)}}}}},
             {"options", options_json(o)},
             {"comparison", to_json(r)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "decision: " << to_string(r.decision) << "\n";
    for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& w : r.witnesses) {
      std::cout << "witness: lines";
      for (std::size_t i = 0; i < w.line_map.size(); ++i) std::cout << " " << i << "->" << w.line_map[i];
      std::cout << "; c =";
      for (const auto& c : w.c) std::cout << " " << c.to_string();
      std::cout << "\n";
    }
    if (r.decision == Decision::ConsistentWithEquivalence && r.witnesses.front().line_map.empty())
      std::cout << "(both invariants are empty)\n";
    for (const auto& f : r.refutations) {
      std::cout << "refutation";
      if (f.line1 >= 0) std::cout << " (line " << f.line1 << " vs line " << f.line2 << ")";
      std::cout << ": no common c for\n";
      for (const auto& c : f.constraints) std::cout << "  " << c << "\n";
    }
  }
  return r.decision == Decision::ConsistentWithEquivalence ? 0 : 1;
}

int cmd_arcs(const std::string& expr, const Options& o) {
  const auto params = bindings(o.params, {});
  const BivarPoly f = load(expr, params, o);
  const Rational order = parse_scalar(o.order).exact().re;
  const PolarOptions po = polar_options(o);
  const BivarPoly target = o.polar ? f.dx() : f;
  auto arcs = with_escalation(po.precision, [&](const Precision& p) {
    std::vector<PuiseuxArc> all;
    for (const auto& rep : puiseux_roots(target, order, {p, po.max_terms}))
      for (auto& c : conjugates(rep, p.bits)) all.push_back(std::move(c));
    return all;
  });
  if (o.json) {
    Json list = Json::array();
    for (const auto& a : arcs) list.push_back(to_json(a));
    Json out{{"input", {{"expr", expr}, {"params", params_json(params)}, {"polar", o.polar}}},
             {"options", options_json(o)},
             {"arcs", list}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& a : arcs) {
      std::cout << "class " << a.conj_class << " conjugate " << a.conj_index << ": ";
      print_arc(a);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_selftest(const Options& o) {
  const auto rows = run_selftest(o.seed, polar_options(o));
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  if (o.json) {
    Json list = Json::array();
    for (const auto& r : rows) list.push_back(to_json(r));
    std::cout << Json{{"options", options_json(o)}, {"selftest", list}, {"pass", ok}}.dump(2) << "\n";
  } else {
    for (const auto& r : rows)
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.suite << "  " << r.name << "\n        expected: "
                << r.expected << "\n        actual:   " << r.actual << "\n";
    std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-Lipschitz invariants of plane curve germs"};
  app.require_subcommand(1);
  Options o;
  std::string e1, e2;

  auto* analyze = app.add_subcommand("analyze", "polar arcs, canyons and Inv2 of a germ");
  analyze->add_option("expr", e1, "polynomial in x and y")->required();
  add_common(analyze, o);

  auto* compare = app.add_subcommand("compare", "decide whether two Inv2 values match under C*");
  compare->add_option("expr1", e1, "first polynomial")->required();
  compare->add_option("expr2", e2, "second polynomial")->required();
  compare->add_option("--param1", o.params1, "binding for the first polynomial only");
  compare->add_option("--param2", o.params2, "binding for the second polynomial only");
  add_common(compare, o);

  auto* arcs = app.add_subcommand("arcs", "Puiseux roots x = x(y) through the origin");
  arcs->add_option("expr", e1, "polynomial in x and y")->required();
  arcs->add_option("--order", o.order, "residual order to expand to");
  arcs->add_flag("--polar", o.polar, "expand the roots of f_x instead of f");
  add_common(arcs, o);

  auto* selftest = app.add_subcommand("selftest", "golden examples and oracle cross-checks");
  add_common(selftest, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(e1, o);
    if (compare->parsed()) return cmd_compare(e1, e2, o);
    if (arcs->parsed()) return cmd_arcs(e1, o);
    return cmd_selftest(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
