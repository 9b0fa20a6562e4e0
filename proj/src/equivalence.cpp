#include "bilip/equivalence.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <numeric>

#include "bilip/errors.hpp"

namespace bilip {

std::string to_string(Decision d) {
  return d == Decision::NotEquivalent ? "NotEquivalent" : "ConsistentWithEquivalence";
}

namespace {

constexpr long kCheckLimit = 1000000;

// Values grouped by the exponent they are scaled with.
struct ElementClass {
  std::string label;
  Rational exp;
  std::vector<Scalar> v1, v2;
};

struct Key {
  int kind;  // 0 leading, 1 pair
  Rational a, b;
  bool operator<(const Key& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

std::map<Key, std::pair<std::vector<Scalar>, Rational>> group(const DeltaL& d) {
  std::map<Key, std::pair<std::vector<Scalar>, Rational>> g;
  for (const auto& e : d.leading) {
    auto& slot = g[{0, e.h0, Rational(0)}];
    slot.second = e.h0;
    for (int k = 0; k < e.multiplicity; ++k) slot.first.push_back(e.a0);
  }
  for (const auto& q : d.pairs) {
    auto& slot = g[{1, q.l0, q.m}];
    slot.second = q.m - q.l0;
    slot.first.push_back(q.nu);
  }
  return g;
}

// Signature check; fills the classes when the exponent multisets agree.
bool classes_of(const DeltaL& d1, const DeltaL& d2, std::vector<ElementClass>& out) {
  auto g1 = group(d1), g2 = group(d2);
  if (g1.size() != g2.size()) return false;
  for (auto i1 = g1.begin(), i2 = g2.begin(); i1 != g1.end(); ++i1, ++i2) {
    if (i1->first.kind != i2->first.kind || i1->first.a != i2->first.a || i1->first.b != i2->first.b)
      return false;
    if (i1->second.first.size() != i2->second.first.size()) return false;
    ElementClass ec;
    ec.label = i1->first.kind == 0 ? "h0=" + i1->first.a.get_str()
                                   : "(l0,m)=(" + i1->first.a.get_str() + "," + i1->first.b.get_str() + ")";
    ec.exp = i1->second.second;
    ec.v1 = i1->second.first;
    ec.v2 = i2->second.first;
    out.push_back(std::move(ec));
  }
  return true;
}

std::string exp_label(const Rational& e) {
  if (e == 1) return "c";
  return e.get_den() == 1 ? "c^" + e.get_str() : "c^(" + e.get_str() + ")";
}

// 1: v2 matches scaled, 0: it does not.
bool edge(const Scalar& scaled, const Scalar& v1, const Scalar& v2, long double tol) {
  const Scalar diff = v2 - scaled;
  if (diff.is_exact()) return diff.is_exact_zero();
  const long double bound = tol * std::max<long double>(1.0L, v1.abs_center());
  if (diff.abs_upper() <= bound) return true;
  if (diff.abs_center() - diff.radius() > bound) return false;
  fail(ErrorKind::AmbiguousZero, "comparison straddles the tolerance");
}

bool perfect_matching(const std::vector<std::vector<char>>& adj) {
  const std::size_t n = adj.size();
  std::vector<int> match(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<char> seen(n, 0);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!adj[u][v] || seen[v]) continue;
        seen[v] = 1;
        if (match[v] < 0 || augment(static_cast<std::size_t>(match[v]))) {
          match[v] = static_cast<int>(u);
          return true;
        }
      }
      return false;
    };
    if (!augment(a)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> packet_constraints(const DeltaL& d1, const DeltaL& d2) {
  std::vector<ElementClass> classes;
  if (!classes_of(d1, d2, classes)) {
    auto describe = [](const DeltaL& d) {
      std::string s = "{";
      for (const auto& e : d.leading) s += (s.size() > 1 ? "," : "") + e.h0.get_str();
      s += "; ";
      for (const auto& q : d.pairs) s += "(" + q.l0.get_str() + "," + q.m.get_str() + ")";
      return s + "}";
    };
    return {"exponent signatures differ: " + describe(d1) + " vs " + describe(d2)};
  }
  std::vector<std::string> out;
  for (const auto& ec : classes) {
    std::vector<std::string> ratios;
    for (const auto& v : ec.v2) {
      const std::string r = (v / ec.v1.front()).to_string();
      if (std::find(ratios.begin(), ratios.end(), r) == ratios.end()) ratios.push_back(r);
    }
    if (ratios.size() == 1) {
      out.push_back(exp_label(ec.exp) + " = " + ratios.front());
    } else {
      std::string s = exp_label(ec.exp) + " in {";
      for (std::size_t k = 0; k < ratios.size(); ++k) s += (k ? "," : "") + ratios[k];
      out.push_back(s + "}");
    }
  }
  return out;
}

std::vector<CWitness> delta_equivalent(const DeltaL& d1, const DeltaL& d2, const Precision& p) {
  std::vector<ElementClass> classes;
  if (!classes_of(d1, d2, classes)) return {};
  if (classes.empty()) return {CWitness{Scalar(1), Scalar(1), 1}};

  Integer D = 1;
  for (const auto& ec : classes)
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), ec.exp.get_den_mpz_t());
  auto int_exp = [&](const ElementClass& ec) { return Rational(ec.exp * D).get_num().get_si(); };

  // Anchor on the class with the fewest root candidates.
  std::size_t anchor = 0;
  long fewest = -1;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const long count = static_cast<long>(classes[k].v2.size()) * int_exp(classes[k]);
    if (fewest < 0 || count < fewest) {
      fewest = count;
      anchor = k;
    }
  }
  const auto& ac = classes[anchor];
  std::vector<Scalar> candidates;
  for (const auto& v : ac.v2)
    for (auto& u : nth_roots(v / ac.v1.front(), static_cast<unsigned>(int_exp(ac)), p.bits))
      candidates.push_back(std::move(u));

  const long double tol = p.eps();
  long checks = 0;
  std::vector<CWitness> out;
  for (const auto& u : candidates) {
    bool ok = true;
    for (const auto& ec : classes) {
      if (++checks > kCheckLimit) fail(ErrorKind::ExplosionGuard, "too many candidate checks");
      const Scalar scale = u.pow(int_exp(ec));
      const std::size_t n = ec.v1.size();
      std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
      for (std::size_t a = 0; a < n; ++a) {
        const Scalar scaled = ec.v1[a] * scale;
        for (std::size_t b = 0; b < n; ++b) adj[a][b] = edge(scaled, ec.v1[a], ec.v2[b], tol);
      }
      if (!perfect_matching(adj)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const Scalar c = u.pow(D.get_si());
    const bool dup = std::any_of(out.begin(), out.end(), [&](const CWitness& w) {
      return edge(w.c, Scalar(1), c, tol);
    });
    if (!dup) out.push_back({c, u, D.get_si()});
  }
  return out;
}

EquivalenceReport inv2_equivalent(const Inv2& a, const Inv2& b, const Precision& p) {
  EquivalenceReport r;
  if (a.k != b.k)
    r.warnings.push_back("germ multiplicities differ (" + std::to_string(a.k) + " vs " +
                         std::to_string(b.k) + "); not part of the invariant");
  const std::size_t n = a.packets.size();
  if (n != b.packets.size()) {
    r.refutations.push_back({-1, -1, {"packet counts differ: " + std::to_string(n) + " vs " +
                                      std::to_string(b.packets.size())}});
    return r;
  }
  std::vector<std::vector<std::optional<std::vector<CWitness>>>> cache(
      n, std::vector<std::optional<std::vector<CWitness>>>(n));
  auto solve = [&](std::size_t i, std::size_t j) -> const std::vector<CWitness>& {
    if (!cache[i][j]) cache[i][j] = delta_equivalent(a.packets[i], b.packets[j], p);
    return *cache[i][j];
  };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Witness w;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const auto& cands = solve(i, perm[i]);
      if (cands.empty()) ok = false;
      else w.candidates.push_back(cands);
    }
    if (!ok) continue;
    w.line_map = perm;
    // Representative: the candidate closest to the positive real axis.
    for (const auto& cands : w.candidates) {
      const CWitness* best = &cands.front();
      for (const auto& c : cands) {
        const auto z = c.c.to_complex(), zb = best->c.to_complex();
        if (std::abs(std::arg(z)) < std::abs(std::arg(zb)) - 1e-12) best = &c;
      }
      w.c.push_back(best->c);
    }
    r.witnesses.push_back(std::move(w));
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!r.witnesses.empty()) {
    r.decision = Decision::ConsistentWithEquivalence;
    return r;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (solve(i, j).empty())
        r.refutations.push_back({static_cast<int>(i), static_cast<int>(j),
                                 packet_constraints(a.packets[i], b.packets[j])});
  return r;
}

}  // namespace bilip
