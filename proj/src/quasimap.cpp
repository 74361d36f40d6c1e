#include "cext/quasimap.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cext {

namespace {

// chi values on a ball, computed once per element.
template <typename Map, typename Val>
std::vector<Val> values_on(const Map& chi, const Ball& b) {
  std::vector<Val> vals;
  vals.reserve(b.size());
  for (const auto& g : b.elems) vals.push_back(chi(g));
  return vals;
}

}  // namespace

DefectResult defect_on_ball(const QuasiMap& chi, int r, size_t cap) {
  if (auto it = chi.defect_cache->find(r); it != chi.defect_cache->end())
    return it->second;
  auto b = ball(chi.domain, r, cap);
  auto vals = values_on<QuasiMap, KValue>(chi, b);
  std::unordered_map<GroupValue, KValue, GroupValueHash> prod_vals;
  DefectResult best{0, chi.domain->identity(), chi.domain->identity()};
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      GroupValue p = chi.domain->multiply(b.elems[i], b.elems[j]);
      KValue pv;
      if (auto idx = b.index_of(p)) {
        pv = vals[*idx];
      } else {
        auto it = prod_vals.find(p);
        if (it == prod_vals.end()) it = prod_vals.emplace(p, chi(p)).first;
        pv = it->second;
      }
      long long d = vals[i].add(chi.target, vals[j]).sub(chi.target, pv).norm();
      if (d > best.value) best = {d, b.elems[i], b.elems[j]};
    }
  chi.defect_cache->emplace(r, best);
  return best;
}

RationalDefectResult defect_on_ball(const RationalMap& chi, int r, size_t cap) {
  auto b = ball(chi.domain, r, cap);
  auto vals = values_on<RationalMap, Rational>(chi, b);
  std::unordered_map<GroupValue, Rational, GroupValueHash> prod_vals;
  RationalDefectResult best{Rational(0), chi.domain->identity(), chi.domain->identity()};
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      GroupValue p = chi.domain->multiply(b.elems[i], b.elems[j]);
      Rational pv;
      if (auto idx = b.index_of(p)) {
        pv = vals[*idx];
      } else {
        auto it = prod_vals.find(p);
        if (it == prod_vals.end()) it = prod_vals.emplace(p, chi(p)).first;
        pv = it->second;
      }
      Rational d = (vals[i] + vals[j] - pv).abs();
      if (d > best.value) best = {d, b.elems[i], b.elems[j]};
    }
  return best;
}

Rational homogenize(const QuasiMap& phi, const GroupValue& g, long long n) {
  if (phi.target.free_rank != 1 || !phi.target.torsion.empty())
    throw input_error("homogenize: target must be Z, got " + phi.target.str());
  if (n < 1) throw input_error("homogenize: exponent must be >= 1");
  return Rational(phi(phi.domain->power(g, n)).free_part[0], n);
}

Rational homogenize(const RationalMap& phi, const GroupValue& g, long long n) {
  if (n < 1) throw input_error("homogenize: exponent must be >= 1");
  return phi(phi.domain->power(g, n)) / Rational(n);
}

QuasiMap brooks(const GroupPtr& free_grp, const Word& w) {
  if (free_grp->kind() != GroupKind::Free)
    throw input_error("brooks: domain must be a free group");
  std::vector<int> pat;
  for (auto [idx, sign] : w.letters) {
    if (idx < 0 || idx >= free_grp->rank())
      throw input_error("brooks: generator index out of range");
    pat.push_back(sign > 0 ? idx + 1 : -(idx + 1));
  }
  if (pat.empty()) throw input_error("brooks: word must be nonempty");
  for (size_t i = 0; i + 1 < pat.size(); ++i)
    if (pat[i] == -pat[i + 1])
      throw input_error("brooks: word is not reduced at position " +
                        std::to_string(i));
  std::vector<int> inv(pat.rbegin(), pat.rend());
  for (int& c : inv) c = -c;

  QuasiMap phi;
  phi.domain = free_grp;
  phi.target = KDesc(1);
  phi.provenance = "Brooks counting map";
  phi.rule = [pat, inv](const GroupValue& g) {
    auto count = [&](const std::vector<int>& p) {
      long long c = 0;
      if (g.word.size() < p.size()) return c;
      for (size_t i = 0; i + p.size() <= g.word.size(); ++i)
        if (std::equal(p.begin(), p.end(), g.word.begin() + i)) ++c;
      return c;
    };
    return KValue(KDesc(1), {count(pat) - count(inv)});
  };
  return phi;
}

Rational busemann(const std::vector<long long>& gen_translations,
                  const GroupValue& g, long long T) {
  if (T < 1) throw input_error("busemann: truncation must be >= 1");
  const GroupPtr& G = g.owner();
  if ((int)gen_translations.size() != G->generator_count())
    throw input_error("busemann: need one translation length per generator");
  // signed translation of g on the line, from the generator exponent sums
  long long k = 0;
  switch (G->kind()) {
    case GroupKind::Free:
      for (int c : g.word) k += (c > 0 ? 1 : -1) * gen_translations[std::abs(c) - 1];
      break;
    case GroupKind::FreeAbelian:
      for (size_t i = 0; i < g.vec.size(); ++i) k += g.vec[i] * gen_translations[i];
      break;
    case GroupKind::Cyclic:
      if (gen_translations[0] != 0)
        throw input_error(
            "busemann: a finite-order generator with nonzero translation fixes "
            "no end of the line");
      break;
    default:
      throw input_error("busemann: line actions are declared for free, "
                        "free abelian and cyclic domains only");
  }
  // d(g x0, x_n) - d(x0, x_n) = |k - n| - n, maximised over the tail window
  long long best = std::llabs(k - T) - T;
  for (long long n = T + 1; n <= 2 * T; ++n)
    best = std::max(best, std::llabs(k - n) - n);
  return Rational(best);
}

QuasilineDistance quasiline_distance(const QuasilineMetric& ql, const GroupValue& g,
                                     int search_radius, size_t cap) {
  if (ql.scale_c < 1) throw input_error("quasiline: scale C must be >= 1");
  const GroupPtr& G = ql.base;
  if (g.owner().get() != G.get())
    throw input_error("quasiline: element not in the base group");
  if (G->is_identity(g)) return {true, 0};

  auto b = ball(G, search_radius, cap);
  Rational C((long long)ql.scale_c);

  // one-step membership is decidable without the ball
  bool g_in_sc = ql.potential(g).abs() <= C;
  for (int i = 0; i < G->generator_count() && !g_in_sc; ++i)
    for (int s : {1, -1})
      if (g == G->generator(i, s)) g_in_sc = true;
  if (g_in_sc) return {true, 1};

  if (!b.index_of(g))
    throw input_error("quasiline: element outside ball(" +
                      std::to_string(search_radius) + "), enlarge the search radius");

  std::vector<size_t> sc;  // generating set, as ball indices
  for (size_t i = 1; i < b.size(); ++i)
    if (ql.potential(b.elems[i]).abs() <= C) sc.push_back(i);
  for (int i = 0; i < G->generator_count(); ++i)
    for (int s : {1, -1})
      if (auto idx = b.index_of(G->generator(i, s)))
        if (ql.potential(b.elems[*idx]).abs() > C) sc.push_back(*idx);

  std::vector<long long> dist(b.size(), -1);
  dist[0] = 0;
  std::deque<size_t> queue{0};
  size_t target = *b.index_of(g);
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    for (size_t s : sc) {
      GroupValue next = G->multiply(b.elems[cur], b.elems[s]);
      if (auto idx = b.index_of(next); idx && dist[*idx] < 0) {
        dist[*idx] = dist[cur] + 1;
        if (*idx == target) return {true, dist[*idx]};
        queue.push_back(*idx);
      }
    }
  }
  // not reached inside the ball: any path must leave it, so only the cheap
  // bound d >= 2 (g is not a single S_C step) is certain
  return {false, 2};
}

namespace {

std::string matrix_str(const std::vector<std::vector<Rational>>& m) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.size(); ++i) {
    os << (i ? "; " : "");
    for (size_t j = 0; j < m[i].size(); ++j) os << (j ? " " : "") << m[i][j];
  }
  os << "]";
  return os.str();
}

// Gauss-Jordan over the rationals; returns nullopt when singular.
std::optional<std::vector<std::vector<Rational>>> invert(
    std::vector<std::vector<Rational>> a) {
  size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == Rational(0)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational d = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] / d;
      inv[col][j] = inv[col][j] / d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == Rational(0)) continue;
      Rational f = a[i][col];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = a[i][j] - f * a[col][j];
        inv[i][j] = inv[i][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

RetractionResult retract_to_kernel(const std::vector<RationalMap>& phis,
                                   const std::vector<GroupValue>& basis) {
  size_t n = phis.size();
  if (n == 0 || basis.size() != n)
    throw input_error("retract_to_kernel: need as many maps as basis elements");
  GroupPtr dom = phis[0].domain;
  for (const auto& p : phis)
    if (p.domain.get() != dom.get())
      throw input_error("retract_to_kernel: maps have different domains");

  RetractionResult res;
  res.m.assign(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) res.m[i][j] = phis[i](basis[j]);
  auto inv = invert(res.m);
  if (!inv)
    throw input_error("retract_to_kernel: matrix M = " + matrix_str(res.m) +
                      " is singular");
  res.m_inverse = *inv;
  res.m_inverse_l1 = Rational(0);
  for (size_t j = 0; j < n; ++j) {
    Rational col(0);
    for (size_t i = 0; i < n; ++i) col = col + res.m_inverse[i][j].abs();
    if (col > res.m_inverse_l1) res.m_inverse_l1 = col;
  }

  KDesc target((int)n);
  auto minv = res.m_inverse;
  auto maps = phis;
  res.psi.domain = dom;
  res.psi.target = target;
  res.psi.provenance = "kernel retraction";
  res.psi.rule = [minv, maps, target, n](const GroupValue& e) {
    std::vector<long long> out(n);
    std::vector<Rational> vals;
    vals.reserve(n);
    for (const auto& p : maps) vals.push_back(p(e));
    for (size_t i = 0; i < n; ++i) {
      Rational s(0);
      for (size_t j = 0; j < n; ++j) s = s + minv[i][j] * vals[j];
      out[i] = s.round();
    }
    return KValue(target, out);
  };
  return res;
}

RationalMap abelianization_correction(
    const RationalMap& x,
    const std::vector<std::pair<GroupValue, RationalMap>>& pairs) {
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = 0; j < pairs.size(); ++j) {
      Rational v = pairs[j].second(pairs[i].first);
      Rational want(i == j ? 1 : 0);
      if (v != want)
        throw input_error("abelianization correction: lambda_" + std::to_string(j) +
                          "(x_" + std::to_string(i) + ") = " + v.str() +
                          ", expected " + want.str());
    }
  std::vector<Rational> coeffs;
  std::vector<RationalMap> lambdas;
  for (const auto& [xj, lj] : pairs) {
    coeffs.push_back(x(xj));
    lambdas.push_back(lj);
  }
  RationalMap out;
  out.domain = x.domain;
  out.provenance = x.provenance + " (abelianization corrected)";
  out.rule = [x, coeffs, lambdas](const GroupValue& g) {
    Rational v = x(g);
    for (size_t j = 0; j < lambdas.size(); ++j) v = v - coeffs[j] * lambdas[j](g);
    return v;
  };
  return out;
}

ConjugationProbeResult conjugation_invariance_probe(
    const QuasiMap& phi, const GroupPtr& ambient,
    const std::function<bool(const GroupValue&)>& in_n, int r, size_t cap) {
  if (phi.domain.get() != ambient.get())
    throw input_error("conjugation probe: map must evaluate on the ambient group");
  auto b = ball(ambient, r, cap);
  std::vector<size_t> in_sub;
  for (size_t i = 0; i < b.size(); ++i)
    if (in_n(b.elems[i])) in_sub.push_back(i);
  ConjugationProbeResult best{0, ambient->identity(), ambient->identity()};
  for (const auto& gamma : b.elems)
    for (size_t li : in_sub) {
      const auto& lam = b.elems[li];
      KValue d = phi(ambient->conjugate(gamma, lam)).sub(phi.target, phi(lam));
      if (d.norm() > best.value) best = {d.norm(), gamma, lam};
    }
  return best;
}

RationalMap as_rational(const QuasiMap& chi) {
  if (chi.target.free_rank != 1 || !chi.target.torsion.empty())
    throw input_error("as_rational: target must be Z, got " + chi.target.str());
  RationalMap out;
  out.domain = chi.domain;
  out.provenance = chi.provenance;
  out.rule = [chi](const GroupValue& g) { return Rational(chi(g).free_part[0]); };
  return out;
}

QuasiMap as_integer(const RationalMap& phi, GroupPtr domain) {
  if (domain.get() != phi.domain.get())
    throw input_error("as_integer: domain mismatch");
  QuasiMap out;
  out.domain = std::move(domain);
  out.target = KDesc(1);
  out.provenance = phi.provenance + " (integral part)";
  out.rule = [phi](const GroupValue& g) { return KValue(KDesc(1), {phi(g).floor()}); };
  return out;
}

}  // namespace cext
