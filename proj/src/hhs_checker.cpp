#include "cext/hhs.hpp"

#include <algorithm>
#include <functional>

namespace cext {

namespace {

// Set-to-set distance at finite scale: diameter of the union. Collapses to
// the usual distance for singletons and dominates both Hausdorff distances.
long long dset(const FiniteMetric& g, const std::vector<int>& a,
               const std::vector<int>& b) {
  long long best = 0;
  auto scan = [&](const std::vector<int>& p, const std::vector<int>& q) {
    for (int i : p)
      for (int j : q) best = std::max(best, g.dist[i][j]);
  };
  scan(a, a);
  scan(b, b);
  scan(a, b);
  return best;
}

long long diam_of(const FiniteMetric& g, const std::vector<int>& a) {
  long long best = 0;
  for (int i : a)
    for (int j : a) best = std::max(best, g.dist[i][j]);
  return best;
}

struct Tables {
  // dd[w][x][y]: projection distance of the points x, y in domain w
  std::vector<std::vector<std::vector<long long>>> dd;
  long long max_dd = 0;
  long long max_graph_diam = 0;
};

Tables build_tables(const HHSModel& m) {
  Tables t;
  size_t nd = m.domain_count(), np = m.points.size();
  t.dd.assign(nd, std::vector<std::vector<long long>>(
                      np, std::vector<long long>(np, 0)));
  for (size_t w = 0; w < nd; ++w) {
    t.max_graph_diam = std::max(t.max_graph_diam, m.graphs[w].diameter());
    for (size_t x = 0; x < np; ++x)
      for (size_t y = x; y < np; ++y) {
        long long d = dset(m.graphs[w], m.projections[w][x], m.projections[w][y]);
        t.dd[w][x][y] = t.dd[w][y][x] = d;
        t.max_dd = std::max(t.max_dd, d);
      }
  }
  return t;
}

std::string pt(const HHSModel& m, size_t x) { return m.points.names[x]; }
std::string dom(const HHSModel& m, size_t w) { return m.domain_names[w]; }

using CheckFn = std::function<std::optional<std::string>(long long)>;

std::optional<std::string> check_projections(const HHSModel& m, const Tables& t,
                                             long long delta) {
  size_t nd = m.domain_count(), np = m.points.size();
  for (size_t w = 0; w < nd; ++w) {
    for (size_t x = 0; x < np; ++x) {
      long long d = diam_of(m.graphs[w], m.projections[w][x]);
      if (d > delta)
        return "projection of " + pt(m, x) + " to " + dom(m, w) + " has diameter " +
               std::to_string(d);
    }
    for (size_t x = 0; x < np; ++x)
      for (size_t y = 0; y < np; ++y) {
        long long bound = delta * m.points.dist[x][y] + delta;
        if (t.dd[w][x][y] > bound)
          return "projection to " + dom(m, w) + " stretches " + pt(m, x) + ", " +
                 pt(m, y) + ": " + std::to_string(t.dd[w][x][y]) + " > " +
                 std::to_string(bound);
      }
    for (size_t u = 0; u < m.graphs[w].size(); ++u) {
      long long best = -1;
      for (size_t x = 0; x < np; ++x)
        for (int a : m.projections[w][x]) {
          long long d = m.graphs[w].dist[u][a];
          if (best < 0 || d < best) best = d;
        }
      if (best > delta)
        return "vertex " + m.graphs[w].names[u] + " of " + dom(m, w) +
               " is at distance " + std::to_string(best) + " from the image";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_nesting(const HHSModel& m, long long delta) {
  size_t nd = m.domain_count();
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w)
      if (m.strictly_nested((int)v, (int)w)) {
        long long d = diam_of(m.graphs[w], *m.rel[v][w]);
        if (d > delta)
          return "relative projection of " + dom(m, v) + " in " + dom(m, w) +
                 " has diameter " + std::to_string(d);
      }
  return std::nullopt;
}

std::optional<std::string> check_finite_complexity(const HHSModel& m,
                                                   long long delta) {
  size_t nd = m.domain_count();
  std::vector<long long> longest(nd, 0);
  std::function<long long(size_t)> go = [&](size_t v) -> long long {
    if (longest[v]) return longest[v];
    long long best = 1;
    for (size_t u = 0; u < nd; ++u)
      if (m.strictly_nested((int)u, (int)v)) best = std::max(best, 1 + go(u));
    return longest[v] = best;
  };
  for (size_t v = 0; v < nd; ++v)
    if (go(v) > delta)
      return "a nesting chain of length " + std::to_string(go(v)) + " ends at " +
             dom(m, v);
  return std::nullopt;
}

std::optional<std::string> check_orthogonality(const HHSModel& m) {
  size_t nd = m.domain_count();
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w)
      if (m.orth[v][w] && m.comparable((int)v, (int)w))
        return dom(m, v) + " and " + dom(m, w) + " are both orthogonal and comparable";
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w)
      for (size_t u = 0; u < nd; ++u)
        if (m.nested[v][w] && m.orth[w][u] && !m.orth[v][u])
          return dom(m, v) + " nested in " + dom(m, w) + " orthogonal to " +
                 dom(m, u) + " but " + dom(m, v) + " is not orthogonal to " +
                 dom(m, u);
  return std::nullopt;
}

std::optional<std::string> check_containers(const HHSModel& m) {
  size_t nd = m.domain_count();
  for (size_t w = 0; w < nd; ++w)
    for (size_t u = 0; u < nd; ++u) {
      if (!m.nested[u][w]) continue;
      std::vector<size_t> vs;
      for (size_t v = 0; v < nd; ++v)
        if (m.nested[v][w] && m.orth[v][u]) vs.push_back(v);
      if (vs.empty()) continue;
      bool found = false;
      for (size_t q = 0; q < nd && !found; ++q) {
        if (!m.nested[q][w]) continue;
        bool all = true;
        for (size_t v : vs) all = all && m.nested[v][q];
        found = all;
      }
      if (!found)
        return "no container for " + dom(m, u) + " in " + dom(m, w);
    }
  return std::nullopt;
}

std::optional<std::string> check_finite_dimension(const HHSModel& m,
                                                  long long delta) {
  size_t nd = m.domain_count();
  size_t best = 0;
  std::vector<size_t> cur, best_set;
  std::function<void(size_t)> go = [&](size_t from) {
    if (cur.size() > best) {
      best = cur.size();
      best_set = cur;
    }
    for (size_t v = from; v < nd; ++v) {
      bool ok = true;
      for (size_t u : cur) ok = ok && m.orth[u][v];
      if (ok) {
        cur.push_back(v);
        go(v + 1);
        cur.pop_back();
      }
    }
  };
  go(0);
  if ((long long)best > delta) {
    std::string names;
    for (size_t v : best_set) names += (names.empty() ? "" : ", ") + dom(m, v);
    return "pairwise orthogonal collection of size " + std::to_string(best) +
           ": " + names;
  }
  return std::nullopt;
}

std::optional<std::string> check_transversality(const HHSModel& m,
                                                long long delta) {
  size_t nd = m.domain_count();
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w)
      if (m.transverse((int)v, (int)w)) {
        long long d = diam_of(m.graphs[w], *m.rel[v][w]);
        if (d > delta)
          return "relative projection of " + dom(m, v) + " in transverse " +
                 dom(m, w) + " has diameter " + std::to_string(d);
      }
  return std::nullopt;
}

std::optional<std::string> check_consistency(const HHSModel& m, long long delta) {
  size_t nd = m.domain_count(), np = m.points.size();
  for (size_t x = 0; x < np; ++x)
    for (size_t v = 0; v < nd; ++v)
      for (size_t w = 0; w < nd; ++w) {
        if (!m.transverse((int)v, (int)w)) continue;
        long long a = dset(m.graphs[w], m.projections[w][x], *m.rel[v][w]);
        long long b = dset(m.graphs[v], m.projections[v][x], *m.rel[w][v]);
        if (std::min(a, b) > delta)
          return pt(m, x) + " is far from both relative projections of the "
                 "transverse pair " + dom(m, v) + ", " + dom(m, w);
      }
  for (size_t u = 0; u < nd; ++u)
    for (size_t v = 0; v < nd; ++v)
      for (size_t w = 0; w < nd; ++w) {
        if (!m.nested[u][v]) continue;
        bool premise = m.strictly_nested((int)v, (int)w) ||
                       (m.transverse((int)v, (int)w) && !m.orth[w][u]);
        if (!premise) continue;
        if (!m.rel[u][w] || !m.rel[v][w]) continue;
        long long d = dset(m.graphs[w], *m.rel[u][w], *m.rel[v][w]);
        if (d > delta)
          return "relative projections of " + dom(m, u) + " and " + dom(m, v) +
                 " in " + dom(m, w) + " are " + std::to_string(d) + " apart";
      }
  return std::nullopt;
}

// Unit-step geodesic machinery on a graph metric. Neighbours are vertices at
// distance exactly 1; a geodesic step decreases the distance to the target.
struct GeoScan {
  const FiniteMetric& g;
  int target;
  size_t cap;
  std::vector<long long> count;       // -1: not computed
  std::vector<int> avoid_reachable;   // -1 unknown, 0/1 computed
  const std::vector<long long>* excluded_dist = nullptr;  // to the rho set
  long long excl_radius = 0;

  GeoScan(const FiniteMetric& gr, int b, size_t cp)
      : g(gr), target(b), cap(cp), count(gr.size(), -1),
        avoid_reachable(gr.size(), -1) {}

  long long n_geodesics(int c) {
    if (count[c] >= 0) return count[c];
    if (c == target) return count[c] = 1;
    long long total = 0;
    for (size_t n = 0; n < g.size(); ++n)
      if (g.dist[c][n] == 1 && g.dist[n][target] == g.dist[c][target] - 1) {
        total += n_geodesics((int)n);
        if (total > (long long)cap)
          throw resource_error("geodesic enumeration exceeded the cap of " +
                               std::to_string(cap) + " in graph at vertex " +
                               g.names[c]);
      }
    return count[c] = total;
  }

  // true when a geodesic from c to the target stays outside the excluded
  // neighbourhood
  bool avoiding(int c) {
    if (avoid_reachable[c] >= 0) return avoid_reachable[c] != 0;
    avoid_reachable[c] = 0;
    if ((*excluded_dist)[c] <= excl_radius) return false;
    if (c == target) {
      avoid_reachable[c] = 1;
      return true;
    }
    for (size_t n = 0; n < g.size(); ++n)
      if (g.dist[c][n] == 1 && g.dist[n][target] == g.dist[c][target] - 1 &&
          avoiding((int)n)) {
        avoid_reachable[c] = 1;
        return true;
      }
    return false;
  }
};

std::optional<std::string> check_bgi(const HHSModel& m, const Tables& t,
                                     long long delta, size_t cap) {
  size_t nd = m.domain_count(), np = m.points.size();
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w) {
      if (!m.strictly_nested((int)v, (int)w)) continue;
      const FiniteMetric& gw = m.graphs[w];
      std::vector<long long> rho_dist(gw.size(), 0);
      for (size_t u = 0; u < gw.size(); ++u) {
        long long best = -1;
        for (int r : *m.rel[v][w])
          if (best < 0 || gw.dist[u][r] < best) best = gw.dist[u][r];
        rho_dist[u] = best;
      }
      for (size_t x = 0; x < np; ++x)
        for (size_t y = 0; y < np; ++y) {
          if (t.dd[v][x][y] < delta) continue;
          for (int b : m.projections[w][y]) {
            GeoScan scan(gw, b, cap);
            scan.excluded_dist = &rho_dist;
            scan.excl_radius = delta;
            for (int a : m.projections[w][x]) {
              scan.n_geodesics(a);
              if (scan.avoiding(a))
                return "a geodesic in " + dom(m, w) + " from " + gw.names[a] +
                       " to " + gw.names[b] + " avoids the relative projection "
                       "of " + dom(m, v) + " although " + pt(m, x) + ", " +
                       pt(m, y) + " are " + std::to_string(t.dd[v][x][y]) +
                       " apart there";
            }
          }
        }
    }
  return std::nullopt;
}

std::optional<std::string> check_large_links(const HHSModel& m, const Tables& t,
                                             long long delta) {
  size_t nd = m.domain_count(), np = m.points.size();
  for (size_t w = 0; w < nd; ++w) {
    std::vector<size_t> cands;
    for (size_t u = 0; u < nd; ++u)
      if (m.strictly_nested((int)u, (int)w)) cands.push_back(u);
    for (size_t x = 0; x < np; ++x)
      for (size_t y = 0; y < np; ++y) {
        std::vector<size_t> bad;
        for (size_t u : cands)
          if (t.dd[u][x][y] > delta) bad.push_back(u);
        long long bound = delta * t.dd[w][x][y] + delta;
        if (bad.empty()) continue;
        // smallest cover of the bad set by nesting into chosen candidates
        size_t best = cands.size() + 1;
        size_t nc = cands.size();
        for (size_t mask = 0; mask < (size_t(1) << nc); ++mask) {
          size_t sz = 0;
          for (size_t i = 0; i < nc; ++i)
            if (mask & (size_t(1) << i)) ++sz;
          if (sz >= best) continue;
          bool covers = true;
          for (size_t u : bad) {
            bool hit = false;
            for (size_t i = 0; i < nc && !hit; ++i)
              if ((mask & (size_t(1) << i)) && m.nested[u][cands[i]]) hit = true;
            covers = covers && hit;
          }
          if (covers) best = sz;
        }
        if ((long long)best > bound)
          return "links of " + pt(m, x) + ", " + pt(m, y) + " in " + dom(m, w) +
                 " need " + std::to_string(best) + " domains, allowed " +
                 std::to_string(bound);
      }
  }
  return std::nullopt;
}

std::optional<std::string> check_partial_realization(const HHSModel& m,
                                                     const Tables& t,
                                                     long long delta) {
  (void)t;
  size_t nd = m.domain_count(), np = m.points.size();
  std::vector<size_t> coll;
  std::optional<std::string> fail;

  std::function<bool(const std::vector<int>&)> realized =
      [&](const std::vector<int>& tuple) {
        for (size_t x = 0; x < np; ++x) {
          bool ok = true;
          for (size_t i = 0; i < coll.size() && ok; ++i) {
            size_t v = coll[i];
            std::vector<int> p = {tuple[i]};
            if (dset(m.graphs[v], m.projections[v][x], p) > delta) ok = false;
            for (size_t w = 0; w < nd && ok; ++w)
              if (m.strictly_nested((int)v, (int)w) ||
                  m.transverse((int)w, (int)v)) {
                if (dset(m.graphs[w], m.projections[w][x], *m.rel[v][w]) > delta)
                  ok = false;
              }
          }
          if (ok) return true;
        }
        return false;
      };

  std::function<void(std::vector<int>&)> tuples = [&](std::vector<int>& tuple) {
    if (fail) return;
    if (tuple.size() == coll.size()) {
      if (!tuple.empty() && !realized(tuple)) {
        std::string s;
        for (size_t i = 0; i < coll.size(); ++i)
          s += (s.empty() ? "" : ", ") + dom(m, coll[i]) + ":" +
               m.graphs[coll[i]].names[tuple[i]];
        fail = "no point realises the tuple " + s;
      }
      return;
    }
    size_t v = coll[tuple.size()];
    for (size_t p = 0; p < m.graphs[v].size(); ++p) {
      tuple.push_back((int)p);
      tuples(tuple);
      tuple.pop_back();
    }
  };

  std::function<void(size_t)> collections = [&](size_t from) {
    if (fail) return;
    if (!coll.empty()) {
      std::vector<int> tuple;
      tuples(tuple);
    }
    for (size_t v = from; v < nd && !fail; ++v) {
      bool ok = true;
      for (size_t u : coll) ok = ok && m.orth[u][v];
      if (ok) {
        coll.push_back(v);
        collections(v + 1);
        coll.pop_back();
      }
    }
  };
  collections(0);
  return fail;
}

std::optional<std::string> check_uniqueness(const HHSModel& m, const Tables& t,
                                            const std::vector<long long>& theta) {
  size_t nd = m.domain_count(), np = m.points.size();
  long long rmax = std::max<long long>((long long)theta.size() - 1, t.max_dd + 1);
  for (long long r = 0; r <= rmax; ++r) {
    long long th = (size_t)r < theta.size() ? theta[r] : theta.back();
    for (size_t x = 0; x < np; ++x)
      for (size_t y = 0; y < np; ++y) {
        if (m.points.dist[x][y] < th) continue;
        bool found = false;
        for (size_t w = 0; w < nd && !found; ++w)
          if (t.dd[w][x][y] >= r) found = true;
        if (!found)
          return pt(m, x) + ", " + pt(m, y) + " are " +
                 std::to_string(m.points.dist[x][y]) +
                 " apart but no domain separates them at scale " +
                 std::to_string(r);
      }
  }
  return std::nullopt;
}

std::vector<std::pair<long long, long long>> derive_passing_up(
    const HHSModel& m, const Tables& t, long long delta) {
  size_t nd = m.domain_count(), np = m.points.size();
  std::vector<std::pair<long long, long long>> table;
  for (long long tt = 1; tt <= t.max_dd + 1; ++tt) {
    long long worst = 0;
    for (size_t v = 0; v < nd; ++v)
      for (size_t x = 0; x < np; ++x)
        for (size_t y = x + 1; y < np; ++y) {
          std::vector<size_t> bad;
          for (size_t u = 0; u < nd; ++u)
            if (m.nested[u][v] && t.dd[u][x][y] > delta) bad.push_back(u);
          if (bad.empty()) continue;
          bool witnessed = false;
          for (size_t w = 0; w < nd && !witnessed; ++w) {
            if (!m.nested[w][v] || t.dd[w][x][y] <= tt) continue;
            for (size_t u : bad)
              if (m.nested[u][w]) {
                witnessed = true;
                break;
              }
          }
          if (!witnessed) worst = std::max(worst, (long long)bad.size());
        }
    table.emplace_back(tt, worst + 1);
  }
  return table;
}

AxiomResult run_axiom(const std::string& name, const CheckFn& fn, long long delta,
                      long long cap) {
  AxiomResult res;
  res.name = name;
  auto w = fn(delta);
  res.pass = !w.has_value();
  if (w) res.witness = *w;
  for (long long d = 0; d <= cap; ++d)
    if (!fn(d)) {
      res.min_delta = d;
      break;
    }
  return res;
}

}  // namespace

std::vector<long long> derive_theta(const HHSModel& m) {
  validate_model(m);
  Tables t = build_tables(m);
  size_t nd = m.domain_count(), np = m.points.size();
  std::vector<long long> theta;
  theta.push_back(0);
  for (long long r = 1; r <= t.max_dd + 1; ++r) {
    long long worst = -1;
    for (size_t x = 0; x < np; ++x)
      for (size_t y = 0; y < np; ++y) {
        bool separated = false;
        for (size_t w = 0; w < nd && !separated; ++w)
          if (t.dd[w][x][y] >= r) separated = true;
        if (!separated) worst = std::max(worst, m.points.dist[x][y]);
      }
    theta.push_back(worst + 1);
  }
  return theta;
}

AxiomReport check_axioms(const HHSModel& m, long long delta,
                         const std::vector<long long>& theta_in,
                         const CheckOptions& opts) {
  validate_model(m);
  if (delta < 0) throw input_error("check: negative hierarchy constant");
  for (long long th : theta_in)
    if (th < 0) throw input_error("check: negative entry in the distance table");

  Tables t = build_tables(m);
  AxiomReport rep;
  rep.delta = delta;
  if (theta_in.empty()) {
    rep.theta = derive_theta(m);
    rep.theta_derived = true;
  } else {
    rep.theta = theta_in;
  }

  long long cap = m.points.diameter() + t.max_graph_diam +
                  (long long)m.domain_count() + 2;
  cap = std::max(cap, delta);

  auto push = [&](AxiomResult r) {
    rep.pass = rep.pass && r.pass;
    rep.axioms.push_back(std::move(r));
  };

  push(run_axiom("projections",
                 [&](long long d) { return check_projections(m, t, d); }, delta,
                 cap));
  push(run_axiom("nesting", [&](long long d) { return check_nesting(m, d); },
                 delta, cap));
  push(run_axiom("finite complexity",
                 [&](long long d) { return check_finite_complexity(m, d); },
                 delta, cap));
  push(run_axiom("orthogonality",
                 [&](long long) { return check_orthogonality(m); }, delta, cap));
  if (opts.finite_dimension_variant)
    push(run_axiom("finite dimension",
                   [&](long long d) { return check_finite_dimension(m, d); },
                   delta, cap));
  else
    push(run_axiom("containers", [&](long long) { return check_containers(m); },
                   delta, cap));
  push(run_axiom("transversality",
                 [&](long long d) { return check_transversality(m, d); }, delta,
                 cap));
  push(run_axiom("consistency",
                 [&](long long d) { return check_consistency(m, d); }, delta,
                 cap));
  push(run_axiom("bounded geodesic image",
                 [&](long long d) { return check_bgi(m, t, d, opts.geodesic_cap); },
                 delta, cap));
  if (opts.passing_up_variant) {
    rep.passing_up = derive_passing_up(m, t, delta);
    AxiomResult pu;
    pu.name = "passing up";
    pu.pass = true;
    pu.min_delta = 0;
    pu.witness = "";
    push(std::move(pu));
  } else {
    push(run_axiom("large links",
                   [&](long long d) { return check_large_links(m, t, d); },
                   delta, cap));
  }
  push(run_axiom("partial realization",
                 [&](long long d) { return check_partial_realization(m, t, d); },
                 delta, cap));
  push(run_axiom("uniqueness",
                 [&](long long) { return check_uniqueness(m, t, rep.theta); },
                 delta, cap));
  return rep;
}

std::optional<long long> min_delta(const HHSModel& m, long long delta_max,
                                   const CheckOptions& opts) {
  if (delta_max < 0) throw input_error("min-delta: negative search bound");
  for (long long d = 0; d <= delta_max; ++d) {
    AxiomReport rep = check_axioms(m, d, {}, opts);
    if (rep.pass) return d;
  }
  return std::nullopt;
}

}  // namespace cext
