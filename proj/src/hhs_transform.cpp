#include "cext/hhs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cext {

namespace {

long long diam_within(const FiniteMetric& fm, const std::vector<int>& orb) {
  long long best = 0;
  for (int i : orb)
    for (int j : orb) best = std::max(best, fm.dist[i][j]);
  return best;
}

long long lookup_pu(const std::vector<std::pair<long long, long long>>& table,
                    long long t) {
  if (table.empty()) return 1;
  long long clamped = std::max<long long>(1, std::min<long long>(t, (long long)table.size()));
  return table[clamped - 1].second;
}

}  // namespace

RestrictResult restrict_to_unbounded(const HHSModel& m, long long threshold,
                                     long long delta) {
  validate_model(m);
  if (threshold < delta)
    throw input_error("restrict: threshold " + std::to_string(threshold) +
                      " is below the hierarchy constant " + std::to_string(delta));
  RestrictResult res;
  size_t nd = m.domain_count();
  std::vector<int> newindex(nd, -1);
  for (size_t v = 0; v < nd; ++v)
    if ((int)v == m.maximal || m.graphs[v].diameter() > threshold) {
      newindex[v] = (int)res.kept.size();
      res.kept.push_back((int)v);
    }

  HHSModel out;
  out.name = m.name + "-unbounded";
  out.points = m.points;
  size_t nk = res.kept.size();
  for (int v : res.kept) {
    out.domain_names.push_back(m.domain_names[v]);
    out.graphs.push_back(m.graphs[v]);
    out.projections.push_back(m.projections[v]);
  }
  out.maximal = newindex[m.maximal];
  out.nested.assign(nk, std::vector<bool>(nk, false));
  out.orth.assign(nk, std::vector<bool>(nk, false));
  out.rel.assign(nk, std::vector<std::optional<std::vector<int>>>(nk));
  for (size_t a = 0; a < nk; ++a)
    for (size_t b = 0; b < nk; ++b) {
      int v = res.kept[a], w = res.kept[b];
      out.nested[a][b] = m.nested[v][w];
      out.orth[a][b] = m.orth[v][w];
      out.rel[a][b] = m.rel[v][w];
    }
  for (const auto& gen : m.action) {
    ActionGen g;
    g.name = gen.name;
    g.on_points = gen.on_points;
    for (int v : res.kept) g.on_graphs.push_back(gen.on_graphs[v]);
    out.action.push_back(std::move(g));
  }
  validate_model(out);
  res.model = std::move(out);

  // passing-up table of the original structure, flattened beyond delta
  CheckOptions opts;
  opts.passing_up_variant = true;
  AxiomReport rep = check_axioms(m, delta, {}, opts);
  for (const auto& [t, _] : rep.passing_up)
    res.passing_up.emplace_back(t, lookup_pu(rep.passing_up, std::max(t, delta)));
  return res;
}

namespace {

std::vector<int> orbit_classes(size_t n,
                               const std::vector<const std::vector<int>*>& gens,
                               std::vector<std::vector<int>>& members) {
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto* g : gens)
    for (size_t i = 0; i < n; ++i) {
      int a = find((int)i), b = find((*g)[i]);
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> cls(n, -1);
  members.clear();
  for (size_t i = 0; i < n; ++i) {
    int r = find((int)i);
    if (cls[r] < 0) {
      cls[r] = (int)members.size();
      members.push_back({});
    }
    cls[i] = cls[r];
    members[cls[i]].push_back((int)i);
  }
  return cls;
}

FiniteMetric quotient_metric(const FiniteMetric& fm, const std::vector<int>& cls,
                             const std::vector<std::vector<int>>& members) {
  FiniteMetric out;
  for (const auto& orb : members) out.names.push_back(fm.names[orb.front()]);
  size_t n = members.size();
  out.dist.assign(n, std::vector<long long>(n, 0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      long long best = -1;
      for (int i : members[a])
        for (int j : members[b])
          if (best < 0 || fm.dist[i][j] < best) best = fm.dist[i][j];
      out.dist[a][b] = best;
    }
  (void)cls;
  return out;
}

}  // namespace

QuotientResult quotient_model(const HHSModel& m, long long delta) {
  validate_model(m);
  size_t nd = m.domain_count(), np = m.points.size();

  // every generator must be a projection-equivariant isometry fixing the
  // relative projections
  for (const auto& gen : m.action) {
    for (size_t x = 0; x < np; ++x)
      for (size_t y = 0; y < np; ++y)
        if (m.points.dist[gen.on_points[x]][gen.on_points[y]] !=
            m.points.dist[x][y])
          throw input_error("quotient: generator " + gen.name +
                            " is not an isometry on points " +
                            m.points.names[x] + ", " + m.points.names[y]);
    for (size_t w = 0; w < nd; ++w) {
      const auto& g = m.graphs[w];
      const auto& p = gen.on_graphs[w];
      for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j)
          if (g.dist[p[i]][p[j]] != g.dist[i][j])
            throw input_error("quotient: generator " + gen.name +
                              " is not an isometry on graph " +
                              m.domain_names[w]);
      for (size_t x = 0; x < np; ++x) {
        std::vector<int> moved;
        for (int a : m.projections[w][x]) moved.push_back(p[a]);
        std::vector<int> want = m.projections[w][gen.on_points[x]];
        std::sort(moved.begin(), moved.end());
        std::sort(want.begin(), want.end());
        if (moved != want)
          throw input_error("quotient: generator " + gen.name +
                            " does not commute with the projection of " +
                            m.points.names[x] + " to " + m.domain_names[w]);
      }
      for (size_t v = 0; v < nd; ++v)
        if (m.rel[v][w]) {
          std::vector<int> moved;
          for (int a : *m.rel[v][w]) moved.push_back(p[a]);
          std::vector<int> want = *m.rel[v][w];
          std::sort(moved.begin(), moved.end());
          std::sort(want.begin(), want.end());
          if (moved != want)
            throw input_error("quotient: generator " + gen.name +
                              " moves the relative projection of " +
                              m.domain_names[v] + " in " + m.domain_names[w]);
        }
    }
  }

  std::vector<const std::vector<int>*> pgens;
  for (const auto& gen : m.action) pgens.push_back(&gen.on_points);
  std::vector<std::vector<int>> pmembers;
  std::vector<int> pcls = orbit_classes(np, pgens, pmembers);

  QuotientResult res;
  HHSModel out;
  // a trivial action must reproduce the input exactly, so the name is kept
  out.name = m.name;
  out.points = quotient_metric(m.points, pcls, pmembers);
  out.domain_names = m.domain_names;
  out.maximal = m.maximal;
  out.nested = m.nested;
  out.orth = m.orth;
  out.rel.assign(nd, std::vector<std::optional<std::vector<int>>>(nd));
  for (size_t w = 0; w < nd; ++w) {
    std::vector<const std::vector<int>*> ggens;
    for (const auto& gen : m.action) ggens.push_back(&gen.on_graphs[w]);
    std::vector<std::vector<int>> gmembers;
    std::vector<int> gcls = orbit_classes(m.graphs[w].size(), ggens, gmembers);
    for (const auto& orb : gmembers)
      res.max_orbit_diameter =
          std::max(res.max_orbit_diameter, diam_within(m.graphs[w], orb));
    out.graphs.push_back(quotient_metric(m.graphs[w], gcls, gmembers));
    out.projections.push_back({});
    for (size_t x = 0; x < np; ++x) {
      if (pcls[x] != (int)out.projections[w].size()) continue;
      std::vector<int> img;
      for (int a : m.projections[w][x]) img.push_back(gcls[a]);
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      out.projections[w].push_back(std::move(img));
    }
    for (size_t v = 0; v < nd; ++v)
      if (m.rel[v][w]) {
        std::vector<int> img;
        for (int a : *m.rel[v][w]) img.push_back(gcls[a]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        out.rel[v][w] = std::move(img);
      }
  }
  validate_model(out);
  res.model = std::move(out);
  res.delta_out = delta + 2 * res.max_orbit_diameter;
  return res;
}

}  // namespace cext
