#include "cext/hhs.hpp"

#include <algorithm>

namespace cext {

long long FiniteMetric::diameter() const {
  long long d = 0;
  for (const auto& row : dist)
    for (long long v : row) d = std::max(d, v);
  return d;
}

int FiniteMetric::index_of(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return (int)i;
  return -1;
}

int HHSModel::domain_index(const std::string& nm) const {
  for (size_t i = 0; i < domain_names.size(); ++i)
    if (domain_names[i] == nm) return (int)i;
  return -1;
}

namespace {

void validate_metric(const FiniteMetric& fm, const std::string& what) {
  size_t n = fm.size();
  if (fm.dist.size() != n)
    throw input_error(what + ": distance table size does not match vertex count");
  for (size_t i = 0; i < n; ++i) {
    if (fm.dist[i].size() != n)
      throw input_error(what + ": row " + fm.names[i] + " has wrong length");
    if (fm.dist[i][i] != 0)
      throw input_error(what + ": nonzero self-distance at " + fm.names[i]);
    for (size_t j = 0; j < n; ++j) {
      if (fm.dist[i][j] < 0)
        throw input_error(what + ": negative distance " + fm.names[i] + " " + fm.names[j]);
      if (fm.dist[i][j] != fm.dist[j][i])
        throw input_error(what + ": asymmetric distance at " + fm.names[i] + " " +
                          fm.names[j]);
      if (i != j && fm.dist[i][j] == 0)
        throw input_error(what + ": distinct vertices " + fm.names[i] + " " +
                          fm.names[j] + " at distance 0");
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (fm.dist[i][j] > fm.dist[i][k] + fm.dist[k][j])
          throw input_error(what + ": triangle inequality fails at " + fm.names[i] +
                            " " + fm.names[j] + " via " + fm.names[k]);
}

}  // namespace

void validate_model(const HHSModel& m) {
  size_t nd = m.domain_count();
  if (nd == 0) throw input_error("model: no domains declared");
  if (m.points.size() == 0) throw input_error("model: no points declared");
  validate_metric(m.points, "points of " + m.name);
  if (m.graphs.size() != nd || m.nested.size() != nd || m.orth.size() != nd ||
      m.projections.size() != nd || m.rel.size() != nd)
    throw input_error("model: per-domain tables have inconsistent sizes");
  for (size_t w = 0; w < nd; ++w) {
    validate_metric(m.graphs[w], "coordinate graph " + m.domain_names[w]);
    if (m.graphs[w].size() == 0)
      throw input_error("model: empty coordinate graph for " + m.domain_names[w]);
  }

  // partial order
  for (size_t v = 0; v < nd; ++v) {
    if (m.nested[v].size() != nd || m.orth[v].size() != nd || m.rel[v].size() != nd)
      throw input_error("model: relation rows have inconsistent sizes");
    if (!m.nested[v][v])
      throw input_error("model: nesting is not reflexive at " + m.domain_names[v]);
  }
  for (size_t u = 0; u < nd; ++u)
    for (size_t v = 0; v < nd; ++v) {
      if (u != v && m.nested[u][v] && m.nested[v][u])
        throw input_error("model: nesting is not antisymmetric on " +
                          m.domain_names[u] + ", " + m.domain_names[v]);
      for (size_t w = 0; w < nd; ++w)
        if (m.nested[u][v] && m.nested[v][w] && !m.nested[u][w])
          throw input_error("model: nesting is not transitive on " +
                            m.domain_names[u] + " in " + m.domain_names[v] +
                            " in " + m.domain_names[w]);
    }
  if (m.maximal < 0 || (size_t)m.maximal >= nd)
    throw input_error("model: no maximal domain declared");
  for (size_t v = 0; v < nd; ++v)
    if (!m.nested[v][m.maximal])
      throw input_error("model: domain " + m.domain_names[v] +
                        " is not nested in the declared maximal element");

  for (size_t u = 0; u < nd; ++u) {
    if (m.orth[u][u])
      throw input_error("model: " + m.domain_names[u] + " is orthogonal to itself");
    for (size_t v = 0; v < nd; ++v)
      if (m.orth[u][v] != m.orth[v][u])
        throw input_error("model: orthogonality is not symmetric on " +
                          m.domain_names[u] + ", " + m.domain_names[v]);
  }

  // projections total and valued in the right graph
  for (size_t w = 0; w < nd; ++w) {
    if (m.projections[w].size() != m.points.size())
      throw input_error("model: missing projection table for domain " +
                        m.domain_names[w]);
    for (size_t x = 0; x < m.points.size(); ++x) {
      if (m.projections[w][x].empty())
        throw input_error("model: empty projection of point " + m.points.names[x] +
                          " to " + m.domain_names[w]);
      for (int v : m.projections[w][x])
        if (v < 0 || (size_t)v >= m.graphs[w].size())
          throw input_error("model: projection of " + m.points.names[x] + " to " +
                            m.domain_names[w] + " leaves the coordinate graph");
    }
  }

  // relative projections defined exactly where the axioms require them
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w) {
      bool need = m.strictly_nested((int)v, (int)w) || m.transverse((int)v, (int)w);
      if (need && !m.rel[v][w])
        throw input_error("model: missing relative projection from " +
                          m.domain_names[v] + " to " + m.domain_names[w]);
      if (!need && m.rel[v][w])
        throw input_error("model: unexpected relative projection from " +
                          m.domain_names[v] + " to " + m.domain_names[w]);
      if (m.rel[v][w]) {
        if (m.rel[v][w]->empty())
          throw input_error("model: empty relative projection from " +
                            m.domain_names[v] + " to " + m.domain_names[w]);
        for (int p : *m.rel[v][w])
          if (p < 0 || (size_t)p >= m.graphs[w].size())
            throw input_error("model: relative projection from " + m.domain_names[v] +
                              " to " + m.domain_names[w] +
                              " leaves the coordinate graph");
      }
    }

  for (const auto& gen : m.action) {
    auto check_perm = [&](const std::vector<int>& p, size_t n, const std::string& what) {
      if (p.size() != n)
        throw input_error("model action " + gen.name + ": " + what + " has wrong size");
      std::vector<bool> seen(n, false);
      for (int i : p) {
        if (i < 0 || (size_t)i >= n || seen[i])
          throw input_error("model action " + gen.name + ": " + what +
                            " is not a permutation");
        seen[i] = true;
      }
    };
    check_perm(gen.on_points, m.points.size(), "point map");
    if (gen.on_graphs.size() != nd)
      throw input_error("model action " + gen.name + ": missing coordinate graph maps");
    for (size_t w = 0; w < nd; ++w)
      check_perm(gen.on_graphs[w], m.graphs[w].size(),
                 "map on graph " + m.domain_names[w]);
  }
}

namespace {

FiniteMetric path_metric(int n, const std::string& prefix) {
  FiniteMetric fm;
  for (int i = 0; i < n; ++i) fm.names.push_back(prefix + std::to_string(i));
  fm.dist.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fm.dist[i][j] = std::llabs(i - j);
  return fm;
}

FiniteMetric point_metric(const std::string& name) {
  FiniteMetric fm;
  fm.names = {name};
  fm.dist = {{0}};
  return fm;
}

HHSModel grid_base(int n) {
  HHSModel m;
  m.name = "grid";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.points.names.push_back("p" + std::to_string(i) + "_" + std::to_string(j));
    }
  size_t np = m.points.names.size();
  m.points.dist.assign(np, std::vector<long long>(np, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          m.points.dist[i * n + j][k * n + l] = std::llabs(i - k) + std::llabs(j - l);

  m.domain_names = {"S", "U", "V"};
  m.maximal = 0;
  m.nested = {{true, false, false}, {true, true, false}, {true, false, true}};
  m.orth = {{false, false, false}, {false, false, true}, {false, true, false}};
  m.graphs = {point_metric("c"), path_metric(n, "u"), path_metric(n, "v")};

  m.projections.assign(3, {});
  for (size_t x = 0; x < np; ++x) {
    int i = (int)(x / n), j = (int)(x % n);
    m.projections[0].push_back({0});
    m.projections[1].push_back({i});
    m.projections[2].push_back({j});
  }
  m.rel.assign(3, std::vector<std::optional<std::vector<int>>>(3));
  m.rel[1][0] = std::vector<int>{0};  // rho^U_S
  m.rel[2][0] = std::vector<int>{0};  // rho^V_S
  return m;
}

}  // namespace

HHSModel make_path_model(int n) {
  HHSModel m;
  m.name = "path";
  m.points = path_metric(n, "p");
  m.domain_names = {"S"};
  m.maximal = 0;
  m.nested = {{true}};
  m.orth = {{false}};
  m.graphs = {path_metric(n, "s")};
  m.projections.assign(1, {});
  for (int i = 0; i < n; ++i) m.projections[0].push_back({i});
  m.rel.assign(1, std::vector<std::optional<std::vector<int>>>(1));
  return m;
}

HHSModel make_grid_model(int n) { return grid_base(n); }

HHSModel make_corrupted_grid_model(int n) {
  HHSModel m = grid_base(n);
  m.name = "grid-corrupted";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j % 2 == 1) m.projections[1][(size_t)i * n + j] = {n - 1 - i};
  return m;
}

HHSModel make_cycle_model(int n) {
  HHSModel m;
  m.name = "cycle";
  for (int i = 0; i < n; ++i) m.points.names.push_back("p" + std::to_string(i));
  m.points.dist.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long long d = std::llabs(i - j);
      m.points.dist[i][j] = std::min(d, n - d);
    }
  m.domain_names = {"S"};
  m.maximal = 0;
  m.nested = {{true}};
  m.orth = {{false}};
  m.graphs = {m.points};
  for (int i = 0; i < n; ++i) m.graphs[0].names[i] = "s" + std::to_string(i);
  m.projections.assign(1, {});
  for (int i = 0; i < n; ++i) m.projections[0].push_back({i});
  m.rel.assign(1, std::vector<std::optional<std::vector<int>>>(1));
  if (n % 2 == 0) {
    ActionGen g;
    g.name = "antipode";
    for (int i = 0; i < n; ++i) g.on_points.push_back((i + n / 2) % n);
    g.on_graphs.push_back(g.on_points);
    m.action.push_back(g);
  }
  return m;
}

HHSModel make_grid_flip_model(int n) {
  HHSModel m = grid_base(n);
  m.name = "grid-flip";
  ActionGen g;
  g.name = "flip-u";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.on_points.push_back((n - 1 - i) * n + j);
  g.on_graphs.resize(3);
  g.on_graphs[0] = {0};
  for (int i = 0; i < n; ++i) g.on_graphs[1].push_back(n - 1 - i);
  for (int j = 0; j < n; ++j) g.on_graphs[2].push_back(j);
  m.action.push_back(g);
  return m;
}

}  // namespace cext
