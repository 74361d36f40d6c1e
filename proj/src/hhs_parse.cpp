#include "cext/hhs.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace cext {

namespace {

constexpr long long kInf = (1LL << 50);

// vertices plus weighted edges, resolved to a shortest-path metric
struct MetricBuilder {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<std::tuple<int, int, long long>> edges;

  int add(const std::string& n, const std::string& what) {
    if (index.count(n))
      throw input_error("model text: duplicate " + what + " " + n);
    index[n] = (int)names.size();
    names.push_back(n);
    return index[n];
  }
  int get(const std::string& n, const std::string& what) const {
    auto it = index.find(n);
    if (it == index.end())
      throw input_error("model text: unknown " + what + " " + n);
    return it->second;
  }
  FiniteMetric resolve(const std::string& what) const {
    size_t n = names.size();
    FiniteMetric fm;
    fm.names = names;
    fm.dist.assign(n, std::vector<long long>(n, kInf));
    for (size_t i = 0; i < n; ++i) fm.dist[i][i] = 0;
    for (auto& [a, b, d] : edges) {
      fm.dist[a][b] = std::min(fm.dist[a][b], d);
      fm.dist[b][a] = fm.dist[a][b];
    }
    for (size_t k = 0; k < n; ++k)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          fm.dist[i][j] = std::min(fm.dist[i][j], fm.dist[i][k] + fm.dist[k][j]);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (fm.dist[i][j] >= kInf)
          throw input_error("model text: " + what + " is disconnected between " +
                            fm.names[i] + " and " + fm.names[j]);
    return fm;
  }
};

long long parse_ll(const std::string& s, int lineno) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw input_error("model text line " + std::to_string(lineno) +
                      ": expected an integer, got " + s);
  }
}

}  // namespace

HHSModel parse_model(const std::string& text) {
  MetricBuilder points;
  std::vector<std::string> domain_names;
  std::map<std::string, int> domain_index;
  std::vector<MetricBuilder> graphs;
  std::string model_name = "model";
  std::string maximal_name;
  std::vector<std::pair<int, int>> nested_pairs, orth_pairs;
  std::map<std::pair<int, std::string>, std::vector<std::string>> projections;
  std::map<std::pair<int, int>, std::vector<std::string>> relatives;
  std::vector<std::string> gen_names;
  std::map<std::string, int> gen_index;
  // (gen, from) -> to, names resolved after all declarations
  std::map<std::pair<int, std::string>, std::string> act_points;
  std::map<std::tuple<int, int, std::string>, std::string> act_vertices;

  auto dom = [&](const std::string& n) {
    auto it = domain_index.find(n);
    if (it == domain_index.end())
      throw input_error("model text: unknown domain " + n);
    return it->second;
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& kw = tok[0];
    auto need = [&](size_t n) {
      if (tok.size() != n + 1)
        throw input_error("model text line " + std::to_string(lineno) + ": " +
                          kw + " expects " + std::to_string(n) + " arguments");
    };
    auto need_at_least = [&](size_t n) {
      if (tok.size() < n + 1)
        throw input_error("model text line " + std::to_string(lineno) + ": " +
                          kw + " expects at least " + std::to_string(n) +
                          " arguments");
    };
    if (kw == "model") {
      need(1);
      model_name = tok[1];
    } else if (kw == "point") {
      need(1);
      points.add(tok[1], "point");
    } else if (kw == "point_edge") {
      need(2);
      points.edges.emplace_back(points.get(tok[1], "point"),
                                points.get(tok[2], "point"), 1);
    } else if (kw == "point_dist") {
      need(3);
      points.edges.emplace_back(points.get(tok[1], "point"),
                                points.get(tok[2], "point"),
                                parse_ll(tok[3], lineno));
    } else if (kw == "domain") {
      need(1);
      if (domain_index.count(tok[1]))
        throw input_error("model text: duplicate domain " + tok[1]);
      domain_index[tok[1]] = (int)domain_names.size();
      domain_names.push_back(tok[1]);
      graphs.emplace_back();
    } else if (kw == "maximal") {
      need(1);
      maximal_name = tok[1];
    } else if (kw == "nested") {
      need(2);
      nested_pairs.emplace_back(dom(tok[1]), dom(tok[2]));
    } else if (kw == "orthogonal") {
      need(2);
      orth_pairs.emplace_back(dom(tok[1]), dom(tok[2]));
    } else if (kw == "vertex") {
      need(2);
      graphs[dom(tok[1])].add(tok[2], "vertex of " + tok[1]);
    } else if (kw == "edge") {
      need(3);
      auto& g = graphs[dom(tok[1])];
      g.edges.emplace_back(g.get(tok[2], "vertex of " + tok[1]),
                           g.get(tok[3], "vertex of " + tok[1]), 1);
    } else if (kw == "dist") {
      need(4);
      auto& g = graphs[dom(tok[1])];
      g.edges.emplace_back(g.get(tok[2], "vertex of " + tok[1]),
                           g.get(tok[3], "vertex of " + tok[1]),
                           parse_ll(tok[4], lineno));
    } else if (kw == "projection") {
      need_at_least(3);
      auto key = std::make_pair(dom(tok[1]), tok[2]);
      points.get(tok[2], "point");
      if (projections.count(key))
        throw input_error("model text line " + std::to_string(lineno) +
                          ": duplicate projection of " + tok[2] + " to " + tok[1]);
      projections[key] = std::vector<std::string>(tok.begin() + 3, tok.end());
    } else if (kw == "relative") {
      need_at_least(3);
      auto key = std::make_pair(dom(tok[1]), dom(tok[2]));
      if (relatives.count(key))
        throw input_error("model text line " + std::to_string(lineno) +
                          ": duplicate relative projection " + tok[1] + " " + tok[2]);
      relatives[key] = std::vector<std::string>(tok.begin() + 3, tok.end());
    } else if (kw == "action") {
      need(1);
      if (gen_index.count(tok[1]))
        throw input_error("model text: duplicate action generator " + tok[1]);
      gen_index[tok[1]] = (int)gen_names.size();
      gen_names.push_back(tok[1]);
    } else if (kw == "act_point") {
      need(3);
      auto it = gen_index.find(tok[1]);
      if (it == gen_index.end())
        throw input_error("model text: unknown action generator " + tok[1]);
      act_points[{it->second, tok[2]}] = tok[3];
    } else if (kw == "act_vertex") {
      need(4);
      auto it = gen_index.find(tok[1]);
      if (it == gen_index.end())
        throw input_error("model text: unknown action generator " + tok[1]);
      act_vertices[{it->second, dom(tok[2]), tok[3]}] = tok[4];
    } else {
      throw input_error("model text line " + std::to_string(lineno) +
                        ": unknown directive " + kw);
    }
  }

  HHSModel m;
  m.name = model_name;
  m.points = points.resolve("point space");
  m.domain_names = domain_names;
  size_t nd = domain_names.size();
  for (size_t w = 0; w < nd; ++w)
    m.graphs.push_back(graphs[w].resolve("coordinate graph " + domain_names[w]));
  if (maximal_name.empty())
    throw input_error("model text: no maximal domain declared");
  m.maximal = dom(maximal_name);

  m.nested.assign(nd, std::vector<bool>(nd, false));
  for (size_t v = 0; v < nd; ++v) m.nested[v][v] = true;
  for (auto& [v, w] : nested_pairs) m.nested[v][w] = true;
  for (size_t k = 0; k < nd; ++k)  // transitive closure
    for (size_t i = 0; i < nd; ++i)
      for (size_t j = 0; j < nd; ++j)
        if (m.nested[i][k] && m.nested[k][j]) m.nested[i][j] = true;
  m.orth.assign(nd, std::vector<bool>(nd, false));
  for (auto& [v, w] : orth_pairs) m.orth[v][w] = m.orth[w][v] = true;

  m.projections.assign(nd, std::vector<std::vector<int>>(points.names.size()));
  for (auto& [key, verts] : projections) {
    auto [w, pname] = key;
    std::vector<int> idx;
    for (const auto& v : verts)
      idx.push_back(graphs[w].get(v, "vertex of " + domain_names[w]));
    m.projections[w][points.get(pname, "point")] = std::move(idx);
  }
  m.rel.assign(nd, std::vector<std::optional<std::vector<int>>>(nd));
  for (auto& [key, verts] : relatives) {
    auto [v, w] = key;
    std::vector<int> idx;
    for (const auto& a : verts)
      idx.push_back(graphs[w].get(a, "vertex of " + domain_names[w]));
    m.rel[v][w] = std::move(idx);
  }

  for (size_t gi = 0; gi < gen_names.size(); ++gi) {
    ActionGen gen;
    gen.name = gen_names[gi];
    for (const auto& pname : points.names) {
      auto it = act_points.find({(int)gi, pname});
      if (it == act_points.end())
        throw input_error("model text: generator " + gen.name +
                          " does not move point " + pname);
      gen.on_points.push_back(points.get(it->second, "point"));
    }
    for (size_t w = 0; w < nd; ++w) {
      std::vector<int> perm;
      for (const auto& vname : graphs[w].names) {
        auto it = act_vertices.find({(int)gi, (int)w, vname});
        if (it == act_vertices.end())
          throw input_error("model text: generator " + gen.name +
                            " does not move vertex " + vname + " of " +
                            domain_names[w]);
        perm.push_back(graphs[w].get(it->second, "vertex of " + domain_names[w]));
      }
      gen.on_graphs.push_back(std::move(perm));
    }
    m.action.push_back(std::move(gen));
  }

  validate_model(m);
  return m;
}

HHSModel load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open model file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_model(ss.str());
}

std::string write_model(const HHSModel& m) {
  std::ostringstream out;
  out << "model " << m.name << "\n";
  for (const auto& n : m.points.names) out << "point " << n << "\n";
  for (size_t i = 0; i < m.points.size(); ++i)
    for (size_t j = i + 1; j < m.points.size(); ++j)
      out << "point_dist " << m.points.names[i] << " " << m.points.names[j]
          << " " << m.points.dist[i][j] << "\n";
  size_t nd = m.domain_count();
  for (const auto& n : m.domain_names) out << "domain " << n << "\n";
  out << "maximal " << m.domain_names[m.maximal] << "\n";
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w)
      if (v != w && m.nested[v][w])
        out << "nested " << m.domain_names[v] << " " << m.domain_names[w] << "\n";
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = v + 1; w < nd; ++w)
      if (m.orth[v][w])
        out << "orthogonal " << m.domain_names[v] << " " << m.domain_names[w]
            << "\n";
  for (size_t w = 0; w < nd; ++w) {
    for (const auto& n : m.graphs[w].names)
      out << "vertex " << m.domain_names[w] << " " << n << "\n";
    for (size_t i = 0; i < m.graphs[w].size(); ++i)
      for (size_t j = i + 1; j < m.graphs[w].size(); ++j)
        out << "dist " << m.domain_names[w] << " " << m.graphs[w].names[i] << " "
            << m.graphs[w].names[j] << " " << m.graphs[w].dist[i][j] << "\n";
  }
  for (size_t w = 0; w < nd; ++w)
    for (size_t x = 0; x < m.points.size(); ++x) {
      out << "projection " << m.domain_names[w] << " " << m.points.names[x];
      for (int a : m.projections[w][x]) out << " " << m.graphs[w].names[a];
      out << "\n";
    }
  for (size_t v = 0; v < nd; ++v)
    for (size_t w = 0; w < nd; ++w)
      if (m.rel[v][w]) {
        out << "relative " << m.domain_names[v] << " " << m.domain_names[w];
        for (int a : *m.rel[v][w]) out << " " << m.graphs[w].names[a];
        out << "\n";
      }
  for (const auto& gen : m.action) {
    out << "action " << gen.name << "\n";
    for (size_t x = 0; x < m.points.size(); ++x)
      out << "act_point " << gen.name << " " << m.points.names[x] << " "
          << m.points.names[gen.on_points[x]] << "\n";
    for (size_t w = 0; w < nd; ++w)
      for (size_t i = 0; i < m.graphs[w].size(); ++i)
        out << "act_vertex " << gen.name << " " << m.domain_names[w] << " "
            << m.graphs[w].names[i] << " " << m.graphs[w].names[gen.on_graphs[w][i]]
            << "\n";
  }
  return out.str();
}

}  // namespace cext
