#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cext/hhs.hpp"

using namespace cext;

namespace {

const AxiomResult& axiom(const AxiomReport& rep, const std::string& name) {
  for (const auto& a : rep.axioms)
    if (a.name == name) return a;
  REQUIRE(false);
  static AxiomResult dummy;
  return dummy;
}

// grid plus a point-like domain T under S, orthogonal to both factors
HHSModel grid_with_singleton(int n) {
  HHSModel m = make_grid_model(n);
  m.name = "grid-ext";
  m.domain_names.push_back("T");
  m.nested = {{true, false, false, false},
              {true, true, false, false},
              {true, false, true, false},
              {true, false, false, true}};
  m.orth = {{false, false, false, false},
            {false, false, true, true},
            {false, true, false, true},
            {false, true, true, false}};
  FiniteMetric t;
  t.names = {"t0"};
  t.dist = {{0}};
  m.graphs.push_back(t);
  m.projections.push_back(
      std::vector<std::vector<int>>(m.points.size(), std::vector<int>{0}));
  m.rel.assign(4, std::vector<std::optional<std::vector<int>>>(4));
  m.rel[1][0] = std::vector<int>{0};
  m.rel[2][0] = std::vector<int>{0};
  m.rel[3][0] = std::vector<int>{0};
  return m;
}

// path with a sub-domain reading off the first half; its relative projection
// sits at the left end, so geodesics far from it witness the image axiom
HHSModel bgi_model() {
  HHSModel m;
  m.name = "bgi";
  int n = 11;
  for (int i = 0; i < n; ++i) m.points.names.push_back("p" + std::to_string(i));
  m.points.dist.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.points.dist[i][j] = std::llabs(i - j);
  m.domain_names = {"S", "U"};
  m.maximal = 0;
  m.nested = {{true, false}, {true, true}};
  m.orth = {{false, false}, {false, false}};
  m.graphs.resize(2);
  for (int i = 0; i < n; ++i) m.graphs[0].names.push_back("s" + std::to_string(i));
  m.graphs[0].dist = m.points.dist;
  for (int i = 0; i < 6; ++i) m.graphs[1].names.push_back("u" + std::to_string(i));
  m.graphs[1].dist.assign(6, std::vector<long long>(6, 0));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m.graphs[1].dist[i][j] = std::llabs(i - j);
  m.projections.assign(2, {});
  for (int i = 0; i < n; ++i) {
    m.projections[0].push_back({i});
    m.projections[1].push_back({std::min(i, 5)});
  }
  m.rel.assign(2, std::vector<std::optional<std::vector<int>>>(2));
  m.rel[1][0] = std::vector<int>{0};
  return m;
}

// 4-cycle with antipodal projections differing in a sub-domain, so the
// checker must enumerate both geodesics between opposite vertices
HHSModel geodesic_fork_model() {
  HHSModel m;
  m.name = "fork";
  for (int i = 0; i < 4; ++i) m.points.names.push_back("p" + std::to_string(i));
  m.points.dist.assign(4, std::vector<long long>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      long long d = std::llabs(i - j);
      m.points.dist[i][j] = std::min(d, 4 - d);
    }
  m.domain_names = {"S", "U"};
  m.maximal = 0;
  m.nested = {{true, false}, {true, true}};
  m.orth = {{false, false}, {false, false}};
  m.graphs.resize(2);
  for (int i = 0; i < 4; ++i) m.graphs[0].names.push_back("s" + std::to_string(i));
  m.graphs[0].dist = m.points.dist;
  m.graphs[1].names = {"a", "b"};
  m.graphs[1].dist = {{0, 1}, {1, 0}};
  m.projections.assign(2, {});
  for (int i = 0; i < 4; ++i) {
    m.projections[0].push_back({i});
    m.projections[1].push_back({i / 2});
  }
  m.rel.assign(2, std::vector<std::optional<std::vector<int>>>(2));
  m.rel[1][0] = std::vector<int>{0};
  return m;
}

std::vector<std::string> witness_tokens(const std::string& w) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : w) {
    if (c == ' ' || c == ',' || c == ':') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("model validation names the offending datum") {
  CHECK_NOTHROW(validate_model(make_grid_model(5)));
  CHECK_NOTHROW(validate_model(make_path_model(7)));

  HHSModel m = make_grid_model(5);
  m.rel[1][0].reset();
  CHECK_THROWS_WITH_AS(validate_model(m),
                       doctest::Contains("missing relative projection"),
                       input_error);

  m = make_grid_model(5);
  m.orth[1][2] = false;
  CHECK_THROWS_WITH_AS(validate_model(m), doctest::Contains("symmetric"),
                       input_error);

  m = make_grid_model(5);
  m.projections[1][3].clear();
  CHECK_THROWS_WITH_AS(validate_model(m), doctest::Contains("empty projection"),
                       input_error);

  m = make_grid_model(5);
  m.points.dist[0][1] = m.points.dist[1][0] = 99;
  CHECK_THROWS_WITH_AS(validate_model(m),
                       doctest::Contains("triangle inequality"), input_error);
}

TEST_CASE("path model passes at 1 and not below") {
  HHSModel m = make_path_model(11);
  AxiomReport rep = check_axioms(m, 1);
  CHECK(rep.pass);
  CHECK(rep.axioms.size() == 11);
  for (const auto& a : rep.axioms) CHECK(a.pass);
  CHECK(!check_axioms(m, 0).pass);
  CHECK(min_delta(m, 3) == 1);
  CHECK(axiom(rep, "projections").min_delta == 1);
  CHECK(axiom(rep, "finite complexity").min_delta == 1);
  CHECK(axiom(rep, "bounded geodesic image").min_delta == 0);
}

TEST_CASE("grid model passes at 2 with tight per-axiom constants") {
  HHSModel m = make_grid_model(11);
  AxiomReport rep = check_axioms(m, 2);
  CHECK(rep.pass);
  CHECK(min_delta(m, 3) == 2);

  CHECK(axiom(rep, "finite complexity").min_delta == 2);
  CHECK(axiom(rep, "large links").min_delta == 2);
  CHECK(axiom(rep, "projections").min_delta == 1);
  CHECK(axiom(rep, "partial realization").min_delta == 0);

  // tightness: decrementing any measured constant fails exactly that axiom
  for (const auto& a : rep.axioms) {
    REQUIRE(a.min_delta >= 0);
    if (a.min_delta >= 1) {
      AxiomReport below = check_axioms(m, a.min_delta - 1);
      CHECK(!axiom(below, a.name).pass);
      CHECK(!axiom(below, a.name).witness.empty());
    }
    AxiomReport at = check_axioms(m, std::max<long long>(a.min_delta, 0));
    CHECK(axiom(at, a.name).pass);
  }
}

TEST_CASE("passing at delta implies passing at larger delta") {
  HHSModel m = make_grid_model(11);
  for (long long d = 2; d <= 5; ++d) CHECK(check_axioms(m, d).pass);
  HHSModel p = make_path_model(11);
  for (long long d = 1; d <= 4; ++d) CHECK(check_axioms(p, d).pass);
}

TEST_CASE("corrupted grid fails projections with a replayable witness") {
  HHSModel m = make_corrupted_grid_model(11);
  AxiomReport rep = check_axioms(m, 2);
  CHECK(!rep.pass);
  const AxiomResult& pr = axiom(rep, "projections");
  CHECK(!pr.pass);
  REQUIRE(!pr.witness.empty());
  CHECK(min_delta(m, 3) == std::nullopt);

  // replay: the two points named in the witness really are stretched
  auto toks = witness_tokens(pr.witness);
  int w = -1;
  std::vector<int> pts;
  for (const auto& t : toks) {
    if (m.domain_index(t) >= 0) w = m.domain_index(t);
    int x = m.points.index_of(t);
    if (x >= 0) pts.push_back(x);
  }
  REQUIRE(w >= 0);
  REQUIRE(pts.size() == 2);
  long long spread = 0;
  for (int a : m.projections[w][pts[0]])
    for (int b : m.projections[w][pts[1]])
      spread = std::max(spread, m.graphs[w].dist[a][b]);
  CHECK(spread > 2 * m.points.dist[pts[0]][pts[1]] + 2);
}

TEST_CASE("derived distance separation table") {
  HHSModel grid = make_grid_model(11);
  std::vector<long long> theta = derive_theta(grid);
  CHECK(theta[0] == 0);
  for (size_t r = 1; r < theta.size(); ++r) {
    CHECK(theta[r] <= 2 * (long long)r + 2);
    CHECK(theta[r] >= theta[r - 1]);
  }
  // L1 oracle: both factors below r leaves total distance below 2r - 1
  for (size_t r = 1; r + 1 < theta.size(); ++r)
    CHECK(theta[r] == 2 * (long long)r - 1);

  std::vector<long long> path_theta = derive_theta(make_path_model(11));
  REQUIRE(path_theta.size() == 12);
  for (size_t r = 0; r <= 10; ++r) CHECK(path_theta[r] == (long long)r);

  // the derived table is recorded and a hopeless table is rejected
  AxiomReport rep = check_axioms(grid, 2);
  CHECK(rep.theta_derived);
  CHECK(rep.theta == theta);
  AxiomReport bad = check_axioms(grid, 2, {0, 0});
  CHECK(!bad.theta_derived);
  CHECK(!axiom(bad, "uniqueness").pass);
}

TEST_CASE("axiom variants") {
  HHSModel m = make_grid_model(11);
  CheckOptions opts;
  opts.finite_dimension_variant = true;
  AxiomReport rep = check_axioms(m, 2, {}, opts);
  CHECK(rep.pass);
  CHECK(axiom(rep, "finite dimension").min_delta == 2);  // the pair {U, V}
  AxiomReport low = check_axioms(m, 1, {}, opts);
  CHECK(!axiom(low, "finite dimension").pass);
  CHECK(axiom(low, "finite dimension").witness.find("U") != std::string::npos);

  opts = CheckOptions{};
  opts.passing_up_variant = true;
  rep = check_axioms(m, 2, {}, opts);
  CHECK(rep.pass);
  CHECK(axiom(rep, "passing up").pass);
  REQUIRE(!rep.passing_up.empty());
  for (const auto& [t, p] : rep.passing_up) {
    CHECK(t >= 1);
    CHECK(p >= 1);
    CHECK(p <= 3);  // never more domains than the model has
  }
}

TEST_CASE("bounded geodesic image on a nontrivial nesting") {
  HHSModel m = bgi_model();
  AxiomReport rep = check_axioms(m, 3);
  CHECK(rep.pass);
  CHECK(axiom(rep, "bounded geodesic image").min_delta == 3);
  CHECK(axiom(rep, "partial realization").min_delta == 3);
  CHECK(min_delta(m, 10) == 3);

  AxiomReport low = check_axioms(m, 2);
  CHECK(!axiom(low, "bounded geodesic image").pass);
  CHECK(!axiom(low, "bounded geodesic image").witness.empty());
}

TEST_CASE("geodesic enumeration cap is a hard error") {
  HHSModel m = geodesic_fork_model();
  CheckOptions tight;
  tight.geodesic_cap = 1;
  CHECK_THROWS_WITH_AS(check_axioms(m, 1, {}, tight),
                       doctest::Contains("geodesic enumeration exceeded"),
                       resource_error);
  CHECK_NOTHROW(check_axioms(m, 1));  // default cap is ample
}

TEST_CASE("restriction to unbounded domains") {
  HHSModel ext = grid_with_singleton(11);
  CHECK(check_axioms(ext, 2).pass);

  RestrictResult res = restrict_to_unbounded(ext, 2, 2);
  REQUIRE(res.kept.size() == 3);
  CHECK(res.model.domain_names == std::vector<std::string>{"S", "U", "V"});
  CHECK(check_axioms(res.model, 2).pass);

  // retained instances keep their verdicts: same per-axiom constants as the
  // plain grid, whose domains these are
  AxiomReport before = check_axioms(make_grid_model(11), 2);
  AxiomReport after = check_axioms(res.model, 2);
  for (const auto& a : before.axioms)
    CHECK(axiom(after, a.name).min_delta == a.min_delta);

  // nothing is dropped when every kept graph is big
  RestrictResult all = restrict_to_unbounded(make_grid_model(11), 2, 2);
  CHECK(all.kept.size() == 3);

  // a huge threshold keeps only the maximal domain
  RestrictResult only_s = restrict_to_unbounded(make_grid_model(11), 100, 2);
  REQUIRE(only_s.kept.size() == 1);
  CHECK(only_s.model.domain_names == std::vector<std::string>{"S"});
  CHECK(check_axioms(only_s.model, 2).pass);

  CHECK_THROWS_WITH_AS(restrict_to_unbounded(ext, 1, 2),
                       doctest::Contains("below the hierarchy constant"),
                       input_error);

  // the adjusted table is flat below delta
  REQUIRE(res.passing_up.size() >= 2);
  CHECK(res.passing_up[0].second == res.passing_up[1].second);
  for (const auto& [t, p] : res.passing_up) CHECK(p >= 1);
}

TEST_CASE("quotient by the trivial action is the identity") {
  HHSModel m = make_grid_model(11);
  QuotientResult q = quotient_model(m, 2);
  CHECK(q.max_orbit_diameter == 0);
  CHECK(q.delta_out == 2);
  CHECK(write_model(q.model) == write_model(m));
}

TEST_CASE("antipodal quotient of the even cycle is the half cycle") {
  HHSModel m = make_cycle_model(12);
  REQUIRE(m.action.size() == 1);
  CHECK(min_delta(m, 3) == 1);

  QuotientResult q = quotient_model(m, 1);
  CHECK(q.max_orbit_diameter == 6);
  CHECK(q.delta_out == 13);
  HHSModel half = make_cycle_model(6);
  CHECK(q.model.points.names == half.points.names);
  CHECK(q.model.points.dist == half.points.dist);
  CHECK(min_delta(q.model, 3) == 1);  // passes at the same delta
}

TEST_CASE("grid flip quotient passes at delta plus twice the orbit diameter") {
  HHSModel m = make_grid_flip_model(11);
  CHECK(check_axioms(m, 2).pass);
  QuotientResult q = quotient_model(m, 2);
  CHECK(q.max_orbit_diameter == 10);  // the outer orbit of the U factor
  CHECK(q.delta_out == 22);
  CHECK(q.model.points.size() == 66);
  CHECK(q.model.graphs[1].size() == 6);
  CHECK(check_axioms(q.model, q.delta_out).pass);
}

TEST_CASE("non-automorphisms are rejected with a witness") {
  HHSModel m = make_grid_model(5);
  ActionGen g;
  g.name = "bogus";
  for (size_t i = 0; i < m.points.size(); ++i) g.on_points.push_back((int)i);
  std::swap(g.on_points[0], g.on_points[24]);  // corners are not exchangeable
  g.on_graphs.resize(3);
  for (size_t w = 0; w < 3; ++w)
    for (size_t i = 0; i < m.graphs[w].size(); ++i)
      g.on_graphs[w].push_back((int)i);
  m.action.push_back(g);
  CHECK_THROWS_WITH_AS(quotient_model(m, 2), doctest::Contains("bogus"),
                       input_error);

  // isometric but not equivariant: flip the points, fix the graphs
  HHSModel f = make_grid_flip_model(5);
  f.action[0].on_graphs[1] = {0, 1, 2, 3, 4};
  CHECK_THROWS_WITH_AS(quotient_model(f, 2),
                       doctest::Contains("does not commute"), input_error);
}

TEST_CASE("model text round trip") {
  for (HHSModel m : {make_grid_model(5), make_path_model(7),
                     make_grid_flip_model(5), grid_with_singleton(5)}) {
    std::string text = write_model(m);
    HHSModel back = parse_model(text);
    CHECK(write_model(back) == text);
    CHECK(back.name == m.name);
    CHECK(back.points.dist == m.points.dist);
    CHECK(back.nested == m.nested);
    CHECK(back.orth == m.orth);
    CHECK(back.projections == m.projections);
  }
}

TEST_CASE("parser rejects malformed documents") {
  CHECK_THROWS_WITH_AS(parse_model("frobnicate x\n"),
                       doctest::Contains("unknown directive"), input_error);
  CHECK_THROWS_WITH_AS(parse_model("point a\npoint a\n"),
                       doctest::Contains("duplicate point"), input_error);
  CHECK_THROWS_WITH_AS(parse_model("point a\npoint_dist a b 1\n"),
                       doctest::Contains("unknown point"), input_error);
  CHECK_THROWS_WITH_AS(
      parse_model("point a\npoint b\ndomain S\nmaximal S\nvertex S v\n"
                  "projection S a v\nprojection S b v\n"),
      doctest::Contains("disconnected"), input_error);
  CHECK_THROWS_WITH_AS(parse_model("point a\ndomain S\nvertex S v\n"
                                   "projection S a v\n"),
                       doctest::Contains("maximal"), input_error);
  CHECK_THROWS_WITH_AS(parse_model("point a\npoint b\npoint_dist a b x\n"),
                       doctest::Contains("expected an integer"), input_error);
}

TEST_CASE("unit edge documents resolve to shortest path metrics") {
  std::string text =
      "model tiny\n"
      "point a\npoint b\npoint c\n"
      "point_edge a b\npoint_edge b c\n"
      "domain S\nmaximal S\n"
      "vertex S x\nvertex S y\nvertex S z\n"
      "edge S x y\nedge S y z\n"
      "projection S a x\nprojection S b y\nprojection S c z\n";
  HHSModel m = parse_model(text);
  CHECK(m.points.dist[0][2] == 2);
  CHECK(m.graphs[0].dist[0][2] == 2);
  CHECK(check_axioms(m, 1).pass);
  CHECK(min_delta(m, 2) == 1);
}
