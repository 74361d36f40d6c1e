#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cext/errors.hpp"

namespace cext {

// Finite metric space given by a symmetric integer distance table.
struct FiniteMetric {
  std::vector<std::string> names;
  std::vector<std::vector<long long>> dist;

  size_t size() const { return names.size(); }
  long long diameter() const;
  int index_of(const std::string& name) const;  // -1 when absent
};

// One generator of a model automorphism: a permutation of the points plus a
// compatible permutation of every coordinate graph.
struct ActionGen {
  std::string name;
  std::vector<int> on_points;
  std::vector<std::vector<int>> on_graphs;  // indexed by domain
};

// Finite combinatorial stand-in for a hierarchical space: points with a
// metric, a poset of domains with orthogonality, per-domain coordinate
// graphs, coordinate projections and relative projections.
struct HHSModel {
  std::string name;
  FiniteMetric points;
  std::vector<std::string> domain_names;
  int maximal = -1;
  std::vector<std::vector<bool>> nested;  // nested[v][w]: v is nested in w
  std::vector<std::vector<bool>> orth;
  std::vector<FiniteMetric> graphs;
  // projections[w][x]: nonempty vertex subset of graphs[w]
  std::vector<std::vector<std::vector<int>>> projections;
  // rel[v][w]: defined exactly when v strictly nested in w or v transverse w
  std::vector<std::vector<std::optional<std::vector<int>>>> rel;
  std::vector<ActionGen> action;

  size_t domain_count() const { return domain_names.size(); }
  bool strictly_nested(int v, int w) const { return v != w && nested[v][w]; }
  bool comparable(int v, int w) const { return nested[v][w] || nested[w][v]; }
  bool transverse(int v, int w) const {
    return v != w && !comparable(v, w) && !orth[v][w];
  }
  int domain_index(const std::string& nm) const;
};

// Structural invariants: table symmetry and triangle inequality, partial
// order with unique maximum, orthogonality symmetric and incomparable,
// projections total and nonempty, relative projections defined exactly
// where required. Throws input_error naming the offending datum.
void validate_model(const HHSModel& m);

struct AxiomResult {
  std::string name;
  bool pass = true;
  std::string witness;       // first violating tuple when failing
  long long min_delta = -1;  // smallest passing constant found, -1 if none
};

struct AxiomReport {
  long long delta = 0;
  bool pass = true;
  std::vector<AxiomResult> axioms;
  std::vector<long long> theta;  // uniqueness table, index r
  bool theta_derived = false;
  std::vector<std::pair<long long, long long>> passing_up;  // (t, P(t))
};

struct CheckOptions {
  bool finite_dimension_variant = false;  // replaces Containers
  bool passing_up_variant = false;        // replaces Large links
  size_t geodesic_cap = 10000;
};

// Exhaustive check of the eleven axioms at constant delta. An empty theta
// table asks for the pointwise-minimal valid one, which is then recorded.
AxiomReport check_axioms(const HHSModel& m, long long delta,
                         const std::vector<long long>& theta = {},
                         const CheckOptions& opts = {});

// Smallest passing constant up to delta_max, with the derived theta.
std::optional<long long> min_delta(const HHSModel& m, long long delta_max,
                                   const CheckOptions& opts = {});

// Pointwise-minimal uniqueness table valid for the model.
std::vector<long long> derive_theta(const HHSModel& m);

struct RestrictResult {
  HHSModel model;
  std::vector<int> kept;  // domain indices of m that survived
  std::vector<std::pair<long long, long long>> passing_up;  // adjusted table
};

// Keep the maximal domain and every domain whose coordinate graph has
// diameter exceeding the threshold; projections and relations unchanged.
// The passing-up table is the adjusted P'(t) = P(max(t, delta)).
RestrictResult restrict_to_unbounded(const HHSModel& m, long long threshold,
                                     long long delta);

struct QuotientResult {
  HHSModel model;
  long long max_orbit_diameter = 0;  // B
  long long delta_out = 0;           // delta + 2B
};

// Orbit space of the declared action: points and coordinate graphs become
// orbit sets with the representative-minimum metric, projections and
// relative projections are pushed forward.
QuotientResult quotient_model(const HHSModel& m, long long delta);

// Text round trip for the model document format.
HHSModel parse_model(const std::string& text);
HHSModel load_model(const std::string& path);
std::string write_model(const HHSModel& m);

// Test corpus builders.
HHSModel make_path_model(int n);
HHSModel make_grid_model(int n);
HHSModel make_corrupted_grid_model(int n);   // projection to U reversed on odd rows
HHSModel make_cycle_model(int n);            // n-cycle, antipodal action when n even
HHSModel make_grid_flip_model(int n);        // grid plus order-2 flip of the U factor

}  // namespace cext
