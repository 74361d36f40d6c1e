#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cext/group.hpp"
#include "cext/kvalue.hpp"
#include "cext/rational.hpp"

namespace cext {

struct DefectResult {
  long long value = 0;
  GroupValue e1, e2;
};

// K-valued quasihomomorphism candidate: an executable map plus a
// write-once cache of measured defects per radius.
struct QuasiMap {
  GroupPtr domain;
  KDesc target;
  std::function<KValue(const GroupValue&)> rule;
  std::string provenance;
  std::shared_ptr<std::map<int, DefectResult>> defect_cache =
      std::make_shared<std::map<int, DefectResult>>();

  KValue operator()(const GroupValue& g) const {
    if (g.owner().get() != domain.get())
      throw input_error("quasimap: argument not in domain " + domain->describe());
    return rule(g);
  }
};

// Rank-one rational-valued variant, used for homogenised limits, Busemann
// values, quasiline potentials and abelianization corrections.
struct RationalMap {
  GroupPtr domain;
  std::function<Rational(const GroupValue&)> rule;
  std::string provenance;

  Rational operator()(const GroupValue& g) const {
    if (g.owner().get() != domain.get())
      throw input_error("rational map: argument not in domain " + domain->describe());
    return rule(g);
  }
};

struct RationalDefectResult {
  Rational value;
  GroupValue e1, e2;
};

// Exact max of ||chi(e1)+chi(e2)-chi(e1 e2)|| over ball(r)^2, with witness.
DefectResult defect_on_ball(const QuasiMap& chi, int r, size_t cap = kDefaultBallCap);
RationalDefectResult defect_on_ball(const RationalMap& chi, int r,
                                    size_t cap = kDefaultBallCap);

// phi(g^n)/n, the truncated homogenisation. phi must have free rank 1.
Rational homogenize(const QuasiMap& phi, const GroupValue& g, long long n);
Rational homogenize(const RationalMap& phi, const GroupValue& g, long long n);

// Brooks counting quasimorphism on a free group for a reduced word w:
// (#occurrences of w in the reduced form) - (#occurrences of w^-1).
QuasiMap brooks(const GroupPtr& free_grp, const Word& w);

// Busemann value for an action on the integer line by translations,
// declared through per-generator translation lengths, ray toward +infinity.
// Evaluates max over the tail window [T, 2T] of d(g x0, x_n) - d(x0, x_n).
Rational busemann(const std::vector<long long>& gen_translations,
                  const GroupValue& g, long long T);

// Cayley metric w.r.t. S_C = {g : |potential(g)| <= C} plus the declared
// generators, explored only inside a bounded ball.
struct QuasilineMetric {
  GroupPtr base;
  RationalMap potential;
  long long scale_c = 1;
};

struct QuasilineDistance {
  bool exact = false;
  long long value = 0;  // distance when exact; otherwise an honest lower bound
};

QuasilineDistance quasiline_distance(const QuasilineMetric& ql, const GroupValue& g,
                                     int search_radius, size_t cap = kDefaultBallCap);

// Psi(e) = round(M^-1 (phi_1(e),...,phi_n(e))^T) with M_ij = phi_i(z_j);
// exact on the basis. Throws input_error when M is singular.
struct RetractionResult {
  QuasiMap psi;
  std::vector<std::vector<Rational>> m;
  std::vector<std::vector<Rational>> m_inverse;
  Rational m_inverse_l1;  // induced L1 norm, for the recorded defect bound
};

RetractionResult retract_to_kernel(const std::vector<RationalMap>& phis,
                                   const std::vector<GroupValue>& basis);

// X' = X - sum_j X(x_j) lambda_j; requires lambda_j(x_i) = delta_ij.
RationalMap abelianization_correction(
    const RationalMap& x,
    const std::vector<std::pair<GroupValue, RationalMap>>& pairs);

struct ConjugationProbeResult {
  long long value = 0;
  GroupValue gamma, lambda;
};

// Max of ||phi(gamma lambda gamma^-1) - phi(lambda)|| over gamma in ball(r)
// of the ambient group and lambda in ball(r) intersected with N.
ConjugationProbeResult conjugation_invariance_probe(
    const QuasiMap& phi, const GroupPtr& ambient,
    const std::function<bool(const GroupValue&)>& in_n, int r,
    size_t cap = kDefaultBallCap);

// Adapters between the two value flavours.
RationalMap as_rational(const QuasiMap& chi);          // free rank 1 only
QuasiMap as_integer(const RationalMap& phi, GroupPtr domain);  // floor at call

}  // namespace cext
