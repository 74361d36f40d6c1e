#pragma once

#include "cext/extension.hpp"
#include "cext/quasimap.hpp"

namespace cext {

// Two central extension rows with the same kernel, connected by a quotient
// map p of total groups covering p_base, with section data tau satisfying
// p(tau(gbar)) = bottom.sigma(gbar) and tau(1) = 1.
struct QCEBundle {
  ExtensionBundle top;     // 1 -> K -> E -> G -> 1
  ExtensionBundle bottom;  // 1 -> K -> Ebar -> Gbar -> 1
  std::vector<GroupValue> n_generators;                  // in top.total
  std::function<GroupValue(const GroupValue&)> p;        // top.total -> bottom.total
  std::function<GroupValue(const GroupValue&)> p_base;   // top.base -> bottom.base
  std::function<GroupValue(const GroupValue&)> tau;      // bottom.base -> top.total
  std::function<GroupValue(const GroupValue&)> lift;     // bottom.total -> top.total, section of p
  std::function<bool(const GroupValue&)> in_pi_n;        // top.base -> bool
  std::function<GroupValue(const GroupValue&)> pi_n_lift;  // pi(N) -> N inside top.total
  std::string name;
};

// K-coordinate projection of a product-form total group; identity on the
// kernel, defect at (e1,e2) equal to norm omega(pi e1, pi e2).
QuasiMap chi_from_cocycle(const ExtensionBundle& ext);

// omega - delta b with b(g) = chi(sigma(g)); chi must restrict to the
// identity on the kernel (checked on the norm-5 ball of K).
Cocycle cocycle_from_chi(const ExtensionBundle& ext, const QuasiMap& chi);

// Euler cocycle of an arbitrary set-section, normalised so sigma(1) = 1.
Cocycle cocycle_from_section(const ExtensionBundle& ext,
                             std::function<GroupValue(const GroupValue&)> sigma);

// Split K along per-coordinate multipliers: 1 keeps the coordinate in L,
// 0 leaves it in the quotient, m >= 2 (free coordinates only) maps it to
// Z/m. Returns (chi for the L-row, reduced chi for the K/L-row).
std::pair<QuasiMap, QuasiMap> decompose_bounded(const ExtensionBundle& ext,
                                                const QuasiMap& chi,
                                                const std::vector<long long>& multipliers);

struct PullbackViolation {
  GroupValue g, h;
  GroupValue pushed, bottom;
};

struct PullbackReport {
  bool ok = true;
  int radius = 0;
  size_t pairs_checked = 0;
  bool section_data_ok = true;  // p(tau) = bottom section, tau(1) = 1
  std::vector<PullbackViolation> violations;
};

// The section of the top row induced by tau: sigma(g) = n(g) tau(p_base(g))
// with n(g) the unique N-part of g over the coset of tau.
GroupValue induced_section(const QCEBundle& qce, const GroupValue& g);

// Checks that the bottom Euler cocycle is the p-pushforward of the top one
// computed with the induced section:
// p(sigma(g) sigma(h) sigma(gh)^-1) = sbar(pg) sbar(ph) sbar(p(gh))^-1.
PullbackReport pullback_check(const QCEBundle& qce, int r);

// Covers ext by the trivial extension K x F over the registered free cover
// of its base (free abelian bases only).
QCEBundle free_cover(const ExtensionBundle& ext,
                     std::vector<std::string> kernel_names = {});

// The worked example: trivial Z x F2 on top, the integer Heisenberg group
// at the bottom, N generated by z^-1 [x,y].
QCEBundle heisenberg_qce();

// chi pulled back through the inverse of pi restricted to N. Defined on
// pi(N) only; evaluation elsewhere is an input error.
QuasiMap restricted_qm(const QCEBundle& qce, const QuasiMap& chi);

struct BoundaryReport {
  bool ok = true;
  int radius = 0;
  size_t pairs_checked = 0;
  std::optional<std::pair<GroupValue, GroupValue>> violation;
  KValue lhs, rhs;  // at the violation, when present
};

// delta(chi pi^-1)(n1, n2) = omega(n1, n2) on pi(N) x pi(N) within ball(r).
BoundaryReport boundary_identity_check(const QCEBundle& qce, const QuasiMap& chi,
                                       const Cocycle& omega, int r);

struct ExtendabilityReport {
  int radius = 0;
  long long mismatch = 0;  // max over pi(N) in ball(r) of norm(phi - chi pi^-1)
  GroupValue mismatch_witness;
  DefectResult defect;     // of phi on ball(r)
};

// Radius-indexed slack of a candidate extension phi of chi pi^-1 to all of G.
ExtendabilityReport extendability_probe(const QCEBundle& qce, const QuasiMap& chi,
                                        const QuasiMap& phi, int r);

// Push a quasimap on the top total group, vanishing on N = ker p, down to
// the bottom total group; free coordinates are homogenised at exponent n
// on the registered lift and rounded, torsion coordinates read off directly.
QuasiMap descend_qm(const QuasiMap& chi, const QCEBundle& qce, long long n);

struct CheckLine {
  std::string label;
  bool ok = true;
  std::string detail;
};

struct TriangleReport {
  bool ok = true;
  std::vector<CheckLine> checks;
};

// Exact verification of the reflection-triple example in Aff(Z^3): three
// involutions with pairwise products of order three, an infinite-order
// product translating the first coordinate by 3 per step, and a central
// diagonal translation direction transverse to the plane they preserve.
TriangleReport verify_triangle_remark();

struct GrowthRow {
  int radius = 0;
  long long value = 0;
  GroupValue g, h;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  std::string classification;  // "flat" or "growing", a hint only
};

// Euler cocycle sup norms over increasing balls with witnesses.
GrowthTable boundedness_probe(const ExtensionBundle& ext, const std::vector<int>& radii);

// Small enumeration of kernel elements of norm <= r, deterministic order.
std::vector<KValue> kernel_ball(const KDesc& k, long long r);

}  // namespace cext
