#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cext/group.hpp"
#include "cext/kvalue.hpp"

namespace cext {

// Inhomogeneous 2-cocycle G x G -> K, carried as an executable rule. Closed
// forms live in `provenance` as text; nothing is trusted without the
// exhaustive ball checks below.
struct Cocycle {
  GroupPtr base;
  KDesc coeff;
  CocycleFn rule;
  bool normalized = false;
  std::string provenance;

  KValue operator()(const GroupValue& g, const GroupValue& h) const {
    if (g.owner().get() != base.get() || h.owner().get() != base.get())
      throw input_error("cocycle: arguments not in base group " + base->describe());
    return rule(g, h);
  }
};

Cocycle zero_cocycle(GroupPtr base, KDesc coeff);

// delta omega(g1,g2,g3) = w(g2,g3) - w(g1g2,g3) + w(g1,g2g3) - w(g1,g2)
KValue delta2(const Cocycle& omega, const GroupValue& g1, const GroupValue& g2,
              const GroupValue& g3);

// delta b(g,h) = b(g) + b(h) - b(gh)
Cocycle coboundary(GroupPtr base, KDesc coeff,
                   std::function<KValue(const GroupValue&)> b);

struct TripleWitness {
  GroupValue g1, g2, g3;
  KValue value;
};

// Exhaustive cocycle-condition check over ball(r)^3; nullopt means no
// violation found.
std::optional<TripleWitness> cocycle_violation(const Cocycle& omega, int r,
                                               size_t cap = kDefaultBallCap);

// (omega - delta b, omega(1,1)) with b constant at omega(1,1); the result is
// normalised: omega'(1,g) = omega'(g,1) = 0.
std::pair<Cocycle, KValue> normalize_cocycle(const Cocycle& omega);

struct SupNormResult {
  long long value = 0;
  GroupValue g, h;  // attaining pair
};

SupNormResult sup_norm_on_ball(const Cocycle& omega, int r,
                               size_t cap = kDefaultBallCap);

}  // namespace cext
