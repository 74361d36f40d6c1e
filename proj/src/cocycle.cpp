#include "cext/cocycle.hpp"

namespace cext {

Cocycle zero_cocycle(GroupPtr base, KDesc coeff) {
  Cocycle c;
  c.base = std::move(base);
  c.coeff = coeff;
  c.rule = [coeff](const GroupValue&, const GroupValue&) {
    return KValue::zero(coeff);
  };
  c.normalized = true;
  c.provenance = "zero cocycle";
  return c;
}

KValue delta2(const Cocycle& omega, const GroupValue& g1, const GroupValue& g2,
              const GroupValue& g3) {
  const auto& G = *omega.base;
  const auto& K = omega.coeff;
  KValue v = omega(g2, g3);
  v = v.sub(K, omega(G.multiply(g1, g2), g3));
  v = v.add(K, omega(g1, G.multiply(g2, g3)));
  v = v.sub(K, omega(g1, g2));
  return v;
}

Cocycle coboundary(GroupPtr base, KDesc coeff,
                   std::function<KValue(const GroupValue&)> b) {
  Cocycle c;
  c.base = base;
  c.coeff = coeff;
  c.rule = [base, coeff, b = std::move(b)](const GroupValue& g, const GroupValue& h) {
    return b(g).add(coeff, b(h)).sub(coeff, b(base->multiply(g, h)));
  };
  c.provenance = "coboundary";
  return c;
}

std::optional<TripleWitness> cocycle_violation(const Cocycle& omega, int r,
                                               size_t cap) {
  Ball b = ball(omega.base, r, cap);
  for (const auto& g1 : b.elems)
    for (const auto& g2 : b.elems)
      for (const auto& g3 : b.elems) {
        KValue v = delta2(omega, g1, g2, g3);
        if (!v.is_zero()) return TripleWitness{g1, g2, g3, v};
      }
  return std::nullopt;
}

std::pair<Cocycle, KValue> normalize_cocycle(const Cocycle& omega) {
  GroupValue id = omega.base->identity();
  KValue c = omega(id, id);
  if (c.is_zero()) {
    Cocycle out = omega;
    out.normalized = true;
    return {out, c};
  }
  const KDesc K = omega.coeff;
  Cocycle out;
  out.base = omega.base;
  out.coeff = K;
  out.rule = [inner = omega.rule, K, c](const GroupValue& g, const GroupValue& h) {
    // omega - delta b with b constant at omega(1,1): delta b == c
    return inner(g, h).sub(K, c);
  };
  out.normalized = true;
  out.provenance = omega.provenance + " (normalised)";
  return {out, c};
}

SupNormResult sup_norm_on_ball(const Cocycle& omega, int r, size_t cap) {
  Ball b = ball(omega.base, r, cap);
  SupNormResult best;
  best.value = -1;
  for (const auto& g : b.elems)
    for (const auto& h : b.elems) {
      long long n = omega(g, h).norm();
      if (n > best.value) {
        best.value = n;
        best.g = g;
        best.h = h;
      }
    }
  return best;
}

}  // namespace cext
