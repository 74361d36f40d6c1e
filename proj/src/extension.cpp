#include "cext/extension.hpp"

namespace cext {

GroupValue twisted_pair(const GroupPtr& total, const KValue& k, const GroupValue& g) {
  if (total->kind() != GroupKind::TwistedProduct)
    throw input_error("twisted_pair: group is not a twisted product");
  GroupValue v = total->identity();
  v.kpart = KValue(total->twisted_kernel(), k.free_part, k.torsion_part);
  if (g.owner().get() != total->twisted_base().get())
    throw input_error("twisted_pair: base coordinate not in the base group");
  v.parts[0] = g;
  return v;
}

Cocycle euler_cocycle(const ExtensionBundle& ext) {
  Cocycle c;
  c.base = ext.base;
  c.coeff = ext.kernel;
  c.normalized = ext.base->is_identity(ext.pi(ext.sigma(ext.base->identity()))) &&
                 ext.total->is_identity(ext.sigma(ext.base->identity()));
  c.provenance = "Euler cocycle of " + (ext.name.empty() ? ext.total->describe() : ext.name);
  auto total = ext.total;
  auto base = ext.base;
  auto sigma = ext.sigma;
  auto iota_inv = ext.iota_inv;
  c.rule = [total, base, sigma, iota_inv](const GroupValue& g, const GroupValue& h) {
    GroupValue d = total->multiply(
        total->multiply(sigma(g), sigma(h)),
        total->inverse(sigma(base->multiply(g, h))));
    auto k = iota_inv(d);
    if (!k)
      throw structural_error(
          "euler_cocycle: sigma(g)sigma(h)sigma(gh)^-1 = " + d.str() +
          " lies outside iota(K); the bundle is not a central extension");
    return *k;
  };
  return c;
}

ExtensionBundle build_extension(const KDesc& k, const GroupPtr& g, const Cocycle& omega,
                                std::vector<std::string> kernel_names) {
  if (omega.base.get() != g.get())
    throw input_error("build_extension: cocycle base is not the given group");
  if (omega.coeff != k)
    throw input_error("build_extension: cocycle coefficients are not the given K");
  Cocycle w = omega;
  if (!w.normalized) w = normalize_cocycle(w).first;
  if (auto viol = cocycle_violation(w, 2)) {
    throw input_error("build_extension: cocycle condition fails at (" +
                      viol->g1.str() + ", " + viol->g2.str() + ", " + viol->g3.str() +
                      ") with delta = " + viol->value.str() +
                      "; the twisted product would not be associative");
  }
  ExtensionBundle ext;
  ext.kernel = k;
  ext.base = g;
  ext.total = Group::twisted_product(k, g, w.rule, std::move(kernel_names));
  ext.product_form = true;
  ext.name = "extension built from " + w.provenance;
  auto total = ext.total;
  ext.iota = [total](const KValue& kv) {
    return twisted_pair(total, kv, total->twisted_base()->identity());
  };
  ext.pi = [total](const GroupValue& e) {
    if (e.owner().get() != total.get())
      throw input_error("pi: value not in the total group");
    return e.parts[0];
  };
  ext.sigma = [total](const GroupValue& gv) {
    return twisted_pair(total, KValue::zero(total->twisted_kernel()), gv);
  };
  ext.iota_inv = [total](const GroupValue& e) -> std::optional<KValue> {
    if (e.owner().get() != total.get())
      throw input_error("iota_inv: value not in the total group");
    if (!total->twisted_base()->is_identity(e.parts[0])) return std::nullopt;
    return e.kpart;
  };
  return ext;
}

ExtensionBundle trivial_extension(const KDesc& k, const GroupPtr& g,
                                  std::vector<std::string> kernel_names) {
  ExtensionBundle ext =
      build_extension(k, g, zero_cocycle(g, k), std::move(kernel_names));
  ext.name = k.str() + " x " + g->describe() + " (trivial)";
  return ext;
}

ExtensionBundle heisenberg_native_bundle() {
  ExtensionBundle ext;
  ext.kernel = KDesc(1);
  ext.base = Group::free_abelian(2, {"x", "y"});
  ext.total = Group::heisenberg();
  ext.name = "Z -> H3 -> Z^2";
  auto total = ext.total;
  auto base = ext.base;
  ext.iota = [total](const KValue& kv) {
    GroupValue v = total->identity();
    v.vec[2] = kv.free_part[0];
    return v;
  };
  ext.pi = [total, base](const GroupValue& e) {
    if (e.owner().get() != total.get())
      throw input_error("pi: value not in H3");
    GroupValue v = base->identity();
    v.vec[0] = e.vec[0];
    v.vec[1] = e.vec[1];
    return v;
  };
  ext.sigma = [total, base](const GroupValue& g) {
    if (g.owner().get() != base.get())
      throw input_error("sigma: value not in Z^2");
    GroupValue v = total->identity();
    v.vec[0] = g.vec[0];  // x^a y^b
    v.vec[1] = g.vec[1];
    return v;
  };
  ext.iota_inv = [total](const GroupValue& e) -> std::optional<KValue> {
    if (e.owner().get() != total.get())
      throw input_error("iota_inv: value not in H3");
    if (e.vec[0] != 0 || e.vec[1] != 0) return std::nullopt;
    return KValue(KDesc(1), {e.vec[2]});
  };
  return ext;
}

Cocycle heisenberg_euler_cocycle(GroupPtr base) {
  Cocycle c;
  c.base = base ? std::move(base) : Group::free_abelian(2, {"x", "y"});
  c.coeff = KDesc(1);
  c.rule = [](const GroupValue& g, const GroupValue& h) {
    return KValue(KDesc(1), {-h.vec[0] * g.vec[1]});
  };
  c.normalized = true;
  c.provenance = "Euler cocycle of Heisenberg extension, closed form -a2*b1";
  return c;
}

}  // namespace cext
