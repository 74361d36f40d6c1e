#include "cext/registry.hpp"

namespace cext {

namespace {

Cocycle heisenberg_mod2_cocycle(const GroupPtr& base) {
  Cocycle c;
  c.base = base;
  c.coeff = KDesc(0, {2});
  c.rule = [K = c.coeff](const GroupValue& g, const GroupValue& h) {
    return KValue(K, {}, {-h.vec[0] * g.vec[1]});
  };
  c.normalized = true;
  c.provenance = "mod-2 reduction of the Heisenberg cocycle";
  return c;
}

}  // namespace

ExtensionBundle registry_extension(const std::string& name) {
  if (name == "heisenberg") return heisenberg_native_bundle();
  if (name == "heisenberg-product") {
    auto Z2 = Group::free_abelian(2, {"x", "y"});
    auto ext = build_extension(KDesc(1), Z2, heisenberg_euler_cocycle(Z2), {"z"});
    ext.name = "product-form integer Heisenberg group";
    return ext;
  }
  if (name == "heisenberg-mod2") {
    auto Z2 = Group::free_abelian(2, {"x", "y"});
    auto ext = build_extension(KDesc(0, {2}), Z2, heisenberg_mod2_cocycle(Z2), {"z"});
    ext.name = "Heisenberg kernel reduced mod 2";
    return ext;
  }
  if (name == "trivial-Z-Z2") {
    return trivial_extension(KDesc(1), Group::free_abelian(2, {"x", "y"}), {"z"});
  }
  if (name == "trivial-Z-F2") {
    return trivial_extension(KDesc(1), Group::free_group(2, {"x", "y"}), {"z"});
  }
  std::string known;
  for (const auto& n : registry_extension_names()) known += " " + n;
  throw input_error("unknown extension '" + name + "'; registered:" + known);
}

std::vector<std::string> registry_extension_names() {
  return {"heisenberg", "heisenberg-product", "heisenberg-mod2", "trivial-Z-Z2",
          "trivial-Z-F2"};
}

QCEBundle registry_qce(const std::string& name) {
  if (name == "heisenberg") return heisenberg_qce();
  if (name == "split") {
    QCEBundle qce = free_cover(registry_extension("trivial-Z-Z2"), {"z"});
    qce.name = "free cover of the split extension over Z^2";
    return qce;
  }
  if (name == "line") {
    QCEBundle qce = free_cover(trivial_extension(KDesc(1), Group::free_abelian(1), {"z"}));
    qce.name = "free cover of the split extension over Z";
    return qce;
  }
  std::string known;
  for (const auto& n : registry_qce_names()) known += " " + n;
  throw input_error("unknown qce '" + name + "'; registered:" + known);
}

std::vector<std::string> registry_qce_names() { return {"heisenberg", "split", "line"}; }

Cocycle registry_cocycle(const std::string& name) {
  if (name == "heisenberg") return heisenberg_euler_cocycle();
  if (name == "heisenberg-mod2")
    return heisenberg_mod2_cocycle(Group::free_abelian(2, {"x", "y"}));
  if (name == "zero-Z2") return zero_cocycle(Group::free_abelian(2, {"x", "y"}), KDesc(1));
  if (name == "zero-F2") return zero_cocycle(Group::free_group(2, {"x", "y"}), KDesc(1));
  std::string known;
  for (const auto& n : registry_cocycle_names()) known += " " + n;
  throw input_error("unknown cocycle '" + name + "'; registered:" + known);
}

std::vector<std::string> registry_cocycle_names() {
  return {"heisenberg", "heisenberg-mod2", "zero-Z2", "zero-F2"};
}

}  // namespace cext
