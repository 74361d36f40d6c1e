#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cext/cocycle.hpp"
#include "cext/group.hpp"

namespace cext {

// A central extension 1 -> K -> E -> G -> 1 with executable arrows.
// `iota_inv` decides membership in iota(K) and extracts the K coordinate;
// it returns nullopt off the kernel.
struct ExtensionBundle {
  KDesc kernel;
  GroupPtr base;   // G
  GroupPtr total;  // E
  std::function<GroupValue(const KValue&)> iota;
  std::function<GroupValue(const GroupValue&)> pi;
  std::function<GroupValue(const GroupValue&)> sigma;
  std::function<std::optional<KValue>(const GroupValue&)> iota_inv;
  bool product_form = false;  // total is a twisted product K x_w G
  std::string name;
};

// Helpers for product-form values (underlying set K x G).
GroupValue twisted_pair(const GroupPtr& total, const KValue& k, const GroupValue& g);

// omega(g,h) = sigma(g) sigma(h) sigma(gh)^-1, identified in K via iota_inv.
// Throws structural_error if the section defect ever leaves iota(K).
Cocycle euler_cocycle(const ExtensionBundle& ext);

// The dictionary direction cocycle -> extension: total group K x G with the
// twisted product. Refuses a cocycle whose condition fails on ball(2)^3
// (the product would not be associative); normalises first if needed.
ExtensionBundle build_extension(const KDesc& k, const GroupPtr& g, const Cocycle& omega,
                                std::vector<std::string> kernel_names = {});

ExtensionBundle trivial_extension(const KDesc& k, const GroupPtr& g,
                                  std::vector<std::string> kernel_names = {});

// Z -> H3 -> Z^2 with the built-in Heisenberg group as total space and the
// standard section sigma(a,b) = x^a y^b.
ExtensionBundle heisenberg_native_bundle();

// The Euler cocycle of the above in closed form: omega((a1,b1),(a2,b2)) has
// z-exponent -a2*b1 under the convention yx = xy z^-1. Pass the Z^2 instance
// the cocycle should live on; a fresh one is created when omitted.
Cocycle heisenberg_euler_cocycle(GroupPtr base = nullptr);

}  // namespace cext
