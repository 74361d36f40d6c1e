#pragma once

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "cext/errors.hpp"

namespace cext {

// Finitely generated abelian coefficient group K = Z^k x Z/m_1 x ... x Z/m_t.
// The norm is L1 on the free part plus minimal absolute residues on torsion.
struct KDesc {
  int free_rank = 0;
  std::vector<long long> torsion;  // each >= 2

  KDesc() = default;
  explicit KDesc(int k, std::vector<long long> tors = {})
      : free_rank(k), torsion(std::move(tors)) {
    if (free_rank < 0) throw input_error("KDesc: negative free rank");
    for (long long m : torsion)
      if (m < 2) throw input_error("KDesc: torsion modulus must be >= 2");
  }

  bool operator==(const KDesc& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const KDesc& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "Z^" + std::to_string(free_rank);
    for (long long m : torsion) s += " x Z/" + std::to_string(m);
    return s;
  }
};

// Element of K. Torsion residues are kept as minimal absolute
// representatives: r in (-m/2, m/2], so equality is componentwise.
struct KValue {
  std::vector<long long> free_part;
  std::vector<long long> torsion_part;

  KValue() = default;
  KValue(const KDesc& d, std::vector<long long> fp, std::vector<long long> tp = {})
      : free_part(std::move(fp)), torsion_part(std::move(tp)) {
    if ((int)free_part.size() != d.free_rank ||
        torsion_part.size() != d.torsion.size())
      throw input_error("KValue: component count mismatch for " + d.str());
    for (size_t i = 0; i < torsion_part.size(); ++i)
      torsion_part[i] = reduce_mod(torsion_part[i], d.torsion[i]);
  }

  static KValue zero(const KDesc& d) {
    KValue v;
    v.free_part.assign(d.free_rank, 0);
    v.torsion_part.assign(d.torsion.size(), 0);
    return v;
  }

  static KValue unit(const KDesc& d, int i) {
    KValue v = zero(d);
    if (i < 0 || i >= d.free_rank + (int)d.torsion.size())
      throw input_error("KValue::unit: index out of range");
    if (i < d.free_rank)
      v.free_part[i] = 1;
    else
      v.torsion_part[i - d.free_rank] = reduce_mod(1, d.torsion[i - d.free_rank]);
    return v;
  }

  static long long reduce_mod(long long r, long long m) {
    r %= m;
    if (r < 0) r += m;          // now in [0, m)
    if (2 * r > m) r -= m;      // minimal absolute representative
    return r;
  }

  KValue add(const KDesc& d, const KValue& o) const {
    KValue r = *this;
    for (size_t i = 0; i < free_part.size(); ++i) r.free_part[i] += o.free_part[i];
    for (size_t i = 0; i < torsion_part.size(); ++i)
      r.torsion_part[i] = reduce_mod(torsion_part[i] + o.torsion_part[i], d.torsion[i]);
    return r;
  }

  KValue sub(const KDesc& d, const KValue& o) const {
    KValue r = *this;
    for (size_t i = 0; i < free_part.size(); ++i) r.free_part[i] -= o.free_part[i];
    for (size_t i = 0; i < torsion_part.size(); ++i)
      r.torsion_part[i] = reduce_mod(torsion_part[i] - o.torsion_part[i], d.torsion[i]);
    return r;
  }

  KValue neg(const KDesc& d) const { return zero(d).sub(d, *this); }

  long long norm() const {
    long long n = 0;
    for (long long x : free_part) n += std::llabs(x);
    for (long long x : torsion_part) n += std::llabs(x);
    return n;
  }

  bool is_zero() const {
    for (long long x : free_part) if (x != 0) return false;
    for (long long x : torsion_part) if (x != 0) return false;
    return true;
  }

  bool operator==(const KValue& o) const {
    return free_part == o.free_part && torsion_part == o.torsion_part;
  }
  bool operator!=(const KValue& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "(";
    bool first = true;
    for (long long x : free_part) {
      if (!first) s += ",";
      s += std::to_string(x);
      first = false;
    }
    for (long long x : torsion_part) {
      if (!first) s += ",";
      s += std::to_string(x);
      first = false;
    }
    return s + ")";
  }
};

}  // namespace cext
