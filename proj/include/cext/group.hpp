#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cext/errors.hpp"
#include "cext/kvalue.hpp"

namespace cext {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Invertible affine map of Z^3: v -> mat*v + tr, det(mat) = +-1.
struct AffineMapZ3 {
  std::array<std::array<long long, 3>, 3> mat{};
  std::array<long long, 3> tr{};

  static AffineMapZ3 identity();
  static AffineMapZ3 translation(long long x, long long y, long long z);

  long long det() const;
  std::array<long long, 3> apply(const std::array<long long, 3>& v) const;
  // (a.compose(b))(v) = a(b(v))
  AffineMapZ3 compose(const AffineMapZ3& b) const;
  AffineMapZ3 inverse() const;

  bool operator==(const AffineMapZ3& o) const { return mat == o.mat && tr == o.tr; }
  bool operator!=(const AffineMapZ3& o) const { return !(*this == o); }
  std::string str() const;
};

enum class GroupKind {
  Free,
  FreeAbelian,
  Cyclic,
  DirectProduct,
  Heisenberg,
  AffineZ3,
  TwistedProduct,
};

// Canonical normal form of a group element. Exactly the fields relevant to
// the owner's kind are populated; equality is componentwise on those.
//
//   Free          word (signed 1-based letters, freely reduced)
//   FreeAbelian   vec (exponent vector)
//   Cyclic        vec[0] in [0, m)
//   Heisenberg    vec = (a, b, c) meaning x^a y^b z^c, convention yx = xy z^-1
//   AffineZ3      aff
//   DirectProduct parts (one per factor)
//   TwistedProduct kpart + parts[0] (the base coordinate)
class GroupValue {
public:
  GroupValue() = default;

  const GroupPtr& owner() const { return owner_; }

  bool operator==(const GroupValue& o) const;
  bool operator!=(const GroupValue& o) const { return !(*this == o); }
  // Total order on normal forms of a common group, used for deterministic
  // witness reporting. Shorter words first for Free, then lexicographic.
  int compare(const GroupValue& o) const;
  bool operator<(const GroupValue& o) const { return compare(o) < 0; }

  std::string str() const;
  void encode(std::vector<long long>& out) const;

  GroupPtr owner_;
  std::vector<long long> vec;
  std::vector<int> word;
  AffineMapZ3 aff;
  std::vector<GroupValue> parts;
  KValue kpart;
};

struct GroupValueHash {
  size_t operator()(const GroupValue& v) const;
};

// Word in the generators: (generator index, exponent sign).
struct Word {
  std::vector<std::pair<int, int>> letters;
};

using CocycleFn = std::function<KValue(const GroupValue&, const GroupValue&)>;

// Immutable descriptor of a registered group together with its ordered
// generating set (which fixes the word metric for all ball probes).
class Group : public std::enable_shared_from_this<Group> {
public:
  static GroupPtr free_group(int n, std::vector<std::string> names = {});
  static GroupPtr free_abelian(int n, std::vector<std::string> names = {});
  static GroupPtr cyclic(long long m, std::string name = "t");
  static GroupPtr direct_product(std::vector<GroupPtr> factors);
  static GroupPtr heisenberg();
  static GroupPtr affine_z3(std::vector<std::pair<std::string, AffineMapZ3>> gens);
  // Underlying set K x B with product (k1+k2+omega(b1,b2), b1 b2).
  // The rule is trusted here; build_extension is the checked entry point.
  static GroupPtr twisted_product(KDesc k, GroupPtr base, CocycleFn omega,
                                  std::vector<std::string> kernel_names = {});

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  long long modulus() const { return modulus_; }
  const std::vector<GroupPtr>& factors() const { return factors_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }
  int generator_count() const { return (int)gen_names_.size(); }
  const KDesc& twisted_kernel() const { return tw_kernel_; }
  const GroupPtr& twisted_base() const { return tw_base_; }
  const CocycleFn& twisted_rule() const { return tw_rule_; }
  const std::vector<AffineMapZ3>& affine_generators() const { return affine_gens_; }

  GroupValue identity() const;
  // i-th generator, sign +1/-1.
  GroupValue generator(int i, int sign = 1) const;
  GroupValue multiply(const GroupValue& a, const GroupValue& b) const;
  GroupValue inverse(const GroupValue& a) const;
  GroupValue power(const GroupValue& a, long long n) const;
  GroupValue conjugate(const GroupValue& g, const GroupValue& h) const;  // g h g^-1
  bool is_identity(const GroupValue& a) const;

  GroupValue evaluate_word(const Word& w) const;
  Word parse_word(const std::string& text) const;
  std::string describe() const;

private:
  Group() = default;
  void check_owned(const GroupValue& v, const char* op) const;

  GroupKind kind_ = GroupKind::Free;
  int rank_ = 0;
  long long modulus_ = 0;
  std::vector<GroupPtr> factors_;
  std::vector<std::string> gen_names_;
  std::vector<AffineMapZ3> affine_gens_;
  KDesc tw_kernel_;
  GroupPtr tw_base_;
  CocycleFn tw_rule_;
};

inline constexpr size_t kDefaultBallCap = 5'000'000;

// BFS enumeration of {g : |g| <= r}, deterministic order: layer by layer,
// within a layer by first discovery with neighbours expanded in
// (generator index, sign) order.
struct Ball {
  GroupPtr group;
  int radius = 0;
  std::vector<GroupValue> elems;
  std::vector<int> length;  // word length of elems[i]

  std::optional<size_t> index_of(const GroupValue& g) const;
  size_t size() const { return elems.size(); }

private:
  friend Ball ball(const GroupPtr&, int, size_t);
  std::unordered_map<GroupValue, size_t, GroupValueHash> index_;
};

Ball ball(const GroupPtr& g, int radius, size_t cap = kDefaultBallCap);

// Geodesic word length in the declared generating set. Fast closed forms
// where the normal form carries the length; BFS meet otherwise.
long long word_length(const GroupValue& g, size_t cap = kDefaultBallCap);

}  // namespace cext
