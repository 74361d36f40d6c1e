#include "cext/group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cext {

// ---------------------------------------------------------------------------
// AffineMapZ3

AffineMapZ3 AffineMapZ3::identity() {
  AffineMapZ3 m;
  for (int i = 0; i < 3; ++i) m.mat[i][i] = 1;
  return m;
}

AffineMapZ3 AffineMapZ3::translation(long long x, long long y, long long z) {
  AffineMapZ3 m = identity();
  m.tr = {x, y, z};
  return m;
}

long long AffineMapZ3::det() const {
  return mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1]) -
         mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0]) +
         mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0]);
}

std::array<long long, 3> AffineMapZ3::apply(const std::array<long long, 3>& v) const {
  std::array<long long, 3> r{};
  for (int i = 0; i < 3; ++i)
    r[i] = mat[i][0] * v[0] + mat[i][1] * v[1] + mat[i][2] * v[2] + tr[i];
  return r;
}

AffineMapZ3 AffineMapZ3::compose(const AffineMapZ3& b) const {
  AffineMapZ3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r.mat[i][j] = 0;
      for (int k = 0; k < 3; ++k) r.mat[i][j] += mat[i][k] * b.mat[k][j];
    }
  for (int i = 0; i < 3; ++i) {
    r.tr[i] = tr[i];
    for (int k = 0; k < 3; ++k) r.tr[i] += mat[i][k] * b.tr[k];
  }
  return r;
}

AffineMapZ3 AffineMapZ3::inverse() const {
  long long d = det();
  if (d != 1 && d != -1)
    throw input_error("AffineMapZ3: matrix not invertible over Z (det " +
                      std::to_string(d) + ")");
  AffineMapZ3 inv;
  // adjugate / det
  inv.mat[0][0] = (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1]) * d;
  inv.mat[0][1] = (mat[0][2] * mat[2][1] - mat[0][1] * mat[2][2]) * d;
  inv.mat[0][2] = (mat[0][1] * mat[1][2] - mat[0][2] * mat[1][1]) * d;
  inv.mat[1][0] = (mat[1][2] * mat[2][0] - mat[1][0] * mat[2][2]) * d;
  inv.mat[1][1] = (mat[0][0] * mat[2][2] - mat[0][2] * mat[2][0]) * d;
  inv.mat[1][2] = (mat[0][2] * mat[1][0] - mat[0][0] * mat[1][2]) * d;
  inv.mat[2][0] = (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0]) * d;
  inv.mat[2][1] = (mat[0][1] * mat[2][0] - mat[0][0] * mat[2][1]) * d;
  inv.mat[2][2] = (mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]) * d;
  for (int i = 0; i < 3; ++i) {
    inv.tr[i] = 0;
    for (int k = 0; k < 3; ++k) inv.tr[i] -= inv.mat[i][k] * tr[k];
  }
  return inv;
}

std::string AffineMapZ3::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? ";" : "");
    for (int j = 0; j < 3; ++j) os << (j ? "," : "") << mat[i][j];
  }
  os << "|" << tr[0] << "," << tr[1] << "," << tr[2] << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupValue

bool GroupValue::operator==(const GroupValue& o) const {
  return vec == o.vec && word == o.word && aff == o.aff && parts == o.parts &&
         kpart == o.kpart;
}

int GroupValue::compare(const GroupValue& o) const {
  if (word.size() != o.word.size()) return word.size() < o.word.size() ? -1 : 1;
  if (word != o.word) return word < o.word ? -1 : 1;
  if (vec != o.vec) return vec < o.vec ? -1 : 1;
  if (!(aff == o.aff)) {
    if (aff.mat != o.aff.mat) return aff.mat < o.aff.mat ? -1 : 1;
    return aff.tr < o.aff.tr ? -1 : 1;
  }
  if (kpart.free_part != o.kpart.free_part)
    return kpart.free_part < o.kpart.free_part ? -1 : 1;
  if (kpart.torsion_part != o.kpart.torsion_part)
    return kpart.torsion_part < o.kpart.torsion_part ? -1 : 1;
  for (size_t i = 0; i < std::min(parts.size(), o.parts.size()); ++i) {
    int c = parts[i].compare(o.parts[i]);
    if (c != 0) return c;
  }
  if (parts.size() != o.parts.size()) return parts.size() < o.parts.size() ? -1 : 1;
  return 0;
}

void GroupValue::encode(std::vector<long long>& out) const {
  out.push_back((long long)word.size());
  for (int w : word) out.push_back(w);
  out.push_back((long long)vec.size());
  for (long long v : vec) out.push_back(v);
  for (auto& row : aff.mat)
    for (long long v : row) out.push_back(v);
  for (long long v : aff.tr) out.push_back(v);
  for (long long v : kpart.free_part) out.push_back(v);
  for (long long v : kpart.torsion_part) out.push_back(v);
  out.push_back((long long)parts.size());
  for (auto& p : parts) p.encode(out);
}

size_t GroupValueHash::operator()(const GroupValue& v) const {
  std::vector<long long> data;
  v.encode(data);
  size_t h = 1469598103934665603ull;
  for (long long x : data) {
    h ^= (size_t)x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return h;
}

std::string GroupValue::str() const {
  if (!owner_) return "?";
  switch (owner_->kind()) {
    case GroupKind::Free: {
      if (word.empty()) return "1";
      std::string s;
      const auto& names = owner_->generator_names();
      for (size_t i = 0; i < word.size(); ++i) {
        if (i) s += " ";
        int l = word[i];
        s += names[std::abs(l) - 1];
        if (l < 0) s += "^-1";
      }
      return s;
    }
    case GroupKind::FreeAbelian:
    case GroupKind::Cyclic:
    case GroupKind::Heisenberg: {
      std::string s = "(";
      for (size_t i = 0; i < vec.size(); ++i)
        s += (i ? "," : "") + std::to_string(vec[i]);
      return s + ")";
    }
    case GroupKind::AffineZ3:
      return aff.str();
    case GroupKind::DirectProduct: {
      std::string s = "(";
      for (size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i].str();
      return s + ")";
    }
    case GroupKind::TwistedProduct:
      return "(" + kpart.str() + " | " + parts[0].str() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Group constructors

static std::vector<std::string> default_names(int n, char base) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    if (n <= 26)
      names.push_back(std::string(1, (char)(base + i)));
    else
      names.push_back(std::string(1, base) + std::to_string(i + 1));
  }
  return names;
}

GroupPtr Group::free_group(int n, std::vector<std::string> names) {
  if (n < 1) throw input_error("free_group: rank must be >= 1");
  auto g = GroupPtr(new Group());
  auto* p = const_cast<Group*>(g.get());
  p->kind_ = GroupKind::Free;
  p->rank_ = n;
  p->gen_names_ = names.empty() ? default_names(n, 'a') : std::move(names);
  if ((int)p->gen_names_.size() != n)
    throw input_error("free_group: generator name count mismatch");
  return g;
}

GroupPtr Group::free_abelian(int n, std::vector<std::string> names) {
  if (n < 1) throw input_error("free_abelian: rank must be >= 1");
  auto g = GroupPtr(new Group());
  auto* p = const_cast<Group*>(g.get());
  p->kind_ = GroupKind::FreeAbelian;
  p->rank_ = n;
  p->gen_names_ = names.empty() ? default_names(n, 'a') : std::move(names);
  if ((int)p->gen_names_.size() != n)
    throw input_error("free_abelian: generator name count mismatch");
  return g;
}

GroupPtr Group::cyclic(long long m, std::string name) {
  if (m < 1) throw input_error("cyclic: modulus must be >= 1");
  auto g = GroupPtr(new Group());
  auto* p = const_cast<Group*>(g.get());
  p->kind_ = GroupKind::Cyclic;
  p->modulus_ = m;
  p->gen_names_ = {std::move(name)};
  return g;
}

GroupPtr Group::direct_product(std::vector<GroupPtr> factors) {
  if (factors.empty()) throw input_error("direct_product: no factors");
  auto g = GroupPtr(new Group());
  auto* p = const_cast<Group*>(g.get());
  p->kind_ = GroupKind::DirectProduct;
  p->factors_ = std::move(factors);
  for (size_t i = 0; i < p->factors_.size(); ++i)
    for (const auto& n : p->factors_[i]->generator_names())
      p->gen_names_.push_back(n + "." + std::to_string(i + 1));
  return g;
}

GroupPtr Group::heisenberg() {
  auto g = GroupPtr(new Group());
  auto* p = const_cast<Group*>(g.get());
  p->kind_ = GroupKind::Heisenberg;
  p->gen_names_ = {"x", "y"};
  return g;
}

GroupPtr Group::affine_z3(std::vector<std::pair<std::string, AffineMapZ3>> gens) {
  if (gens.empty()) throw input_error("affine_z3: no generators");
  auto g = GroupPtr(new Group());
  auto* p = const_cast<Group*>(g.get());
  p->kind_ = GroupKind::AffineZ3;
  for (auto& [name, m] : gens) {
    long long d = m.det();
    if (d != 1 && d != -1)
      throw input_error("affine_z3: generator " + name +
                        " not invertible over Z (det " + std::to_string(d) + ")");
    p->gen_names_.push_back(name);
    p->affine_gens_.push_back(m);
  }
  return g;
}

GroupPtr Group::twisted_product(KDesc k, GroupPtr base, CocycleFn omega,
                                std::vector<std::string> kernel_names) {
  auto g = GroupPtr(new Group());
  auto* p = const_cast<Group*>(g.get());
  p->kind_ = GroupKind::TwistedProduct;
  p->tw_kernel_ = std::move(k);
  p->tw_base_ = std::move(base);
  p->tw_rule_ = std::move(omega);
  int kgens = p->tw_kernel_.free_rank + (int)p->tw_kernel_.torsion.size();
  if (kernel_names.empty()) {
    for (int i = 0; i < kgens; ++i) kernel_names.push_back("k" + std::to_string(i + 1));
  }
  if ((int)kernel_names.size() != kgens)
    throw input_error("twisted_product: kernel generator name count mismatch");
  p->gen_names_ = std::move(kernel_names);
  for (const auto& n : p->tw_base_->generator_names()) p->gen_names_.push_back(n);
  return g;
}

// ---------------------------------------------------------------------------
// Group arithmetic

void Group::check_owned(const GroupValue& v, const char* op) const {
  if (v.owner_.get() != this)
    throw input_error(std::string(op) + ": value does not belong to this group");
}

GroupValue Group::identity() const {
  GroupValue v;
  v.owner_ = shared_from_this();
  switch (kind_) {
    case GroupKind::Free:
      break;
    case GroupKind::FreeAbelian:
      v.vec.assign(rank_, 0);
      break;
    case GroupKind::Cyclic:
      v.vec.assign(1, 0);
      break;
    case GroupKind::Heisenberg:
      v.vec.assign(3, 0);
      break;
    case GroupKind::AffineZ3:
      v.aff = AffineMapZ3::identity();
      break;
    case GroupKind::DirectProduct:
      for (const auto& f : factors_) v.parts.push_back(f->identity());
      break;
    case GroupKind::TwistedProduct:
      v.kpart = KValue::zero(tw_kernel_);
      v.parts.push_back(tw_base_->identity());
      break;
  }
  return v;
}

GroupValue Group::generator(int i, int sign) const {
  if (i < 0 || i >= generator_count())
    throw input_error("generator: index " + std::to_string(i) + " out of range");
  if (sign != 1 && sign != -1) throw input_error("generator: sign must be +-1");
  GroupValue v = identity();
  switch (kind_) {
    case GroupKind::Free:
      v.word = {sign > 0 ? i + 1 : -(i + 1)};
      break;
    case GroupKind::FreeAbelian:
      v.vec[i] = sign;
      break;
    case GroupKind::Cyclic:
      v.vec[0] = sign > 0 ? 1 % modulus_ : (modulus_ - 1) % modulus_;
      break;
    case GroupKind::Heisenberg:
      v.vec[i] = sign;  // i in {0,1}: x or y
      break;
    case GroupKind::AffineZ3:
      v.aff = sign > 0 ? affine_gens_[i] : affine_gens_[i].inverse();
      break;
    case GroupKind::DirectProduct: {
      int off = i;
      for (size_t f = 0; f < factors_.size(); ++f) {
        int c = factors_[f]->generator_count();
        if (off < c) {
          v.parts[f] = factors_[f]->generator(off, sign);
          break;
        }
        off -= c;
      }
      break;
    }
    case GroupKind::TwistedProduct: {
      int kgens = tw_kernel_.free_rank + (int)tw_kernel_.torsion.size();
      if (i < kgens) {
        KValue u = KValue::unit(tw_kernel_, i);
        v.kpart = sign > 0 ? u : u.neg(tw_kernel_);
      } else {
        if (sign > 0) {
          v.parts[0] = tw_base_->generator(i - kgens, 1);
        } else {
          // (0, b)^-1 = (-omega(b, b^-1), b^-1)
          GroupValue b = tw_base_->generator(i - kgens, 1);
          GroupValue binv = tw_base_->inverse(b);
          v.kpart = tw_rule_(b, binv).neg(tw_kernel_);
          v.parts[0] = binv;
        }
      }
      break;
    }
  }
  return v;
}

GroupValue Group::multiply(const GroupValue& a, const GroupValue& b) const {
  check_owned(a, "multiply");
  check_owned(b, "multiply");
  GroupValue v = identity();
  switch (kind_) {
    case GroupKind::Free: {
      v.word = a.word;
      for (int l : b.word) {
        if (!v.word.empty() && v.word.back() == -l)
          v.word.pop_back();
        else
          v.word.push_back(l);
      }
      break;
    }
    case GroupKind::FreeAbelian:
      for (int i = 0; i < rank_; ++i) v.vec[i] = a.vec[i] + b.vec[i];
      break;
    case GroupKind::Cyclic:
      v.vec[0] = (a.vec[0] + b.vec[0]) % modulus_;
      break;
    case GroupKind::Heisenberg:
      // x^a y^b z^c; yx = xy z^-1 gives the twist -a2*b1
      v.vec[0] = a.vec[0] + b.vec[0];
      v.vec[1] = a.vec[1] + b.vec[1];
      v.vec[2] = a.vec[2] + b.vec[2] - b.vec[0] * a.vec[1];
      break;
    case GroupKind::AffineZ3:
      v.aff = a.aff.compose(b.aff);
      break;
    case GroupKind::DirectProduct:
      for (size_t f = 0; f < factors_.size(); ++f)
        v.parts[f] = factors_[f]->multiply(a.parts[f], b.parts[f]);
      break;
    case GroupKind::TwistedProduct:
      v.kpart = a.kpart.add(tw_kernel_, b.kpart)
                    .add(tw_kernel_, tw_rule_(a.parts[0], b.parts[0]));
      v.parts[0] = tw_base_->multiply(a.parts[0], b.parts[0]);
      break;
  }
  return v;
}

GroupValue Group::inverse(const GroupValue& a) const {
  check_owned(a, "inverse");
  GroupValue v = identity();
  switch (kind_) {
    case GroupKind::Free:
      for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) v.word.push_back(-*it);
      break;
    case GroupKind::FreeAbelian:
      for (int i = 0; i < rank_; ++i) v.vec[i] = -a.vec[i];
      break;
    case GroupKind::Cyclic:
      v.vec[0] = (modulus_ - a.vec[0]) % modulus_;
      break;
    case GroupKind::Heisenberg:
      v.vec[0] = -a.vec[0];
      v.vec[1] = -a.vec[1];
      v.vec[2] = -a.vec[2] - a.vec[0] * a.vec[1];
      break;
    case GroupKind::AffineZ3:
      v.aff = a.aff.inverse();
      break;
    case GroupKind::DirectProduct:
      for (size_t f = 0; f < factors_.size(); ++f)
        v.parts[f] = factors_[f]->inverse(a.parts[f]);
      break;
    case GroupKind::TwistedProduct: {
      GroupValue binv = tw_base_->inverse(a.parts[0]);
      v.kpart = a.kpart.add(tw_kernel_, tw_rule_(a.parts[0], binv)).neg(tw_kernel_);
      v.parts[0] = binv;
      break;
    }
  }
  return v;
}

GroupValue Group::power(const GroupValue& a, long long n) const {
  check_owned(a, "power");
  GroupValue base = n < 0 ? inverse(a) : a;
  unsigned long long e = n < 0 ? (unsigned long long)(-n) : (unsigned long long)n;
  GroupValue acc = identity();
  while (e) {
    if (e & 1) acc = multiply(acc, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return acc;
}

GroupValue Group::conjugate(const GroupValue& g, const GroupValue& h) const {
  return multiply(multiply(g, h), inverse(g));
}

bool Group::is_identity(const GroupValue& a) const {
  check_owned(a, "is_identity");
  return a == identity();
}

GroupValue Group::evaluate_word(const Word& w) const {
  GroupValue v = identity();
  for (auto [i, sign] : w.letters) {
    if (i < 0 || i >= generator_count())
      throw input_error("evaluate_word: generator index " + std::to_string(i) +
                        " invalid for " + describe());
    v = multiply(v, generator(i, sign));
  }
  return v;
}

Word Group::parse_word(const std::string& text) const {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    long long exp = 1;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (caret != std::string::npos) {
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw input_error("parse_word: bad exponent in token '" + tok + "'");
      }
    }
    int idx = -1;
    for (int i = 0; i < generator_count(); ++i)
      if (gen_names_[i] == name) { idx = i; break; }
    if (idx < 0)
      throw input_error("parse_word: unknown generator '" + name + "' in " +
                        describe());
    int sign = exp < 0 ? -1 : 1;
    for (long long k = 0; k < std::llabs(exp); ++k) w.letters.push_back({idx, sign});
  }
  return w;
}

std::string Group::describe() const {
  switch (kind_) {
    case GroupKind::Free: return "Free(" + std::to_string(rank_) + ")";
    case GroupKind::FreeAbelian: return "Z^" + std::to_string(rank_);
    case GroupKind::Cyclic: return "Z/" + std::to_string(modulus_);
    case GroupKind::Heisenberg: return "H3";
    case GroupKind::AffineZ3: return "AffineZ3<" + std::to_string(generator_count()) + " gens>";
    case GroupKind::DirectProduct: {
      std::string s;
      for (size_t i = 0; i < factors_.size(); ++i)
        s += (i ? " x " : "") + factors_[i]->describe();
      return s;
    }
    case GroupKind::TwistedProduct:
      return tw_kernel_.str() + " x_w " + tw_base_->describe();
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Ball enumeration and word length

std::optional<size_t> Ball::index_of(const GroupValue& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Ball ball(const GroupPtr& g, int radius, size_t cap) {
  if (radius < 0) throw input_error("ball: negative radius");
  Ball b;
  b.group = g;
  b.radius = radius;
  b.elems.push_back(g->identity());
  b.length.push_back(0);
  b.index_[b.elems[0]] = 0;
  size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    size_t layer_end = b.elems.size();
    if (layer_begin == layer_end) break;  // whole group enumerated
    for (size_t i = layer_begin; i < layer_end; ++i) {
      for (int gi = 0; gi < g->generator_count(); ++gi) {
        for (int sign : {1, -1}) {
          GroupValue n = g->multiply(b.elems[i], g->generator(gi, sign));
          if (b.index_.count(n)) continue;
          if (b.elems.size() >= cap)
            throw resource_error("ball: enumeration cap of " + std::to_string(cap) +
                                 " elements exceeded at radius " + std::to_string(r));
          b.index_[n] = b.elems.size();
          b.elems.push_back(std::move(n));
          b.length.push_back(r);
        }
      }
    }
    layer_begin = layer_end;
  }
  return b;
}

long long word_length(const GroupValue& g, size_t cap) {
  if (!g.owner()) throw input_error("word_length: value without owner");
  const Group& grp = *g.owner();
  switch (grp.kind()) {
    case GroupKind::Free:
      return (long long)g.word.size();
    case GroupKind::FreeAbelian: {
      long long n = 0;
      for (long long v : g.vec) n += std::llabs(v);
      return n;
    }
    case GroupKind::Cyclic:
      return std::min(g.vec[0], grp.modulus() - g.vec[0]);
    case GroupKind::DirectProduct: {
      long long n = 0;
      for (const auto& p : g.parts) n += word_length(p, cap);
      return n;
    }
    default: {
      // BFS from the identity until g is met; exact, capped.
      std::unordered_map<GroupValue, long long, GroupValueHash> dist;
      std::deque<GroupValue> queue;
      GroupValue id = grp.identity();
      if (g == id) return 0;
      dist[id] = 0;
      queue.push_back(id);
      while (!queue.empty()) {
        GroupValue cur = std::move(queue.front());
        queue.pop_front();
        long long d = dist[cur];
        for (int gi = 0; gi < grp.generator_count(); ++gi) {
          for (int sign : {1, -1}) {
            GroupValue n = grp.multiply(cur, grp.generator(gi, sign));
            if (dist.count(n)) continue;
            if (n == g) return d + 1;
            if (dist.size() >= cap)
              throw resource_error(
                  "word_length: element outside the enumerable range (cap " +
                  std::to_string(cap) + ")");
            dist[n] = d + 1;
            queue.push_back(std::move(n));
          }
        }
      }
      throw resource_error("word_length: element not reachable from identity");
    }
  }
}

}  // namespace cext
