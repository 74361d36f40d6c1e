#include "cext/lab.hpp"

#include <algorithm>

namespace cext {

std::vector<KValue> kernel_ball(const KDesc& k, long long r) {
  std::vector<KValue> out;
  size_t dims = k.free_rank + k.torsion.size();
  std::vector<long long> coords(dims, 0);
  std::function<void(size_t, long long)> rec = [&](size_t i, long long budget) {
    if (i == dims) {
      std::vector<long long> fp(coords.begin(), coords.begin() + k.free_rank);
      std::vector<long long> tp(coords.begin() + k.free_rank, coords.end());
      out.push_back(KValue(k, fp, tp));
      return;
    }
    long long lim = budget;
    if (i >= (size_t)k.free_rank) {
      long long m = k.torsion[i - k.free_rank];
      lim = std::min(lim, m / 2);  // minimal absolute representatives
    }
    for (long long v = -lim; v <= lim; ++v) {
      if (i >= (size_t)k.free_rank) {
        long long m = k.torsion[i - k.free_rank];
        if (KValue::reduce_mod(v, m) != v) continue;  // skip the duplicate -m/2
      }
      coords[i] = v;
      rec(i + 1, budget - std::llabs(v));
    }
    coords[i] = 0;
  };
  rec(0, r);
  std::sort(out.begin(), out.end(), [](const KValue& a, const KValue& b) {
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    if (a.free_part != b.free_part) return a.free_part < b.free_part;
    return a.torsion_part < b.torsion_part;
  });
  return out;
}

QuasiMap chi_from_cocycle(const ExtensionBundle& ext) {
  if (!ext.product_form)
    throw input_error(
        "chi_from_cocycle: total group is not in product form; rebuild the "
        "extension from its cocycle first");
  QuasiMap chi;
  chi.domain = ext.total;
  chi.target = ext.kernel;
  chi.provenance = "kernel coordinate of " + ext.name;
  chi.rule = [](const GroupValue& e) { return e.kpart; };
  return chi;
}

namespace {

void check_identity_on_kernel(const ExtensionBundle& ext, const QuasiMap& chi) {
  for (const KValue& k : kernel_ball(ext.kernel, 5)) {
    KValue got = chi(ext.iota(k));
    if (got != k)
      throw input_error("quasimap is not the identity on the kernel: chi(iota(" +
                        k.str() + ")) = " + got.str());
  }
}

}  // namespace

Cocycle cocycle_from_chi(const ExtensionBundle& ext, const QuasiMap& chi) {
  if (chi.domain.get() != ext.total.get())
    throw input_error("cocycle_from_chi: quasimap domain is not the total group");
  check_identity_on_kernel(ext, chi);
  Cocycle omega = euler_cocycle(ext);
  auto sigma = ext.sigma;
  auto base = ext.base;
  KDesc K = ext.kernel;
  Cocycle out;
  out.base = ext.base;
  out.coeff = K;
  out.provenance = "cocycle recovered from kernel quasimap of " + ext.name;
  out.rule = [omega, chi, sigma, base, K](const GroupValue& g, const GroupValue& h) {
    // omega - delta b with b = chi o sigma
    KValue b_g = chi(sigma(g)), b_h = chi(sigma(h)), b_gh = chi(sigma(base->multiply(g, h)));
    return omega(g, h).sub(K, b_g).sub(K, b_h).add(K, b_gh);
  };
  out.normalized = out.rule(base->identity(), base->identity()).is_zero();
  return out;
}

Cocycle cocycle_from_section(const ExtensionBundle& ext,
                             std::function<GroupValue(const GroupValue&)> sigma) {
  auto total = ext.total;
  auto base = ext.base;
  GroupValue s1 = sigma(base->identity());
  auto sig = [total, sigma, s1_inv = total->inverse(s1)](const GroupValue& g) {
    return total->multiply(sigma(g), s1_inv);  // force sigma(1) = 1
  };
  for (const auto& g : ball(base, 5).elems)
    if (ext.pi(sig(g)) != g)
      throw input_error("cocycle_from_section: pi(sigma(" + g.str() + ")) = " +
                        ext.pi(sig(g)).str() + ", not a section");
  auto iota_inv = ext.iota_inv;
  Cocycle out;
  out.base = base;
  out.coeff = ext.kernel;
  out.normalized = true;
  out.provenance = "cocycle of a section of " + ext.name;
  out.rule = [total, base, sig, iota_inv](const GroupValue& g, const GroupValue& h) {
    GroupValue d = total->multiply(total->multiply(sig(g), sig(h)),
                                   total->inverse(sig(base->multiply(g, h))));
    auto k = iota_inv(d);
    if (!k)
      throw structural_error("cocycle_from_section: section defect " + d.str() +
                             " left the kernel");
    return *k;
  };
  return out;
}

std::pair<QuasiMap, QuasiMap> decompose_bounded(const ExtensionBundle& ext,
                                                const QuasiMap& chi,
                                                const std::vector<long long>& multipliers) {
  check_identity_on_kernel(ext, chi);
  const KDesc& K = ext.kernel;
  size_t dims = K.free_rank + K.torsion.size();
  if (multipliers.size() != dims)
    throw input_error("decompose_bounded: need one multiplier per kernel coordinate");
  for (size_t i = 0; i < dims; ++i) {
    long long m = multipliers[i];
    bool torsion_coord = i >= (size_t)K.free_rank;
    if (m < 0 || (torsion_coord && m > 1))
      throw input_error("decompose_bounded: coordinate " + std::to_string(i) +
                        " multiplier " + std::to_string(m) +
                        " is not a registered summand");
  }

  // quotient shape: surviving free coords, then Z/m from scaled free coords,
  // then surviving torsion coords
  KDesc Kq;
  std::vector<std::pair<size_t, long long>> free_plan;  // (coord, 0 = free, m = mod)
  for (int i = 0; i < K.free_rank; ++i) {
    if (multipliers[i] == 0) {
      ++Kq.free_rank;
      free_plan.push_back({(size_t)i, 0});
    }
  }
  std::vector<size_t> mod_coords, kept_torsion;
  for (int i = 0; i < K.free_rank; ++i)
    if (multipliers[i] >= 2) {
      Kq.torsion.push_back(multipliers[i]);
      mod_coords.push_back(i);
    }
  for (size_t i = 0; i < K.torsion.size(); ++i)
    if (multipliers[K.free_rank + i] == 0) {
      Kq.torsion.push_back(K.torsion[i]);
      kept_torsion.push_back(i);
    }

  QuasiMap first = chi;
  first.provenance = chi.provenance + " (sub-row)";
  first.defect_cache = std::make_shared<std::map<int, DefectResult>>();

  QuasiMap second;
  second.domain = chi.domain;
  second.target = Kq;
  second.provenance = chi.provenance + " (quotient row)";
  auto mods = mod_coords;
  auto kept = kept_torsion;
  auto plan = free_plan;
  second.rule = [chi, Kq, plan, mods, kept](const GroupValue& e) {
    KValue v = chi(e);
    std::vector<long long> fp, tp;
    for (auto [i, m] : plan) fp.push_back(v.free_part[i]);
    for (size_t i : mods) tp.push_back(v.free_part[i]);
    for (size_t i : kept) tp.push_back(v.torsion_part[i]);
    return KValue(Kq, fp, tp);
  };
  return {first, second};
}

GroupValue induced_section(const QCEBundle& qce, const GroupValue& g) {
  auto G = qce.top.base;
  auto E = qce.top.total;
  GroupValue t = qce.tau(qce.p_base(g));
  // peel off the coset representative; the remainder lies in pi(N)
  GroupValue n = qce.pi_n_lift(G->multiply(g, G->inverse(qce.top.pi(t))));
  return E->multiply(n, t);
}

PullbackReport pullback_check(const QCEBundle& qce, int r) {
  PullbackReport rep;
  rep.radius = r;
  auto Eb = qce.bottom.total;
  auto Gb = qce.bottom.base;
  for (const auto& gb : ball(Gb, 3).elems) {
    if (qce.p(qce.tau(gb)) != qce.bottom.sigma(gb)) rep.section_data_ok = false;
  }
  if (!qce.top.total->is_identity(qce.tau(Gb->identity()))) rep.section_data_ok = false;
  if (!rep.section_data_ok) rep.ok = false;

  auto G = qce.top.base;
  auto E = qce.top.total;
  auto sig = [&](const GroupValue& g) { return induced_section(qce, g); };
  auto sbar = qce.bottom.sigma;
  auto b = ball(G, r);
  for (const auto& g : b.elems)
    for (const auto& h : b.elems) {
      GroupValue gh = G->multiply(g, h);
      GroupValue top_defect = E->multiply(E->multiply(sig(g), sig(h)),
                                          E->inverse(sig(gh)));
      GroupValue pushed = qce.p(top_defect);
      GroupValue bg = qce.p_base(g), bh = qce.p_base(h);
      GroupValue bottom = Eb->multiply(Eb->multiply(sbar(bg), sbar(bh)),
                                       Eb->inverse(sbar(Gb->multiply(bg, bh))));
      ++rep.pairs_checked;
      if (pushed != bottom) {
        rep.ok = false;
        if (rep.violations.size() < 10) rep.violations.push_back({g, h, pushed, bottom});
      }
    }
  return rep;
}

QCEBundle free_cover(const ExtensionBundle& ext, std::vector<std::string> kernel_names) {
  if (ext.base->kind() != GroupKind::FreeAbelian)
    throw input_error("free_cover: no registered presentation for base " +
                      ext.base->describe());
  int n = ext.base->rank();
  auto F = Group::free_group(n, ext.base->generator_names());

  QCEBundle qce;
  qce.bottom = ext;
  qce.top = trivial_extension(ext.kernel, F, std::move(kernel_names));
  qce.name = "free cover of " + ext.name;

  auto G = ext.base;
  auto Eb = ext.total;
  // homomorphism F -> Ebar sending the i-th letter to sigma(i-th base generator)
  std::vector<GroupValue> images, images_inv;
  for (int i = 0; i < n; ++i) {
    images.push_back(ext.sigma(G->generator(i)));
    images_inv.push_back(Eb->inverse(images.back()));
  }
  auto ptilde = [Eb, images, images_inv](const GroupValue& w) {
    GroupValue out = Eb->identity();
    for (int c : w.word)
      out = Eb->multiply(out, c > 0 ? images[c - 1] : images_inv[-c - 1]);
    return out;
  };

  auto iota = ext.iota;
  auto top_total = qce.top.total;
  qce.p = [Eb, iota, ptilde](const GroupValue& e) {
    return Eb->multiply(iota(e.kpart), ptilde(e.parts[0]));
  };
  qce.p_base = [G](const GroupValue& w) {
    GroupValue out = G->identity();
    for (int c : w.word)
      out = G->multiply(out, G->generator(std::abs(c) - 1, c > 0 ? 1 : -1));
    return out;
  };
  // lexicographic lift of an exponent vector into F
  auto lift_word = [F, n](const GroupValue& gb) {
    GroupValue w = F->identity();
    for (int i = 0; i < n; ++i)
      w = F->multiply(w, F->power(F->generator(i), gb.vec[i]));
    return w;
  };
  KDesc K = ext.kernel;
  auto sigma_top = qce.top.sigma;
  qce.tau = [sigma_top, lift_word](const GroupValue& gb) {
    return sigma_top(lift_word(gb));
  };
  auto pi_bottom = ext.pi;
  auto iota_inv = ext.iota_inv;
  qce.lift = [top_total, Eb, pi_bottom, lift_word, ptilde, iota_inv,
              K](const GroupValue& eb) {
    GroupValue w = lift_word(pi_bottom(eb));
    auto k = iota_inv(Eb->multiply(eb, Eb->inverse(ptilde(w))));
    if (!k) throw structural_error("free_cover: lift residue left the kernel");
    return twisted_pair(top_total, *k, w);
  };
  auto p_base = qce.p_base;
  qce.in_pi_n = [G, p_base](const GroupValue& w) {
    return G->is_identity(p_base(w));
  };
  qce.pi_n_lift = [top_total, G, p_base, Eb, ptilde, iota_inv, K](const GroupValue& w) {
    if (!G->is_identity(p_base(w)))
      throw input_error("element " + w.str() + " is not in pi(N)");
    auto k = iota_inv(Eb->inverse(ptilde(w)));
    if (!k)
      throw structural_error("pi_n_lift: complement of " + w.str() +
                             " is not in the kernel");
    return twisted_pair(top_total, *k, w);
  };
  // one kernel element per commutator of distinct letters
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      GroupValue comm = F->multiply(
          F->multiply(F->generator(i), F->generator(j)),
          F->multiply(F->generator(i, -1), F->generator(j, -1)));
      qce.n_generators.push_back(qce.pi_n_lift(comm));
    }
  return qce;
}

QCEBundle heisenberg_qce() {
  QCEBundle qce = free_cover(heisenberg_native_bundle(), {"z"});
  qce.name = "Z x F2 over the integer Heisenberg group";
  return qce;
}

QuasiMap restricted_qm(const QCEBundle& qce, const QuasiMap& chi) {
  if (chi.domain.get() != qce.top.total.get())
    throw input_error("restricted_qm: quasimap domain is not the top total group");
  // pi restricted to N = ker p must be injective: no nontrivial element of N
  // may project to 1, i.e. N meets iota(K) trivially
  auto E = qce.top.total;
  for (const auto& e : ball(E, 4).elems) {
    if (E->is_identity(e)) continue;
    if (qce.bottom.total->is_identity(qce.p(e)) &&
        qce.top.base->is_identity(qce.top.pi(e)))
      throw structural_error("restricted_qm: " + e.str() +
                             " lies in both N and the kernel; pi|N is not injective");
  }
  QuasiMap out;
  out.domain = qce.top.base;
  out.target = chi.target;
  out.provenance = "restriction of " + chi.provenance + " through pi^-1 on " + qce.name;
  auto lift = qce.pi_n_lift;
  out.rule = [chi, lift](const GroupValue& g) { return chi(lift(g)); };
  return out;
}

BoundaryReport boundary_identity_check(const QCEBundle& qce, const QuasiMap& chi,
                                       const Cocycle& omega, int r) {
  BoundaryReport rep;
  rep.radius = r;
  const KDesc& K = chi.target;
  rep.lhs = KValue::zero(K);
  rep.rhs = KValue::zero(K);
  auto G = qce.top.base;
  std::vector<GroupValue> piN;
  for (const auto& g : ball(G, r).elems)
    if (qce.in_pi_n(g)) piN.push_back(g);
  auto value = [&](const GroupValue& g) { return chi(qce.pi_n_lift(g)); };
  for (const auto& n1 : piN) {
    for (const auto& n2 : piN) {
      KValue lhs = value(n1).add(K, value(n2)).sub(K, value(G->multiply(n1, n2)));
      KValue rhs = omega(n1, n2);
      ++rep.pairs_checked;
      if (lhs != rhs) {
        rep.ok = false;
        rep.violation = {{n1, n2}};
        rep.lhs = lhs;
        rep.rhs = rhs;
        return rep;
      }
    }
  }
  return rep;
}

ExtendabilityReport extendability_probe(const QCEBundle& qce, const QuasiMap& chi,
                                        const QuasiMap& phi, int r) {
  if (phi.domain.get() != qce.top.base.get())
    throw input_error("extendability_probe: candidate must live on the base group");
  ExtendabilityReport rep;
  rep.radius = r;
  rep.mismatch_witness = qce.top.base->identity();
  const KDesc& K = chi.target;
  for (const auto& g : ball(qce.top.base, r).elems) {
    if (!qce.in_pi_n(g)) continue;
    long long d = phi(g).sub(K, chi(qce.pi_n_lift(g))).norm();
    if (d > rep.mismatch) {
      rep.mismatch = d;
      rep.mismatch_witness = g;
    }
  }
  rep.defect = defect_on_ball(phi, r);
  return rep;
}

QuasiMap descend_qm(const QuasiMap& chi, const QCEBundle& qce, long long n) {
  if (n < 1) throw input_error("descend_qm: homogenization exponent must be >= 1");
  if (chi.domain.get() != qce.top.total.get())
    throw input_error("descend_qm: quasimap domain is not the top total group");
  auto E = qce.top.total;
  for (const auto& e : ball(E, 4).elems)
    if (qce.bottom.total->is_identity(qce.p(e)) && !chi(e).is_zero())
      throw input_error("descend_qm: quasimap does not vanish on N, chi(" + e.str() +
                        ") = " + chi(e).str());
  QuasiMap out;
  out.domain = qce.bottom.total;
  out.target = chi.target;
  out.provenance = "descent of " + chi.provenance + " along " + qce.name;
  auto lift = qce.lift;
  KDesc K = chi.target;
  out.rule = [chi, lift, E, K, n](const GroupValue& eb) {
    GroupValue l = lift(eb);
    KValue at_n = chi(E->power(l, n));
    std::vector<long long> fp;
    for (long long v : at_n.free_part) fp.push_back(Rational(v, n).round());
    return KValue(K, fp, chi(l).torsion_part);
  };
  return out;
}

namespace {

bool preserves_zero_sum_plane(const AffineMapZ3& f) {
  long long s0 = f.mat[0][0] + f.mat[1][0] + f.mat[2][0];
  long long s1 = f.mat[0][1] + f.mat[1][1] + f.mat[2][1];
  long long s2 = f.mat[0][2] + f.mat[1][2] + f.mat[2][2];
  return s0 == s1 && s1 == s2 && f.tr[0] + f.tr[1] + f.tr[2] == 0;
}

}  // namespace

TriangleReport verify_triangle_remark() {
  AffineMapZ3 alpha, beta, gamma;
  alpha.mat = {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};  // (x,y,z) -> (y,x,z)
  beta.mat = {{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}};   // (x,y,z) -> (x,z,y)
  gamma.mat = {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}};  // (x,y,z) -> (z-3,y,x+3)
  gamma.tr = {-3, 0, 3};
  AffineMapZ3 S = AffineMapZ3::translation(1, 1, 1);
  AffineMapZ3 id = AffineMapZ3::identity();

  TriangleReport rep;
  auto check = [&rep](const std::string& label, bool ok, std::string detail = "") {
    rep.checks.push_back({label, ok, std::move(detail)});
    if (!ok) rep.ok = false;
  };

  check("alpha is an involution", alpha.compose(alpha) == id);
  check("beta is an involution", beta.compose(beta) == id);
  check("gamma is an involution", gamma.compose(gamma) == id);

  auto ab = alpha.compose(beta);
  check("alpha beta sends (x,y,z) to (z,x,y)",
        ab.apply({5, -2, 9}) == std::array<long long, 3>{9, 5, -2});
  check("(alpha beta)^3 = 1", ab.compose(ab).compose(ab) == id);
  auto bg = beta.compose(gamma);
  check("(beta gamma)^3 = 1", bg.compose(bg).compose(bg) == id);
  auto ag = alpha.compose(gamma);
  check("(alpha gamma)^3 = 1", ag.compose(ag).compose(ag) == id);

  auto abg = alpha.compose(beta).compose(gamma);
  AffineMapZ3 want;
  want.mat = {{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}};
  want.tr = {3, -3, 0};  // (x,y,z) -> (x+3, z-3, y)
  check("alpha beta gamma sends (x,y,z) to (x+3, z-3, y)", abg == want);

  bool drift = true;
  AffineMapZ3 pw = id;
  for (int k = 1; k <= 100 && drift; ++k) {
    pw = abg.compose(pw);
    if (pw.apply({0, 0, 0})[0] != 3 * k) drift = false;
  }
  check("powers of alpha beta gamma move the origin by 3 per step", drift);

  for (auto [name, g] : {std::pair<const char*, AffineMapZ3>{"alpha", alpha},
                         {"beta", beta},
                         {"gamma", gamma}}) {
    check(std::string("S commutes with ") + name,
          S.compose(g) == g.compose(S));
    check(std::string(name) + " preserves the lattice",
          g.det() == 1 || g.det() == -1);
  }
  check("conjugating alpha by S gives alpha back",
        S.compose(alpha).compose(S.inverse()) == alpha);

  // every word of length <= 6 fixes the plane x+y+z = 0, so no nontrivial
  // power of S appears among them
  auto A = Group::affine_z3({{"a", alpha}, {"b", beta}, {"c", gamma}});
  bool plane = true;
  for (const auto& g : ball(A, 6).elems)
    if (!preserves_zero_sum_plane(g.aff)) plane = false;
  check("all words of length <= 6 preserve the plane x+y+z=0", plane);

  return rep;
}

GrowthTable boundedness_probe(const ExtensionBundle& ext, const std::vector<int>& radii) {
  Cocycle w = euler_cocycle(ext);
  GrowthTable table;
  for (int r : radii) {
    auto res = sup_norm_on_ball(w, r);
    table.rows.push_back({r, res.value, res.g, res.h});
  }
  size_t k = table.rows.size();
  if (k >= 2 && table.rows[k - 1].value == table.rows[k - 2].value)
    table.classification = "flat";
  else if (k >= 2)
    table.classification = "growing";
  else
    table.classification = "inconclusive";
  return table;
}

}  // namespace cext
