#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cext/lab.hpp"
#include "cext/registry.hpp"

using namespace cext;

namespace {

// z-exponent of a word of F2 evaluated in the integer Heisenberg group
long long winding(const GroupPtr& F, const GroupValue& w) {
  auto H = Group::heisenberg();
  GroupValue v = H->identity();
  for (int c : w.word)
    v = H->multiply(v, H->generator(std::abs(c) - 1, c > 0 ? 1 : -1));
  REQUIRE(v.vec[0] == 0);
  REQUIRE(v.vec[1] == 0);
  return v.vec[2];
}

GroupValue commutator(const GroupPtr& G, const GroupValue& a, const GroupValue& b) {
  return G->multiply(G->multiply(a, b), G->multiply(G->inverse(a), G->inverse(b)));
}

}  // namespace

TEST_CASE("kernel balls enumerate small elements in a deterministic order") {
  auto b = kernel_ball(KDesc(1), 5);
  CHECK(b.size() == 11);
  CHECK(b[0].is_zero());
  CHECK(b[1].free_part[0] == -1);
  CHECK(b[2].free_part[0] == 1);

  auto t = kernel_ball(KDesc(0, {4}), 2);
  CHECK(t.size() == 4);  // residues 0, -1, 1, 2

  auto m = kernel_ball(KDesc(1, {2}), 1);
  CHECK(m.size() == 4);  // 0, +-1 free, 1 torsion
}

TEST_CASE("kernel coordinate of a product extension") {
  auto triv = registry_extension("trivial-Z-Z2");
  auto chi = chi_from_cocycle(triv);
  CHECK(defect_on_ball(chi, 2).value == 0);
  for (const auto& k : kernel_ball(triv.kernel, 5)) CHECK(chi(triv.iota(k)) == k);

  auto ext = registry_extension("heisenberg-product");
  auto chiH = chi_from_cocycle(ext);
  for (const auto& k : kernel_ball(ext.kernel, 5)) CHECK(chiH(ext.iota(k)) == k);
  // defect at (e1, e2) is exactly the cocycle norm at the projected pair
  auto w = euler_cocycle(ext);
  auto b = ball(ext.total, 2);
  for (const auto& e1 : b.elems)
    for (const auto& e2 : b.elems) {
      KValue dev = chiH(e1).add(ext.kernel, chiH(e2))
                       .sub(ext.kernel, chiH(ext.total->multiply(e1, e2)));
      CHECK(dev.norm() == w(ext.pi(e1), ext.pi(e2)).norm());
    }
  auto d3 = defect_on_ball(chiH, 3);
  CHECK(d3.value == 9);
  CHECK(d3.value == sup_norm_on_ball(w, 3).value);

  CHECK_THROWS_AS(chi_from_cocycle(heisenberg_native_bundle()), input_error);
}

TEST_CASE("cocycle recovered from the kernel quasimap") {
  auto triv = registry_extension("trivial-Z-Z2");
  auto w0 = cocycle_from_chi(triv, chi_from_cocycle(triv));
  auto bb = ball(triv.base, 3);
  for (const auto& g : bb.elems)
    for (const auto& h : bb.elems) CHECK(w0(g, h).is_zero());

  // round trip on the Heisenberg product bundle: b = chi(sigma(g)) = 0
  auto ext = registry_extension("heisenberg-product");
  auto w1 = cocycle_from_chi(ext, chi_from_cocycle(ext));
  auto w = euler_cocycle(ext);
  auto b4 = ball(ext.base, 4);
  for (const auto& g : b4.elems)
    for (const auto& h : b4.elems) CHECK(w1(g, h) == w(g, h));

  // bounded noise on the section only moves the cocycle by its coboundary
  std::mt19937_64 rng(7);
  std::unordered_map<GroupValue, long long, GroupValueHash> noise;
  auto chi = chi_from_cocycle(triv);
  QuasiMap noisy = chi;
  noisy.defect_cache = std::make_shared<std::map<int, DefectResult>>();
  auto base = triv.base;
  auto noise_of = [&noise, &rng, base](const GroupValue& g) -> long long {
    if (base->is_identity(g)) return 0;
    auto it = noise.find(g);
    if (it == noise.end()) it = noise.emplace(g, (long long)(rng() % 5) - 2).first;
    return it->second;
  };
  noisy.rule = [chi, noise_of, &ext = triv](const GroupValue& e) {
    return chi(e).add(ext.kernel, KValue(KDesc(1), {noise_of(ext.pi(e))}));
  };
  auto wn = cocycle_from_chi(triv, noisy);
  CHECK(sup_norm_on_ball(wn, 4).value <= 8);  // 4B with noise bound B = 2

  QuasiMap doubled = chi;
  doubled.rule = [chi, K = triv.kernel](const GroupValue& e) {
    return chi(e).add(K, chi(e));
  };
  CHECK_THROWS_AS(cocycle_from_chi(triv, doubled), input_error);
}

TEST_CASE("cocycle of a set section") {
  auto triv = registry_extension("trivial-Z-Z2");
  auto w0 = cocycle_from_section(triv, triv.sigma);
  auto g = triv.base->generator(0), h = triv.base->generator(1);
  CHECK(w0(g, h).is_zero());

  // the native normal-form section reproduces the closed form
  auto nat = heisenberg_native_bundle();
  auto w = cocycle_from_section(nat, nat.sigma);
  auto closed = heisenberg_euler_cocycle(nat.base);
  auto b = ball(nat.base, 3);
  for (const auto& a : b.elems)
    for (const auto& c : b.elems) CHECK(w(a, c) == closed(a, c));

  // perturbing a splitting at one point supports the cocycle there
  auto g0 = triv.base->generator(0);
  auto pert = [&triv, g0](const GroupValue& gv) {
    KValue k = gv == g0 ? KValue(KDesc(1), {4}) : KValue::zero(KDesc(1));
    return twisted_pair(triv.total, k, gv);
  };
  auto wp = cocycle_from_section(triv, pert);
  CHECK(wp(g0, g0) == KValue(KDesc(1), {8}));  // both factors carry the bump
  CHECK(wp(h, h).is_zero());
  auto x2 = triv.base->multiply(g0, g0);
  CHECK(wp(g0, x2) == KValue(KDesc(1), {4}));
  CHECK(wp(h, g0) == KValue(KDesc(1), {4}));
  CHECK(wp(h, triv.base->multiply(h, h)).is_zero());

  auto bad = [&triv](const GroupValue&) { return triv.total->identity(); };
  CHECK_THROWS_AS(cocycle_from_section(triv, bad), input_error);
}

TEST_CASE("splitting the kernel along a summand") {
  // K = Z^2, L = first factor: the quotient map reads the second coordinate
  auto Z2 = Group::free_abelian(2, {"x", "y"});
  auto ext = trivial_extension(KDesc(2), Z2, {"u", "v"});
  auto chi = chi_from_cocycle(ext);
  auto [sub, quot] = decompose_bounded(ext, chi, {1, 0});
  CHECK(quot.target == KDesc(1));
  auto e = ext.iota(KValue(KDesc(2), {3, -7}));
  CHECK(sub(e) == KValue(KDesc(2), {3, -7}));
  CHECK(quot(e) == KValue(KDesc(1), {-7}));

  // K = Z, L = 2Z: quotient is the kernel coordinate mod 2
  auto hext = registry_extension("heisenberg-product");
  auto hchi = chi_from_cocycle(hext);
  auto [hsub, hquot] = decompose_bounded(hext, hchi, {2});
  CHECK(hquot.target == KDesc(0, {2}));
  CHECK(hquot(hext.iota(KValue(KDesc(1), {5}))) == KValue(KDesc(0, {2}), {}, {1}));
  CHECK(hquot(hext.iota(KValue(KDesc(1), {6}))).is_zero());
  // reducing the target cannot increase the defect
  CHECK(defect_on_ball(hquot, 2).value <= defect_on_ball(hchi, 2).value);

  CHECK_THROWS_AS(decompose_bounded(ext, chi, {1}), input_error);
  CHECK_THROWS_AS(decompose_bounded(ext, chi, {-1, 0}), input_error);
}

TEST_CASE("free cover of the line is an isomorphism of rows") {
  auto qce = registry_qce("line");
  // pi(N) meets ball(4) only in the identity
  for (const auto& w : ball(qce.top.base, 4).elems)
    if (qce.in_pi_n(w)) CHECK(qce.top.base->is_identity(w));
  auto rep = pullback_check(qce, 3);
  CHECK(rep.ok);
  CHECK(rep.section_data_ok);
  CHECK(rep.pairs_checked >= 49);
}

TEST_CASE("free cover of the split extension over the lattice") {
  auto qce = registry_qce("split");
  REQUIRE(qce.n_generators.size() == 1);
  // the commutator lifts with no kernel correction: N sits inside ker P
  CHECK(qce.n_generators[0].kpart.is_zero());
  CHECK(qce.bottom.total->is_identity(qce.p(qce.n_generators[0])));
  CHECK(pullback_check(qce, 3).ok);

  auto chi = chi_from_cocycle(qce.top);
  auto rqm = restricted_qm(qce, chi);  // also certifies N meets iota(K) trivially
  auto F = qce.top.base;
  auto comm = commutator(F, F->generator(0), F->generator(1));
  CHECK(rqm(comm).is_zero());
}

TEST_CASE("heisenberg quotient central extension") {
  auto qce = registry_qce("heisenberg");
  REQUIRE(qce.n_generators.size() == 1);
  // generator of N is z^-1 [x,y]
  CHECK(qce.n_generators[0].kpart == KValue(KDesc(1), {-1}));
  CHECK(qce.bottom.total->is_identity(qce.p(qce.n_generators[0])));

  auto rep = pullback_check(qce, 3);
  CHECK(rep.ok);
  CHECK(rep.section_data_ok);

  // the induced section covers the bottom section through p
  for (const auto& g : ball(qce.top.base, 3).elems) {
    auto s = induced_section(qce, g);
    CHECK(qce.top.pi(s) == g);
    CHECK(qce.p(s) == qce.bottom.sigma(qce.p_base(g)));
  }

  // its Euler cocycle pushes forward to the Heisenberg one
  auto closed = heisenberg_euler_cocycle(qce.bottom.base);
  auto E = qce.top.total;
  auto G = qce.top.base;
  for (const auto& g : ball(G, 2).elems)
    for (const auto& h : ball(G, 2).elems) {
      auto d = E->multiply(E->multiply(induced_section(qce, g), induced_section(qce, h)),
                           E->inverse(induced_section(qce, G->multiply(g, h))));
      CHECK(qce.top.base->is_identity(qce.top.pi(d)));
      CHECK(d.kpart == closed(qce.p_base(g), qce.p_base(h)));
    }
}

TEST_CASE("restriction of the kernel quasimap to pi(N)") {
  auto qce = registry_qce("heisenberg");
  auto chi = chi_from_cocycle(qce.top);
  auto rqm = restricted_qm(qce, chi);
  auto F = qce.top.base;
  auto comm = commutator(F, F->generator(0), F->generator(1));

  // value is minus the winding number read off the Heisenberg normal form
  CHECK(rqm(comm) == KValue(KDesc(1), {-1}));
  for (long long k = 1; k <= 8; ++k) {
    auto ck = F->power(comm, k);
    CHECK(winding(F, ck) == k);
    CHECK(rqm(ck) == KValue(KDesc(1), {-k}));
  }
  // oracle on every small element of pi(N)
  for (const auto& w : ball(F, 6).elems)
    if (qce.in_pi_n(w)) CHECK(rqm(w).free_part[0] == -winding(F, w));

  CHECK_THROWS_AS(rqm(F->generator(0)), input_error);

  // conjugation probe: chi is a homomorphism on the trivial top row, so the
  // probe vanishes, which settles the defect bound at every radius
  auto probe2 = conjugation_invariance_probe(rqm, F, qce.in_pi_n, 2);
  CHECK(probe2.value <= 2 * defect_on_ball(chi, 6).value);
  for (int r = 2; r <= 4; ++r)
    CHECK(conjugation_invariance_probe(rqm, F, qce.in_pi_n, r).value == 0);

  // a p that kills everything makes pi|N non-injective
  QCEBundle broken = qce;
  broken.p = [&qce](const GroupValue&) { return qce.bottom.total->identity(); };
  CHECK_THROWS_AS(restricted_qm(broken, chi), structural_error);
}

TEST_CASE("boundary identity on pi(N)") {
  auto split = registry_qce("split");
  auto chi0 = chi_from_cocycle(split.top);
  auto zero = euler_cocycle(split.top);
  auto rep0 = boundary_identity_check(split, chi0, zero, 4);
  CHECK(rep0.ok);
  CHECK(rep0.pairs_checked >= 9);

  auto qce = registry_qce("heisenberg");
  auto chi = chi_from_cocycle(qce.top);
  auto omega = euler_cocycle(qce.top);
  auto rep = boundary_identity_check(qce, chi, omega, 4);
  CHECK(rep.ok);
  CHECK(rep.pairs_checked >= 9);

  // a non-additive perturbation of chi breaks the identity with a witness
  QuasiMap pert = chi;
  pert.defect_cache = std::make_shared<std::map<int, DefectResult>>();
  pert.rule = [chi, K = chi.target](const GroupValue& e) {
    long long bump = e.parts[0].word.empty() ? 0 : 1;
    return chi(e).add(K, KValue(K, {bump}));
  };
  auto bad = boundary_identity_check(qce, pert, omega, 4);
  CHECK(!bad.ok);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.lhs != bad.rhs);
}

TEST_CASE("extendability slack grows on the heisenberg rows") {
  auto split = registry_qce("split");
  auto chi0 = chi_from_cocycle(split.top);
  QuasiMap zero;
  zero.domain = split.top.base;
  zero.target = KDesc(1);
  zero.rule = [](const GroupValue&) { return KValue::zero(KDesc(1)); };
  auto rep0 = extendability_probe(split, chi0, zero, 3);
  CHECK(rep0.mismatch == 0);
  CHECK(rep0.defect.value == 0);

  auto qce = registry_qce("heisenberg");
  auto chi = chi_from_cocycle(qce.top);
  auto F = qce.top.base;
  // any homomorphism to Z kills commutators, so the mismatch is at least 1
  // as soon as [x,y] enters the ball
  QuasiMap hom;
  hom.domain = F;
  hom.target = KDesc(1);
  hom.rule = [](const GroupValue& g) {
    long long s = 0;
    for (int c : g.word) s += (c > 0 ? 1 : -1);
    return KValue(KDesc(1), {s});
  };
  auto rep = extendability_probe(qce, chi, hom, 4);
  CHECK(rep.mismatch >= 1);
  CHECK(rep.defect.value == 0);
  auto comm = commutator(F, F->generator(0), F->generator(1));
  auto rqm = restricted_qm(qce, chi);
  CHECK(hom(F->power(comm, 2)).is_zero());
  CHECK(rqm(F->power(comm, 2)).norm() == 2);  // slack at least 2 by radius 8

  // a Brooks map records a nonzero defect alongside its mismatch
  auto phi = brooks(F, Word{{{0, 1}, {1, 1}}});
  auto repb = extendability_probe(qce, chi, phi, 4);
  CHECK(repb.defect.value == defect_on_ball(phi, 4).value);
  CHECK(repb.defect.value >= 1);
}

TEST_CASE("descending a quasimap through the quotient") {
  // N trivial: the descent is just transport along the isomorphism
  auto line = registry_qce("line");
  QuasiMap chi;
  chi.domain = line.top.total;
  chi.target = KDesc(1);
  chi.rule = [](const GroupValue& e) {
    long long s = 0;
    for (int c : e.parts[0].word) s += (c > 0 ? 1 : -1);
    return KValue(KDesc(1), {e.kpart.free_part[0] + 3 * s});
  };
  auto phi = descend_qm(chi, line, 4);
  for (const auto& eb : ball(line.bottom.total, 4).elems)
    CHECK(phi(eb) == chi(line.lift(eb)));

  // lattice modulo its diagonal: chi(a,b) = a - b descends to the identity
  auto Z2 = Group::free_abelian(2);
  auto Z = Group::free_abelian(1);
  QCEBundle diag;
  diag.top.total = Z2;
  diag.bottom.total = Z;
  diag.p = [Z](const GroupValue& v) { return Z->power(Z->generator(0), v.vec[0] - v.vec[1]); };
  diag.lift = [Z2](const GroupValue& c) { return Z2->power(Z2->generator(0), c.vec[0]); };
  QuasiMap dchi;
  dchi.domain = Z2;
  dchi.target = KDesc(1);
  dchi.rule = [](const GroupValue& v) { return KValue(KDesc(1), {v.vec[0] - v.vec[1]}); };
  auto down = descend_qm(dchi, diag, 8);
  for (long long c = -6; c <= 6; ++c)
    CHECK(down(Z->power(Z->generator(0), c)) == KValue(KDesc(1), {c}));

  QuasiMap bad;
  bad.domain = Z2;
  bad.target = KDesc(1);
  bad.rule = [](const GroupValue& v) { return KValue(KDesc(1), {v.vec[0]}); };
  CHECK_THROWS_AS(descend_qm(bad, diag, 8), input_error);
}

TEST_CASE("reflection triple in integer affine space") {
  auto rep = verify_triangle_remark();
  CHECK(rep.ok);
  CHECK(rep.checks.size() >= 14);
  for (const auto& line : rep.checks) CHECK(line.ok);
}

TEST_CASE("cocycle growth tables") {
  auto flat = boundedness_probe(registry_extension("trivial-Z-Z2"), {1, 2, 3, 4});
  CHECK(flat.classification == "flat");
  for (const auto& row : flat.rows) CHECK(row.value == 0);

  auto grow = boundedness_probe(registry_extension("heisenberg-product"),
                                {1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(grow.classification == "growing");
  for (const auto& row : grow.rows)
    CHECK(row.value == (long long)row.radius * row.radius);

  auto mod2 = boundedness_probe(registry_extension("heisenberg-mod2"), {1, 2, 3, 4});
  CHECK(mod2.classification == "flat");
  for (const auto& row : mod2.rows) CHECK(row.value <= 1);
}
