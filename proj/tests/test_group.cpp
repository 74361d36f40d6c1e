#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cext/group.hpp"

using namespace cext;

TEST_CASE("free reduction") {
  auto F2 = Group::free_group(2);
  auto w = F2->parse_word("a a^-1");
  CHECK(F2->is_identity(F2->evaluate_word(w)));
  auto g = F2->evaluate_word(F2->parse_word("a b b^-1 a b"));
  CHECK(g.str() == "a a b");
}

TEST_CASE("heisenberg commutator normal form") {
  auto H = Group::heisenberg();
  auto comm = H->evaluate_word(H->parse_word("x y x^-1 y^-1"));
  // convention yx = xy z^-1, so [x,y] = z = (0,0,1)
  CHECK(comm.vec == std::vector<long long>{0, 0, 1});

  // oracle: shuffle y^b x^a to x^a y^b z^{-ab} one swap at a time
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    long long a = (long long)(rng() % 7) - 3;
    long long b = (long long)(rng() % 7) - 3;
    auto x = H->generator(0), y = H->generator(1);
    auto lhs = H->multiply(H->power(y, b), H->power(x, a));
    CHECK(lhs.vec == std::vector<long long>{a, b, -a * b});
  }
}

TEST_CASE("heisenberg inverse and associativity on random triples") {
  auto H = Group::heisenberg();
  std::mt19937_64 rng(12345);
  auto rand_el = [&]() {
    GroupValue v = H->identity();
    for (int i = 0; i < 3; ++i) v.vec[i] = (long long)(rng() % 9) - 4;
    return v;
  };
  for (int t = 0; t < 200; ++t) {
    auto a = rand_el(), b = rand_el(), c = rand_el();
    CHECK(H->is_identity(H->multiply(a, H->inverse(a))));
    CHECK(H->multiply(H->multiply(a, b), c) == H->multiply(a, H->multiply(b, c)));
  }
}

TEST_CASE("ball sizes") {
  CHECK(ball(Group::free_group(2), 1).size() == 5);
  CHECK(ball(Group::free_group(2), 0).size() == 1);

  // oracle: lattice points with |a|+|b| <= 2
  auto Z2 = Group::free_abelian(2);
  int count = 0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      if (std::abs(a) + std::abs(b) <= 2) ++count;
  CHECK(count == 13);
  CHECK(ball(Z2, 2).size() == 13);

  CHECK(ball(Group::cyclic(3), 5).size() == 3);
}

TEST_CASE("ball ordering is deterministic and layered") {
  auto F2 = Group::free_group(2);
  auto b = ball(F2, 2);
  auto b2 = ball(F2, 2);
  for (size_t i = 0; i < b.size(); ++i) CHECK(b.elems[i] == b2.elems[i]);
  // layer monotone, first five fixed by expansion order a, a^-1, b, b^-1
  CHECK(b.elems[0].str() == "1");
  CHECK(b.elems[1].str() == "a");
  CHECK(b.elems[2].str() == "a^-1");
  CHECK(b.elems[3].str() == "b");
  CHECK(b.elems[4].str() == "b^-1");
  for (size_t i = 1; i < b.size(); ++i) CHECK(b.length[i - 1] <= b.length[i]);
}

TEST_CASE("ball nesting and one-step reachability") {
  for (auto g : {Group::heisenberg(), Group::free_abelian(2)}) {
    auto b3 = ball(g, 3);
    auto b4 = ball(g, 4);
    for (const auto& e : b3.elems) CHECK(b4.index_of(e).has_value());
    // every element of ball(4) is one generator away from ball(3)
    for (size_t i = 0; i < b4.size(); ++i) {
      if (b4.length[i] <= 3) continue;
      bool near = false;
      for (int gi = 0; gi < g->generator_count() && !near; ++gi)
        for (int sign : {1, -1}) {
          auto n = g->multiply(b4.elems[i], g->generator(gi, sign));
          if (b3.index_of(n)) { near = true; break; }
        }
      CHECK(near);
    }
  }
}

TEST_CASE("ball cap raises resource error") {
  CHECK_THROWS_AS(ball(Group::free_group(2), 10, 100), resource_error);
}

TEST_CASE("word length") {
  auto H = Group::heisenberg();
  CHECK(word_length(H->identity()) == 0);
  GroupValue z = H->identity();
  z.vec = {0, 0, 1};
  CHECK(word_length(z) == 4);  // z is the commutator
  // oracle: z appears in ball(4) but not ball(3)
  CHECK(ball(H, 4).index_of(z).has_value());
  CHECK(!ball(H, 3).index_of(z).has_value());

  auto Z2 = Group::free_abelian(2);
  GroupValue v = Z2->identity();
  v.vec = {3, -2};
  CHECK(word_length(v) == 5);
}

TEST_CASE("evaluate of concatenation equals product of evaluations") {
  for (auto g : {Group::free_group(2), Group::heisenberg(), Group::free_abelian(2)}) {
    auto b = ball(g, 3);
    // words recoverable from BFS: check on generator words instead
    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
      Word w1, w2;
      for (int i = 0; i < 4; ++i) {
        w1.letters.push_back({(int)(rng() % g->generator_count()), rng() % 2 ? 1 : -1});
        w2.letters.push_back({(int)(rng() % g->generator_count()), rng() % 2 ? 1 : -1});
      }
      Word cat = w1;
      cat.letters.insert(cat.letters.end(), w2.letters.begin(), w2.letters.end());
      CHECK(g->evaluate_word(cat) ==
            g->multiply(g->evaluate_word(w1), g->evaluate_word(w2)));
    }
  }
}

TEST_CASE("affine maps compose to identity") {
  AffineMapZ3 a;  // coordinate swap (x,y,z) -> (y,x,z)
  a.mat = {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
  auto t = AffineMapZ3::translation(1, 2, -3);
  for (const auto& m : {a, t, a.compose(t), t.compose(a)})
    CHECK(m.compose(m.inverse()) == AffineMapZ3::identity());
}

TEST_CASE("invalid generator index is an input error") {
  auto F2 = Group::free_group(2);
  Word w;
  w.letters.push_back({5, 1});
  CHECK_THROWS_AS(F2->evaluate_word(w), input_error);
  CHECK_THROWS_AS(F2->parse_word("q"), input_error);
}

TEST_CASE("direct product arithmetic") {
  auto G = Group::direct_product({Group::cyclic(3), Group::free_abelian(1)});
  CHECK(G->generator_count() == 2);
  auto g = G->multiply(G->generator(0), G->generator(1));
  CHECK(G->power(g, 3).parts[0].vec[0] == 0);
  CHECK(G->power(g, 3).parts[1].vec[0] == 3);
}
