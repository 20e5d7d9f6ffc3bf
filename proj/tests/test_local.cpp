#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "wittlift/local.hpp"

using namespace wittlift;

namespace {

ModelPtr model4() { return std::make_shared<LocalModel>(3, 4); }
ModelPtr model2() { return std::make_shared<LocalModel>(3, 2); }

KummerClass kc(ModelPtr m, uint32_t level, std::vector<int64_t> c) {
  return KummerClass::make(std::move(m), level, std::move(c));
}

// random level-1 pair with x1 cup x2 = 0, adjusting one coordinate of x2
// along a unit entry of the pairing row of x1
std::pair<KummerClass, KummerClass> random_orthogonal_pair(ModelPtr m,
                                                           std::mt19937& rng) {
  uint32_t p = m->p, d = m->d;
  std::vector<int64_t> a(d), b(d);
  for (auto& v : a) v = int64_t(rng() % p);
  for (auto& v : b) v = int64_t(rng() % p);
  auto x1 = kc(m, 1, a);
  auto x2 = kc(m, 1, b);
  uint32_t c = cup(x1, x2).value;
  if (c == 0) return {x1, x2};
  for (uint32_t j = 0; j < d; ++j) {
    int64_t row = 0;
    for (uint32_t i = 0; i < d; ++i) row += int64_t(a[i]) * m->gram(i, j);
    row = ((row % p) + p) % p;
    if (row == 0) continue;
    uint32_t inv = 1;
    for (uint32_t k = 1; k < p; ++k)
      if (k * row % p == 1) { inv = k; break; }
    b[j] -= int64_t(c) * inv % p;
    auto fixed = kc(m, 1, b);
    REQUIRE(cup(x1, fixed).value == 0);
    return {x1, fixed};
  }
  // x1 = 0: anything is orthogonal
  return {x1, x2};
}

}  // namespace

TEST_CASE("model constructor preconditions") {
  CHECK_THROWS_AS(LocalModel(2, 2), PreconditionViolated);
  CHECK_THROWS_AS(LocalModel(4, 4), PreconditionViolated);
  CHECK_THROWS_AS(LocalModel(9, 4), PreconditionViolated);
  CHECK_THROWS_AS(LocalModel(3, 3), PreconditionViolated);
  CHECK_THROWS_AS(LocalModel(3, 0), PreconditionViolated);
  CHECK_THROWS_AS(LocalModel(3, 2, 1), PreconditionViolated);
  CHECK_NOTHROW(LocalModel(5, 6, 3));
}

TEST_CASE("the Gram matrix is block-hyperbolic and alternating") {
  auto m = model4();
  CHECK(m->gram(0, 1) == 1);
  CHECK(m->gram(1, 0) == -1);
  CHECK(m->gram(2, 3) == 1);
  CHECK(m->gram(0, 2) == 0);
  CHECK(m->gram(1, 3) == 0);
  for (uint32_t i = 0; i < 4; ++i) {
    CHECK(m->gram(i, i) == 0);
    for (uint32_t j = 0; j < 4; ++j) CHECK(m->gram(i, j) == -m->gram(j, i));
  }
  CHECK(m->modulus(1) == 3);
  CHECK(m->modulus(2) == 9);
}

TEST_CASE("Kummer class arithmetic") {
  auto m = model4();
  auto x = kc(m, 1, {-1, 4, 0, 2});
  CHECK(x.coords == std::vector<uint32_t>({2, 1, 0, 2}));
  CHECK_FALSE(x.is_zero());
  CHECK(KummerClass::zero(m, 2).is_zero());
  CHECK((x - x).is_zero());
  auto y = kc(m, 1, {1, 1, 1, 1});
  CHECK((x + y).coords == std::vector<uint32_t>({0, 2, 1, 0}));
  CHECK_THROWS_AS(x + kc(m, 2, {1, 0, 0, 0}), PreconditionViolated);
  CHECK_THROWS_AS(kc(m, 3, {0, 0, 0, 0}), PreconditionViolated);
  CHECK_THROWS_AS(kc(m, 1, {0, 0}), PreconditionViolated);
  CHECK_THROWS_AS(x + kc(model2(), 1, {0, 0}), PreconditionViolated);
}

TEST_CASE("cup product examples") {
  auto m = model4();
  CHECK(cup(kc(m, 1, {1, 0, 0, 0}), kc(m, 1, {0, 1, 0, 0})).value == 1);
  CHECK(cup(kc(m, 1, {0, 1, 0, 0}), kc(m, 1, {1, 0, 0, 0})).value == 2);
  CHECK(cup(kc(m, 1, {1, 0, 0, 0}), kc(m, 1, {0, 0, 1, 0})).value == 0);
  CHECK(cup(kc(m, 2, {1, 0, 0, 0}), kc(m, 2, {0, 3, 0, 1})).value == 3);
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<int64_t> c(4);
    for (auto& v : c) v = int64_t(rng() % 9);
    auto x = kc(m, 2, c);
    CHECK(cup(x, x).value == 0);  // alternating
  }
  CHECK_THROWS_AS(cup(kc(m, 1, {1, 0, 0, 0}), kc(m, 2, {1, 0, 0, 0})),
                  PreconditionViolated);
}

TEST_CASE("the Bockstein exact sequence maps") {
  auto m = model4();
  // H^2: pi o i = 0, i o pi = multiplication by p, i injective on Z/p
  for (uint32_t t = 0; t < 3; ++t) {
    H2Class a{m, 1, t};
    auto ia = bockstein_i(a);
    CHECK(ia.level == 2);
    CHECK(ia.value == 3 * t);
    CHECK(bockstein_pi(ia).value == 0);
  }
  for (uint32_t c = 0; c < 9; ++c) {
    H2Class a{m, 2, c};
    CHECK(bockstein_i(bockstein_pi(a)).value == 3 * c % 9);
  }
  CHECK(bockstein_i(H2Class{m, 1, 1}).value == 3);  // i(1) != 0
  // H^1 versions
  auto x = kc(m, 1, {1, 2, 0, 1});
  auto ix = bockstein_i(x);
  CHECK(ix.level == 2);
  CHECK(ix.coords == std::vector<uint32_t>({3, 6, 0, 3}));
  CHECK(bockstein_pi(ix).is_zero());
  auto y = kc(m, 2, {4, 7, 3, 8});
  CHECK(bockstein_pi(y).coords == std::vector<uint32_t>({1, 1, 0, 2}));
  CHECK_THROWS_AS(bockstein_i(ix), PreconditionViolated);
  CHECK_THROWS_AS(bockstein_pi(x), PreconditionViolated);
}

TEST_CASE("solving for the auxiliary classes") {
  auto m = model4();
  auto y1 = kc(m, 2, {1, 0, 0, 0});
  auto y2 = kc(m, 2, {0, 3, 0, 1});
  auto [z1, z2] = solve_property_d(y1, y2);
  CHECK(z2.is_zero());  // preferred side when x1 != 0
  CHECK(z1.coords == std::vector<uint32_t>({0, 1, 0, 0}));
  auto lhs = bockstein_i(
      H2Class{m, 1,
              uint32_t((cup(bockstein_pi(y1), z1).value +
                        cup(bockstein_pi(y2), z2).value) %
                       3)});
  CHECK(lhs == cup(y1, y2));

  // x1 = 0 forces the correction onto the other side
  auto w1 = kc(m, 2, {3, 0, 0, 0});
  auto w2 = kc(m, 2, {0, 1, 0, 0});
  auto [u1, u2] = solve_property_d(w1, w2);
  CHECK(u1.is_zero());
  auto lhs2 = bockstein_i(
      H2Class{m, 1,
              uint32_t((cup(bockstein_pi(w1), u1).value +
                        cup(bockstein_pi(w2), u2).value) %
                       3)});
  CHECK(lhs2 == cup(w1, w2));

  CHECK_THROWS_AS(solve_property_d(kc(m, 2, {1, 0, 0, 0}),
                                   kc(m, 2, {0, 1, 0, 0})),
                  PreconditionViolated);  // reductions not orthogonal
  CHECK_THROWS_AS(solve_property_d(kc(m, 2, {3, 0, 0, 0}),
                                   kc(m, 2, {0, 3, 0, 0})),
                  PreconditionViolated);  // both reductions vanish
  CHECK_THROWS_AS(solve_property_d(kc(m, 1, {1, 0, 0, 0}),
                                   kc(m, 1, {0, 0, 1, 0})),
                  PreconditionViolated);  // wrong level
}

TEST_CASE("random solve instances satisfy the displayed identity") {
  auto m = model4();
  std::mt19937 rng(424243);
  int solved = 0;
  while (solved < 500) {
    std::vector<int64_t> a(4), b(4);
    for (auto& v : a) v = int64_t(rng() % 9);
    for (auto& v : b) v = int64_t(rng() % 9);
    auto y1 = kc(m, 2, a);
    auto y2 = kc(m, 2, b);
    auto x1 = bockstein_pi(y1);
    auto x2 = bockstein_pi(y2);
    if (cup(x1, x2).value != 0 || (x1.is_zero() && x2.is_zero())) continue;
    auto [z1, z2] = solve_property_d(y1, y2);
    auto lhs = bockstein_i(H2Class{
        m, 1,
        uint32_t((cup(x1, z1).value + cup(x2, z2).value) % 3)});
    CHECK(lhs == cup(y1, y2));
    ++solved;
  }
}

TEST_CASE("orthogonal pair lifting at d=2, exhaustively") {
  auto m = model2();
  for (uint32_t code = 0; code < 81; ++code) {
    std::vector<int64_t> a = {code % 3, code / 3 % 3};
    std::vector<int64_t> b = {code / 9 % 3, code / 27 % 3};
    auto x1 = kc(m, 1, a);
    auto x2 = kc(m, 1, b);
    if (cup(x1, x2).value != 0) {
      CHECK_THROWS_AS(lift_orthogonal_pair(x1, x2), NotOrthogonal);
      continue;
    }
    auto [t1, t2] = lift_orthogonal_pair(x1, x2);
    CHECK(t1.level == 2);
    CHECK(t2.level == 2);
    CHECK(cup(t1, t2).value == 0);
    CHECK(bockstein_pi(t1) == x1);
    CHECK(bockstein_pi(t2) == x2);
  }
  auto [z1, z2] = lift_orthogonal_pair(KummerClass::zero(m, 1),
                                       KummerClass::zero(m, 1));
  CHECK(z1.is_zero());
  CHECK(z2.is_zero());
}

TEST_CASE("orthogonal pair lifting at d=4, randomized") {
  auto m = model4();
  std::mt19937 rng(515253);
  for (int t = 0; t < 1000; ++t) {
    auto [x1, x2] = random_orthogonal_pair(m, rng);
    auto [t1, t2] = lift_orthogonal_pair(x1, x2);
    CHECK(cup(t1, t2).value == 0);
    CHECK(bockstein_pi(t1) == x1);
    CHECK(bockstein_pi(t2) == x2);
  }
}

TEST_CASE("deformation identities") {
  auto m = model4();
  std::mt19937 rng(20260824);
  for (int t = 0; t < 2000; ++t) {
    std::vector<int64_t> a(4), b(4), c(4), e(4);
    for (auto& v : a) v = int64_t(rng() % 9);
    for (auto& v : b) v = int64_t(rng() % 9);
    for (auto& v : c) v = int64_t(rng() % 3);
    for (auto& v : e) v = int64_t(rng() % 3);
    auto y1 = kc(m, 2, a);
    auto y2 = kc(m, 2, b);
    auto z1 = kc(m, 1, c);
    auto z2 = kc(m, 1, e);
    // projection: y cup i(z) = i(pi(y) cup z)
    CHECK(cup(y1, bockstein_i(z1)) ==
          bockstein_i(cup(bockstein_pi(y1), z1)));
    // p squared: i(z1) cup i(z2) = 0
    CHECK(cup(bockstein_i(z1), bockstein_i(z2)).value == 0);
    // pi is multiplicative on cup products
    CHECK(bockstein_pi(cup(y1, y2)) ==
          cup(bockstein_pi(y1), bockstein_pi(y2)));
  }
}

TEST_CASE("tame model constructor") {
  CHECK_NOTHROW(TameModel(3, 7));
  CHECK_NOTHROW(TameModel(3, 13));
  CHECK_THROWS_AS(TameModel(3, 5), PreconditionViolated);   // q != 1 mod p
  CHECK_THROWS_AS(TameModel(3, 19), PreconditionViolated);  // q = 1 mod p^2
}

TEST_CASE("tame symbol values") {
  TameModel m(3, 7);
  // uniformizer against itself: the sign character is trivial here
  CHECK(tame_symbol(m, {1, 0}, {1, 0}) == 0);
  // uniformizer against the unit direction: a perfect pairing
  CHECK(tame_symbol(m, {1, 0}, {0, 1}) == 1);
  CHECK(tame_symbol(m, {0, 1}, {1, 0}) == 2);
  CHECK(tame_symbol(m, {0, 1}, {0, 1}) == 0);
  // alternating on everything
  for (uint32_t v = 0; v < 3; ++v)
    for (uint32_t u = 0; u < 3; ++u)
      CHECK(tame_symbol(m, {v, u}, {v, u}) == 0);
}

TEST_CASE("tame symbol is bilinear and antisymmetric") {
  TameModel m(3, 7);
  auto all = [] {
    std::vector<TameClass> v;
    for (uint32_t a = 0; a < 3; ++a)
      for (uint32_t b = 0; b < 3; ++b) v.push_back({a, b});
    return v;
  }();
  for (const auto& a : all)
    for (const auto& b : all) {
      CHECK((tame_symbol(m, a, b) + tame_symbol(m, b, a)) % 3 == 0);
      for (const auto& c : all) {
        TameClass ab{(a.v + b.v) % 3, (a.u + b.u) % 3};
        CHECK(tame_symbol(m, ab, c) ==
              (tame_symbol(m, a, c) + tame_symbol(m, b, c)) % 3);
        TameClass bc{(b.v + c.v) % 3, (b.u + c.u) % 3};
        CHECK(tame_symbol(m, a, bc) ==
              (tame_symbol(m, a, b) + tame_symbol(m, a, c)) % 3);
      }
    }
}

TEST_CASE("Steinberg-type relations in the tame model") {
  TameModel m(3, 7);
  auto k = FqField::make(7, 1);
  Elem g = k->multiplicative_generator();
  auto dlog = [&](const Elem& x) {
    Elem acc = k->one();
    for (uint32_t e = 0; e < 6; ++e) {
      if (acc == x) return e;
      acc = k->mul(acc, g);
    }
    REQUIRE(false);
    return 0u;
  };
  // {w, 1-w} = 0 for every unit w != 1 with 1-w a unit
  for (uint64_t w = 2; w < 7; ++w) {
    TameClass cw{0, dlog(k->from_int(w)) % 3};
    TameClass cw1{0, dlog(k->from_int(8 - w)) % 3};  // 1 - w mod 7
    CHECK(tame_symbol(m, cw, cw1) == 0);
  }
  // {a, -a} = 0 for every class a
  uint32_t dm1 = dlog(k->neg(k->one())) % 3;
  for (uint32_t v = 0; v < 3; ++v)
    for (uint32_t u = 0; u < 3; ++u) {
      TameClass a{v, u};
      TameClass neg_a{v, (u + dm1) % 3};
      CHECK(tame_symbol(m, a, neg_a) == 0);
    }
}

TEST_CASE("the tame d-map") {
  TameModel m(3, 7);
  CHECK(tame_d_map(m, {1, 0}) == 1);  // normalization
  CHECK(tame_d_map(m, {2, 2}) == 2);
  std::set<uint32_t> image;
  uint32_t kernel = 0;
  for (uint32_t v = 0; v < 3; ++v)
    for (uint32_t u = 0; u < 3; ++u) {
      uint32_t d = tame_d_map(m, {v, u});
      image.insert(d);
      if (d == 0) ++kernel;
    }
  CHECK(image.size() == 3);  // surjective
  CHECK(kernel == 3);        // the unit-direction line
}

TEST_CASE("Heisenberg build examples") {
  auto m = model4();
  auto r = heisenberg_build(m, kc(m, 1, {1, 0, 0, 0}), kc(m, 1, {0, 0, 1, 0}),
                            KummerClass::zero(m, 1));
  std::string err;
  CHECK(r.valid(&err));
  CHECK(r.level == 1);
  REQUIRE(r.images.size() == 4);
  auto z3 = ZmodRing::make(3, 1);
  CHECK(r.images[0].at(0, 1) == z3->one());
  CHECK(r.images[0].at(1, 2) == z3->zero());
  CHECK(r.images[2].at(1, 2) == z3->one());
  CHECK(r.images[1].is_identity());
  CHECK(r.images[3].is_identity());
  CHECK(r.x1() == kc(m, 1, {1, 0, 0, 0}));
  CHECK(r.x2() == kc(m, 1, {0, 0, 1, 0}));
  CHECK(r.corner().is_zero());

  // cup obstruction: e1 cup e2 = 1 != 0
  CHECK_THROWS_AS(heisenberg_build(m, kc(m, 1, {1, 0, 0, 0}),
                                   kc(m, 1, {0, 1, 0, 0}),
                                   KummerClass::zero(m, 1)),
                  CupObstruction);

  // degenerate abelian case: x2 = 0
  auto ab = heisenberg_build(m, kc(m, 1, {1, 2, 0, 1}),
                             KummerClass::zero(m, 1), kc(m, 1, {0, 1, 0, 0}));
  CHECK(ab.valid(&err));
  auto lifted = heisenberg_lift(ab);
  CHECK(lifted.valid(&err));
}

TEST_CASE("Heisenberg lifting, randomized") {
  auto m = model4();
  std::mt19937 rng(515253);
  for (int t = 0; t < 100; ++t) {
    auto [x1, x2] = random_orthogonal_pair(m, rng);
    std::vector<int64_t> tw(4);
    for (auto& v : tw) v = int64_t(rng() % 3);
    auto rhobar = heisenberg_build(m, x1, x2, kc(m, 1, tw));
    std::string err;
    REQUIRE(rhobar.valid(&err));
    auto lift = heisenberg_lift(rhobar);
    CHECK(lift.level == 2);
    CHECK(lift.valid(&err));
    CHECK(err.empty());
    // exact reduction to the input
    auto red = lift.reduced();
    REQUIRE(red.images.size() == rhobar.images.size());
    for (size_t i = 0; i < red.images.size(); ++i)
      CHECK(red.images[i] == rhobar.images[i]);
  }
}

TEST_CASE("the twist fiber at d=2 has p^d elements") {
  auto m = model2();
  auto x1 = kc(m, 1, {1, 0});
  auto x2 = kc(m, 1, {2, 0});
  REQUIRE(cup(x1, x2).value == 0);
  std::set<std::string> distinct;
  for (int64_t t0 = 0; t0 < 3; ++t0)
    for (int64_t t1 = 0; t1 < 3; ++t1) {
      auto r = heisenberg_build(m, x1, x2, kc(m, 1, {t0, t1}));
      std::string err;
      CHECK(r.valid(&err));
      CHECK(r.x1() == x1);
      CHECK(r.x2() == x2);
      distinct.insert(r.to_json().dump());
      auto lift = heisenberg_lift(r);
      CHECK(lift.valid(&err));
      auto red = lift.reduced();
      for (size_t i = 0; i < red.images.size(); ++i)
        CHECK(red.images[i] == r.images[i]);
    }
  CHECK(distinct.size() == 9);
}

TEST_CASE("two-dimensional unipotent lifts") {
  auto m = model2();
  for (int64_t a = 0; a < 3; ++a)
    for (int64_t b = 0; b < 3; ++b) {
      auto x = kc(m, 1, {a, b});
      auto [level1, level2] = lift_unipotent2(m, x);
      REQUIRE(level1.size() == 2);
      REQUIRE(level2.size() == 2);
      for (uint32_t i = 0; i < 2; ++i) {
        CHECK(level1[i].n() == 2);
        CHECK(level1[i].at(0, 1)[0] == x.coords[i]);
        CHECK(reduce_mod_p(level2[i]) == level1[i]);
      }
    }
  CHECK_THROWS_AS(lift_unipotent2(m, kc(m, 2, {0, 0})), PreconditionViolated);
}
