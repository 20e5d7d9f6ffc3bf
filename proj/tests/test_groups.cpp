#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "wittlift/catalog.hpp"
#include "wittlift/group.hpp"
#include "wittlift/rep.hpp"

using namespace wittlift;

TEST_CASE("factory groups verify and have the expected orders") {
  struct Row {
    GroupPtr g;
    uint32_t order;
    bool abelian;
  };
  const Row rows[] = {
      {FiniteGroup::trivial(), 1, true},
      {FiniteGroup::cyclic(12), 12, true},
      {FiniteGroup::symmetric3(), 6, false},
      {FiniteGroup::dihedral4(), 8, false},
      {FiniteGroup::quaternion8(), 8, false},
      {FiniteGroup::heisenberg27(), 27, false},
      {FiniteGroup::sl2(3), 24, false},
      {FiniteGroup::sl2(5), 120, false},
  };
  for (const auto& r : rows) {
    CAPTURE(r.g->name());
    std::string err;
    CHECK(r.g->verify(&err));
    CHECK(err.empty());
    CHECK(r.g->order() == r.order);
    CHECK(r.g->is_abelian() == r.abelian);
  }
}

TEST_CASE("element orders and p-group predicates") {
  auto q8 = FiniteGroup::quaternion8();
  auto orders = q8->element_orders();
  CHECK(std::count(orders.begin(), orders.end(), 2u) == 1);  // only -1
  CHECK(std::count(orders.begin(), orders.end(), 4u) == 6);
  CHECK(q8->is_p_group(2));
  CHECK_FALSE(q8->is_p_group(3));

  auto h27 = FiniteGroup::heisenberg27();
  for (uint32_t g = 0; g < 27; ++g)
    CHECK(h27->order_of(g) <= 3);  // exponent 3

  auto z12 = FiniteGroup::cyclic(12);
  CHECK(z12->order_of(1) == 12);
  CHECK_FALSE(z12->is_p_group(2));
}

TEST_CASE("direct products carry combined generators and relators") {
  auto g = FiniteGroup::direct_product(FiniteGroup::cyclic(4),
                                       FiniteGroup::cyclic(2));
  CHECK(g->order() == 8);
  CHECK(g->name() == "Z/4xZ/2");
  CHECK(g->generators().size() == 2);
  CHECK(g->is_abelian());
  // relators: a^4, b^2, [a,b]
  CHECK(g->relators().size() == 3);
  for (const auto& r : g->relators()) CHECK(g->eval_word(r) == g->identity());
}

TEST_CASE("element words reach every element") {
  for (const auto& g :
       {FiniteGroup::symmetric3(), FiniteGroup::quaternion8(),
        FiniteGroup::sl2(3)}) {
    const auto& words = g->element_words();
    for (uint32_t x = 0; x < g->order(); ++x) CHECK(g->eval_word(words[x]) == x);
    CHECK(words[g->identity()].empty());
  }
}

TEST_CASE("inverses and word evaluation") {
  auto s3 = FiniteGroup::symmetric3();
  for (uint32_t x = 0; x < 6; ++x) {
    CHECK(s3->mul(x, s3->inverse(x)) == s3->identity());
    CHECK(s3->mul(s3->inverse(x), x) == s3->identity());
  }
  // a^3 = e, b^2 = e for the chosen generators
  CHECK(s3->eval_word({0, 0, 0}) == s3->identity());
  CHECK(s3->eval_word({1, 1}) == s3->identity());
  CHECK(s3->eval_word({0, -1}) == s3->identity());
}

TEST_CASE("sylow subgroups have the right order and are p-groups") {
  struct Row {
    GroupPtr g;
    uint32_t p, size;
  };
  const Row rows[] = {
      {FiniteGroup::symmetric3(), 2, 2},  {FiniteGroup::symmetric3(), 3, 3},
      {FiniteGroup::sl2(3), 2, 8},        {FiniteGroup::sl2(3), 3, 3},
      {FiniteGroup::cyclic(12), 2, 4},    {FiniteGroup::cyclic(12), 3, 3},
      {FiniteGroup::quaternion8(), 2, 8},
  };
  for (const auto& r : rows) {
    CAPTURE(r.g->name());
    auto s = r.g->sylow_subgroup(r.p);
    CHECK(s.size() == r.size);
    CHECK(r.g->is_subgroup(s));
  }
}

TEST_CASE("subgroup_of rejects non-closed element lists") {
  auto s3 = FiniteGroup::symmetric3();
  auto syl2 = s3->sylow_subgroup(2);
  auto h = subgroup_of(s3, syl2);
  CHECK(h.group->order() == 2);
  std::vector<uint32_t> bad;
  for (uint32_t x = 0; x < 6; ++x)
    if (s3->order_of(x) == 3) bad.push_back(x);  // the two 3-cycles, no id
  CHECK_THROWS_AS(subgroup_of(s3, bad), GroupError);
}

TEST_CASE("subgroup closure") {
  auto q8 = FiniteGroup::quaternion8();
  auto all = q8->subgroup_closure({q8->generators()[0], q8->generators()[1]});
  CHECK(all.size() == 8);
  auto center = q8->subgroup_closure({1});  // -1
  CHECK(center.size() == 2);
}

TEST_CASE("group JSON round trip") {
  for (const auto& g : {FiniteGroup::symmetric3(), FiniteGroup::quaternion8(),
                        FiniteGroup::cyclic(9)}) {
    auto back = FiniteGroup::from_json(g->to_json());
    CHECK(back->order() == g->order());
    CHECK(back->name() == g->name());
    CHECK(back->generators() == g->generators());
    CHECK(back->relators().size() == g->relators().size());
    for (uint32_t a = 0; a < g->order(); ++a)
      for (uint32_t b = 0; b < g->order(); ++b)
        CHECK(back->mul(a, b) == g->mul(a, b));
  }
}

TEST_CASE("catalog enumerates all abelian groups to order 16") {
  auto cat = group_catalog(16);
  // 25 abelian types up to order 16 (including the trivial group) plus
  // S3, D4, Q8
  CHECK(cat.size() == 28);
  uint32_t abelian = 0;
  std::set<std::string> names;
  for (const auto& e : cat) {
    CHECK(names.insert(e.group->name()).second);
    if (!e.abelian_type.empty()) {
      ++abelian;
      uint32_t prod = 1;
      for (uint32_t q : e.abelian_type) prod *= q;
      CHECK(prod == e.group->order());
      CHECK(e.group->is_abelian());
    }
  }
  CHECK(abelian == 24);
  CHECK(names.count("S3") == 1);
  CHECK(names.count("D4") == 1);
  CHECK(names.count("Q8") == 1);
  // sorted by (order, name)
  for (size_t i = 1; i < cat.size(); ++i) {
    bool ordered =
        cat[i - 1].group->order() < cat[i].group->order() ||
        (cat[i - 1].group->order() == cat[i].group->order() &&
         cat[i - 1].group->name() < cat[i].group->name());
    CHECK(ordered);
  }
}

TEST_CASE("catalog modules realize a single Jordan block") {
  auto cat = group_catalog(64);
  std::set<std::string> with_module;
  for (const auto& e : cat) {
    if (!e.jordan_module) continue;
    with_module.insert(e.group->name());
    CHECK(e.jordan_module->satisfies_relators());
    CHECK(acts_as_single_jordan_block(
        e.jordan_module->image(e.jordan_element)));
  }
  CHECK(with_module.count("Z/2xZ/2") == 1);
  CHECK(with_module.count("Z/3xZ/3") == 1);
  CHECK(with_module.count("D4") == 1);
  CHECK(with_module.count("Q8") == 1);
  CHECK(with_module.count("H27") == 1);
  // named non-abelian entries in range appear; SL2(F5) never fits
  std::set<std::string> names;
  for (const auto& e : cat) names.insert(e.group->name());
  CHECK(names.count("SL2(F3)") == 1);
  CHECK(names.count("H27") == 1);
  CHECK(names.count("SL2(F5)") == 0);
  CHECK_THROWS_AS(group_catalog(120), GroupError);
}

TEST_CASE("single-Jordan-block predicate") {
  auto f3 = FqField::make(3, 1);
  CHECK(acts_as_single_jordan_block(unipotent_jordan_block(f3, 4)));
  CHECK_FALSE(acts_as_single_jordan_block(Mat::identity(f3, 3)));
  Mat two_blocks = Mat::identity(f3, 4);
  two_blocks.set(0, 1, f3->one());
  two_blocks.set(2, 3, f3->one());
  CHECK_FALSE(acts_as_single_jordan_block(two_blocks));
}

TEST_CASE("representations expand to homomorphisms") {
  auto f5 = FqField::make(5, 1);
  auto rep = jordan_block_rep(5, 1, f5);
  CHECK(rep.dim() == 2);
  CHECK(rep.group()->order() == 5);
  std::string err;
  CHECK(rep.verify_homomorphism(&err));
  CHECK(rep.satisfies_relators());
  CHECK(rep.image(rep.group()->identity()).is_identity());

  auto nat3 = sl2_natural_rep(3);
  CHECK(nat3.verify_homomorphism(&err));
  auto nat5 = sl2_natural_rep(5);
  CHECK(nat5.verify_homomorphism(&err));
}

TEST_CASE("two_powers_rep is a faithful-looking homomorphism") {
  auto rep = two_powers_rep(2, 1);
  CHECK(rep.dim() == 4);
  CHECK(rep.group()->name() == "Z/4xZ/2");
  CHECK(rep.satisfies_relators());
  std::string err;
  CHECK(rep.verify_homomorphism(&err));
  CHECK(acts_as_single_jordan_block(rep.generator_images()[0]));
}

TEST_CASE("induction and restriction") {
  auto s3 = FiniteGroup::symmetric3();
  auto h = subgroup_of(s3, s3->sylow_subgroup(3));
  auto f3 = FqField::make(3, 1);
  // the faithful Jordan rep of Z/3
  Representation rho(h.group, f3, 2, {unipotent_jordan_block(f3, 2)});
  auto ind = induce_rep(s3, h, rho);
  CHECK(ind.dim() == 4);  // index 2 times dim 2
  std::string err;
  CHECK(ind.verify_homomorphism(&err));
  // restriction of the induced rep back to H contains rho as the first block
  auto res = restrict_rep(ind, h);
  CHECK(res.verify_homomorphism(&err));
  Mat idem = induction_summand_idempotent(ind, 2);
  for (uint32_t i = 0; i < h.group->order(); ++i)
    CHECK(idem * res.image(i) * idem == res.image(i) * idem * idem);

  // restriction is pointwise evaluation
  auto s2 = subgroup_of(s3, s3->sylow_subgroup(2));
  auto f2 = FqField::make(2, 1);
  Mat swap(f2, 2);
  swap.set(0, 1, f2->one());
  swap.set(1, 0, f2->one());
  Mat rot(f2, 2);
  rot.set(0, 1, f2->one());
  rot.set(1, 0, f2->one());
  rot.set(1, 1, f2->one());
  Representation nat(s3, f2, 2, {rot, swap});
  CHECK(nat.satisfies_relators());
  CHECK(nat.verify_homomorphism(&err));
  auto natres = restrict_rep(nat, s2);
  for (uint32_t i = 0; i < s2.group->order(); ++i)
    CHECK(natres.image(i) == nat.image(s2.elems[i]));
}

TEST_CASE("conjugate_to finds intertwiners at desk scale") {
  auto f2 = FqField::make(2, 1);
  auto z2 = FiniteGroup::cyclic(2);
  Representation a(z2, f2, 2, {unipotent_jordan_block(f2, 2)});
  Mat lower(f2, 2);
  lower.set(0, 0, f2->one());
  lower.set(1, 1, f2->one());
  lower.set(1, 0, f2->one());
  Representation b(z2, f2, 2, {lower});
  CHECK(a.conjugate_to(b));
  Representation c(z2, f2, 2, {Mat::identity(f2, 2)});
  CHECK_FALSE(a.conjugate_to(c));
  CHECK(a.conjugate_to(a));
}
