#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wittlift/catalog.hpp"
#include "wittlift/cohomology.hpp"
#include "wittlift/witnesses.hpp"

using namespace wittlift;

namespace {

Representation s3_natural_f2() {
  auto s3 = FiniteGroup::symmetric3();
  auto f2 = FqField::make(2, 1);
  Mat rot(f2, 2), swp(f2, 2);
  rot.set(0, 1, f2->one());
  rot.set(1, 0, f2->one());
  rot.set(1, 1, f2->one());
  swp.set(0, 1, f2->one());
  swp.set(1, 0, f2->one());
  Representation f(s3, f2, 2, {rot, swp});
  REQUIRE(f.satisfies_relators());
  return f;
}

Representation s3_natural_f3() {
  auto s3 = FiniteGroup::symmetric3();
  auto f3 = FqField::make(3, 1);
  Mat a = unipotent_jordan_block(f3, 2);
  Mat b = Mat::identity(f3, 2);
  b.set(1, 1, f3->neg(f3->one()));
  Representation f(s3, f3, 2, {a, b});
  REQUIRE(f.satisfies_relators());
  return f;
}

}  // namespace

TEST_CASE("obstruction cocycles satisfy the full cocycle identity") {
  for (const auto& f :
       {ptimesp_rep(2), two_powers_rep(1, 1),
        jordan_block_rep(5, 1, FqField::make(5, 1)), s3_natural_f2()}) {
    auto c = obstruction_class(f);
    std::string err;
    CHECK(c.check_identity(true, &err));
    CHECK(err.empty());
    // normalized
    auto e = f.group()->identity();
    CHECK(c.at(e, e) == FVec(f.dim() * f.dim(), 0));
  }
}

TEST_CASE("serial and parallel cocycle tabulation agree") {
  for (const auto& f : {ptimesp_rep(2), two_powers_rep(2, 1), s3_natural_f3()}) {
    CHECK(obstruction_class(f).hash() == obstruction_class_serial(f).hash());
  }
}

TEST_CASE("changing the section shifts the cocycle by the expected coboundary") {
  std::mt19937 rng(97531);
  for (const auto& f : {s3_natural_f2(), ptimesp_rep(2),
                        jordan_block_rep(3, 2, FqField::make(3, 1))}) {
    auto k = std::dynamic_pointer_cast<const FqField>(f.ring());
    REQUIRE(k);
    auto w = WittRing::make(k);
    const auto& G = *f.group();
    uint32_t n = f.dim(), N = G.order(), e = G.identity();
    std::uniform_int_distribution<uint64_t> pick(0, k->q() - 1);

    // R_g over k for g != e, R_e = 0; section(g) = (I + p R_g) u(g)
    std::vector<FVec> rvec(N, FVec(n * n, 0));
    std::vector<Mat> section;
    for (uint32_t g = 0; g < N; ++g) {
      Mat shift = Mat::identity(w, n);
      for (uint32_t i = 0; i < n && g != e; ++i)
        for (uint32_t j = 0; j < n; ++j) {
          Elem r = k->elem_at(pick(rng));
          rvec[g][i * n + j] = uint16_t(k->index_of(r));
          shift.set(i, j, w->add(shift.at(i, j), w->kernel_embed(r)));
        }
      section.push_back(shift * teichmuller_lift(f.image(g), w));
    }

    auto c = obstruction_class(f);
    auto ct = obstruction_from_section(f, section);
    std::string err;
    CHECK(ct.check_identity(true, &err));

    // ct(g,h) = c(g,h) + R_g + Ad_{f(g)} R_h - R_{gh}
    auto mod = c.module();
    const auto& tab = mod->tab();
    for (uint32_t g = 0; g < N; ++g)
      for (uint32_t h = 0; h < N; ++h) {
        FVec adgh = mod->apply(g, rvec[h]);
        const FVec& base = c.at(g, h);
        const FVec& got = ct.at(g, h);
        uint32_t gh = G.mul(g, h);
        bool same = true;
        for (uint32_t t = 0; t < n * n; ++t) {
          uint16_t want = tab.add(tab.add(base[t], rvec[g][t]),
                                  tab.sub(adgh[t], rvec[gh][t]));
          if (want != got[t]) same = false;
        }
        CHECK(same);
      }

    // the Teichmuller section reproduces obstruction_class exactly
    std::vector<Mat> teich;
    for (uint32_t g = 0; g < N; ++g)
      teich.push_back(teichmuller_lift(f.image(g), w));
    CHECK(obstruction_from_section(f, teich).hash() == c.hash());
  }
}

TEST_CASE("section changes preserve the obstructed verdict") {
  // an arbitrary section of an obstructed representation stays obstructed
  auto f = ptimesp_rep(2);
  auto k = std::dynamic_pointer_cast<const FqField>(f.ring());
  auto w = WittRing::make(k);
  const auto& G = *f.group();
  std::mt19937 rng(8642);
  std::uniform_int_distribution<uint64_t> pick(0, k->q() - 1);
  std::vector<Mat> section;
  for (uint32_t g = 0; g < G.order(); ++g) {
    Mat shift = Mat::identity(w, f.dim());
    for (uint32_t i = 0; i < f.dim() && g != G.identity(); ++i)
      for (uint32_t j = 0; j < f.dim(); ++j)
        shift.set(i, j,
                  w->add(shift.at(i, j), w->kernel_embed(k->elem_at(pick(rng)))));
    section.push_back(shift * teichmuller_lift(f.image(g), w));
  }
  auto cert0 = is_coboundary(obstruction_class(f));
  auto cert1 = is_coboundary(obstruction_from_section(f, section));
  CHECK_FALSE(cert0.lifts());
  CHECK_FALSE(cert1.lifts());
  CHECK(cert0.rank_data.aug_rank == cert1.rank_data.aug_rank);
}

TEST_CASE("restriction of the obstruction class is the class of the restriction") {
  std::vector<Representation> pool = {
      ptimesp_rep(2),
      ptimesp_rep(3),
      two_powers_rep(2, 1),
      jordan_block_rep(5, 1, FqField::make(5, 1)),
      jordan_block_rep(3, 2, FqField::make(3, 1)),
      jordan_block_rep(2, 2, FqField::make(2, 1)),
      s3_natural_f2(),
  };
  std::mt19937 rng(13579);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& f = pool[rng() % pool.size()];
    uint32_t x = uint32_t(rng() % f.group()->order());
    auto h = subgroup_of(f.group(), f.group()->subgroup_closure({x}));
    auto restricted_class = obstruction_class(f).restrict_to(h);
    auto class_of_restriction = obstruction_class(restrict_rep(f, h));
    CHECK(restricted_class.hash() == class_of_restriction.hash());
    for (uint32_t a = 0; a < h.group->order(); ++a)
      for (uint32_t b = 0; b < h.group->order(); ++b)
        CHECK(restricted_class.at(a, b) == class_of_restriction.at(a, b));
  }
}

TEST_CASE("lifting is detected on the Sylow subgroup and on the whole group") {
  struct Case {
    Representation f;
    uint32_t p;
  };
  auto f3 = FqField::make(3, 1);
  auto z6 = FiniteGroup::cyclic(6);
  Representation z6rep(z6, f3, 2, {unipotent_jordan_block(f3, 2)});
  REQUIRE(z6rep.satisfies_relators());
  const Case cases[] = {
      {s3_natural_f2(), 2}, {s3_natural_f3(), 3}, {z6rep, 3}};
  for (const auto& c : cases) {
    CAPTURE(c.f.group()->name());
    auto full = is_coboundary(obstruction_class(c.f));
    auto h = subgroup_of(c.f.group(), c.f.group()->sylow_subgroup(c.p));
    auto part = is_coboundary(obstruction_class(restrict_rep(c.f, h)));
    CHECK(full.lifts() == part.lifts());
    CHECK(full.lifts());
    std::string err;
    CHECK(full.reverify(&err));
    CHECK(part.reverify(&err));
  }
}

TEST_CASE("solver verdicts match exhaustive search on tiny spaces") {
  struct Case {
    Representation f;
    uint64_t budget;
  };
  const Case cases[] = {
      {jordan_block_rep(2, 1, FqField::make(2, 1)), 64},
      {jordan_block_rep(3, 1, FqField::make(3, 1)), 1024},
      {jordan_block_rep(5, 1, FqField::make(5, 1)), 1024},
      {ptimesp_rep(2), 1u << 17},
      {two_powers_rep(1, 1), 1u << 17},
  };
  for (const auto& c : cases) {
    CAPTURE(c.f.group()->name());
    auto cert = is_coboundary(obstruction_class(c.f));
    auto out = exhaustive_lift_search(c.f, c.budget);
    CHECK(out.complete);
    CHECK(out.found == cert.lifts());
    if (out.found) {
      REQUIRE(out.lift.has_value());
      std::string err;
      CHECK(out.lift->verify_homomorphism(&err));
      CHECK(out.lift->reduced_mod_p().strictly_equal(c.f));
    }
    std::string err;
    CHECK(cert.reverify(&err));
  }
}

TEST_CASE("search budget semantics") {
  auto f = ptimesp_rep(2);
  auto out = exhaustive_lift_search(f, 10);
  CHECK_FALSE(out.complete);
  CHECK_FALSE(out.found);
  CHECK(out.searched <= 10);
  auto none = exhaustive_lift_search(f, 0);
  CHECK_FALSE(none.complete);
  CHECK_FALSE(none.found);

  // a representation of a group without a stored presentation is rejected
  auto h = subgroup_of(f.group(), f.group()->subgroup_closure({1u}));
  CHECK(h.group->relators().empty());
  CHECK_THROWS_AS(exhaustive_lift_search(restrict_rep(f, h), 10), GroupError);
}

TEST_CASE("serial and parallel search agree") {
  for (const auto& f : {jordan_block_rep(5, 1, FqField::make(5, 1)),
                        jordan_block_rep(2, 1, FqField::make(2, 1))}) {
    auto a = exhaustive_lift_search(f, 4096);
    auto b = exhaustive_lift_search_serial(f, 4096);
    CHECK(a.found == b.found);
    CHECK(a.complete == b.complete);
    CHECK(a.searched == b.searched);
    if (a.found) CHECK(a.lift->strictly_equal(*b.lift));
  }
}

TEST_CASE("zero cocycle is a coboundary") {
  auto s3 = FiniteGroup::symmetric3();
  auto f2 = FqField::make(2, 1);
  auto mod = std::make_shared<GModule>(GModule::trivial(s3, f2, 2));
  std::vector<FVec> vals(36, FVec(2, 0));
  auto cert = is_coboundary(TwoCocycle(mod, std::move(vals)));
  CHECK(cert.lifts());
  CHECK(cert.rank_data.rank == cert.rank_data.aug_rank);
}

TEST_CASE("cocycle constructor enforces normalization") {
  auto z2 = FiniteGroup::cyclic(2);
  auto f2 = FqField::make(2, 1);
  auto mod = std::make_shared<GModule>(GModule::trivial(z2, f2, 1));
  std::vector<FVec> vals(4, FVec(1, 0));
  vals[0] = FVec(1, 1);  // c(e, e) != 0
  CHECK_THROWS_AS(TwoCocycle(mod, std::move(vals)), GroupError);
}

TEST_CASE("H^1 table and relator modes agree on the catalog modules") {
  for (const auto& e : group_catalog(64)) {
    if (!e.jordan_module) continue;
    CAPTURE(e.group->name());
    auto mod = GModule::of_rep(*e.jordan_module);
    uint32_t t = h1_dimension(mod, H1Mode::Table);
    uint32_t r = h1_dimension(mod, H1Mode::Relator);
    CHECK(t == r);
    CHECK(t >= 1);
  }
}

TEST_CASE("H^1 of a cyclic group on its Jordan module") {
  // Z/p acting by one size-2 Jordan block: Z^1 has dimension 2 (the images
  // of the generator under derivations span ker of the relator norm), B^1
  // has dimension 1, so h^1 = 1 for p = 2 and p = 3 alike.
  for (uint32_t p : {2u, 3u}) {
    auto mod = GModule::of_rep(jordan_block_rep(p, 1, FqField::make(p, 1)));
    CHECK(h1_dimension(mod, H1Mode::Table) ==
          h1_dimension(mod, H1Mode::Relator));
  }
  // trivial module over the trivial group
  auto mod0 = GModule::trivial(FiniteGroup::trivial(), FqField::make(2, 1), 3);
  CHECK(h1_dimension(mod0, H1Mode::Table) == 0);
}

TEST_CASE("module invariants") {
  auto triv = GModule::trivial(FiniteGroup::symmetric3(), FqField::make(2, 1), 3);
  CHECK(triv.invariants_dim() == 3);
  // commutant of a single size-2 Jordan block is 2-dimensional
  auto ad = GModule::adjoint(jordan_block_rep(2, 1, FqField::make(2, 1)));
  CHECK(ad.invariants_dim() == 2);
  CHECK_THROWS_AS(
      GModule::adjoint(Representation(
          FiniteGroup::cyclic(2), WittRing::make(FqField::make(2, 1)), 1,
          {Mat::identity(WittRing::make(FqField::make(2, 1)), 1)})),
      GroupError);
}

TEST_CASE("rigidity report on an obstructed representation") {
  auto r = is_strongly_rigid(ptimesp_rep(2));
  CHECK_FALSE(r.cert.lifts());
  CHECK(r.h1 >= 1);
  CHECK_FALSE(r.strongly_rigid);
  std::string err;
  CHECK(r.cert.reverify(&err));
}

TEST_CASE("non-rigidity quotient-ring chain verifies") {
  auto j = nonrigid_lift_check();
  CHECK(j.at("ok").get<bool>());
  for (const auto& c : j.at("checks")) CHECK(c.at("pass").get<bool>());
  CHECK(j.contains("I_plus_X"));
  CHECK(j.contains("Y"));
}
