#include "wittlift/catalog.hpp"

#include <algorithm>
#include <functional>

namespace wittlift {

namespace {

// descending partitions of e
std::vector<std::vector<uint32_t>> partitions(uint32_t e) {
  if (e == 0) return {{}};
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> cur;
  std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t rest,
                                                    uint32_t maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (uint32_t part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      rec(rest - part, part);
      cur.pop_back();
    }
  };
  rec(e, e);
  return out;
}

// abelian types of order n: lists of prime-power factor orders, primes
// ascending, exponents descending within a prime
std::vector<std::vector<uint32_t>> abelian_types(uint32_t n) {
  std::vector<std::pair<uint32_t, uint32_t>> fact;  // (p, e)
  uint32_t m = n;
  for (uint32_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      uint32_t e = 0;
      while (m % p == 0) { m /= p; ++e; }
      fact.push_back({p, e});
    }
  if (m > 1) fact.push_back({m, 1});
  std::vector<std::vector<uint32_t>> types = {{}};
  for (auto [p, e] : fact) {
    std::vector<std::vector<uint32_t>> next;
    for (const auto& t : types)
      for (const auto& part : partitions(e)) {
        auto t2 = t;
        for (uint32_t a : part) {
          uint32_t q = 1;
          for (uint32_t i = 0; i < a; ++i) q *= p;
          t2.push_back(q);
        }
        next.push_back(std::move(t2));
      }
    types = std::move(next);
  }
  return types;
}

GroupPtr abelian_group(const std::vector<uint32_t>& type) {
  if (type.empty()) return FiniteGroup::trivial();
  GroupPtr g = FiniteGroup::cyclic(type[0]);
  for (size_t i = 1; i < type.size(); ++i)
    g = FiniteGroup::direct_product(g, FiniteGroup::cyclic(type[i]));
  return g;
}

// For a non-cyclic p-group of type p^{a_1} >= ... >= p^{a_r}: the module of
// dimension p^{a_1} over F_p with g_i acting by I + N^{p^{a_1 - a_i}}. Each
// image has p-power order, all commute, and g_1 acts as the full Jordan
// block -- the H^1 lemma's situation.
Representation abelian_jordan_module(const GroupPtr& g, uint32_t p,
                                     const std::vector<uint32_t>& type) {
  uint32_t dim = type[0];
  auto k = FqField::make(p, 1);
  std::vector<Mat> imgs;
  for (uint32_t q : type) {
    Mat img = Mat::identity(k, dim);
    uint32_t step = dim / q;  // p^{a_1 - a_i}
    for (uint32_t i = 0; i + step < dim; ++i) img.set(i, i + step, k->one());
    imgs.push_back(std::move(img));
  }
  return Representation(g, k, dim, std::move(imgs));
}

Representation d4_module(const GroupPtr& d4) {
  // F2[Z/4] in the basis of powers of (x-1), reversed so that the rotation
  // is the standard size-4 Jordan block; the reflection acts by x -> x^3
  auto f2 = FqField::make(2, 1);
  Mat r = unipotent_jordan_block(f2, 4);
  Mat s = Mat::identity(f2, 4);
  s.set(0, 2, f2->one());
  s.set(1, 2, f2->one());
  return Representation(d4, f2, 4, {r, s});
}

Representation q8_module(const GroupPtr& q8) {
  // permutation module on the cosets of <b>, written so a is a Jordan block
  auto f2 = FqField::make(2, 1);
  Mat a = unipotent_jordan_block(f2, 2);
  Mat b = Mat::identity(f2, 2);
  return Representation(q8, f2, 2, {a, b});
}

Representation h27_module(const GroupPtr& h27) {
  // the defining unitriangular representation; xy acts as a single block
  auto f3 = FqField::make(3, 1);
  Mat x = Mat::identity(f3, 3);
  x.set(0, 1, f3->one());
  Mat y = Mat::identity(f3, 3);
  y.set(1, 2, f3->one());
  return Representation(h27, f3, 3, {x, y});
}

void attach_module(CatalogEntry& e) {
  const auto& g = e.group;
  if (!e.abelian_type.empty()) {
    if (e.abelian_type.size() < 2) return;  // cyclic
    uint32_t p = 0;
    for (uint32_t pp : {2u, 3u})
      if (g->order() % pp == 0 && g->is_p_group(pp)) p = pp;
    if (p == 0 || e.abelian_type[0] > 16) return;
    e.jordan_module = abelian_jordan_module(g, p, e.abelian_type);
    e.jordan_element = g->generators()[0];
  } else if (g->name() == "D4") {
    e.jordan_module = d4_module(g);
    e.jordan_element = g->generators()[0];
  } else if (g->name() == "Q8") {
    e.jordan_module = q8_module(g);
    e.jordan_element = g->generators()[0];
  } else if (g->name() == "H27") {
    e.jordan_module = h27_module(g);
    e.jordan_element = g->mul(g->generators()[0], g->generators()[1]);
  }
  if (e.jordan_module) {
    if (!e.jordan_module->satisfies_relators())
      throw GroupError(g->name() + ": catalog module violates a relator");
    if (!acts_as_single_jordan_block(
            e.jordan_module->image(e.jordan_element)))
      throw GroupError(g->name() + ": catalog module block check failed");
  }
}

}  // namespace

std::vector<CatalogEntry> group_catalog(uint32_t max_order) {
  if (max_order > 64) throw GroupError("group_catalog: max_order > 64");
  std::vector<CatalogEntry> out;
  for (uint32_t n = 1; n <= max_order; ++n)
    for (auto& type : abelian_types(n)) {
      CatalogEntry e;
      e.group = abelian_group(type);
      e.abelian_type = std::move(type);
      out.push_back(std::move(e));
    }
  std::vector<GroupPtr> named = {FiniteGroup::symmetric3(),
                                 FiniteGroup::dihedral4(),
                                 FiniteGroup::quaternion8(),
                                 FiniteGroup::heisenberg27(),
                                 FiniteGroup::sl2(3), FiniteGroup::sl2(5)};
  for (auto& g : named)
    if (g->order() <= max_order) out.push_back(CatalogEntry{g, {}, {}, 0});
  std::sort(out.begin(), out.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) {
              if (a.group->order() != b.group->order())
                return a.group->order() < b.group->order();
              return a.group->name() < b.group->name();
            });
  for (auto& e : out) attach_module(e);
  return out;
}

bool acts_as_single_jordan_block(const Mat& g) {
  Mat u = g - Mat::identity(g.ring(), g.n());
  Mat pw = Mat::identity(g.ring(), g.n());
  for (uint32_t i = 0; i + 1 < g.n(); ++i) pw = pw * u;
  if (pw.is_zero()) return false;
  return (pw * u).is_zero();
}

Representation sl2_natural_rep(uint32_t q) {
  auto g = FiniteGroup::sl2(q);
  auto k = FqField::make(q, 1);
  Mat s(k, 2);
  s.set(0, 1, k->neg(k->one()));
  s.set(1, 0, k->one());
  Mat t = Mat::identity(k, 2);
  t.set(0, 1, k->one());
  return Representation(g, k, 2, {s, t});
}

}  // namespace wittlift
