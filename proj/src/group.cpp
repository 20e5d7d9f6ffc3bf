#include "wittlift/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>

namespace wittlift {

FiniteGroup::FiniteGroup(std::vector<uint32_t> table, uint32_t identity,
                         std::vector<uint32_t> generators,
                         std::vector<Word> relators, std::string name)
    : table_(std::move(table)),
      id_(identity),
      gens_(std::move(generators)),
      rels_(std::move(relators)),
      name_(std::move(name)) {
  size_t sz = table_.size();
  uint32_t n = uint32_t(std::lround(std::sqrt(double(sz))));
  if (size_t(n) * n != sz || n == 0)
    throw GroupError("FiniteGroup: table is not square");
  n_ = n;
  for (auto v : table_)
    if (v >= n_) throw GroupError("FiniteGroup: table index out of range");
  build_derived();
  std::string err;
  if (!verify(&err)) throw GroupError("FiniteGroup(" + name_ + "): " + err);
}

void FiniteGroup::build_derived() {
  inv_.assign(n_, n_);
  for (uint32_t a = 0; a < n_; ++a) {
    for (uint32_t b = 0; b < n_; ++b)
      if (mul(a, b) == id_ && mul(b, a) == id_) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] == n_) throw GroupError("FiniteGroup: element has no inverse");
  }
  // BFS words
  words_.assign(n_, Word{});
  std::vector<bool> seen(n_, false);
  seen[id_] = true;
  std::queue<uint32_t> q;
  q.push(id_);
  while (!q.empty()) {
    uint32_t g = q.front();
    q.pop();
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
      uint32_t h = mul(g, gens_[gi]);
      if (!seen[h]) {
        seen[h] = true;
        words_[h] = words_[g];
        words_[h].push_back(int32_t(gi));
        q.push(h);
      }
    }
  }
  for (uint32_t g = 0; g < n_; ++g)
    if (!seen[g]) throw GroupError("FiniteGroup: generators do not generate");
}

uint32_t FiniteGroup::order_of(uint32_t a) const {
  uint32_t e = 1, x = a;
  while (x != id_) {
    x = mul(x, a);
    ++e;
  }
  return e;
}

uint32_t FiniteGroup::eval_word(const Word& w) const {
  uint32_t g = id_;
  for (int32_t s : w) {
    uint32_t x = s >= 0 ? gens_[size_t(s)] : inv_[gens_[size_t(-s - 1)]];
    g = mul(g, x);
  }
  return g;
}

bool FiniteGroup::verify(std::string* err) const {
  auto fail = [&](const std::string& m) {
    if (err) *err = m;
    return false;
  };
  for (uint32_t a = 0; a < n_; ++a)
    if (mul(id_, a) != a || mul(a, id_) != a)
      return fail("identity law fails");
  if (n_ <= 64) {
    for (uint32_t a = 0; a < n_; ++a)
      for (uint32_t b = 0; b < n_; ++b)
        for (uint32_t c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            return fail("associativity fails");
  } else {
    std::mt19937_64 rng(n_);
    for (int t = 0; t < 200000; ++t) {
      uint32_t a = rng() % n_, b = rng() % n_, c = rng() % n_;
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        return fail("associativity fails (sampled)");
    }
  }
  // Latin square (cancellation)
  for (uint32_t a = 0; a < n_; ++a) {
    std::vector<bool> row(n_, false), col(n_, false);
    for (uint32_t b = 0; b < n_; ++b) {
      if (row[mul(a, b)]) return fail("row not a permutation");
      row[mul(a, b)] = true;
      if (col[mul(b, a)]) return fail("column not a permutation");
      col[mul(b, a)] = true;
    }
  }
  for (const auto& r : rels_)
    if (eval_word(r) != id_) return fail("relator does not evaluate to identity");
  return true;
}

bool FiniteGroup::is_abelian() const {
  for (uint32_t a = 0; a < n_; ++a)
    for (uint32_t b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_p_group(uint32_t p) const {
  uint32_t m = n_;
  while (m % p == 0) m /= p;
  return m == 1;
}

std::vector<uint32_t> FiniteGroup::element_orders() const {
  std::vector<uint32_t> o(n_);
  for (uint32_t a = 0; a < n_; ++a) o[a] = order_of(a);
  return o;
}

std::vector<uint32_t> FiniteGroup::subgroup_closure(
    std::vector<uint32_t> seed) const {
  std::set<uint32_t> s(seed.begin(), seed.end());
  s.insert(id_);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<uint32_t> cur(s.begin(), s.end());
    for (uint32_t a : cur)
      for (uint32_t b : cur)
        if (s.insert(mul(a, b)).second) grew = true;
  }
  return std::vector<uint32_t>(s.begin(), s.end());
}

bool FiniteGroup::is_subgroup(const std::vector<uint32_t>& elems) const {
  std::set<uint32_t> s(elems.begin(), elems.end());
  if (!s.count(id_)) return false;
  for (uint32_t a : s)
    for (uint32_t b : s)
      if (!s.count(mul(a, b))) return false;
  return true;
}

std::vector<uint32_t> FiniteGroup::sylow_subgroup(uint32_t p) const {
  uint32_t pk = 1;
  while (n_ % (pk * p) == 0) pk *= p;
  if (pk == 1) return {id_};
  // grow a p-subgroup by adjoining p-power-order elements from its normalizer
  std::vector<uint32_t> sub = {id_};
  while (uint32_t(sub.size()) < pk) {
    bool grown = false;
    for (uint32_t g = 0; g < n_ && !grown; ++g) {
      uint32_t o = order_of(g);
      bool ppow = true;
      for (uint32_t x = o; x > 1; x /= p)
        if (x % p != 0) { ppow = false; break; }
      if (!ppow || o == 1) continue;
      if (std::find(sub.begin(), sub.end(), g) != sub.end()) continue;
      // g must normalize the current subgroup for the closure to stay a
      // p-group; cheapest correct approach: try the closure and keep it if
      // its size is still a power of p
      auto cl = subgroup_closure({sub.begin(), sub.end()});
      cl.push_back(g);
      cl = subgroup_closure(cl);
      uint32_t m = uint32_t(cl.size());
      while (m % p == 0) m /= p;
      if (m == 1 && cl.size() > sub.size() && cl.size() <= pk) {
        sub = cl;
        grown = true;
      }
    }
    if (!grown) throw GroupError("sylow_subgroup: search failed");
  }
  std::sort(sub.begin(), sub.end());
  return sub;
}

nlohmann::json FiniteGroup::to_json() const {
  nlohmann::json tab = nlohmann::json::array();
  for (uint32_t i = 0; i < n_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (uint32_t j = 0; j < n_; ++j) row.push_back(mul(i, j));
    tab.push_back(row);
  }
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : rels_) rels.push_back(r);
  return {{"order", n_},    {"table", tab},     {"identity", id_},
          {"generators", gens_}, {"relators", rels}, {"name", name_}};
}

GroupPtr FiniteGroup::from_json(const nlohmann::json& j) {
  uint32_t n = j.at("order").get<uint32_t>();
  std::vector<uint32_t> table;
  table.reserve(size_t(n) * n);
  for (const auto& row : j.at("table"))
    for (const auto& v : row) table.push_back(v.get<uint32_t>());
  std::vector<Word> rels;
  if (j.contains("relators"))
    for (const auto& r : j.at("relators")) rels.push_back(r.get<Word>());
  return std::make_shared<const FiniteGroup>(
      std::move(table), j.value("identity", 0u),
      j.at("generators").get<std::vector<uint32_t>>(), std::move(rels),
      j.value("name", std::string("anonymous")));
}

// ------------------------------------------------------------- factories

namespace {

GroupPtr from_law(uint32_t n, const std::function<uint32_t(uint32_t, uint32_t)>& law,
                  uint32_t id, std::vector<uint32_t> gens,
                  std::vector<Word> rels, std::string name) {
  std::vector<uint32_t> t(size_t(n) * n);
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = 0; b < n; ++b) t[a * n + b] = law(a, b);
  return std::make_shared<const FiniteGroup>(std::move(t), id, std::move(gens),
                                             std::move(rels), std::move(name));
}

Word pow_word(int32_t g, uint32_t e) { return Word(e, g); }

}  // namespace

GroupPtr FiniteGroup::trivial() {
  return std::make_shared<const FiniteGroup>(std::vector<uint32_t>{0}, 0,
                                             std::vector<uint32_t>{},
                                             std::vector<Word>{}, "1");
}

GroupPtr FiniteGroup::cyclic(uint32_t n) {
  if (n == 1) return trivial();
  return from_law(
      n, [n](uint32_t a, uint32_t b) { return (a + b) % n; }, 0, {1},
      {pow_word(0, n)}, "Z/" + std::to_string(n));
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b) {
  uint32_t na = a->order(), nb = b->order();
  auto law = [&](uint32_t x, uint32_t y) {
    uint32_t xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
    return a->mul(xa, ya) * nb + b->mul(xb, yb);
  };
  std::vector<uint32_t> gens;
  for (uint32_t g : a->generators()) gens.push_back(g * nb + b->identity());
  for (uint32_t g : b->generators()) gens.push_back(a->identity() * nb + g);
  std::vector<Word> rels;
  uint32_t offa = 0, offb = uint32_t(a->generators().size());
  for (const auto& r : a->relators()) {
    Word w;
    for (int32_t s : r) w.push_back(s >= 0 ? s + int32_t(offa) : s - int32_t(offa));
    rels.push_back(w);
  }
  for (const auto& r : b->relators()) {
    Word w;
    for (int32_t s : r) w.push_back(s >= 0 ? s + int32_t(offb) : s - int32_t(offb));
    rels.push_back(w);
  }
  // commutators between the two factors' generators
  for (size_t i = 0; i < a->generators().size(); ++i)
    for (size_t j = 0; j < b->generators().size(); ++j) {
      int32_t gi = int32_t(offa + i), gj = int32_t(offb + j);
      rels.push_back({gi, gj, -(gi + 1), -(gj + 1)});
    }
  return from_law(na * nb, law, a->identity() * nb + b->identity(),
                  std::move(gens), std::move(rels),
                  a->name() + "x" + b->name());
}

GroupPtr FiniteGroup::symmetric3() {
  // elements: permutations of {0,1,2} in lex order of one-line notation
  std::vector<std::array<uint32_t, 3>> perms;
  std::array<uint32_t, 3> base = {0, 1, 2};
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  auto idx = [&](const std::array<uint32_t, 3>& p) {
    for (uint32_t i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw GroupError("S3 index");
  };
  auto law = [&](uint32_t x, uint32_t y) {
    std::array<uint32_t, 3> c;
    for (uint32_t i = 0; i < 3; ++i) c[i] = perms[x][perms[y][i]];
    return idx(c);
  };
  uint32_t a = idx({1, 2, 0});  // 3-cycle
  uint32_t b = idx({1, 0, 2});  // transposition
  // relators: a^3, b^2, b a b^-1 a
  return from_law(6, law, idx({0, 1, 2}), {a, b},
                  {pow_word(0, 3), pow_word(1, 2), {1, 0, -2, 0}}, "S3");
}

GroupPtr FiniteGroup::dihedral4() {
  // elements r^i s^j, index = i + 4j
  auto law = [](uint32_t x, uint32_t y) {
    uint32_t xi = x % 4, xj = x / 4, yi = y % 4, yj = y / 4;
    // (r^xi s^xj)(r^yi s^yj): s r = r^-1 s
    uint32_t i = xj ? (xi + 4 - yi) % 4 : (xi + yi) % 4;
    return i + 4 * ((xj + yj) % 2);
  };
  // relators: r^4, s^2, (s r)^2 i.e. s r s r
  return from_law(8, law, 0, {1, 4},
                  {pow_word(0, 4), pow_word(1, 2), {1, 0, 1, 0}}, "D4");
}

GroupPtr FiniteGroup::quaternion8() {
  // 0..7 = 1, -1, i, -i, j, -j, k, -k
  static const int tab[8][8] = {
      {0, 1, 2, 3, 4, 5, 6, 7}, {1, 0, 3, 2, 5, 4, 7, 6},
      {2, 3, 1, 0, 6, 7, 5, 4}, {3, 2, 0, 1, 7, 6, 4, 5},
      {4, 5, 7, 6, 1, 0, 2, 3}, {5, 4, 6, 7, 0, 1, 3, 2},
      {6, 7, 4, 5, 3, 2, 1, 0}, {7, 6, 5, 4, 2, 3, 0, 1}};
  auto law = [](uint32_t x, uint32_t y) { return uint32_t(tab[x][y]); };
  // generators a = i, b = j; relators a^4, a^2 b^-2, b a b^-1 a
  return from_law(8, law, 0, {2, 4},
                  {pow_word(0, 4), {0, 0, -2, -2}, {1, 0, -2, 0}}, "Q8");
}

GroupPtr FiniteGroup::heisenberg27() {
  // triples (a,b,c) over F3, (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
  auto enc = [](uint32_t a, uint32_t b, uint32_t c) { return a * 9 + b * 3 + c; };
  auto law = [&](uint32_t x, uint32_t y) {
    uint32_t xa = x / 9, xb = x / 3 % 3, xc = x % 3;
    uint32_t ya = y / 9, yb = y / 3 % 3, yc = y % 3;
    return enc((xa + ya) % 3, (xb + yb) % 3, (xc + yc + xa * yb) % 3);
  };
  uint32_t gx = enc(1, 0, 0), gy = enc(0, 1, 0);
  // relators: x^3, y^3, [x,y]^3, [[x,y],x], [[x,y],y]
  Word comm = {0, 1, -1, -2};  // [x,y]
  Word comm3 = comm;
  comm3.insert(comm3.end(), comm.begin(), comm.end());
  comm3.insert(comm3.end(), comm.begin(), comm.end());
  auto conj_comm = [&](int32_t g) {
    // [comm, g] = comm g comm^-1 g^-1, with comm^-1 = y x y^-1 x^-1
    Word full = comm;
    full.push_back(g);
    for (int32_t s : {1, 0, -2, -1}) full.push_back(s);
    full.push_back(-(g + 1));
    return full;
  };
  return from_law(27, law, 0, {gx, gy},
                  {pow_word(0, 3), pow_word(1, 3), comm3, conj_comm(0),
                   conj_comm(1)},
                  "H27");
}

GroupPtr FiniteGroup::sl2(uint32_t q) {
  // enumerate SL2(F_q) for prime q (desk scale: q in {2,3,5,7})
  std::vector<std::array<uint32_t, 4>> els;
  std::map<std::array<uint32_t, 4>, uint32_t> index;
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t b = 0; b < q; ++b)
      for (uint32_t c = 0; c < q; ++c)
        for (uint32_t d = 0; d < q; ++d)
          if ((a * d + q * q - b * c % (q * q)) % q == 1 % q) {
            index[{a, b, c, d}] = uint32_t(els.size());
            els.push_back({a, b, c, d});
          }
  auto law = [&](uint32_t x, uint32_t y) {
    const auto& u = els[x];
    const auto& v = els[y];
    std::array<uint32_t, 4> w = {
        (u[0] * v[0] + u[1] * v[2]) % q, (u[0] * v[1] + u[1] * v[3]) % q,
        (u[2] * v[0] + u[3] * v[2]) % q, (u[2] * v[1] + u[3] * v[3]) % q};
    return index.at(w);
  };
  uint32_t s = index.at({0, q - 1, 1, 0});  // [[0,-1],[1,0]]
  uint32_t t = index.at({1, 1, 0, 1});      // [[1,1],[0,1]]
  return from_law(uint32_t(els.size()), law, index.at({1, 0, 0, 1}), {s, t},
                  {}, "SL2(F" + std::to_string(q) + ")");
}

Subgroup subgroup_of(const GroupPtr& parent, std::vector<uint32_t> elems,
                     const std::string& name) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (!parent->is_subgroup(elems))
    throw GroupError("subgroup_of: element list not closed");
  uint32_t m = uint32_t(elems.size());
  std::map<uint32_t, uint32_t> pos;
  for (uint32_t i = 0; i < m; ++i) pos[elems[i]] = i;
  std::vector<uint32_t> table(size_t(m) * m);
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < m; ++j)
      table[i * m + j] = pos.at(parent->mul(elems[i], elems[j]));
  // generators: greedy closure build
  std::vector<uint32_t> gens;
  {
    std::set<uint32_t> cl = {pos.at(parent->identity())};
    for (uint32_t i = 0; i < m && cl.size() < m; ++i) {
      if (cl.count(i)) continue;
      gens.push_back(i);
      // close
      bool grew = true;
      cl.insert(i);
      while (grew) {
        grew = false;
        std::vector<uint32_t> cur(cl.begin(), cl.end());
        for (uint32_t a : cur)
          for (uint32_t b : cur)
            if (cl.insert(table[a * m + b]).second) grew = true;
      }
    }
  }
  auto g = std::make_shared<const FiniteGroup>(
      std::move(table), pos.at(parent->identity()), std::move(gens),
      std::vector<Word>{},
      name.empty() ? parent->name() + "-sub" + std::to_string(m) : name);
  return {g, std::move(elems)};
}

}  // namespace wittlift
