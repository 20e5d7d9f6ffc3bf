#include "wittlift/local.hpp"

namespace wittlift {

LocalModel::LocalModel(uint32_t p_, uint32_t d_, uint32_t s_)
    : p(p_), d(d_), s(s_) {
  if (p < 3) throw PreconditionViolated("LocalModel: p must be an odd prime");
  for (uint32_t t = 2; t * t <= p; ++t)
    if (p % t == 0) throw PreconditionViolated("LocalModel: p must be prime");
  if (d < 2 || d % 2 != 0)
    throw PreconditionViolated("LocalModel: d must be even and >= 2");
  if (s < 2) throw PreconditionViolated("LocalModel: s must be >= 2");
}

int32_t LocalModel::gram(uint32_t i, uint32_t j) const {
  if (i / 2 != j / 2) return 0;
  if (i + 1 == j) return 1;
  if (j + 1 == i) return -1;
  return 0;
}

uint64_t LocalModel::modulus(uint32_t level) const {
  return level == 1 ? p : uint64_t(p) * p;
}

nlohmann::json LocalModel::to_json() const {
  return {{"p", p}, {"d", d}, {"s", s}};
}

KummerClass KummerClass::make(ModelPtr m, uint32_t level,
                              std::vector<int64_t> coords) {
  if (level != 1 && level != 2)
    throw PreconditionViolated("KummerClass: level must be 1 or 2");
  if (coords.size() != m->d)
    throw PreconditionViolated("KummerClass: expected d coordinates");
  int64_t mod = int64_t(m->modulus(level));
  KummerClass k{std::move(m), level, {}};
  for (int64_t c : coords) k.coords.push_back(uint32_t(((c % mod) + mod) % mod));
  return k;
}

KummerClass KummerClass::zero(ModelPtr m, uint32_t level) {
  std::vector<int64_t> c(m->d, 0);
  return make(std::move(m), level, std::move(c));
}

bool KummerClass::is_zero() const {
  for (uint32_t c : coords)
    if (c) return false;
  return true;
}

KummerClass KummerClass::operator+(const KummerClass& o) const {
  if (level != o.level || !model->same(*o.model))
    throw PreconditionViolated("KummerClass: level or model mismatch");
  KummerClass r = *this;
  uint64_t mod = model->modulus(level);
  for (uint32_t i = 0; i < coords.size(); ++i)
    r.coords[i] = uint32_t((uint64_t(coords[i]) + o.coords[i]) % mod);
  return r;
}

KummerClass KummerClass::operator-(const KummerClass& o) const {
  if (level != o.level || !model->same(*o.model))
    throw PreconditionViolated("KummerClass: level or model mismatch");
  KummerClass r = *this;
  uint64_t mod = model->modulus(level);
  for (uint32_t i = 0; i < coords.size(); ++i)
    r.coords[i] = uint32_t((uint64_t(coords[i]) + mod - o.coords[i]) % mod);
  return r;
}

nlohmann::json KummerClass::to_json() const {
  return {{"model", model->to_json()}, {"level", level}, {"coords", coords}};
}

KummerClass KummerClass::from_json(const nlohmann::json& j) {
  auto mj = j.at("model");
  auto m = std::make_shared<LocalModel>(mj.at("p").get<uint32_t>(),
                                        mj.at("d").get<uint32_t>(),
                                        mj.value("s", 2u));
  std::vector<int64_t> coords = j.at("coords").get<std::vector<int64_t>>();
  return make(std::move(m), j.at("level").get<uint32_t>(), std::move(coords));
}

H2Class cup(const KummerClass& x, const KummerClass& y) {
  if (x.level != y.level || !x.model->same(*y.model))
    throw PreconditionViolated("cup: level or model mismatch");
  const auto& m = *x.model;
  uint64_t mod = m.modulus(x.level);
  uint64_t acc = 0;
  for (uint32_t i = 0; i < m.d; ++i)
    for (uint32_t j = 0; j < m.d; ++j) {
      int32_t g = m.gram(i, j);
      if (g == 0) continue;
      uint64_t term = uint64_t(x.coords[i]) * y.coords[j] % mod;
      acc = (acc + (g > 0 ? term : mod - term)) % mod;
    }
  return H2Class{x.model, x.level, uint32_t(acc)};
}

H2Class bockstein_i(const H2Class& t) {
  if (t.level != 1) throw PreconditionViolated("i: expected a level-1 class");
  return H2Class{t.model, 2, uint32_t(uint64_t(t.value) * t.model->p %
                                      t.model->modulus(2))};
}

H2Class bockstein_pi(const H2Class& c) {
  if (c.level != 2) throw PreconditionViolated("pi: expected a level-2 class");
  return H2Class{c.model, 1, c.value % c.model->p};
}

KummerClass bockstein_i(const KummerClass& x) {
  if (x.level != 1) throw PreconditionViolated("i: expected a level-1 class");
  KummerClass r{x.model, 2, {}};
  for (uint32_t c : x.coords)
    r.coords.push_back(uint32_t(uint64_t(c) * x.model->p %
                                x.model->modulus(2)));
  return r;
}

KummerClass bockstein_pi(const KummerClass& x) {
  if (x.level != 2) throw PreconditionViolated("pi: expected a level-2 class");
  KummerClass r{x.model, 1, {}};
  for (uint32_t c : x.coords) r.coords.push_back(c % x.model->p);
  return r;
}

std::pair<KummerClass, KummerClass> solve_property_d(const KummerClass& y1,
                                                     const KummerClass& y2) {
  if (y1.level != 2 || y2.level != 2)
    throw PreconditionViolated("solve_property_d: expected level-2 classes");
  const auto& m = *y1.model;
  KummerClass x1 = bockstein_pi(y1), x2 = bockstein_pi(y2);
  if (cup(x1, x2).value != 0)
    throw PreconditionViolated("solve_property_d: reductions not orthogonal");
  if (x1.is_zero() && x2.is_zero())
    throw PreconditionViolated("solve_property_d: both reductions vanish");
  // y1 cup y2 lies in p H^2, so it is i(t) for a unique level-1 t
  uint32_t c = cup(y1, y2).value;
  if (c % m.p != 0)
    throw PreconditionViolated("solve_property_d: cup not divisible by p");
  uint32_t t = (c / m.p) % m.p;
  // solve x cup z = t for z by perfectness: pick a coordinate where x^T J
  // is a unit and put everything there
  auto solve_on = [&](const KummerClass& x) {
    std::vector<int64_t> row(m.d, 0);
    for (uint32_t j = 0; j < m.d; ++j) {
      int64_t acc = 0;
      for (uint32_t i = 0; i < m.d; ++i) acc += int64_t(x.coords[i]) * m.gram(i, j);
      row[j] = ((acc % m.p) + m.p) % m.p;
    }
    for (uint32_t j = 0; j < m.d; ++j)
      if (row[j] != 0) {
        // z_j = t / row[j] mod p
        uint32_t inv = 1;
        for (uint32_t k = 1; k < m.p; ++k)
          if (k * row[j] % m.p == 1) { inv = k; break; }
        std::vector<int64_t> z(m.d, 0);
        z[j] = int64_t(t) * inv % m.p;
        return KummerClass::make(y1.model, 1, std::move(z));
      }
    throw PreconditionViolated("solve_property_d: degenerate pairing row");
  };
  if (!x1.is_zero())
    return {solve_on(x1), KummerClass::zero(y1.model, 1)};
  // x1 = 0: put the correction on the other side, z1 = 0 and x2 cup z2 = t
  return {KummerClass::zero(y1.model, 1), solve_on(x2)};
}

std::pair<KummerClass, KummerClass> lift_orthogonal_pair(
    const KummerClass& x1, const KummerClass& x2) {
  if (x1.level != 1 || x2.level != 1)
    throw PreconditionViolated("lift_orthogonal_pair: expected level 1");
  if (cup(x1, x2).value != 0)
    throw NotOrthogonal("lift_orthogonal_pair: x1 cup x2 != 0");
  auto digit_lift = [&](const KummerClass& x) {
    std::vector<int64_t> c(x.coords.begin(), x.coords.end());
    return KummerClass::make(x.model, 2, std::move(c));
  };
  if (x1.is_zero() && x2.is_zero())
    return {KummerClass::zero(x1.model, 2), KummerClass::zero(x1.model, 2)};
  KummerClass y1 = digit_lift(x1), y2 = digit_lift(x2);
  auto [z1, z2] = solve_property_d(y1, y2);
  KummerClass t1 = y1 + bockstein_i(z2);
  KummerClass t2 = y2 - bockstein_i(z1);
  if (cup(t1, t2).value != 0)
    throw PreconditionViolated("lift_orthogonal_pair: correction failed");
  return {t1, t2};
}

// ------------------------------------------------------------------ tame model

TameModel::TameModel(uint32_t p_, uint32_t q_) : p(p_), q(q_) {
  if ((q - 1) % p != 0 || (q - 1) % (p * p) == 0)
    throw PreconditionViolated(
        "TameModel: need q = 1 mod p and q != 1 mod p^2");
}

uint32_t tame_symbol(const TameModel& m, const TameClass& a,
                     const TameClass& b) {
  auto k = FqField::make(m.q, 1);
  Elem g = k->multiplicative_generator();
  // ((-1)^{va vb} u_b^{va} u_a^{-vb})^{(q-1)/p}, units written as powers of g
  uint64_t qm1 = m.q - 1;
  uint64_t expo =
      (uint64_t(a.v % m.p) * (b.v % m.p) % 2 ? qm1 / 2 : 0) % qm1;
  expo = (expo + uint64_t(b.u) * a.v % qm1) % qm1;
  expo = (expo + qm1 - uint64_t(a.u) * b.v % qm1) % qm1;
  Elem val = k->pow(k->pow(g, expo), qm1 / m.p);
  Elem zeta = k->pow(g, qm1 / m.p);
  Elem acc = k->one();
  for (uint32_t e = 0; e < m.p; ++e) {
    if (acc == val) return e;
    acc = k->mul(acc, zeta);
  }
  throw PreconditionViolated("tame_symbol: value not in mu_p");
}

uint32_t tame_d_map(const TameModel& m, const TameClass& x) {
  return x.v % m.p;
}

// ------------------------------------------------------------ Heisenberg reps

namespace {

Mat unitri(const ZmodPtr& r, int64_t a, int64_t b, int64_t c) {
  Mat m = Mat::identity(r, 3);
  m.set(0, 1, r->from_int(a));
  m.set(1, 2, r->from_int(b));
  m.set(0, 2, r->from_int(c));
  return m;
}

ZmodPtr rep_ring(const LocalModel& m, uint32_t level) {
  return ZmodRing::make(m.p, level);
}

uint32_t entry_int(const Mat& m, uint32_t i, uint32_t j) {
  return m.at(i, j)[0];
}

}  // namespace

KummerClass HeisenbergRep::x1() const {
  std::vector<int64_t> c;
  for (const auto& m : images) c.push_back(entry_int(m, 0, 1));
  return KummerClass::make(model, level, std::move(c));
}

KummerClass HeisenbergRep::x2() const {
  std::vector<int64_t> c;
  for (const auto& m : images) c.push_back(entry_int(m, 1, 2));
  return KummerClass::make(model, level, std::move(c));
}

KummerClass HeisenbergRep::corner() const {
  std::vector<int64_t> c;
  for (const auto& m : images) c.push_back(entry_int(m, 0, 2));
  return KummerClass::make(model, level, std::move(c));
}

bool HeisenbergRep::valid(std::string* err) const {
  if (images.size() != model->d) {
    if (err) *err = "expected one image per generator";
    return false;
  }
  auto r = images[0].ring();
  for (const auto& m : images) {
    if (m.n() != 3) {
      if (err) *err = "images must be 3x3";
      return false;
    }
    bool shape = m.at(0, 0) == r->one() && m.at(1, 1) == r->one() &&
                 m.at(2, 2) == r->one() && r->is_zero(m.at(1, 0)) &&
                 r->is_zero(m.at(2, 0)) && r->is_zero(m.at(2, 1));
    if (!shape) {
      if (err) *err = "image not unitriangular";
      return false;
    }
  }
  // evaluate the relation g1^{p^s} [g1,g2] ... [g_{d-1},g_d] directly
  uint64_t ps = 1;
  for (uint32_t i = 0; i < model->s; ++i) ps *= model->p;
  Mat acc = images[0].pow(ps);
  for (uint32_t b = 0; b + 1 < model->d; b += 2) {
    const Mat& u = images[b];
    const Mat& v = images[b + 1];
    acc = acc * u * v * *u.inverse() * *v.inverse();
  }
  if (!acc.is_identity()) {
    if (err) *err = "relation does not map to the identity";
    return false;
  }
  return true;
}

HeisenbergRep HeisenbergRep::reduced() const {
  if (level != 2)
    throw PreconditionViolated("HeisenbergRep: already at level 1");
  HeisenbergRep r{model, 1, {}};
  for (const auto& m : images) r.images.push_back(reduce_mod_p(m));
  return r;
}

nlohmann::json HeisenbergRep::to_json() const {
  nlohmann::json imgs = nlohmann::json::array();
  for (const auto& m : images) imgs.push_back(m.to_json());
  return {{"model", model->to_json()}, {"level", level}, {"images", imgs}};
}

HeisenbergRep HeisenbergRep::from_json(const nlohmann::json& j) {
  auto mj = j.at("model");
  auto m = std::make_shared<LocalModel>(mj.at("p").get<uint32_t>(),
                                        mj.at("d").get<uint32_t>(),
                                        mj.value("s", 2u));
  HeisenbergRep r{std::move(m), j.at("level").get<uint32_t>(), {}};
  auto ring = ZmodRing::make(r.model->p, r.level);
  for (const auto& ij : j.at("images"))
    r.images.push_back(Mat::from_json(ij, ring));
  return r;
}

HeisenbergRep heisenberg_build(ModelPtr model, const KummerClass& x1,
                               const KummerClass& x2,
                               const KummerClass& twist) {
  if (x1.level != 1 || x2.level != 1 || twist.level != 1)
    throw PreconditionViolated("heisenberg_build: expected level-1 classes");
  if (cup(x1, x2).value != 0)
    throw CupObstruction("heisenberg_build: x1 cup x2 != 0");
  auto ring = rep_ring(*model, 1);
  HeisenbergRep r{model, 1, {}};
  for (uint32_t i = 0; i < model->d; ++i)
    r.images.push_back(
        unitri(ring, x1.coords[i], x2.coords[i], twist.coords[i]));
  std::string err;
  if (!r.valid(&err))
    throw PreconditionViolated("heisenberg_build: " + err);
  return r;
}

HeisenbergRep heisenberg_lift(const HeisenbergRep& rhobar) {
  std::string err;
  if (rhobar.level != 1 || !rhobar.valid(&err))
    throw PreconditionViolated("heisenberg_lift: invalid input: " + err);
  auto [t1, t2] = lift_orthogonal_pair(rhobar.x1(), rhobar.x2());
  KummerClass c = rhobar.corner();
  auto ring = rep_ring(*rhobar.model, 2);
  HeisenbergRep lift{rhobar.model, 2, {}};
  for (uint32_t i = 0; i < rhobar.model->d; ++i)
    lift.images.push_back(
        unitri(ring, t1.coords[i], t2.coords[i], c.coords[i]));
  if (!lift.valid(&err))
    throw PreconditionViolated("heisenberg_lift: lift invalid: " + err);
  return lift;
}

std::pair<std::vector<Mat>, std::vector<Mat>> lift_unipotent2(
    ModelPtr model, const KummerClass& x) {
  if (x.level != 1)
    throw PreconditionViolated("lift_unipotent2: expected a level-1 class");
  auto r1 = rep_ring(*model, 1);
  auto r2 = rep_ring(*model, 2);
  std::vector<Mat> lv1, lv2;
  for (uint32_t i = 0; i < model->d; ++i) {
    Mat a = Mat::identity(r1, 2);
    a.set(0, 1, r1->from_int(x.coords[i]));
    Mat b = Mat::identity(r2, 2);
    b.set(0, 1, r2->from_int(x.coords[i]));
    lv1.push_back(std::move(a));
    lv2.push_back(std::move(b));
  }
  return {std::move(lv1), std::move(lv2)};
}

}  // namespace wittlift
