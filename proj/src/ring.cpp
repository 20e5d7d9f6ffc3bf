#include "wittlift/ring.hpp"

#include <algorithm>
#include <map>

namespace wittlift {

namespace {

uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Conway polynomials for the fields this artifact actually touches; coeffs
// c0..cm. Everything else falls back to the lexicographic search.
const std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> kConway = {
    {{2, 2}, {1, 1, 1}},        // x^2 + x + 1
    {{2, 3}, {1, 1, 0, 1}},     // x^3 + x + 1
    {{2, 4}, {1, 1, 0, 0, 1}},  // x^4 + x + 1
    {{3, 2}, {2, 2, 1}},        // x^2 + 2x + 2
    {{3, 3}, {1, 2, 0, 1}},     // x^3 + 2x + 1
    {{5, 2}, {2, 4, 1}},        // x^2 + 4x + 2
    {{7, 2}, {3, 6, 1}},        // x^2 + 6x + 3
};

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// polynomial arithmetic mod p on coefficient vectors (low degree first)
std::vector<uint32_t> poly_trim(std::vector<uint32_t> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::vector<uint32_t> poly_mod(std::vector<uint32_t> a,
                               const std::vector<uint32_t>& b, uint32_t p) {
  a = poly_trim(std::move(a));
  auto bb = poly_trim(b);
  if (bb.empty()) throw RingError("poly_mod by zero");
  // make b monic
  uint32_t lead = bb.back();
  uint32_t il = 1;
  for (uint32_t t = 1; t < p; ++t)
    if (t * lead % p == 1) { il = t; break; }
  while (a.size() >= bb.size()) {
    uint32_t f = uint64_t(a.back()) * il % p;
    size_t off = a.size() - bb.size();
    for (size_t i = 0; i < bb.size(); ++i)
      a[off + i] = (a[off + i] + p - uint32_t(uint64_t(f) * bb[i] % p)) % p;
    a = poly_trim(std::move(a));
  }
  return a;
}

std::vector<uint32_t> poly_mul_mod(const std::vector<uint32_t>& a,
                                   const std::vector<uint32_t>& b,
                                   const std::vector<uint32_t>& mod,
                                   uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + uint64_t(a[i]) * b[j]) % p;
  return poly_mod(std::move(c), mod, p);
}

std::vector<uint32_t> poly_powmod(std::vector<uint32_t> a, uint64_t e,
                                  const std::vector<uint32_t>& mod, uint32_t p) {
  std::vector<uint32_t> r = {1};
  a = poly_mod(std::move(a), mod, p);
  while (e) {
    if (e & 1) r = poly_mul_mod(r, a, mod, p);
    a = poly_mul_mod(a, a, mod, p);
    e >>= 1;
  }
  return r;
}

std::vector<uint32_t> poly_gcd(std::vector<uint32_t> a,
                               std::vector<uint32_t> b, uint32_t p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    auto r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------- FqField

bool FqField::is_irreducible(uint32_t p, const std::vector<uint32_t>& poly) {
  auto f = poly_trim(poly);
  if (f.size() < 2) return false;
  uint32_t m = uint32_t(f.size()) - 1;
  if (m == 1) return true;
  // x^{p^m} == x mod f, and gcd(x^{p^d} - x, f) = 1 for proper divisors d
  std::vector<uint32_t> x = {0, 1};
  auto xq = poly_powmod(x, ipow(p, m), f, p);
  std::vector<uint32_t> diff = xq;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  if (!poly_trim(diff).empty()) return false;
  for (uint32_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto xd = poly_powmod(x, ipow(p, d), f, p);
    std::vector<uint32_t> g = xd;
    g.resize(std::max<size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    auto gg = poly_gcd(g, f, p);
    if (gg.size() > 1) return false;
  }
  return true;
}

FqField::FqField(uint32_t p, uint32_t m, std::vector<uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw RingError("FqField: p not prime");
  if (m == 0) throw RingError("FqField: m must be positive");
  if (modulus_.size() != m + 1 || modulus_[m] != 1)
    throw RingError("FqField: modulus must be monic of degree m");
  for (auto c : modulus_)
    if (c >= p) throw RingError("FqField: modulus coefficient out of range");
  if (!is_irreducible(p, modulus_))
    throw RingError("FqField: modulus is reducible");
  q_ = ipow(p, m);
  if (q_ > (1ull << 31)) throw RingError("FqField: field too large");
}

FqPtr FqField::make(uint32_t p, uint32_t m) {
  auto it = kConway.find({p, m});
  if (it != kConway.end())
    return std::make_shared<const FqField>(p, m, it->second);
  if (m == 1) {
    std::vector<uint32_t> mod = {0, 1};
    return std::make_shared<const FqField>(p, 1, mod);
  }
  // first irreducible monic polynomial in lexicographic coefficient order
  uint64_t total = ipow(p, m);
  for (uint64_t code = 0; code < total; ++code) {
    std::vector<uint32_t> mod(m + 1, 0);
    uint64_t c = code;
    for (uint32_t i = 0; i < m; ++i) {
      mod[i] = uint32_t(c % p);
      c /= p;
    }
    mod[m] = 1;
    if (is_irreducible(p, mod))
      return std::make_shared<const FqField>(p, m, mod);
  }
  throw RingError("FqField: no irreducible polynomial found");
}

std::string FqField::name() const {
  return "F" + std::to_string(q_);
}

Elem FqField::one() const {
  Elem e(m_, 0);
  e[0] = 1 % p_;
  return e;
}

Elem FqField::add(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (uint32_t i = 0; i < m_; ++i) r[i] = (a[i] + b[i]) % p_;
  return r;
}

Elem FqField::neg(const Elem& a) const {
  Elem r(m_);
  for (uint32_t i = 0; i < m_; ++i) r[i] = (p_ - a[i]) % p_;
  return r;
}

Elem FqField::mul(const Elem& a, const Elem& b) const {
  std::vector<uint32_t> c(2 * m_ - 1, 0);
  for (uint32_t i = 0; i < m_; ++i) {
    if (!a[i]) continue;
    for (uint32_t j = 0; j < m_; ++j)
      c[i + j] = uint32_t((c[i + j] + uint64_t(a[i]) * b[j]) % p_);
  }
  auto red = poly_mod(std::move(c), modulus_, p_);
  red.resize(m_, 0);
  return red;
}

Elem FqField::pow(const Elem& a, uint64_t e) const {
  Elem r = one(), base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Elem FqField::frobenius_inv(const Elem& a) const {
  return pow(a, ipow(p_, m_ - 1));
}

std::optional<Elem> FqField::inv(const Elem& a) const {
  if (is_zero(a)) return std::nullopt;
  return pow(a, q_ - 2);
}

Elem FqField::elem_at(uint64_t idx) const {
  Elem e(m_);
  for (uint32_t i = 0; i < m_; ++i) {
    e[i] = uint32_t(idx % p_);
    idx /= p_;
  }
  return e;
}

uint64_t FqField::index_of(const Elem& a) const {
  uint64_t idx = 0;
  for (uint32_t i = m_; i-- > 0;) idx = idx * p_ + a[i];
  return idx;
}

Elem FqField::from_int(uint64_t v) const {
  Elem e(m_, 0);
  e[0] = uint32_t(v % p_);
  return e;
}

Elem FqField::multiplicative_generator() const {
  for (uint64_t i = 1; i < q_; ++i) {
    Elem g = elem_at(i);
    // order check against proper divisors of q-1
    bool ok = true;
    for (uint64_t d = 1; d * d <= q_ - 1; ++d) {
      if ((q_ - 1) % d != 0) continue;
      for (uint64_t e : {d, (q_ - 1) / d}) {
        if (e == q_ - 1) continue;
        if (pow(g, e) == one()) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) return g;
  }
  throw RingError("no multiplicative generator");
}

nlohmann::json FqField::ring_json() const {
  return {{"kind", "Fq"}, {"p", p_}, {"m", m_}, {"modulus", modulus_}};
}

nlohmann::json FqField::elem_json(const Elem& a) const {
  return {{"p", p_}, {"m", m_}, {"coords", a}};
}

Elem FqField::elem_from_json(const nlohmann::json& j) const {
  Elem a = j.at("coords").get<Elem>();
  if (a.size() != m_) throw RingError("FqElement: bad coordinate count");
  for (auto c : a)
    if (c >= p_) throw RingError("FqElement: residue out of range");
  return a;
}

// ---------------------------------------------------------------- WittRing

WittRing::WittRing(FqPtr k) : k_(std::move(k)) {
  uint32_t p = k_->p();
  if (p > 31) throw RingError("WittRing: p > 31 unsupported");
  csum_.assign(p, 0);
  // binom(p,i)/p = binom(p-1,i-1)/i == (-1)^(i-1) / i mod p for 1 <= i < p;
  // the closed form avoids overflowing the raw binomial at large p
  for (uint32_t i = 1; i < p; ++i) {
    uint32_t inv = 1;
    while (uint64_t(inv) * i % p != 1) ++inv;
    csum_[i] = uint32_t(uint64_t(i % 2 ? 1 : p - 1) * inv % p);
  }
}

WittPtr WittRing::make(FqPtr k) {
  return std::make_shared<const WittRing>(std::move(k));
}

std::string WittRing::name() const { return "W2(" + k_->name() + ")"; }

Elem WittRing::make_elem(const Elem& a0, const Elem& a1) const {
  Elem e = a0;
  e.insert(e.end(), a1.begin(), a1.end());
  return e;
}

Elem WittRing::comp0(const Elem& w) const {
  return Elem(w.begin(), w.begin() + k_->m());
}

Elem WittRing::comp1(const Elem& w) const {
  return Elem(w.begin() + k_->m(), w.end());
}

Elem WittRing::zero() const { return make_elem(k_->zero(), k_->zero()); }
Elem WittRing::one() const { return make_elem(k_->one(), k_->zero()); }

Elem WittRing::add(const Elem& a, const Elem& b) const {
  const auto& k = *k_;
  uint32_t p = k.p();
  Elem a0 = comp0(a), a1 = comp1(a), b0 = comp0(b), b1 = comp1(b);
  Elem s0 = k.add(a0, b0);
  Elem s1 = k.add(a1, b1);
  // s1 -= sum_{i=1}^{p-1} (binom(p,i)/p) a0^i b0^{p-i}
  Elem ai = a0;
  for (uint32_t i = 1; i < p; ++i) {
    if (csum_[i]) {
      Elem term = k.mul(ai, k.pow(b0, p - i));
      term = k.mul(term, k.from_int(csum_[i]));
      s1 = k.add(s1, k.neg(term));
    }
    ai = k.mul(ai, a0);
  }
  return make_elem(s0, s1);
}

Elem WittRing::neg(const Elem& a) const {
  const auto& k = *k_;
  Elem a0 = comp0(a), a1 = comp1(a);
  if (k.p() == 2) {
    // -(a0, a1) = (a0, a0^2 + a1) in characteristic 2
    return make_elem(a0, k.add(k.mul(a0, a0), a1));
  }
  return make_elem(k.neg(a0), k.neg(a1));
}

Elem WittRing::mul(const Elem& a, const Elem& b) const {
  const auto& k = *k_;
  Elem a0 = comp0(a), a1 = comp1(a), b0 = comp0(b), b1 = comp1(b);
  Elem r0 = k.mul(a0, b0);
  Elem r1 = k.add(k.mul(k.frobenius(a0), b1), k.mul(a1, k.frobenius(b0)));
  return make_elem(r0, r1);
}

std::optional<Elem> WittRing::inv(const Elem& a) const {
  const auto& k = *k_;
  Elem a0 = comp0(a), a1 = comp1(a);
  auto i0 = k.inv(a0);
  if (!i0) return std::nullopt;
  // (a0,a1)^{-1} = (a0^{-1}, -a1 * a0^{-2p})
  Elem y0 = *i0;
  Elem y1 = k.neg(k.mul(a1, k.pow(y0, 2 * k.p())));
  return make_elem(y0, y1);
}

Elem WittRing::elem_at(uint64_t idx) const {
  uint64_t q = k_->q();
  return make_elem(k_->elem_at(idx % q), k_->elem_at(idx / q));
}

uint64_t WittRing::index_of(const Elem& a) const {
  return k_->index_of(comp0(a)) + k_->q() * k_->index_of(comp1(a));
}

Elem WittRing::kernel_embed(const Elem& c) const {
  return make_elem(k_->zero(), k_->frobenius(c));
}

Elem WittRing::kernel_digit(const Elem& w) const {
  if (!k_->is_zero(comp0(w)))
    throw RingError("kernel_digit: element not in p*W2(k)");
  return k_->frobenius_inv(comp1(w));
}

nlohmann::json WittRing::ring_json() const {
  return {{"kind", "W2"}, {"field", k_->ring_json()}};
}

nlohmann::json WittRing::elem_json(const Elem& a) const {
  return {{"a0", k_->elem_json(comp0(a))}, {"a1", k_->elem_json(comp1(a))}};
}

Elem WittRing::elem_from_json(const nlohmann::json& j) const {
  return make_elem(k_->elem_from_json(j.at("a0")),
                   k_->elem_from_json(j.at("a1")));
}

// ---------------------------------------------------------------- ZmodRing

ZmodRing::ZmodRing(uint32_t p, uint32_t k) : p_(p), k_(k) {
  if (!is_prime(p)) throw RingError("ZmodRing: p not prime");
  if (k == 0) throw RingError("ZmodRing: k must be positive");
  mod_ = 1;
  for (uint32_t i = 0; i < k; ++i) {
    mod_ *= p;
    if (mod_ > (1ull << 31)) throw RingError("ZmodRing: modulus too large");
  }
}

ZmodPtr ZmodRing::make(uint32_t p, uint32_t k) {
  return std::make_shared<const ZmodRing>(p, k);
}

std::string ZmodRing::name() const { return "Z/" + std::to_string(mod_); }

Elem ZmodRing::add(const Elem& a, const Elem& b) const {
  return {uint32_t((uint64_t(a[0]) + b[0]) % mod_)};
}

Elem ZmodRing::neg(const Elem& a) const {
  return {uint32_t((mod_ - a[0]) % mod_)};
}

Elem ZmodRing::mul(const Elem& a, const Elem& b) const {
  return {uint32_t(uint64_t(a[0]) * b[0] % mod_)};
}

std::optional<Elem> ZmodRing::inv(const Elem& a) const {
  if (a[0] % p_ == 0) return std::nullopt;
  // extended Euclid
  int64_t r0 = int64_t(mod_), r1 = a[0], s0 = 0, s1 = 1;
  while (r1) {
    int64_t qq = r0 / r1;
    std::swap(r0 -= qq * r1, r1);
    std::swap(s0 -= qq * s1, s1);
  }
  int64_t s = s0 % int64_t(mod_);
  if (s < 0) s += mod_;
  return Elem{uint32_t(s)};
}

Elem ZmodRing::from_int(int64_t v) const {
  int64_t r = v % int64_t(mod_);
  if (r < 0) r += mod_;
  return {uint32_t(r)};
}

nlohmann::json ZmodRing::ring_json() const {
  return {{"kind", "Zmod"}, {"p", p_}, {"k", k_}};
}

nlohmann::json ZmodRing::elem_json(const Elem& a) const { return a[0]; }

Elem ZmodRing::elem_from_json(const nlohmann::json& j) const {
  uint64_t v = j.get<uint64_t>();
  if (v >= mod_) throw RingError("Zmod element out of range");
  return {uint32_t(v)};
}

// ---------------------------------------------------------------- Quot64Ring

Quot64Ring::Quot64Ring()
    : f4_(FqField::make(2, 2)), w_(WittRing::make(f4_)) {}

Quot64Ptr Quot64Ring::make() { return std::make_shared<const Quot64Ring>(); }

Elem Quot64Ring::make_elem(const Elem& witt_base, const Elem& t_coeff) const {
  Elem e = witt_base;
  e.insert(e.end(), t_coeff.begin(), t_coeff.end());
  return e;
}

Elem Quot64Ring::zero() const { return make_elem(w_->zero(), f4_->zero()); }
Elem Quot64Ring::one() const { return make_elem(w_->one(), f4_->zero()); }
Elem Quot64Ring::t() const { return make_elem(w_->zero(), f4_->one()); }

namespace {
Elem q64_base(const Elem& a) { return Elem(a.begin(), a.begin() + 4); }
Elem q64_t(const Elem& a) { return Elem(a.begin() + 4, a.end()); }
}  // namespace

Elem Quot64Ring::add(const Elem& a, const Elem& b) const {
  return make_elem(w_->add(q64_base(a), q64_base(b)),
                   f4_->add(q64_t(a), q64_t(b)));
}

Elem Quot64Ring::neg(const Elem& a) const {
  return make_elem(w_->neg(q64_base(a)), q64_t(a));
}

Elem Quot64Ring::mul(const Elem& a, const Elem& b) const {
  // (a + b t)(c + d t) = ac + (bd) t^2 + (a0 d + c0 b) t, with t^2 = 2 and
  // 2t = 0; b*d lives in F4 and (bd)*2 = (0, (bd)^2) in W2(F4).
  Elem wa = q64_base(a), wb = q64_base(b);
  Elem ta = q64_t(a), tb = q64_t(b);
  Elem base = w_->mul(wa, wb);
  Elem bd = f4_->mul(ta, tb);
  base = w_->add(base, w_->make_elem(f4_->zero(), f4_->mul(bd, bd)));
  Elem tc = f4_->add(f4_->mul(w_->comp0(wa), tb), f4_->mul(w_->comp0(wb), ta));
  return make_elem(base, tc);
}

std::optional<Elem> Quot64Ring::inv(const Elem& a) const {
  if (f4_->is_zero(w_->comp0(q64_base(a)))) return std::nullopt;
  // the unit group has order |R| - |radical|; exponent divides 48, so a^47
  // inverts every unit (checked exhaustively in tests); use simple search
  // over the 64 elements instead, the ring is tiny.
  for (uint64_t i = 0; i < 64; ++i) {
    Elem c = elem_at(i);
    if (mul(a, c) == one()) return c;
  }
  return std::nullopt;
}

Elem Quot64Ring::elem_at(uint64_t idx) const {
  return make_elem(w_->elem_at(idx % 16), f4_->elem_at(idx / 16));
}

uint64_t Quot64Ring::index_of(const Elem& a) const {
  return w_->index_of(q64_base(a)) + 16 * f4_->index_of(q64_t(a));
}

Elem Quot64Ring::residue(const Elem& a) const {
  return w_->comp0(q64_base(a));
}

nlohmann::json Quot64Ring::ring_json() const { return {{"kind", "Quot64"}}; }

nlohmann::json Quot64Ring::elem_json(const Elem& a) const {
  return {{"base", w_->elem_json(q64_base(a))},
          {"t", f4_->elem_json(q64_t(a))}};
}

Elem Quot64Ring::elem_from_json(const nlohmann::json& j) const {
  return make_elem(w_->elem_from_json(j.at("base")),
                   f4_->elem_from_json(j.at("t")));
}

// ---------------------------------------------------------------- helpers

RingPtr ring_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Fq") {
    return std::make_shared<const FqField>(
        j.at("p").get<uint32_t>(), j.at("m").get<uint32_t>(),
        j.at("modulus").get<std::vector<uint32_t>>());
  }
  if (kind == "W2") {
    auto f = ring_from_json(j.at("field"));
    auto fq = std::dynamic_pointer_cast<const FqField>(f);
    if (!fq) throw RingError("W2 ring must be over Fq");
    return WittRing::make(fq);
  }
  if (kind == "Zmod")
    return ZmodRing::make(j.at("p").get<uint32_t>(), j.at("k").get<uint32_t>());
  if (kind == "Quot64") return Quot64Ring::make();
  throw RingError("unknown ring kind: " + kind);
}

uint64_t witt_to_zp2(const WittRing& w, const Elem& a) {
  const auto& k = *w.field();
  if (k.m() != 1) throw RingError("witt_to_zp2: base field must be prime");
  uint64_t p = k.p();
  uint64_t a0 = w.comp0(a)[0], a1 = w.comp1(a)[0];
  // Teichmuller lift of a0 in Z/p^2 is a0^p mod p^2
  uint64_t t = 1;
  for (uint32_t i = 0; i < p; ++i) t = t * a0 % (p * p);
  return (t + p * a1) % (p * p);
}

Elem zp2_to_witt(const WittRing& w, uint64_t v) {
  const auto& k = *w.field();
  uint64_t p = k.p();
  uint64_t a0 = v % p;
  uint64_t t = 1;
  for (uint32_t i = 0; i < p; ++i) t = t * a0 % (p * p);
  uint64_t diff = (v + p * p - t) % (p * p);
  return w.make_elem(k.from_int(a0), k.from_int(diff / p));
}

}  // namespace wittlift
