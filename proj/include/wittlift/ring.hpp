#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace wittlift {

// Ring elements are small coordinate vectors; the owning Ring knows how to
// interpret them. All rings here are finite and enumerable.
using Elem = std::vector<uint32_t>;

class RingError : public std::runtime_error {
 public:
  explicit RingError(const std::string& what) : std::runtime_error(what) {}
};

class Ring {
 public:
  virtual ~Ring() = default;

  virtual std::string name() const = 0;
  // residue characteristic
  virtual uint32_t char_p() const = 0;

  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual Elem add(const Elem& a, const Elem& b) const = 0;
  virtual Elem neg(const Elem& a) const = 0;
  virtual Elem mul(const Elem& a, const Elem& b) const = 0;
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

  virtual std::optional<Elem> inv(const Elem& a) const = 0;
  bool is_unit(const Elem& a) const { return inv(a).has_value(); }
  bool is_zero(const Elem& a) const { return a == zero(); }

  virtual uint64_t size() const = 0;
  virtual Elem elem_at(uint64_t idx) const = 0;
  virtual uint64_t index_of(const Elem& a) const = 0;

  virtual nlohmann::json ring_json() const = 0;
  virtual nlohmann::json elem_json(const Elem& a) const = 0;
  virtual Elem elem_from_json(const nlohmann::json& j) const = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

// --------------------------------------------------------------------------
// F_{p^m} with a fixed monic irreducible modulus. Elements are coordinate
// vectors of length m (coefficients of 1, x, ..., x^{m-1}).
class FqField : public Ring, public std::enable_shared_from_this<FqField> {
 public:
  // modulus: coefficients c0..cm of a monic polynomial of degree m; verified
  // irreducible at construction.
  FqField(uint32_t p, uint32_t m, std::vector<uint32_t> modulus);

  // Conway polynomial where tabulated, else first irreducible in
  // lexicographic coefficient order.
  static std::shared_ptr<const FqField> make(uint32_t p, uint32_t m);

  uint32_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint64_t q() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  std::string name() const override;
  uint32_t char_p() const override { return p_; }
  Elem zero() const override { return Elem(m_, 0); }
  Elem one() const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  std::optional<Elem> inv(const Elem& a) const override;
  uint64_t size() const override { return q_; }
  Elem elem_at(uint64_t idx) const override;
  uint64_t index_of(const Elem& a) const override;

  Elem pow(const Elem& a, uint64_t e) const;
  Elem frobenius(const Elem& a) const { return pow(a, p_); }
  // p-th root, inverse of Frobenius (a bijection on a finite field)
  Elem frobenius_inv(const Elem& a) const;
  Elem from_int(uint64_t v) const;  // image of an integer in the prime field

  // a multiplicative generator of F_q^* (smallest by enumeration index)
  Elem multiplicative_generator() const;

  nlohmann::json ring_json() const override;
  nlohmann::json elem_json(const Elem& a) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

  static bool is_irreducible(uint32_t p, const std::vector<uint32_t>& poly);

 private:
  uint32_t p_, m_;
  uint64_t q_;
  std::vector<uint32_t> modulus_;
};

using FqPtr = std::shared_ptr<const FqField>;

// --------------------------------------------------------------------------
// W_2(k), length-2 Witt vectors over F_{p^m}. Element layout: a0 coords
// followed by a1 coords (2m words). Supports p <= 31; the universal addition
// polynomial coefficients binom(p,i)/p are precomputed at construction.
class WittRing : public Ring, public std::enable_shared_from_this<WittRing> {
 public:
  explicit WittRing(FqPtr k);
  static std::shared_ptr<const WittRing> make(FqPtr k);

  const FqPtr& field() const { return k_; }

  std::string name() const override;
  uint32_t char_p() const override { return k_->p(); }
  Elem zero() const override;
  Elem one() const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  std::optional<Elem> inv(const Elem& a) const override;
  uint64_t size() const override { return k_->q() * k_->q(); }
  Elem elem_at(uint64_t idx) const override;
  uint64_t index_of(const Elem& a) const override;

  Elem make_elem(const Elem& a0, const Elem& a1) const;
  Elem comp0(const Elem& w) const;
  Elem comp1(const Elem& w) const;
  Elem teichmuller(const Elem& a0) const { return make_elem(a0, k_->zero()); }
  // p * teich(c) = (0, c^p): the kernel identification via the Teichmuller digit
  Elem kernel_embed(const Elem& c) const;
  Elem kernel_digit(const Elem& w) const;  // inverse on elements (0, s)

  nlohmann::json ring_json() const override;
  nlohmann::json elem_json(const Elem& a) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

 private:
  FqPtr k_;
  std::vector<uint32_t> csum_;  // csum_[i] = binom(p,i)/p mod p, i = 1..p-1
};

using WittPtr = std::shared_ptr<const WittRing>;

// --------------------------------------------------------------------------
// Z/p^k as plain residues. Element layout: one word.
class ZmodRing : public Ring, public std::enable_shared_from_this<ZmodRing> {
 public:
  ZmodRing(uint32_t p, uint32_t k);
  static std::shared_ptr<const ZmodRing> make(uint32_t p, uint32_t k);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint64_t modulus() const { return mod_; }

  std::string name() const override;
  uint32_t char_p() const override { return p_; }
  Elem zero() const override { return {0}; }
  Elem one() const override { return {mod_ > 1 ? 1u : 0u}; }
  Elem add(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  std::optional<Elem> inv(const Elem& a) const override;
  uint64_t size() const override { return mod_; }
  Elem elem_at(uint64_t idx) const override { return {uint32_t(idx)}; }
  uint64_t index_of(const Elem& a) const override { return a[0]; }

  Elem from_int(int64_t v) const;

  nlohmann::json ring_json() const override;
  nlohmann::json elem_json(const Elem& a) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

 private:
  uint32_t p_, k_;
  uint64_t mod_;
};

using ZmodPtr = std::shared_ptr<const ZmodRing>;

// --------------------------------------------------------------------------
// W_2(F_4)[t] / (t^2 - 2, 2t): the 64-element ring. Element layout: Witt part
// (4 words) followed by the t-coefficient in F_4 (2 words). Multiplication is
// from the structure constants t^2 = 2, t^3 = 0, 2t = 0.
class Quot64Ring : public Ring, public std::enable_shared_from_this<Quot64Ring> {
 public:
  Quot64Ring();
  static std::shared_ptr<const Quot64Ring> make();

  const FqPtr& f4() const { return f4_; }
  const WittPtr& w2f4() const { return w_; }

  std::string name() const override { return "W2(F4)[t]/(t^2-2,2t)"; }
  uint32_t char_p() const override { return 2; }
  Elem zero() const override;
  Elem one() const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  std::optional<Elem> inv(const Elem& a) const override;
  uint64_t size() const override { return 64; }
  Elem elem_at(uint64_t idx) const override;
  uint64_t index_of(const Elem& a) const override;

  Elem make_elem(const Elem& witt_base, const Elem& t_coeff) const;
  Elem from_witt(const Elem& w) const { return make_elem(w, f4_->zero()); }
  Elem t() const;
  // residue map killing the radical (2 and t): Quot64 -> F_4
  Elem residue(const Elem& a) const;

  nlohmann::json ring_json() const override;
  nlohmann::json elem_json(const Elem& a) const override;
  Elem elem_from_json(const nlohmann::json& j) const override;

 private:
  FqPtr f4_;
  WittPtr w_;
};

using Quot64Ptr = std::shared_ptr<const Quot64Ring>;

// Parse a ring description produced by Ring::ring_json.
RingPtr ring_from_json(const nlohmann::json& j);

// The explicit isomorphism W2(F_p) -> Z/p^2 in Teichmuller-digit form,
// (a0, a1) |-> a0^p + p*a1 mod p^2, and its inverse.
uint64_t witt_to_zp2(const WittRing& w, const Elem& a);
Elem zp2_to_witt(const WittRing& w, uint64_t v);

}  // namespace wittlift
