#pragma once

#include <optional>

#include "wittlift/ring.hpp"

namespace wittlift {

// Square matrix over any Ring, entries row-major. Values are immutable in
// spirit: operations return fresh matrices.
class Mat {
 public:
  Mat(RingPtr ring, uint32_t n);
  static Mat identity(RingPtr ring, uint32_t n);

  const RingPtr& ring() const { return ring_; }
  uint32_t n() const { return n_; }

  const Elem& at(uint32_t i, uint32_t j) const { return e_[i * n_ + j]; }
  void set(uint32_t i, uint32_t j, Elem v) { e_[i * n_ + j] = std::move(v); }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat scaled(const Elem& c) const;
  Mat pow(uint64_t e) const;
  bool operator==(const Mat& o) const { return e_ == o.e_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_identity() const;
  bool is_zero() const;

  // Gauss-Jordan with unit pivots; works over the local rings used here.
  std::optional<Mat> inverse() const;

  nlohmann::json to_json() const;
  static Mat from_json(const nlohmann::json& j);
  static Mat from_json(const nlohmann::json& j, RingPtr ring);

 private:
  RingPtr ring_;
  uint32_t n_;
  std::vector<Elem> e_;
};

struct NoOrderWithinBound {};

// least e <= bound with M^e = I; requires M invertible
std::optional<uint64_t> matrix_order(const Mat& m, uint64_t bound);

// componentwise first-Witt-coordinate / mod-p reduction of a length-2 lift
Mat reduce_mod_p(const Mat& m);

// entrywise Teichmuller lift of a matrix over Fq into W2(Fq)
Mat teichmuller_lift(const Mat& m, WittPtr w);

// map a matrix over Z/p^2 to the conjugate representation over W2(F_p) and
// back, via the Teichmuller-digit isomorphism
Mat zp2_matrix_to_witt(const Mat& m, WittPtr w);

}  // namespace wittlift
