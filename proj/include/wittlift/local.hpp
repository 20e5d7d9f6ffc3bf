#pragma once

#include "wittlift/matrix.hpp"

namespace wittlift {

class PreconditionViolated : public std::runtime_error {
 public:
  explicit PreconditionViolated(const std::string& what)
      : std::runtime_error(what) {}
};
class NotOrthogonal : public std::runtime_error {
 public:
  explicit NotOrthogonal(const std::string& what)
      : std::runtime_error(what) {}
};
class CupObstruction : public std::runtime_error {
 public:
  explicit CupObstruction(const std::string& what)
      : std::runtime_error(what) {}
};

// Desk model of the cohomology of a p-adic field containing mu_{p^2}:
// H^1 at level k is (Z/p^k)^d with the block-hyperbolic alternating Gram
// matrix (2x2 blocks [[0,1],[-1,0]]), H^2 at level k is Z/p^k, and i / pi
// are the digit maps. MODEL coordinates: the hyperbolic normal form is a
// choice; only the pairing structure is meaningful.
struct LocalModel {
  uint32_t p = 3;  // odd prime > 2
  uint32_t d = 4;  // even rank >= 2
  uint32_t s = 2;  // mu_{p^s} contained in the field; s >= 2 here

  LocalModel(uint32_t p_, uint32_t d_, uint32_t s_ = 2);

  // entry of the Gram matrix, in {-1, 0, 1}
  int32_t gram(uint32_t i, uint32_t j) const;
  uint64_t modulus(uint32_t level) const;  // p^level
  bool same(const LocalModel& o) const {
    return p == o.p && d == o.d && s == o.s;
  }
  nlohmann::json to_json() const;
};

using ModelPtr = std::shared_ptr<const LocalModel>;

struct KummerClass {
  ModelPtr model;
  uint32_t level = 1;  // 1 or 2
  std::vector<uint32_t> coords;

  static KummerClass make(ModelPtr m, uint32_t level,
                          std::vector<int64_t> coords);
  static KummerClass zero(ModelPtr m, uint32_t level);
  bool is_zero() const;
  bool operator==(const KummerClass& o) const {
    return level == o.level && coords == o.coords;
  }
  KummerClass operator+(const KummerClass& o) const;
  KummerClass operator-(const KummerClass& o) const;
  nlohmann::json to_json() const;
  static KummerClass from_json(const nlohmann::json& j);
};

struct H2Class {
  ModelPtr model;
  uint32_t level = 1;
  uint32_t value = 0;

  bool operator==(const H2Class& o) const {
    return level == o.level && value == o.value;
  }
};

// cup product x^T J y mod p^level
H2Class cup(const KummerClass& x, const KummerClass& y);

// the exact-sequence maps: i = multiplication by p into level 2 (injective
// since mu_{p^2} is in the field), pi = reduction mod p
H2Class bockstein_i(const H2Class& t);
H2Class bockstein_pi(const H2Class& c);
KummerClass bockstein_i(const KummerClass& x);
KummerClass bockstein_pi(const KummerClass& x);

// Given level-2 classes y1, y2 whose reductions x_i are orthogonal and not
// both zero, produce level-1 z1, z2 with i(x1 cup z1 + x2 cup z2) =
// y1 cup y2. Prefers z2 = 0 when x1 != 0, otherwise z1 = 0.
std::pair<KummerClass, KummerClass> solve_property_d(const KummerClass& y1,
                                                     const KummerClass& y2);

// orthogonal level-1 pair -> orthogonal level-2 lifts, via naive digit
// lifts corrected by x~1 = y1 + i(z2), x~2 = y2 - i(z1)
std::pair<KummerClass, KummerClass> lift_orthogonal_pair(
    const KummerClass& x1, const KummerClass& x2);

// ---------------------------------------------------------------- tame model

// A tame local field with residue size q: mu_p but not mu_{p^2}, so
// H^1 = F_p^2 with basis (pi-direction, unit-direction).
struct TameModel {
  uint32_t p;
  uint32_t q;  // prime with q = 1 mod p, q != 1 mod p^2
  TameModel(uint32_t p_, uint32_t q_);
};

// H^1 class of the tame model: (valuation digit, unit digit) mod p
struct TameClass {
  uint32_t v = 0, u = 0;
};

// the classical tame symbol, computed in F_q: the dlog (base a fixed
// generator of mu_p) of ((-1)^{v(a)v(b)} u_b^{v(a)} u_a^{-v(b)})^{(q-1)/p}
uint32_t tame_symbol(const TameModel& m, const TameClass& a,
                     const TameClass& b);

// the d-map: surjective onto Z/p with kernel the unit-direction line
// (normalization c = 1: d(pi-class) = 1)
uint32_t tame_d_map(const TameModel& m, const TameClass& x);

// ----------------------------------------------------------- Heisenberg reps

// A mod-p^level representation of the model's one-relator pro-p quotient
// (relation g1^{p^s} [g1,g2]...[g_{d-1},g_d]) into unitriangular 3x3
// matrices over Z/p^level.
struct HeisenbergRep {
  ModelPtr model;
  uint32_t level = 1;
  std::vector<Mat> images;  // one per generator g1..gd

  // superdiagonal character rows and the corner 1-cochain
  KummerClass x1() const;
  KummerClass x2() const;
  KummerClass corner() const;

  // unitriangular shape and relation |-> I, checked by direct evaluation
  bool valid(std::string* err = nullptr) const;
  HeisenbergRep reduced() const;  // level 2 -> level 1

  nlohmann::json to_json() const;
  static HeisenbergRep from_json(const nlohmann::json& j);
};

// build the level-1 rep with the given characters and corner twist;
// throws CupObstruction unless x1 cup x2 = 0
HeisenbergRep heisenberg_build(ModelPtr model, const KummerClass& x1,
                               const KummerClass& x2,
                               const KummerClass& twist);

// lift to level 2: orthogonal-pair lifting on the characters, digit-lifted
// corner; the reduction equals the input exactly
HeisenbergRep heisenberg_lift(const HeisenbergRep& rhobar);

// the 2x2 unitriangular rep with superdiagonal character x, and its level-2
// digit lift
std::pair<std::vector<Mat>, std::vector<Mat>> lift_unipotent2(
    ModelPtr model, const KummerClass& x);

}  // namespace wittlift
