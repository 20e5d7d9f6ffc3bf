#pragma once

#include "wittlift/catalog.hpp"
#include "wittlift/cohomology.hpp"

namespace wittlift {

class InvalidParameters : public std::runtime_error {
 public:
  explicit InvalidParameters(const std::string& what)
      : std::runtime_error(what) {}
};

// An explicit constructed lift with a self-contained verification
// transcript: re-verification recomputes every transcript entry from the
// stored matrix alone.
struct LiftWitness {
  std::string claim;
  nlohmann::json params;
  Mat matrix;  // over Z/4 or Z/9
  nlohmann::json transcript;

  bool reverify(std::string* err = nullptr) const;
  nlohmann::json to_json() const;
};

// Companion matrix of the degree-m divisor of u^{2^n}-1 (greedy
// largest-degree-first selection from the factor degrees 1,1,2,4,...),
// certified of order 2^n over Z/4 with single-Jordan-block reduction mod 2.
// Requires 2^{n-1} < m <= 2^n.
LiftWitness lift_power_of_two(uint32_t n, uint32_t m);

// Order-3 companion witness over Z/9 reducing to the size-m Jordan block,
// m in {2,3}. For m=2 this certifies the companion matrix of u^2+u+1,
// i.e. (0 -1; 1 -1) -- not the commonly printed (0 1; -1 1), whose cube
// is -I; the transcript records the discrepancy check.
LiftWitness lift_order_three(uint32_t m);

struct VerdictRow {
  enum class Verdict { LIFTABLE_WITNESSED, NOT_LIFTABLE_WITNESSED, OPEN };
  std::string group_name;
  uint32_t order = 0;
  uint32_t p = 0;
  Verdict verdict = Verdict::OPEN;
  std::optional<LiftWitness> lift_witness;
  std::shared_ptr<const ObstructionCertificate> obstruction;
  std::string note;

  nlohmann::json to_json() const;
};

// The Jordan-block non-lifting witness for Z/p^n: OBSTRUCTED certificate
// plus, when the search space has at most 10^6 candidates, an exhaustive
// stamp. Rejects parameters where the group is in fact liftable
// (p < 3, or p = 3 and n = 1).
VerdictRow nonlift_odd_jordan(uint32_t p, uint32_t n);

// One row per (group, prime dividing the order) for every abelian group of
// order <= max_order <= 16 plus the named non-abelian entries in range;
// negative rows carry re-verifying OBSTRUCTED certificates, positive rows
// carry witness lifts for the canonical single-Jordan-block witnesses of
// the Sylow subgroup, Q8 rows render OPEN. Sorted by (order, name, p).
std::vector<VerdictRow> abelian_verdict_table(uint32_t max_order);

// the 2-dimensional representation of Z/p x Z/p over F_{p^2} sending the
// generators to I+e and I+we (w a generator of the multiplicative group)
Representation ptimesp_rep(uint32_t p);

// The M-independent value of X^{p^n} over Z/p^2 for any lift
// X = I + N + pM of the size-(p^{n-1}+1) Jordan block:
// I + sum_{i=1}^{p-1} binom(p^n, i p^{n-1}) N^{i p^{n-1}}.
Mat lifted_block_power(uint32_t p, uint32_t n);

}  // namespace wittlift
