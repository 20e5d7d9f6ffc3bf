#pragma once

#include "wittlift/rep.hpp"

namespace wittlift {

// Lookup tables for a small finite field, indexed by Ring element indices;
// the linear solver works on these indices instead of coordinate vectors.
struct SmallField {
  explicit SmallField(const FqPtr& k);

  uint32_t q = 0;
  std::vector<uint16_t> addt, mult;  // q*q entries
  std::vector<uint16_t> negt, invt;  // q entries; invt[0] = 0

  uint16_t add(uint16_t a, uint16_t b) const { return addt[a * q + b]; }
  uint16_t mul(uint16_t a, uint16_t b) const { return mult[a * q + b]; }
  uint16_t neg(uint16_t a) const { return negt[a]; }
  uint16_t inv(uint16_t a) const { return invt[a]; }
  uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }
};

// module vector: field element indices, length = module dimension
using FVec = std::vector<uint16_t>;

// A finite G-module over F_q: one action matrix (as flat field indices,
// row-major dim x dim) per group element.
class GModule {
 public:
  GModule(GroupPtr group, FqPtr field, uint32_t dim,
          std::vector<std::vector<uint16_t>> action);

  // M_n(k) with g.M = f(g) M f(g)^{-1}; remembers f for lift assembly
  static GModule adjoint(const Representation& f);
  // the representation space itself
  static GModule of_rep(const Representation& f);
  static GModule trivial(GroupPtr group, FqPtr field, uint32_t dim);

  const GroupPtr& group() const { return group_; }
  const FqPtr& field() const { return field_; }
  uint32_t dim() const { return dim_; }
  const SmallField& tab() const { return tab_; }
  const std::vector<uint16_t>& action_matrix(uint32_t g) const {
    return act_[g];
  }
  FVec apply(uint32_t g, const FVec& v) const;

  // dim of V^G (common kernel of act[s] - I over the generators)
  uint32_t invariants_dim() const;

  GModule restrict_to(const Subgroup& h) const;

  // the representation this module is the adjoint of, if any
  const std::shared_ptr<const Representation>& base_rep() const {
    return rep_;
  }

 private:
  GroupPtr group_;
  FqPtr field_;
  uint32_t dim_;
  SmallField tab_;
  std::vector<std::vector<uint16_t>> act_;
  std::shared_ptr<const Representation> rep_;
};

using ModulePtr = std::shared_ptr<const GModule>;

// Normalized 2-cochain G x G -> V; constructed values are checked
// normalized, the cocycle identity is a separate check.
class TwoCocycle {
 public:
  TwoCocycle(ModulePtr module, std::vector<FVec> values);

  const ModulePtr& module() const { return module_; }
  const FVec& at(uint32_t g, uint32_t h) const {
    return values_[g * module_->group()->order() + h];
  }
  bool is_zero() const;

  // the identity g.c(h,l) - c(gh,l) + c(g,hl) - c(g,h) = 0; full checks all
  // triples, otherwise only (g, h, generator) triples (which is what the
  // coboundary solver's reduction relies on)
  bool check_identity(bool full, std::string* err = nullptr) const;

  TwoCocycle operator-(const TwoCocycle& o) const;
  TwoCocycle restrict_to(const Subgroup& h) const;

  uint64_t hash() const;  // FNV-1a over the value table

 private:
  ModulePtr module_;
  std::vector<FVec> values_;
};

struct RankData {
  uint64_t unknowns = 0, equations = 0, rank = 0, aug_rank = 0;
};

struct ExhaustiveStamp {
  uint64_t searched = 0;
  bool complete = false;
  bool lift_found = false;
};

struct ObstructionCertificate {
  enum class Verdict { LIFTS, OBSTRUCTED };
  Verdict verdict;
  std::shared_ptr<const Representation> rep;   // the mod-p representation
  std::shared_ptr<const TwoCocycle> cocycle;
  std::shared_ptr<const Representation> lift;  // over W2(k); LIFTS only
  std::vector<FVec> cochain;                   // b(g) per element; LIFTS only
  RankData rank_data;
  std::optional<ExhaustiveStamp> stamp;

  bool lifts() const { return verdict == Verdict::LIFTS; }
  // recompute everything the verdict rests on from the stored data alone
  bool reverify(std::string* err = nullptr) const;
  nlohmann::json to_json() const;
};

// The obstruction cocycle of a mod-p representation: with the entrywise
// Teichmuller section u of f into GL_n(W2(k)), c(g,h) is defined by
// u(g)u(h) = (I + p c(g,h)) u(gh), read in Ad via p W2(k) = k (Teichmuller
// digit). |G| <= 128.
TwoCocycle obstruction_class(const Representation& f);
// same, from an arbitrary section (section[g] must lift f(g), section[e]=I)
TwoCocycle obstruction_from_section(const Representation& f,
                                    const std::vector<Mat>& section);
// single-threaded reference implementation (kept for testing/benchmarks)
TwoCocycle obstruction_class_serial(const Representation& f);

// Decide whether c is a coboundary, solving d^1(b) = -c so that b is the
// correction in the assembled lift. Only the (g, generator) subsystem is solved; a solution
// of it satisfies every equation because the defect is a 2-cocycle vanishing
// on generator pairs, and the verdict is assembled and fully re-verified.
ObstructionCertificate is_coboundary(const TwoCocycle& c);

// Enumerate every lift of the generator images (Teichmuller lift plus an
// arbitrary kernel correction per generator) and test the group relators;
// requires a presentation. Deterministic: reports the least candidate index
// that works.
struct SearchOutcome {
  bool found = false;
  uint64_t searched = 0;
  bool complete = false;
  std::optional<Representation> lift;
};
SearchOutcome exhaustive_lift_search(const Representation& f, uint64_t budget);
SearchOutcome exhaustive_lift_search_serial(const Representation& f,
                                            uint64_t budget);

enum class H1Mode { Table, Relator };

// dim_k H^1(G, V) = dim Z^1 - dim B^1. Table mode solves the cocycle system
// on (element, generator) pairs; Relator mode counts derivations on the
// generators killed by the relator words (needs a complete presentation).
uint32_t h1_dimension(const GModule& m, H1Mode mode = H1Mode::Table);

struct RigidityReport {
  ObstructionCertificate cert;
  uint32_t h1 = 0;
  bool strongly_rigid = false;
};
RigidityReport is_strongly_rigid(const Representation& f);

// The quotient-ring verification behind the non-rigidity remark: X with
// (I+X)^4 = I reducing to a size-4 Jordan block, Y = tX + z3 X^2, and the
// chain (I+Y)^2 = I, [I+X, I+Y] = I, residue(Y) = omega x^2.
nlohmann::json nonrigid_lift_check();

}  // namespace wittlift
