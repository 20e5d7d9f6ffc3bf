#pragma once

#include <mutex>

#include "wittlift/group.hpp"
#include "wittlift/matrix.hpp"

namespace wittlift {

// A matrix representation: one invertible matrix per group generator over a
// declared ring. Images of all elements are expanded lazily (memoized behind
// a lock so concurrent readers see a consistent cache).
class Representation {
 public:
  Representation(GroupPtr group, RingPtr ring, uint32_t dim,
                 std::vector<Mat> generator_images);

  const GroupPtr& group() const { return group_; }
  const RingPtr& ring() const { return ring_; }
  uint32_t dim() const { return dim_; }
  const std::vector<Mat>& generator_images() const { return gen_images_; }

  const Mat& image(uint32_t g) const;

  bool satisfies_relators() const;
  // f(gh) = f(g) f(h), verified on all pairs for |G| <= 128
  bool verify_homomorphism(std::string* err = nullptr) const;

  // strict equality: same group/ring/dim and identical generator images
  bool strictly_equal(const Representation& o) const;
  // conjugacy-insensitive equality (searches for an intertwiner by solving
  // f(g) X = X f'(g) for invertible X); feasible at desk dimensions only
  bool conjugate_to(const Representation& o) const;

  Representation reduced_mod_p() const;

  nlohmann::json to_json() const;
  static Representation from_json(const nlohmann::json& j);
  static Representation from_json(const nlohmann::json& j, GroupPtr group);

 private:
  void expand() const;

  GroupPtr group_;
  RingPtr ring_;
  uint32_t dim_;
  std::vector<Mat> gen_images_;
  // heap-held so representations stay copyable; copies share the cache
  struct Cache {
    std::once_flag flag;
    std::vector<Mat> images;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Induced representation from a subgroup designated by an element-index
// list; coset representatives are chosen by least element index, so the
// induced matrices are deterministic.
Representation induce_rep(const GroupPtr& g, const Subgroup& h,
                          const Representation& rho);

// the idempotent onto the first coset block, which lies in the commutant of
// the restriction of the induced representation to the subgroup
Mat induction_summand_idempotent(const Representation& induced, uint32_t block_dim);

// generator of Z/p^n maps to a unipotent Jordan block of size p^{n-1}+1
Representation jordan_block_rep(uint32_t p, uint32_t n, FqPtr field);

// the 2^m-dimensional representation of Z/2^m x Z/2^n over F4 given by
// (i,j) -> (I+x)^i (I+y)^j with y = omega * x^{2^{m-n}}
Representation two_powers_rep(uint32_t m, uint32_t n);

// unipotent single Jordan block I + N_size over the given field
Mat unipotent_jordan_block(FqPtr field, uint32_t size);

// restriction of a representation of the parent group to a subgroup
Representation restrict_rep(const Representation& f, const Subgroup& h);

}  // namespace wittlift
