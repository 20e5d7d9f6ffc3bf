#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wittlift {

class GroupError : public std::runtime_error {
 public:
  explicit GroupError(const std::string& what) : std::runtime_error(what) {}
};

// A word in the generators: +k means generator k (0-based) and -(k+1) its
// inverse, e.g. {0, 0, -1} = g0 g0 g1^{-1}.
using Word = std::vector<int32_t>;

class FiniteGroup {
 public:
  FiniteGroup(std::vector<uint32_t> table, uint32_t identity,
              std::vector<uint32_t> generators, std::vector<Word> relators,
              std::string name);

  uint32_t order() const { return n_; }
  uint32_t identity() const { return id_; }
  uint32_t mul(uint32_t a, uint32_t b) const { return table_[a * n_ + b]; }
  uint32_t inverse(uint32_t a) const { return inv_[a]; }
  uint32_t order_of(uint32_t a) const;
  uint32_t eval_word(const Word& w) const;
  const std::vector<uint32_t>& generators() const { return gens_; }
  const std::vector<Word>& relators() const { return rels_; }
  const std::string& name() const { return name_; }

  // word in the generators reaching each element (BFS from the identity);
  // entry for the identity is empty
  const std::vector<Word>& element_words() const { return words_; }

  // group-law verification: full associativity check for order <= 64,
  // sampled above; relators evaluate to identity; generators generate
  bool verify(std::string* err = nullptr) const;

  bool is_abelian() const;
  // true if every element's order is a power of p
  bool is_p_group(uint32_t p) const;
  std::vector<uint32_t> element_orders() const;

  // elements of a Sylow p-subgroup (any one, found by closure search)
  std::vector<uint32_t> sylow_subgroup(uint32_t p) const;
  // closure of a set of elements
  std::vector<uint32_t> subgroup_closure(std::vector<uint32_t> seed) const;
  bool is_subgroup(const std::vector<uint32_t>& elems) const;

  nlohmann::json to_json() const;
  static std::shared_ptr<const FiniteGroup> from_json(const nlohmann::json& j);

  // factories
  static std::shared_ptr<const FiniteGroup> cyclic(uint32_t n);
  static std::shared_ptr<const FiniteGroup> direct_product(
      const std::shared_ptr<const FiniteGroup>& a,
      const std::shared_ptr<const FiniteGroup>& b);
  static std::shared_ptr<const FiniteGroup> symmetric3();
  static std::shared_ptr<const FiniteGroup> dihedral4();
  static std::shared_ptr<const FiniteGroup> quaternion8();
  static std::shared_ptr<const FiniteGroup> heisenberg27();
  static std::shared_ptr<const FiniteGroup> sl2(uint32_t q);
  static std::shared_ptr<const FiniteGroup> trivial();

 private:
  void build_derived();

  uint32_t n_;
  std::vector<uint32_t> table_;
  uint32_t id_;
  std::vector<uint32_t> gens_;
  std::vector<Word> rels_;
  std::string name_;
  std::vector<uint32_t> inv_;
  std::vector<Word> words_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// The subgroup spanned by the given element indices as a group in its own
// right, plus the embedding (subgroup index -> parent index). The element
// list must be closed under the parent's law.
struct Subgroup {
  GroupPtr group;
  std::vector<uint32_t> elems;  // elems[i] = parent index of subgroup elt i
};
Subgroup subgroup_of(const GroupPtr& parent, std::vector<uint32_t> elems,
                     const std::string& name = "");

}  // namespace wittlift
