#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kml/levi.hpp"

namespace kml {

using Perm = std::vector<std::uint32_t>;
using ElementKey = std::vector<std::uint32_t>;

struct ElementKeyHash {
  std::size_t operator()(const ElementKey& k) const noexcept;
};

/// A finite group listed element by element, acting on {0, ..., degree-1}.
///
/// With a LeviModel attached the elements are Levi witnesses and the action is
/// the model's residue action; two witnesses may act identically (the kernel
/// of the action is kept, not quotiented). Without a model the group is a
/// plain permutation group. Element 0 is always the identity and elements are
/// listed in closure order, so every enumeration is deterministic.
class FiniteActionGroup {
 public:
  static constexpr std::size_t kDefaultCap = 10'000'000;

  static FiniteActionGroup generate(std::shared_ptr<const LeviModel> model, const std::vector<LeviElement>& gens,
                                    std::size_t cap = kDefaultCap);
  static FiniteActionGroup generate_perm(std::uint32_t degree, const std::vector<Perm>& gens,
                                         std::size_t cap = kDefaultCap);

  /// The subgroup consisting of the listed elements; the caller guarantees
  /// closure (verified against generators in debug checks by callers/tests).
  FiniteActionGroup subset(const std::vector<std::size_t>& elements) const;
  FiniteActionGroup subgroup_generated(const std::vector<std::size_t>& gens, std::size_t cap = kDefaultCap) const;

  std::size_t order() const { return perms_.size(); }
  std::uint32_t degree() const { return degree_; }
  bool has_labels() const { return model_ != nullptr; }
  const std::shared_ptr<const LeviModel>& model() const { return model_; }

  const Perm& perm(std::size_t i) const { return perms_[i]; }
  const LeviElement& label(std::size_t i) const { return labels_.at(i); }
  const ElementKey& key(std::size_t i) const { return keys_[i]; }
  std::optional<std::size_t> find(const ElementKey& k) const;
  std::optional<std::size_t> find(const LeviElement& x) const;

  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  std::uint32_t act(std::size_t i, std::uint32_t x) const { return perms_[i][x]; }

  std::size_t element_order(std::size_t i) const;
  bool is_cyclic() const;
  /// Order of the image in Sym(degree).
  std::size_t image_order() const;
  /// A small generating set (the recorded generators, or a greedy one).
  std::vector<std::size_t> generating_set() const;

  std::vector<std::vector<std::uint32_t>> orbits() const;
  std::vector<std::uint32_t> orbit(std::uint32_t x) const;
  FiniteActionGroup point_stabilizer(std::uint32_t x) const;
  /// Setwise stabiliser of one class of a partition of the domain.
  FiniteActionGroup block_stabilizer(const std::vector<std::uint32_t>& block_of, std::uint32_t block) const;
  /// Elements acting trivially on the domain.
  FiniteActionGroup kernel() const;

 private:
  FiniteActionGroup() = default;
  void insert(ElementKey key, Perm perm, std::optional<LeviElement> label);
  ElementKey make_key(const LeviElement* label, const Perm& perm) const;
  static FiniteActionGroup close(std::shared_ptr<const LeviModel> model, std::uint32_t degree,
                                 const std::vector<LeviElement>& label_gens, const std::vector<Perm>& perm_gens,
                                 std::size_t cap);

  std::shared_ptr<const LeviModel> model_;
  std::uint32_t degree_ = 0;
  std::vector<Perm> perms_;
  std::vector<LeviElement> labels_;
  std::vector<ElementKey> keys_;
  std::unordered_map<ElementKey, std::size_t, ElementKeyHash> index_;
  std::vector<std::size_t> gens_;
};

/// Index in g of every element of h; throws if h is not a subgroup of g.
/// Labelled groups in different Levi models are compared through the
/// inclusion of h's model into g's.
std::vector<std::size_t> embed_elements(const FiniteActionGroup& h, const FiniteActionGroup& g);
bool is_subgroup(const FiniteActionGroup& h, const FiniteActionGroup& g);
FiniteActionGroup intersection(const FiniteActionGroup& a, const FiniteActionGroup& b);
std::size_t group_index(const FiniteActionGroup& g, const FiniteActionGroup& h);
/// One representative per left coset gH, each the first element of its coset
/// in g's enumeration order. Returned as indices into g.
std::vector<std::size_t> coset_transversal(const FiniteActionGroup& g, const FiniteActionGroup& h);

}  // namespace kml
