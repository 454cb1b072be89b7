#include "kml/group.hpp"

#include <algorithm>
#include <numeric>

#include "kml/error.hpp"

namespace kml {

std::size_t ElementKeyHash::operator()(const ElementKey& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (std::uint32_t v : k) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

ElementKey FiniteActionGroup::make_key(const LeviElement* label, const Perm& perm) const {
  if (model_) return model_->key(*label);
  return perm;
}

void FiniteActionGroup::insert(ElementKey key, Perm perm, std::optional<LeviElement> label) {
  index_.emplace(key, perms_.size());
  keys_.push_back(std::move(key));
  perms_.push_back(std::move(perm));
  if (label) labels_.push_back(std::move(*label));
}

FiniteActionGroup FiniteActionGroup::close(std::shared_ptr<const LeviModel> model, std::uint32_t degree,
                                           const std::vector<LeviElement>& label_gens,
                                           const std::vector<Perm>& perm_gens, std::size_t cap) {
  FiniteActionGroup g;
  g.model_ = std::move(model);
  g.degree_ = degree;
  if (g.model_) {
    const LeviModel& m = *g.model_;
    LeviElement id = m.identity();
    Perm p = m.permutation(id);
    g.insert(m.key(id), std::move(p), id);
    std::vector<LeviElement> gens;
    for (const auto& x : label_gens) gens.push_back(m.canonical(x.factors, x.torus));
    for (std::size_t cur = 0; cur < g.perms_.size(); ++cur) {
      for (const auto& s : gens) {
        LeviElement prod = m.multiply(g.labels_[cur], s);
        ElementKey k = m.key(prod);
        if (g.index_.count(k)) continue;
        if (g.perms_.size() >= cap) {
          throw CapExceeded("group order exceeds cap " + std::to_string(cap));
        }
        Perm pp = m.permutation(prod);
        g.insert(std::move(k), std::move(pp), std::move(prod));
      }
    }
    for (const auto& s : gens) g.gens_.push_back(*g.find(m.key(s)));
  } else {
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0u);
    g.insert(id, id, std::nullopt);
    for (const auto& s : perm_gens) {
      if (s.size() != degree) throw InvalidArgument("generate_perm: generator degree mismatch");
    }
    for (std::size_t cur = 0; cur < g.perms_.size(); ++cur) {
      for (const auto& s : perm_gens) {
        Perm prod(degree);
        const Perm& x = g.perms_[cur];
        for (std::uint32_t i = 0; i < degree; ++i) prod[i] = x[s[i]];
        if (g.index_.count(prod)) continue;
        if (g.perms_.size() >= cap) throw CapExceeded("group order exceeds cap " + std::to_string(cap));
        g.insert(prod, prod, std::nullopt);
      }
    }
    for (const auto& s : perm_gens) g.gens_.push_back(*g.find(s));
  }
  return g;
}

FiniteActionGroup FiniteActionGroup::generate(std::shared_ptr<const LeviModel> model,
                                              const std::vector<LeviElement>& gens, std::size_t cap) {
  if (!model) throw InvalidArgument("FiniteActionGroup::generate: null model");
  const std::uint32_t degree = model->chamber_count();
  return close(std::move(model), degree, gens, {}, cap);
}

FiniteActionGroup FiniteActionGroup::generate_perm(std::uint32_t degree, const std::vector<Perm>& gens,
                                                   std::size_t cap) {
  return close(nullptr, degree, {}, gens, cap);
}

FiniteActionGroup FiniteActionGroup::subset(const std::vector<std::size_t>& elements) const {
  std::vector<std::size_t> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty() || sorted.front() != 0) throw InvalidArgument("subgroup must contain the identity");
  FiniteActionGroup g;
  g.model_ = model_;
  g.degree_ = degree_;
  for (std::size_t i : sorted) {
    g.insert(keys_[i], perms_[i], model_ ? std::optional<LeviElement>(labels_[i]) : std::nullopt);
  }
  return g;
}

FiniteActionGroup FiniteActionGroup::subgroup_generated(const std::vector<std::size_t>& gens, std::size_t cap) const {
  std::vector<std::size_t> members{0};
  std::vector<bool> in(order(), false);
  in[0] = true;
  for (std::size_t cur = 0; cur < members.size(); ++cur) {
    for (std::size_t s : gens) {
      std::size_t p = multiply(members[cur], s);
      if (!in[p]) {
        if (members.size() >= cap) throw CapExceeded("group order exceeds cap " + std::to_string(cap));
        in[p] = true;
        members.push_back(p);
      }
    }
  }
  FiniteActionGroup g = subset(members);
  for (std::size_t s : gens) g.gens_.push_back(*g.find(keys_[s]));
  return g;
}

std::optional<std::size_t> FiniteActionGroup::find(const ElementKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FiniteActionGroup::find(const LeviElement& x) const {
  if (!model_) throw InvalidArgument("find(LeviElement) on an unlabelled group");
  return find(model_->key(model_->canonical(x.factors, x.torus)));
}

std::size_t FiniteActionGroup::multiply(std::size_t i, std::size_t j) const {
  std::optional<std::size_t> r;
  if (model_) {
    r = find(model_->key(model_->multiply(labels_[i], labels_[j])));
  } else {
    Perm prod(degree_);
    for (std::uint32_t x = 0; x < degree_; ++x) prod[x] = perms_[i][perms_[j][x]];
    r = find(prod);
  }
  if (!r) throw InternalError("FiniteActionGroup: element list is not closed under multiplication");
  return *r;
}

std::size_t FiniteActionGroup::inverse(std::size_t i) const {
  std::optional<std::size_t> r;
  if (model_) {
    r = find(model_->key(model_->inverse(labels_[i])));
  } else {
    Perm inv(degree_);
    for (std::uint32_t x = 0; x < degree_; ++x) inv[perms_[i][x]] = x;
    r = find(inv);
  }
  if (!r) throw InternalError("FiniteActionGroup: element list is not closed under inversion");
  return *r;
}

std::size_t FiniteActionGroup::element_order(std::size_t i) const {
  std::size_t k = 1, cur = i;
  while (cur != 0) {
    cur = multiply(cur, i);
    ++k;
  }
  return k;
}

bool FiniteActionGroup::is_cyclic() const {
  for (std::size_t i = 0; i < order(); ++i) {
    if (element_order(i) == order()) return true;
  }
  return false;
}

std::size_t FiniteActionGroup::image_order() const {
  std::unordered_map<ElementKey, int, ElementKeyHash> seen;
  for (const auto& p : perms_) seen.emplace(p, 0);
  return seen.size();
}

std::vector<std::size_t> FiniteActionGroup::generating_set() const {
  if (!gens_.empty() || order() == 1) return gens_;
  std::vector<std::size_t> gens;
  std::vector<bool> in(order(), false);
  in[0] = true;
  std::vector<std::size_t> members{0};
  for (std::size_t cand = 1; cand < order(); ++cand) {
    if (in[cand]) continue;
    gens.push_back(cand);
    // Re-close with the enlarged generating set.
    for (std::size_t cur = 0; cur < members.size(); ++cur) {
      for (std::size_t s : gens) {
        std::size_t p = multiply(members[cur], s);
        if (!in[p]) {
          in[p] = true;
          members.push_back(p);
        }
      }
    }
  }
  return gens;
}

std::vector<std::uint32_t> FiniteActionGroup::orbit(std::uint32_t x) const {
  std::vector<bool> seen(degree_, false);
  for (const auto& p : perms_) seen[p[x]] = true;
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < degree_; ++y) {
    if (seen[y]) out.push_back(y);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> FiniteActionGroup::orbits() const {
  std::vector<bool> done(degree_, false);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t x = 0; x < degree_; ++x) {
    if (done[x]) continue;
    auto o = orbit(x);
    for (auto y : o) done[y] = true;
    out.push_back(std::move(o));
  }
  return out;
}

FiniteActionGroup FiniteActionGroup::point_stabilizer(std::uint32_t x) const {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < order(); ++i) {
    if (perms_[i][x] == x) members.push_back(i);
  }
  return subset(members);
}

FiniteActionGroup FiniteActionGroup::block_stabilizer(const std::vector<std::uint32_t>& block_of,
                                                      std::uint32_t block) const {
  if (block_of.size() != degree_) throw InvalidArgument("block_stabilizer: partition size mismatch");
  std::vector<std::uint32_t> points;
  for (std::uint32_t x = 0; x < degree_; ++x) {
    if (block_of[x] == block) points.push_back(x);
  }
  if (points.empty()) throw InvalidArgument("block_stabilizer: empty block");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < order(); ++i) {
    const bool keeps = std::all_of(points.begin(), points.end(),
                                   [&](std::uint32_t x) { return block_of[perms_[i][x]] == block; });
    if (keeps) members.push_back(i);
  }
  return subset(members);
}

FiniteActionGroup FiniteActionGroup::kernel() const {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < order(); ++i) {
    bool trivial = true;
    for (std::uint32_t x = 0; x < degree_ && trivial; ++x) trivial = perms_[i][x] == x;
    if (trivial) members.push_back(i);
  }
  return subset(members);
}

namespace {

void require_compatible(const FiniteActionGroup& a, const FiniteActionGroup& b) {
  if (a.model().get() != b.model().get() || a.degree() != b.degree()) {
    throw InvalidArgument("groups do not live in the same ambient model");
  }
}

}  // namespace

std::vector<std::size_t> embed_elements(const FiniteActionGroup& h, const FiniteActionGroup& g) {
  if (h.has_labels() && g.has_labels() && h.model() != g.model()) {
    // Different Levi models: carry the witnesses over by inclusion.
    std::vector<std::size_t> out(h.order());
    for (std::size_t i = 0; i < h.order(); ++i) {
      auto idx = g.find(g.model()->embed(*h.model(), h.label(i)));
      if (!idx) throw InvalidArgument("H is not a subgroup of G");
      out[i] = *idx;
    }
    return out;
  }
  require_compatible(h, g);
  std::vector<std::size_t> out(h.order());
  for (std::size_t i = 0; i < h.order(); ++i) {
    auto idx = g.find(h.key(i));
    if (!idx) throw InvalidArgument("H is not a subgroup of G");
    out[i] = *idx;
  }
  return out;
}

bool is_subgroup(const FiniteActionGroup& h, const FiniteActionGroup& g) {
  require_compatible(h, g);
  for (std::size_t i = 0; i < h.order(); ++i) {
    if (!g.find(h.key(i))) return false;
  }
  return true;
}

FiniteActionGroup intersection(const FiniteActionGroup& a, const FiniteActionGroup& b) {
  require_compatible(a, b);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (b.find(a.key(i))) members.push_back(i);
  }
  return a.subset(members);
}

std::size_t group_index(const FiniteActionGroup& g, const FiniteActionGroup& h) {
  if (!is_subgroup(h, g)) throw InvalidArgument("group_index: H is not a subgroup of G");
  return g.order() / h.order();
}

std::vector<std::size_t> coset_transversal(const FiniteActionGroup& g, const FiniteActionGroup& h) {
  const auto h_in_g = embed_elements(h, g);
  std::vector<bool> marked(g.order(), false);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (marked[x]) continue;
    reps.push_back(x);
    for (std::size_t y : h_in_g) marked[g.multiply(x, y)] = true;
  }
  return reps;
}

}  // namespace kml
