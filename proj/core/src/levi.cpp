#include "kml/levi.hpp"

#include <sstream>

#include "kml/error.hpp"

namespace kml {

TorusElement torus_identity(int n) { return TorusElement{std::vector<Elem>(static_cast<std::size_t>(n), 1)}; }

TorusElement torus_multiply(const FieldCtx& F, const TorusElement& x, const TorusElement& y) {
  TorusElement r = x;
  for (std::size_t i = 0; i < r.t.size(); ++i) r.t[i] = F.mul(x.t[i], y.t[i]);
  return r;
}

Elem torus_character(const FieldCtx& F, const GCM& a, int j, const TorusElement& t) {
  if (j < 0 || j >= a.rank()) throw InvalidArgument("torus_character: index out of range");
  if (static_cast<int>(t.t.size()) != a.rank()) throw InvalidArgument("torus_character: torus rank mismatch");
  Elem v = 1;
  for (int i = 0; i < a.rank(); ++i) {
    if (t.t[i] == 0) throw InvalidArgument("torus_character: zero torus coordinate");
    v = F.mul(v, F.pow(t.t[i], a(i, j)));
  }
  return v;
}

LeviModel::LeviModel(std::shared_ptr<const FieldCtx> field, GCM gcm, TypeMask type)
    : field_(std::move(field)), gcm_(std::move(gcm)), type_(type), members_(mask_members(type)) {
  slot_.assign(static_cast<std::size_t>(gcm_.rank()), -1);
  for (std::size_t s = 0; s < members_.size(); ++s) {
    if (members_[s] >= gcm_.rank()) throw InvalidArgument("LeviModel: type outside the generating set");
    slot_[members_[s]] = static_cast<int>(s);
  }
  for (int j : members_) {
    for (int k : members_) {
      if (j != k && gcm_(j, k) != 0) {
        throw InvalidArgument("LeviModel: " + mask_label(type) + " is not a commuting clique");
      }
    }
  }
  for (std::size_t s = 0; s < members_.size(); ++s) chamber_count_ *= field_->q() + 1;
}

std::shared_ptr<const LeviModel> LeviModel::rank_one(std::shared_ptr<const FieldCtx> field) {
  return std::make_shared<const LeviModel>(std::move(field), GCM::validate({{2}}), TypeMask{1});
}

int LeviModel::slot(int j) const { return (j >= 0 && j < rank()) ? slot_[j] : -1; }

LeviElement LeviModel::identity() const {
  return LeviElement{std::vector<Mat2>(members_.size(), Mat2::identity()), torus_identity(rank())};
}

LeviElement LeviModel::canonical(std::vector<Mat2> factors, TorusElement torus) const {
  const FieldCtx& F = *field_;
  if (factors.size() != members_.size() || static_cast<int>(torus.t.size()) != rank()) {
    throw InvalidArgument("LeviModel: element shape mismatch");
  }
  for (std::size_t s = 0; s < members_.size(); ++s) {
    Elem& c = torus.t[members_[s]];
    if (c != 1) {
      const Mat2 coroot{c, 0, 0, F.inv(c), 1};
      factors[s] = mul(F, factors[s], coroot);
      c = 1;
    }
  }
  return LeviElement{std::move(factors), std::move(torus)};
}

LeviElement LeviModel::from_factor(int j, const Mat2& m) const {
  const int s = slot(j);
  if (s < 0) throw InvalidArgument("LeviModel: generator " + std::to_string(j + 1) + " not in " + mask_label(type_));
  if (m.det != 1) throw InvalidArgument("LeviModel: factor matrix is not in SL_2");
  LeviElement e = identity();
  e.factors[s] = m;
  return e;
}

LeviElement LeviModel::from_torus(const TorusElement& t) const {
  return canonical(std::vector<Mat2>(members_.size(), Mat2::identity()), t);
}

LeviElement LeviModel::multiply(const LeviElement& x, const LeviElement& y) const {
  const FieldCtx& F = *field_;
  LeviElement r;
  r.factors.resize(members_.size());
  for (std::size_t s = 0; s < members_.size(); ++s) {
    const Elem alpha = torus_character(F, gcm_, members_[s], x.torus);
    r.factors[s] = mul(F, x.factors[s], conj_diag(F, y.factors[s], alpha));
  }
  r.torus = torus_multiply(F, x.torus, y.torus);
  return r;
}

LeviElement LeviModel::inverse(const LeviElement& x) const {
  const FieldCtx& F = *field_;
  TorusElement tinv = x.torus;
  for (auto& c : tinv.t) c = F.inv(c);
  LeviElement r;
  r.factors.resize(members_.size());
  for (std::size_t s = 0; s < members_.size(); ++s) {
    const Elem alpha = torus_character(F, gcm_, members_[s], tinv);
    r.factors[s] = conj_diag(F, kml::inverse(F, x.factors[s]), alpha);
  }
  r.torus = std::move(tinv);
  return r;
}

LeviElement LeviModel::embed(const LeviModel& from, const LeviElement& x) const {
  if ((from.type() & type_) != from.type()) {
    throw InvalidArgument("LeviModel::embed: " + mask_label(from.type()) + " is not contained in " + mask_label(type_));
  }
  if (from.rank() != rank()) throw InvalidArgument("LeviModel::embed: rank mismatch");
  std::vector<Mat2> factors(members_.size(), Mat2::identity());
  for (std::size_t s = 0; s < from.members().size(); ++s) factors[slot(from.members()[s])] = x.factors[s];
  return canonical(std::move(factors), x.torus);
}

std::optional<LeviElement> LeviModel::restrict_from(const LeviModel& from, const LeviElement& x) const {
  if ((type_ & from.type()) != type_) {
    throw InvalidArgument("LeviModel::restrict_from: " + mask_label(type_) + " is not contained in " + mask_label(from.type()));
  }
  if (from.rank() != rank()) throw InvalidArgument("LeviModel::restrict_from: rank mismatch");
  std::vector<Mat2> factors(members_.size(), Mat2::identity());
  TorusElement t = x.torus;
  for (std::size_t s = 0; s < from.members().size(); ++s) {
    const int j = from.members()[s];
    const Mat2& m = x.factors[s];
    if (slot(j) >= 0) {
      factors[slot(j)] = m;
    } else if (m.b == 0 && m.c == 0) {
      t.t[j] = m.a;
    } else {
      return std::nullopt;
    }
  }
  return canonical(std::move(factors), std::move(t));
}

std::vector<std::uint32_t> LeviModel::chamber_coords(std::uint32_t chamber) const {
  std::vector<std::uint32_t> c(members_.size());
  const std::uint32_t base = field_->q() + 1;
  for (std::size_t s = 0; s < members_.size(); ++s) {
    c[s] = chamber % base;
    chamber /= base;
  }
  return c;
}

std::uint32_t LeviModel::chamber_index(const std::vector<std::uint32_t>& coords) const {
  const std::uint32_t base = field_->q() + 1;
  std::uint32_t idx = 0;
  for (std::size_t s = members_.size(); s-- > 0;) idx = idx * base + coords[s];
  return idx;
}

std::uint32_t LeviModel::act(const LeviElement& x, std::uint32_t chamber) const {
  const FieldCtx& F = *field_;
  auto c = chamber_coords(chamber);
  for (std::size_t s = 0; s < members_.size(); ++s) {
    const Elem alpha = torus_character(F, gcm_, members_[s], x.torus);
    c[s] = act_on_point(F, x.factors[s], scale_point(F, alpha, c[s]));
  }
  return chamber_index(c);
}

std::vector<std::uint32_t> LeviModel::permutation(const LeviElement& x) const {
  const FieldCtx& F = *field_;
  std::vector<Elem> alpha(members_.size());
  for (std::size_t s = 0; s < members_.size(); ++s) alpha[s] = torus_character(F, gcm_, members_[s], x.torus);
  const std::uint32_t base = F.q() + 1;
  // Per-factor point maps, then combine in mixed radix.
  std::vector<std::vector<std::uint32_t>> factor_map(members_.size(), std::vector<std::uint32_t>(base));
  for (std::size_t s = 0; s < members_.size(); ++s) {
    for (std::uint32_t pt = 0; pt < base; ++pt) factor_map[s][pt] = act_on_point(F, x.factors[s], scale_point(F, alpha[s], pt));
  }
  std::vector<std::uint32_t> perm(chamber_count_);
  for (std::uint32_t ch = 0; ch < chamber_count_; ++ch) {
    std::uint32_t rest = ch, out = 0, scale = 1;
    for (std::size_t s = 0; s < members_.size(); ++s) {
      out += factor_map[s][rest % base] * scale;
      rest /= base;
      scale *= base;
    }
    perm[ch] = out;
  }
  return perm;
}

std::vector<std::uint32_t> LeviModel::key(const LeviElement& x) const {
  std::vector<std::uint32_t> k;
  k.reserve(4 * members_.size() + static_cast<std::size_t>(rank()));
  for (const auto& m : x.factors) {
    k.push_back(m.a);
    k.push_back(m.b);
    k.push_back(m.c);
    k.push_back(m.d);
  }
  for (int i = 0; i < rank(); ++i) {
    if (slot(i) < 0) k.push_back(x.torus.t[i]);
  }
  return k;
}

std::string LeviModel::to_string(const LeviElement& x) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t s = 0; s < members_.size(); ++s) {
    if (s) os << ", ";
    os << "M" << members_[s] + 1 << '=' << kml::to_string(*field_, x.factors[s]);
  }
  os << (members_.empty() ? "" : "; ") << "t=[";
  for (int i = 0; i < rank(); ++i) {
    if (i) os << ' ';
    os << field_->to_string(x.torus.t[i]);
  }
  os << "])";
  return os.str();
}

}  // namespace kml
