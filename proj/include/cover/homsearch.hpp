#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cover/group.hpp"

namespace cover {

struct HomSearchOptions {
  bool epi_only = false;
  bool injective = false;
  // Optional restriction on the image of each generator of the source.
  std::function<bool(Elem src_gen, Elem image)> allow;
};

namespace detail {

class HomSearch {
 public:
  HomSearch(const GroupPtr& src, const GroupPtr& dst, const HomSearchOptions& opt, SearchCounter& counter)
      : src_(src), dst_(dst), opt_(opt), counter_(counter), tree_(src->generator_tree()) {
    f_.assign(src->order(), -1);
    f_[0] = 0;
    stamp_.assign(dst->order(), 0);
    members_.push_back(0);
    const auto& gens = tree_.gens;
    candidates_.resize(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const int og = src->elem_order(gens[i]);
      for (Elem y = 0; y < dst->order(); ++y) {
        const int oy = dst->elem_order(y);
        if (opt.injective ? oy != og : og % oy != 0) continue;
        if (opt.allow && !opt.allow(gens[i], y)) continue;
        candidates_[i].push_back(y);
      }
    }
  }

  template <class Visitor>
  void run(Visitor& visit) {
    if (opt_.epi_only && src_->order() % dst_->order() != 0) return;
    if (opt_.injective && dst_->order() % src_->order() != 0) return;
    if (tree_.gens.empty()) {  // trivial source
      finish(visit);
      return;
    }
    descend(0, visit);
  }

 private:
  template <class Visitor>
  bool finish(Visitor& visit) {
    if (opt_.epi_only) {
      ++epoch_;
      int distinct = 0;
      for (Elem y : f_)
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          ++distinct;
        }
      if (distinct != dst_->order()) return true;
    }
    return visit(f_);
  }

  bool extend_layer(std::size_t level) {
    const auto& gens = tree_.gens;
    for (const auto& st : tree_.layers[level]) f_[st.elem] = dst_->mul(f_[st.parent], f_[gens[st.gen]]);
    // edges x·g_j; old members only need the new generator
    const Elem gi = gens[level];
    for (Elem x : members_)
      if (f_[src_->mul(x, gi)] != dst_->mul(f_[x], f_[gi])) return false;
    for (const auto& st : tree_.layers[level])
      for (std::size_t j = 0; j <= level; ++j) {
        const Elem gj = gens[j];
        if (f_[src_->mul(st.elem, gj)] != dst_->mul(f_[st.elem], f_[gj])) return false;
      }
    if (opt_.injective) {
      ++epoch_;
      for (Elem x : members_) stamp_[f_[x]] = epoch_;
      for (const auto& st : tree_.layers[level]) {
        if (stamp_[f_[st.elem]] == epoch_) return false;
        stamp_[f_[st.elem]] = epoch_;
      }
    }
    return true;
  }

  template <class Visitor>
  bool descend(std::size_t level, Visitor& visit) {
    const auto& layer = tree_.layers[level];
    const Elem g = tree_.gens[level];
    for (Elem y : candidates_[level]) {
      counter_.tick("homomorphism search");
      f_[g] = y;  // g is the first element of its layer
      bool ok = extend_layer(level);
      if (ok) {
        const std::size_t old = members_.size();
        for (const auto& st : layer) members_.push_back(st.elem);
        bool keep_going = level + 1 == tree_.layers.size() ? finish(visit) : descend(level + 1, visit);
        members_.resize(old);
        if (!keep_going) {
          for (const auto& st : layer) f_[st.elem] = -1;
          return false;
        }
      }
      for (const auto& st : layer) f_[st.elem] = -1;
    }
    return true;
  }

  const GroupPtr& src_;
  const GroupPtr& dst_;
  const HomSearchOptions& opt_;
  SearchCounter& counter_;
  const GeneratorTree& tree_;
  std::vector<Elem> f_;
  std::vector<Elem> members_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<unsigned> stamp_;
  unsigned epoch_ = 0;
};

}  // namespace detail

/// Visits every homomorphism src → dst allowed by `opt`, in a deterministic
/// order. `visit(images)` returns false to stop early.
template <class Visitor>
void for_each_hom(const GroupPtr& src, const GroupPtr& dst, const HomSearchOptions& opt, Visitor&& visit,
                  const Limits& lim = {}) {
  SearchCounter counter(lim.search_budget);
  detail::HomSearch search(src, dst, opt, counter);
  search.run(visit);
}

inline std::optional<GroupHom> find_hom(const GroupPtr& src, const GroupPtr& dst, const HomSearchOptions& opt,
                                        const Limits& lim = {}) {
  std::optional<GroupHom> found;
  for_each_hom(
      src, dst, opt,
      [&](const std::vector<Elem>& im) {
        found.emplace(src, dst, im);
        return false;
      },
      lim);
  return found;
}

/// Exhaustive list of homomorphisms (epimorphisms only when requested).
inline std::vector<GroupHom> enumerate_homs(const GroupPtr& src, const GroupPtr& dst, bool epi_only,
                                            const Limits& lim = {}) {
  std::vector<GroupHom> out;
  HomSearchOptions opt;
  opt.epi_only = epi_only;
  for_each_hom(
      src, dst, opt,
      [&](const std::vector<Elem>& im) {
        out.emplace_back(src, dst, im);
        return true;
      },
      lim);
  return out;
}

/// Cheap isomorphism invariants.
struct GroupSignature {
  int order = 0;
  bool abelian = false;
  std::vector<int> order_histogram;  // index k: number of elements of order k
  int center_order = 0;

  friend bool operator==(const GroupSignature&, const GroupSignature&) = default;
};

inline GroupSignature signature(const GroupPtr& g) {
  GroupSignature s;
  s.order = g->order();
  s.abelian = g->is_abelian();
  s.order_histogram.assign(g->order() + 1, 0);
  for (Elem x = 0; x < g->order(); ++x) ++s.order_histogram[g->elem_order(x)];
  s.center_order = center(g).order();
  return s;
}

/// An isomorphism g → h if one exists.
inline std::optional<GroupHom> is_isomorphic(const GroupPtr& g, const GroupPtr& h, const Limits& lim = {}) {
  if (g == h) return identity_hom(g);
  if (!(signature(g) == signature(h))) return std::nullopt;
  HomSearchOptions opt;
  opt.injective = true;
  return find_hom(g, h, opt, lim);
}

/// One representative per isomorphism type of quotient g/N.
struct QuotientType {
  Subgroup kernel;
  Quotient quotient;
  GroupSignature sig;
};

inline std::vector<QuotientType> quotient_types(const GroupPtr& g, const Limits& lim = {}) {
  std::vector<QuotientType> out;
  for (const auto& n : normal_subgroups(g)) {
    Quotient q = quotient(g, n);
    GroupSignature sig = signature(q.group);
    bool known = false;
    for (const auto& t : out)
      if (t.sig == sig && is_isomorphic(t.quotient.group, q.group, lim)) {
        known = true;
        break;
      }
    if (!known) out.push_back({n, std::move(q), std::move(sig)});
  }
  return out;
}

/// Index of the quotient type of `types` isomorphic to b, if any.
inline std::optional<std::size_t> find_quotient_type(const std::vector<QuotientType>& types, const GroupPtr& b,
                                                     const Limits& lim = {}) {
  GroupSignature sig = signature(b);
  for (std::size_t i = 0; i < types.size(); ++i)
    if (types[i].sig == sig && is_isomorphic(b, types[i].quotient.group, lim)) return i;
  return std::nullopt;
}

}  // namespace cover
