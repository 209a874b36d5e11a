#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "cover/homsearch.hpp"

namespace cover {

/// Commuting square of epimorphisms
///
///        beta
///     H ----> B
///     |       |
/// eta |       | alpha
///     v       v
///     G ----> A
///        phi
struct Square {
  GroupHom eta, beta, alpha, phi;

  static Square make(GroupHom eta, GroupHom beta, GroupHom alpha, GroupHom phi) {
    if (eta.src != beta.src || beta.dst != alpha.src || eta.dst != phi.src || alpha.dst != phi.dst)
      fail(ErrorKind::TypeMismatch, "square endpoints do not match");
    for (const GroupHom* f : {&eta, &beta, &alpha, &phi})
      if (!f->is_surjective()) fail(ErrorKind::TypeMismatch, "square map is not an epimorphism");
    for (Elem h = 0; h < eta.src->order(); ++h)
      if (alpha(beta(h)) != phi(eta(h)))
        fail(ErrorKind::NonCommuting, "alpha∘beta and phi∘eta differ at element " + std::to_string(h));
    return {std::move(eta), std::move(beta), std::move(alpha), std::move(phi)};
  }

  const GroupPtr& top_left() const { return eta.src; }
};

struct SquareStatus {
  bool semi_cartesian = false;
  bool cartesian = false;
  std::optional<bool> compact;     // decided only for cartesian squares
  std::optional<Subgroup> witness;  // proper subgroup surjecting onto B and G
};

/// Family of epimorphisms onto one base group.
struct CoverFamily {
  GroupPtr base;
  std::vector<GroupHom> legs;

  static CoverFamily make(GroupPtr base, std::vector<GroupHom> legs) {
    if (legs.empty()) fail(ErrorKind::InvalidArgument, "cover family is empty");
    for (const auto& l : legs) {
      if (l.dst != base) fail(ErrorKind::TypeMismatch, "leg does not map to the family base");
      if (!l.is_surjective()) fail(ErrorKind::TypeMismatch, "leg is not an epimorphism");
    }
    return {std::move(base), std::move(legs)};
  }
};

struct FiberProduct {
  GroupPtr group;
  std::vector<GroupHom> projections;
  GroupHom to_base;
  std::vector<std::vector<Elem>> tuples;  // tuples[x] = coordinates of element x

  int index_of(const std::vector<Elem>& t) const {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
    if (it == tuples.end() || *it != t) return -1;
    return static_cast<int>(it - tuples.begin());
  }
};

/// Subgroup of ∏ H_i of tuples agreeing over the base. Elements are the
/// matching tuples in lexicographic order, so the identity tuple is 0.
inline FiberProduct fiber_product(const CoverFamily& fam, const Limits& lim = {}, std::string name = {}) {
  if (fam.legs.empty()) fail(ErrorKind::InvalidArgument, "fiber product of an empty family");
  const int gn = fam.base->order();
  std::size_t order = static_cast<std::size_t>(gn);
  for (const auto& l : fam.legs) {
    order *= static_cast<std::size_t>(l.src->order() / gn);
    check_order_cap(order, lim, "fiber product");
  }
  const std::size_t k = fam.legs.size();
  std::vector<std::vector<std::vector<Elem>>> fibers(k, std::vector<std::vector<Elem>>(gn));
  for (std::size_t i = 0; i < k; ++i)
    for (Elem h = 0; h < fam.legs[i].src->order(); ++h) fibers[i][fam.legs[i](h)].push_back(h);

  std::vector<std::vector<Elem>> tuples;
  tuples.reserve(order);
  std::vector<Elem> cur(k);
  for (Elem g = 0; g < gn; ++g) {
    std::vector<std::size_t> pos(k, 0);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) cur[i] = fibers[i][g][pos[i]];
      tuples.push_back(cur);
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++pos[i] < fibers[i][g].size()) break;
        pos[i] = 0;
        if (i == 0) {
          i = k + 1;
          break;
        }
      }
      if (i == k + 1) break;
    }
  }
  std::sort(tuples.begin(), tuples.end());
  const int n = static_cast<int>(tuples.size());

  // mixed-radix code for lookup
  std::vector<std::uint64_t> stride(k);
  std::uint64_t s = 1;
  for (std::size_t i = k; i-- > 0;) {
    stride[i] = s;
    s *= static_cast<std::uint64_t>(fam.legs[i].src->order());
  }
  std::unordered_map<std::uint64_t, int> index;
  index.reserve(static_cast<std::size_t>(n) * 2);
  auto code = [&](const std::vector<Elem>& t) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < k; ++i) c += stride[i] * static_cast<std::uint64_t>(t[i]);
    return c;
  };
  for (int x = 0; x < n; ++x) index.emplace(code(tuples[x]), x);

  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < k; ++i) c += stride[i] * fam.legs[i].src->mul(tuples[x][i], tuples[y][i]);
      flat[static_cast<std::size_t>(x) * n + y] = index.at(c);
    }
  if (name.empty()) {
    name = fam.legs[0].src->name();
    for (std::size_t i = 1; i < k; ++i) name += "x_" + fam.base->name() + fam.legs[i].src->name();
  }
  auto grp = make_group(n, std::move(flat), std::move(name));

  FiberProduct fp;
  fp.group = grp;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Elem> im(n);
    for (int x = 0; x < n; ++x) im[x] = tuples[x][i];
    fp.projections.emplace_back(grp, fam.legs[i].src, std::move(im));
  }
  std::vector<Elem> tb(n);
  for (int x = 0; x < n; ++x) tb[x] = fam.legs[0](tuples[x][0]);
  fp.to_base = GroupHom(grp, fam.base, std::move(tb));
  fp.tuples = std::move(tuples);
  return fp;
}

/// pr_{I,J}: projection from the fiber product of `fam` to that of the legs in J.
inline std::pair<FiberProduct, GroupHom> project_subfamily(const FiberProduct& fp, const CoverFamily& fam,
                                                           const std::vector<std::size_t>& J,
                                                           const Limits& lim = {}) {
  CoverFamily sub{fam.base, {}};
  for (std::size_t j : J) sub.legs.push_back(fam.legs.at(j));
  FiberProduct sfp = fiber_product(sub, lim);
  std::vector<Elem> im(fp.group->order());
  std::vector<Elem> t(J.size());
  for (Elem x = 0; x < fp.group->order(); ++x) {
    for (std::size_t a = 0; a < J.size(); ++a) t[a] = fp.tuples[x][J[a]];
    im[x] = sfp.index_of(t);
  }
  GroupHom pr(fp.group, sfp.group, std::move(im));
  return {std::move(sfp), std::move(pr)};
}

/// The cartesian square over (alpha, phi): H = B ×_A G with beta, eta the projections.
inline Square pullback(const GroupHom& alpha, const GroupHom& phi, const Limits& lim = {}) {
  if (alpha.dst != phi.dst) fail(ErrorKind::TypeMismatch, "pullback: alpha and phi have different targets");
  FiberProduct fp = fiber_product(CoverFamily::make(alpha.dst, {alpha, phi}), lim);
  return Square::make(fp.projections[1], fp.projections[0], alpha, phi);
}

/// Kernel conditions, then compactness by exhausting proper subgroups of H
/// (largest first).
inline SquareStatus square_classify(const Square& s) {
  SquareStatus st;
  const Subgroup kb = s.beta.kernel(), ke = s.eta.kernel();
  const Subgroup k = compose(s.eta, s.phi).kernel();
  st.semi_cartesian = product(kb, ke) == k;
  st.cartesian = st.semi_cartesian && intersect(kb, ke).is_trivial();
  if (!st.cartesian) return st;
  const auto& sets = s.top_left()->subgroup_sets();
  const int bn = s.beta.dst->order(), gn = s.eta.dst->order();
  for (std::size_t i = sets.size(); i-- > 0;) {
    const ElementSet& u = sets[i];
    if (u.count() == s.top_left()->order()) continue;
    if (u.count() < std::max(bn, gn)) break;
    Subgroup U(s.top_left(), u);
    if (s.beta.image_of(U).is_whole() && s.eta.image_of(U).is_whole()) {
      // prefer the lexicographically first among subgroups of the same order
      std::size_t j = i;
      while (j > 0 && sets[j - 1].count() == u.count()) {
        Subgroup V(s.top_left(), sets[j - 1]);
        if (s.beta.image_of(V).is_whole() && s.eta.image_of(V).is_whole()) U = V;
        --j;
      }
      st.compact = false;
      st.witness = U;
      return st;
    }
  }
  st.compact = true;
  return st;
}

/// ψ: H ↠ E with pi∘ψ = eta, if one exists.
inline std::optional<GroupHom> dominates(const GroupHom& eta, const GroupHom& pi, const Limits& lim = {}) {
  if (eta.dst != pi.dst) fail(ErrorKind::BaseMismatch, "dominates: covers of different groups");
  if (eta.src->order() % pi.src->order() != 0) return std::nullopt;
  HomSearchOptions opt;
  opt.epi_only = true;
  opt.allow = [&](Elem g, Elem y) { return pi(y) == eta(g); };
  return find_hom(eta.src, pi.src, opt, lim);
}

/// Bijective ψ with eta2∘ψ = eta, if one exists.
inline std::optional<GroupHom> isomorphic_over_G(const GroupHom& eta, const GroupHom& eta2, const Limits& lim = {}) {
  if (eta.dst != eta2.dst) fail(ErrorKind::BaseMismatch, "isomorphic_over_G: covers of different groups");
  if (eta.src->order() != eta2.src->order()) return std::nullopt;
  if (eta.src == eta2.src && eta.images == eta2.images) return identity_hom(eta.src);
  if (!(signature(eta.src) == signature(eta2.src))) return std::nullopt;
  HomSearchOptions opt;
  opt.injective = true;
  opt.allow = [&](Elem g, Elem y) { return eta2(y) == eta(g); };
  return find_hom(eta.src, eta2.src, opt, lim);
}

/// True iff n is a nontrivial minimal normal subgroup of its parent.
inline bool is_minimal_normal(const Subgroup& n) {
  if (n.is_trivial()) return false;
  for (Elem x : n.elements()) {
    if (x == 0) continue;
    Elem one[1] = {x};
    if (normal_closure(n.parent, one).order() != n.order()) return false;
  }
  return true;
}

inline bool is_indecomposable(const GroupHom& eta) { return is_minimal_normal(eta.kernel()); }

namespace detail {

// Normal subgroups N of H that are maximal among those properly inside K.
inline std::vector<Subgroup> maximal_normal_below(const GroupPtr& h, const Subgroup& k) {
  std::vector<Subgroup> inside;
  for (const auto& s : h->normal_subgroup_sets())
    if (s.is_subset_of(k.set) && s.count() < k.order()) inside.emplace_back(h, s);
  std::vector<Subgroup> out;
  for (const auto& n : inside) {
    bool maximal = true;
    for (const auto& m : inside)
      if (m.order() > n.order() && n.is_subgroup_of(m)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(n);
  }
  return out;
}

}  // namespace detail

/// Induced cover H/N ↠ G of pi for normal N ≤ Ker pi.
inline GroupHom induced_cover(const GroupHom& pi, const Subgroup& n, std::string name = {}) {
  Quotient q = quotient(pi.src, n, std::move(name));
  auto f = factor_through(q.map, pi);
  if (!f) fail(ErrorKind::InvalidArgument, "induced_cover: subgroup not inside the kernel");
  return *f;
}

/// M(pi) = ∩ {N ◁ H : N ≤ Ker pi, H/N ↠ G indecomposable}, with M = 1 when pi
/// is an isomorphism, plus the cover H/M ↠ G.
inline std::pair<Subgroup, GroupHom> fundament(const GroupHom& pi) {
  const GroupPtr& h = pi.src;
  const Subgroup k = pi.kernel();
  Subgroup m = k.is_trivial() ? trivial_subgroup(h) : k;
  for (const auto& n : detail::maximal_normal_below(h, k)) m = intersect(m, n);
  if (m.is_trivial()) return {m, pi};
  return {m, induced_cover(pi, m)};
}

inline bool is_fundamental(const GroupHom& pi) { return fundament(pi).first.is_trivial(); }

struct Decomposition {
  CoverFamily family;
  std::vector<Subgroup> kernels;  // legs[i] = H/kernels[i] ↠ G
};

namespace detail {

inline bool family_is_faithful(const GroupHom& pi, const std::vector<Subgroup>& ns) {
  Subgroup cap = whole_group(pi.src);
  for (const auto& n : ns) cap = intersect(cap, n);
  if (!cap.is_trivial()) return false;
  // H embeds into the fiber product; compare orders
  std::size_t order = static_cast<std::size_t>(pi.dst->order());
  for (const auto& n : ns) {
    order *= static_cast<std::size_t>(pi.src->order() / n.order() / pi.dst->order());
    if (order > static_cast<std::size_t>(pi.src->order())) return false;
  }
  return order == static_cast<std::size_t>(pi.src->order());
}

}  // namespace detail

/// Legs H/N_i ↠ G, each indecomposable, with H ≅_G their fiber product.
/// N_i are chosen greedily by descending order; a nonzero seed shuffles ties
/// (and so can produce a different valid decomposition).
inline Decomposition indecomposable_decomposition(const GroupHom& pi, std::uint64_t seed = 0, const Limits& lim = {}) {
  if (!fundament(pi).first.is_trivial()) fail(ErrorKind::NotFundamental, "cover is not fundamental");
  const Subgroup k = pi.kernel();
  Decomposition d;
  d.family.base = pi.dst;
  if (k.is_trivial()) {
    d.family.legs.push_back(pi);
    d.kernels.push_back(k);
    return d;
  }
  std::vector<Subgroup> cands = detail::maximal_normal_below(pi.src, k);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(cands.begin(), cands.end(), rng);
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Subgroup& a, const Subgroup& b) { return a.order() > b.order(); });

  std::vector<Subgroup> chosen;
  Subgroup cur = whole_group(pi.src);
  for (const auto& n : cands) {
    Subgroup next = intersect(cur, n);
    if (next.order() < cur.order()) {
      chosen.push_back(n);
      cur = next;
      if (cur.is_trivial()) break;
    }
  }
  if (!detail::family_is_faithful(pi, chosen)) {
    // exhaustive fallback: smallest subfamily that works
    chosen.clear();
    const std::size_t c = cands.size();
    bool found = false;
    SearchCounter counter(lim.search_budget);
    for (std::size_t size = 1; size <= c && !found; ++size) {
      std::vector<bool> pick(c, false);
      std::fill(pick.begin(), pick.begin() + size, true);
      do {
        counter.tick("decomposition fallback");
        std::vector<Subgroup> fam;
        for (std::size_t i = 0; i < c; ++i)
          if (pick[i]) fam.push_back(cands[i]);
        if (detail::family_is_faithful(pi, fam)) {
          chosen = std::move(fam);
          found = true;
          break;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    if (!found) fail(ErrorKind::DecompositionFailed, "no family of indecomposable quotients reconstructs the cover");
  }
  for (const auto& n : chosen) {
    GroupHom leg = induced_cover(pi, n);
    if (!is_indecomposable(leg)) fail(ErrorKind::DecompositionFailed, "leg is not indecomposable");
    d.family.legs.push_back(std::move(leg));
    d.kernels.push_back(n);
  }
  return d;
}

/// The map H → fiber product of the decomposition (an isomorphism over G).
/// Coset numbering of quotient() is deterministic, so recomputed quotient maps
/// land on the leg sources' labels.
inline GroupHom decomposition_map(const GroupHom& pi, const Decomposition& d, const FiberProduct& fp) {
  std::vector<GroupHom> maps;
  for (const auto& n : d.kernels) maps.push_back(quotient(pi.src, n).map);
  std::vector<Elem> im(pi.src->order());
  std::vector<Elem> t(maps.size());
  for (Elem h = 0; h < pi.src->order(); ++h) {
    for (std::size_t i = 0; i < maps.size(); ++i) t[i] = maps[i](h);
    im[h] = fp.index_of(t);
  }
  return GroupHom(pi.src, fp.group, std::move(im));
}

/// n-fold fiber product of eta over its base (n = 0: identity cover).
inline GroupHom power_cover(const GroupHom& eta, int n, const Limits& lim = {}) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "power_cover: negative exponent");
  if (n == 0) return identity_hom(eta.dst);
  if (n == 1) return eta;
  CoverFamily fam{eta.dst, std::vector<GroupHom>(static_cast<std::size_t>(n), eta)};
  return fiber_product(fam, lim).to_base;
}

}  // namespace cover
