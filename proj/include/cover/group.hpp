#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cover/error.hpp"

namespace cover {

using Elem = int;

/// Dense bitset over the elements of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64, 0) {}

  int universe() const noexcept { return n_; }
  bool contains(Elem x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void insert(Elem x) { words_[x >> 6] |= (std::uint64_t{1} << (x & 63)); }
  void erase(Elem x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool is_subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  ElementSet operator&(const ElementSet& o) const {
    ElementSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  std::vector<Elem> to_vector() const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<Elem>(i * 64 + b));
        w &= w - 1;
      }
    }
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 1099511628211ull;
    return h;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace detail {

// One BFS layer of the generator tree used by homomorphism extension: the
// elements added when generator `gen` joins the previous subgroup.
struct TreeStep {
  Elem elem;
  Elem parent;
  int gen;
};

struct GeneratorTree {
  std::vector<Elem> gens;
  std::vector<std::vector<TreeStep>> layers;  // layers[i]: elements of <g0..gi> \ <g0..g(i-1)>
  std::vector<int> layer_of;                  // element -> first layer containing it
};

}  // namespace detail

/// Finite group as a Cayley table; element 0 is the identity.
class FiniteGroup {
 public:
  // Trusted construction from an already-canonical table (identity at 0).
  FiniteGroup(int order, std::vector<Elem> table, std::string name)
      : n_(order), table_(std::move(table)), name_(std::move(name)) {
    inv_.assign(n_, 0);
    ord_.assign(n_, 1);
    for (Elem a = 0; a < n_; ++a) {
      for (Elem b = 0; b < n_; ++b)
        if (mul(a, b) == 0) {
          inv_[a] = b;
          break;
        }
      int k = 1;
      Elem x = a;
      while (x != 0) {
        x = mul(x, a);
        ++k;
      }
      ord_[a] = k;
    }
    abelian_ = true;
    for (Elem a = 0; a < n_ && abelian_; ++a)
      for (Elem b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) {
          abelian_ = false;
          break;
        }
  }

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

  int order() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  int elem_order(Elem a) const { return ord_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  bool is_abelian() const noexcept { return abelian_; }
  const std::string& name() const noexcept { return name_; }
  std::span<const Elem> flat_table() const noexcept { return table_; }

  std::vector<std::vector<Elem>> table_rows() const {
    std::vector<std::vector<Elem>> rows(n_);
    for (int i = 0; i < n_; ++i) rows[i].assign(table_.begin() + i * n_, table_.begin() + (i + 1) * n_);
    return rows;
  }

  // Subgroup generated by `gens` (closure under right multiplication).
  ElementSet closure(std::span<const Elem> gens) const {
    ElementSet s(n_);
    s.insert(0);
    std::vector<Elem> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (Elem g : gens) {
        Elem y = mul(queue[q], g);
        if (!s.contains(y)) {
          s.insert(y);
          queue.push_back(y);
        }
      }
    return s;
  }

  // Join of a subgroup (given with generators) and extra elements.
  ElementSet join(const ElementSet& base, std::span<const Elem> base_gens, std::span<const Elem> extra) const {
    ElementSet s = base;
    std::vector<Elem> queue = base.to_vector();
    std::vector<Elem> gens(base_gens.begin(), base_gens.end());
    const std::size_t first_new = gens.size();
    gens.insert(gens.end(), extra.begin(), extra.end());
    const std::size_t old = queue.size();
    for (std::size_t q = 0; q < queue.size(); ++q) {
      // elements of `base` are closed under base_gens already
      const std::size_t first = q < old ? first_new : 0;
      for (std::size_t k = first; k < gens.size(); ++k) {
        Elem y = mul(queue[q], gens[k]);
        if (!s.contains(y)) {
          s.insert(y);
          queue.push_back(y);
        }
      }
    }
    return s;
  }
  ElementSet join(const ElementSet& base, std::span<const Elem> base_gens, Elem x) const {
    Elem one[1] = {x};
    return join(base, base_gens, std::span<const Elem>(one));
  }

  const detail::GeneratorTree& generator_tree() const {
    std::call_once(tree_once_, [this] { build_generator_tree(); });
    return tree_;
  }
  const std::vector<Elem>& generators() const { return generator_tree().gens; }

  // Cached lattices, sorted by (order, elements).
  const std::vector<ElementSet>& subgroup_sets() const {
    std::call_once(sub_once_, [this] { build_subgroups(); });
    return subgroups_;
  }
  const std::vector<ElementSet>& normal_subgroup_sets() const {
    std::call_once(normal_once_, [this] { build_normal_subgroups(); });
    return normals_;
  }

  bool is_normal(const ElementSet& s) const {
    for (Elem x : s.to_vector())
      for (Elem g : generators())
        if (!s.contains(conj(g, x))) return false;
    return true;
  }

 private:
  void build_generator_tree() const {
    tree_.layer_of.assign(n_, -1);
    tree_.layer_of[0] = -1;
    ElementSet cur(n_);
    cur.insert(0);
    std::vector<Elem> order_list{0};
    while (cur.count() < n_) {
      Elem best = -1;
      int best_size = -1;
      for (Elem x = 1; x < n_; ++x) {
        if (cur.contains(x)) continue;
        int sz = join(cur, tree_.gens, x).count();
        if (sz > best_size) {
          best_size = sz;
          best = x;
        }
      }
      const int gi = static_cast<int>(tree_.gens.size());
      tree_.gens.push_back(best);
      std::vector<detail::TreeStep> layer;
      ElementSet next = cur;
      std::vector<Elem> queue = order_list;
      const std::size_t old = queue.size();
      for (std::size_t q = 0; q < queue.size(); ++q) {
        const int first = q < old ? gi : 0;
        for (int k = first; k <= gi; ++k) {
          Elem y = mul(queue[q], tree_.gens[k]);
          if (!next.contains(y)) {
            next.insert(y);
            queue.push_back(y);
            layer.push_back({y, queue[q], k});
            tree_.layer_of[y] = gi;
          }
        }
      }
      order_list = queue;
      cur = next;
      tree_.layers.push_back(std::move(layer));
    }
  }

  static void sort_sets(std::vector<ElementSet>& v) {
    std::vector<std::pair<std::vector<Elem>, std::size_t>> keyed;
    for (std::size_t i = 0; i < v.size(); ++i) keyed.emplace_back(v[i].to_vector(), i);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.first < b.first;
    });
    std::vector<ElementSet> out;
    out.reserve(v.size());
    for (auto& [_, i] : keyed) out.push_back(std::move(v[i]));
    v = std::move(out);
  }

  // Join-closure of a family of atoms (each given by a generator list). With
  // cyclic atoms this yields every subgroup; with normal closures of single
  // elements it yields every normal subgroup.
  void lattice_from(std::vector<std::pair<ElementSet, std::vector<Elem>>> atoms, std::vector<ElementSet>& out) const {
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<std::pair<ElementSet, std::vector<Elem>>> all;
    ElementSet trivial(n_);
    trivial.insert(0);
    seen.insert(trivial);
    all.emplace_back(trivial, std::vector<Elem>{});
    std::vector<std::pair<ElementSet, std::vector<Elem>>> uniq;
    for (auto& a : atoms)
      if (seen.insert(a.first).second) {
        all.push_back(a);
        uniq.push_back(std::move(a));
      }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (const auto& [aset, agens] : uniq) {
        if (aset.is_subset_of(all[i].first)) continue;
        ElementSet t = join(all[i].first, all[i].second, agens);
        if (seen.insert(t).second) {
          std::vector<Elem> g = all[i].second;
          g.insert(g.end(), agens.begin(), agens.end());
          all.emplace_back(std::move(t), std::move(g));
        }
      }
    }
    out.clear();
    for (auto& [s, _] : all) out.push_back(std::move(s));
    sort_sets(out);
  }

  void build_subgroups() const {
    std::vector<std::pair<ElementSet, std::vector<Elem>>> atoms;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    for (Elem x = 1; x < n_; ++x) {
      Elem g[1] = {x};
      ElementSet s = closure(g);
      if (seen.insert(s).second) atoms.emplace_back(std::move(s), std::vector<Elem>{x});
    }
    lattice_from(std::move(atoms), subgroups_);
  }

  void build_normal_subgroups() const {
    std::vector<std::pair<ElementSet, std::vector<Elem>>> atoms;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    for (Elem x = 1; x < n_; ++x) {
      std::vector<Elem> cls;
      ElementSet mark(n_);
      for (Elem g = 0; g < n_; ++g) {
        Elem y = conj(g, x);
        if (!mark.contains(y)) {
          mark.insert(y);
          cls.push_back(y);
        }
      }
      ElementSet s = closure(cls);
      if (seen.insert(s).second) {
        // keep a short generating list: the class elements needed for closure
        std::vector<Elem> gens;
        ElementSet cur(n_);
        cur.insert(0);
        for (Elem c : cls)
          if (!cur.contains(c)) {
            gens.push_back(c);
            cur = closure(gens);
          }
        atoms.emplace_back(std::move(s), std::move(gens));
      }
    }
    lattice_from(std::move(atoms), normals_);
  }

  int n_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<int> ord_;
  std::string name_;
  bool abelian_ = true;

  mutable std::once_flag tree_once_, sub_once_, normal_once_;
  mutable detail::GeneratorTree tree_;
  mutable std::vector<ElementSet> subgroups_;
  mutable std::vector<ElementSet> normals_;
};

inline GroupPtr make_group(int order, std::vector<Elem> table, std::string name) {
  return std::make_shared<const FiniteGroup>(order, std::move(table), std::move(name));
}

/// Subgroup of a concrete parent group.
struct Subgroup {
  GroupPtr parent;
  ElementSet set;

  Subgroup() = default;
  Subgroup(GroupPtr p, ElementSet s) : parent(std::move(p)), set(std::move(s)) {}

  int order() const { return set.count(); }
  bool contains(Elem x) const { return set.contains(x); }
  std::vector<Elem> elements() const { return set.to_vector(); }
  bool is_trivial() const { return order() == 1; }
  bool is_whole() const { return order() == parent->order(); }
  bool is_normal() const { return parent->is_normal(set); }
  bool is_subgroup_of(const Subgroup& o) const { return set.is_subset_of(o.set); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.parent == b.parent && a.set == b.set; }
};

inline Subgroup trivial_subgroup(const GroupPtr& g) {
  ElementSet s(g->order());
  s.insert(0);
  return {g, std::move(s)};
}

inline Subgroup whole_group(const GroupPtr& g) {
  ElementSet s(g->order());
  for (Elem x = 0; x < g->order(); ++x) s.insert(x);
  return {g, std::move(s)};
}

inline Subgroup generated_subgroup(const GroupPtr& g, std::span<const Elem> gens) { return {g, g->closure(gens)}; }

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) { return {a.parent, a.set & b.set}; }

// Product set A·B as a subgroup; valid when one factor is normal.
inline Subgroup product(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens = a.elements();
  auto eb = b.elements();
  gens.insert(gens.end(), eb.begin(), eb.end());
  return generated_subgroup(a.parent, gens);
}

inline Subgroup normal_closure(const GroupPtr& g, std::span<const Elem> xs) {
  std::vector<Elem> cls;
  for (Elem x : xs)
    for (Elem h = 0; h < g->order(); ++h) cls.push_back(g->conj(h, x));
  return generated_subgroup(g, cls);
}

/// Total map between two finite groups carrying a homomorphism certificate.
struct GroupHom {
  GroupPtr src;
  GroupPtr dst;
  std::vector<Elem> images;

  GroupHom() = default;
  GroupHom(GroupPtr s, GroupPtr d, std::vector<Elem> im) : src(std::move(s)), dst(std::move(d)), images(std::move(im)) {}

  // Validating factory: throws TypeMismatch unless the map is a homomorphism.
  static GroupHom make(GroupPtr s, GroupPtr d, std::vector<Elem> im) {
    if (static_cast<int>(im.size()) != s->order()) fail(ErrorKind::TypeMismatch, "image array has wrong length");
    for (Elem y : im)
      if (y < 0 || y >= d->order()) fail(ErrorKind::TypeMismatch, "image out of range");
    GroupHom f(std::move(s), std::move(d), std::move(im));
    if (auto bad = f.first_violation())
      fail(ErrorKind::TypeMismatch, "not a homomorphism at (" + std::to_string(bad->first) + "," +
                                        std::to_string(bad->second) + ")");
    return f;
  }

  Elem operator()(Elem x) const { return images[x]; }

  std::optional<std::pair<Elem, Elem>> first_violation() const {
    if (images[0] != 0) return std::make_pair(0, 0);
    const auto& gens = src->generators();
    for (Elem x = 0; x < src->order(); ++x)
      for (Elem g : gens)
        if (images[src->mul(x, g)] != dst->mul(images[x], images[g])) return std::make_pair(x, g);
    return std::nullopt;
  }

  bool is_surjective() const {
    ElementSet s(dst->order());
    for (Elem y : images) s.insert(y);
    return s.count() == dst->order();
  }
  bool is_injective() const { return kernel().is_trivial(); }
  bool is_isomorphism() const { return src->order() == dst->order() && is_injective(); }

  Subgroup kernel() const {
    ElementSet s(src->order());
    for (Elem x = 0; x < src->order(); ++x)
      if (images[x] == 0) s.insert(x);
    return {src, std::move(s)};
  }
  Subgroup image() const {
    ElementSet s(dst->order());
    for (Elem y : images) s.insert(y);
    return {dst, std::move(s)};
  }
  Subgroup image_of(const Subgroup& u) const {
    ElementSet s(dst->order());
    for (Elem x : u.elements()) s.insert(images[x]);
    return {dst, std::move(s)};
  }
  Subgroup preimage(const Subgroup& v) const {
    ElementSet s(src->order());
    for (Elem x = 0; x < src->order(); ++x)
      if (v.contains(images[x])) s.insert(x);
    return {src, std::move(s)};
  }

  // Pointwise equality with reference-identical endpoints.
  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.src == b.src && a.dst == b.dst && a.images == b.images;
  }
};

inline GroupHom identity_hom(const GroupPtr& g) {
  std::vector<Elem> im(g->order());
  std::iota(im.begin(), im.end(), 0);
  return {g, g, std::move(im)};
}

inline GroupHom trivial_hom(const GroupPtr& src, const GroupPtr& dst) {
  return {src, dst, std::vector<Elem>(src->order(), 0)};
}

/// g ∘ f (apply f first). Requires f.dst to be the very same group as g.src.
inline GroupHom compose(const GroupHom& f, const GroupHom& g) {
  if (f.dst != g.src) fail(ErrorKind::TypeMismatch, "compose: f.dst is not g.src");
  std::vector<Elem> im(f.src->order());
  for (Elem x = 0; x < f.src->order(); ++x) im[x] = g.images[f.images[x]];
  return {f.src, g.dst, std::move(im)};
}

/// Returns a reason string if `table` violates a group axiom.
inline std::optional<std::string> table_axiom_violation(int n, std::span<const Elem> t) {
  if (n <= 0) return "empty table";
  for (Elem v : t)
    if (v < 0 || v >= n) return "entry out of range";
  for (int i = 0; i < n; ++i) {
    if (t[i] != i) return "row 0 is not the identity row";
    if (t[static_cast<std::size_t>(i) * n] != i) return "column 0 is not the identity column";
  }
  for (int i = 0; i < n; ++i) {
    bool has_inv = false;
    for (int j = 0; j < n; ++j)
      if (t[static_cast<std::size_t>(i) * n + j] == 0 && t[static_cast<std::size_t>(j) * n + i] == 0) has_inv = true;
    if (!has_inv) return "element " + std::to_string(i) + " has no two-sided inverse";
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Elem ab = t[static_cast<std::size_t>(a) * n + b];
      for (int c = 0; c < n; ++c) {
        const Elem l = t[static_cast<std::size_t>(ab) * n + c];
        const Elem r = t[static_cast<std::size_t>(a) * n + t[static_cast<std::size_t>(b) * n + c]];
        if (l != r)
          return "non-associative triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
      }
    }
  return std::nullopt;
}

inline std::optional<std::string> axiom_violation(const FiniteGroup& g) {
  return table_axiom_violation(g.order(), g.flat_table());
}

/// Builds a group from a Cayley table, relabelling the identity to index 0.
inline GroupPtr group_from_table(const std::vector<std::vector<int>>& table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(ErrorKind::NotAGroup, "empty table");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::NotAGroup, "table is not square");
  for (const auto& row : table)
    for (int v : row)
      if (v < 0 || v >= n) fail(ErrorKind::NotAGroup, "entry out of range");
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) e = i;
  }
  if (e < 0) fail(ErrorKind::NotAGroup, "no identity element");
  // swap labels e <-> 0
  auto relabel = [e](int x) { return x == e ? 0 : (x == 0 ? e : x); };
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(relabel(i)) * n + relabel(j)] = relabel(table[i][j]);
  if (auto why = table_axiom_violation(n, flat)) fail(ErrorKind::NotAGroup, *why);
  return make_group(n, std::move(flat), std::move(name));
}

using Permutation = std::vector<int>;

/// Closure of permutation generators; elements sorted lexicographically.
inline GroupPtr group_from_permutations(int degree, const std::vector<Permutation>& gens, std::string name,
                                        const Limits& lim = {}) {
  if (degree <= 0) fail(ErrorKind::InvalidArgument, "degree must be positive");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree) fail(ErrorKind::InvalidArgument, "permutation has wrong degree");
    std::vector<bool> hit(degree, false);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[v]) fail(ErrorKind::InvalidArgument, "generator is not a bijection");
      hit[v] = true;
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  auto compose_perm = [degree](const Permutation& a, const Permutation& b) {  // x -> b(a(x))
    Permutation r(degree);
    for (int x = 0; x < degree; ++x) r[x] = b[a[x]];
    return r;
  };
  std::set<Permutation> seen{id};
  std::vector<Permutation> queue{id};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& g : gens) {
      Permutation y = compose_perm(queue[q], g);
      if (seen.insert(y).second) {
        queue.push_back(std::move(y));
        check_order_cap(seen.size(), lim, "permutation closure");
      }
    }
  std::vector<Permutation> elems(seen.begin(), seen.end());  // lexicographic; identity first
  std::map<Permutation, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = index.at(compose_perm(elems[i], elems[j]));
  return make_group(n, std::move(flat), std::move(name));
}

inline GroupPtr cyclic_group(int n, std::string name = {}) {
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return make_group(n, std::move(flat), name.empty() ? "C" + std::to_string(n) : std::move(name));
}

inline GroupPtr trivial_group() { return cyclic_group(1, "1"); }

struct DirectProduct {
  GroupPtr group;
  GroupHom pr1;
  GroupHom pr2;
  Elem pair(Elem a, Elem b) const { return a * pr2.dst->order() + b; }
};

/// g × h with element (a,b) at index a·|h| + b.
inline DirectProduct direct_product(const GroupPtr& g, const GroupPtr& h, const Limits& lim = {},
                                    std::string name = {}) {
  const int m = g->order(), k = h->order();
  check_order_cap(static_cast<std::size_t>(m) * k, lim, "direct product");
  const int n = m * k;
  std::vector<Elem> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      flat[static_cast<std::size_t>(x) * n + y] = g->mul(x / k, y / k) * k + h->mul(x % k, y % k);
  auto p = make_group(n, std::move(flat), name.empty() ? g->name() + "x" + h->name() : std::move(name));
  std::vector<Elem> i1(n), i2(n);
  for (int x = 0; x < n; ++x) {
    i1[x] = x / k;
    i2[x] = x % k;
  }
  return {p, GroupHom(p, g, std::move(i1)), GroupHom(p, h, std::move(i2))};
}

/// Exhaustive subgroup list (sorted by order then elements).
inline std::vector<Subgroup> subgroups(const GroupPtr& g, bool normal_only) {
  const auto& sets = normal_only ? g->normal_subgroup_sets() : g->subgroup_sets();
  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.emplace_back(g, s);
  return out;
}

inline std::vector<Subgroup> normal_subgroups(const GroupPtr& g) { return subgroups(g, true); }

/// Minimal normal subgroups of g.
inline std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& g) {
  auto ns = normal_subgroups(g);
  std::vector<Subgroup> out;
  for (const auto& n : ns) {
    if (n.is_trivial()) continue;
    bool minimal = true;
    for (const auto& m : ns)
      if (!m.is_trivial() && m.order() < n.order() && m.is_subgroup_of(n)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(n);
  }
  return out;
}

struct Quotient {
  GroupPtr group;
  GroupHom map;  // g ↠ g/n
};

/// g/n with cosets numbered by smallest representative.
inline Quotient quotient(const GroupPtr& g, const Subgroup& n, std::string name = {}) {
  if (n.parent != g) fail(ErrorKind::TypeMismatch, "subgroup belongs to another group");
  if (!n.is_normal()) fail(ErrorKind::NotNormal, "quotient by a non-normal subgroup");
  const int order = g->order();
  std::vector<int> coset(order, -1);
  std::vector<Elem> reps;
  const auto nel = n.elements();
  for (Elem x = 0; x < order; ++x) {
    if (coset[x] >= 0) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (Elem k : nel) coset[g->mul(x, k)] = c;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<Elem> flat(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) flat[static_cast<std::size_t>(a) * q + b] = coset[g->mul(reps[a], reps[b])];
  auto qg = make_group(q, std::move(flat), name.empty() ? g->name() + "/N" + std::to_string(n.order()) : std::move(name));
  return {qg, GroupHom(g, qg, std::move(coset))};
}

/// For surjective f: H ↠ Q and g: H → R with Ker f ⊆ Ker g, the map Q → R with g = result ∘ f.
inline std::optional<GroupHom> factor_through(const GroupHom& f, const GroupHom& g) {
  if (f.src != g.src) fail(ErrorKind::TypeMismatch, "factor_through: different sources");
  std::vector<Elem> im(f.dst->order(), -1);
  for (Elem x = 0; x < f.src->order(); ++x) {
    Elem q = f.images[x];
    if (im[q] < 0)
      im[q] = g.images[x];
    else if (im[q] != g.images[x])
      return std::nullopt;
  }
  for (Elem y : im)
    if (y < 0) fail(ErrorKind::InvalidArgument, "factor_through: f is not surjective");
  return GroupHom(f.dst, g.dst, std::move(im));
}

inline std::pair<Subgroup, Subgroup> hom_kernel_image(const GroupHom& f) { return {f.kernel(), f.image()}; }

/// True iff g has exactly two normal subgroups (the trivial group is not simple).
inline bool is_simple_group(const GroupPtr& g) { return g->order() > 1 && g->normal_subgroup_sets().size() == 2; }

inline Subgroup center(const GroupPtr& g) {
  ElementSet s(g->order());
  for (Elem x = 0; x < g->order(); ++x) {
    bool central = true;
    for (Elem y : g->generators())
      if (g->mul(x, y) != g->mul(y, x)) {
        central = false;
        break;
      }
    if (central) s.insert(x);
  }
  return {g, std::move(s)};
}

inline Subgroup derived_subgroup(const GroupPtr& g) {
  std::vector<Elem> comms;
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y = 0; y < g->order(); ++y) comms.push_back(g->mul(g->mul(x, y), g->mul(g->inv(x), g->inv(y))));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return generated_subgroup(g, comms);
}

}  // namespace cover
