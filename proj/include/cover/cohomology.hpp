#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "cover/fp_linalg.hpp"
#include "cover/square.hpp"

namespace cover {

class GModule;
using ModulePtr = std::shared_ptr<const GModule>;

/// F_p[G]-module on F_p^d; action[g] is the matrix of g (acting on columns).
class GModule {
 public:
  GModule(GroupPtr g, int p, int d, std::vector<fp::Mat> action)
      : group_(std::move(g)), p_(p), d_(d), action_(std::move(action)) {}

  // Validating factory: prime p, one invertible d×d matrix per element, homomorphism.
  static ModulePtr make(GroupPtr g, int p, int d, std::vector<fp::Mat> action) {
    if (!fp::is_prime(p)) fail(ErrorKind::InvalidArgument, "module prime is not prime");
    if (d <= 0) fail(ErrorKind::InvalidArgument, "module dimension must be positive");
    if (static_cast<int>(action.size()) != g->order()) fail(ErrorKind::InvalidArgument, "action needs one matrix per element");
    for (const auto& a : action) {
      if (static_cast<int>(a.size()) != d) fail(ErrorKind::InvalidArgument, "action matrix has wrong size");
      for (const auto& r : a) {
        if (static_cast<int>(r.size()) != d) fail(ErrorKind::InvalidArgument, "action matrix has wrong size");
        for (int x : r)
          if (x < 0 || x >= p) fail(ErrorKind::InvalidArgument, "matrix entry out of range");
      }
    }
    auto m = std::make_shared<const GModule>(std::move(g), p, d, std::move(action));
    const auto& G = *m->group();
    if (m->action_[0] != fp::identity(d)) fail(ErrorKind::InvalidArgument, "identity does not act trivially");
    for (Elem a = 0; a < G.order(); ++a)
      for (Elem b = 0; b < G.order(); ++b)
        if (fp::mul(m->action_[a], m->action_[b], p) != m->action_[G.mul(a, b)])
          fail(ErrorKind::InvalidArgument, "action is not a homomorphism");
    return m;
  }

  const GroupPtr& group() const { return group_; }
  int prime() const { return p_; }
  int dim() const { return d_; }
  int size() const {
    int s = 1;
    for (int i = 0; i < d_; ++i) s *= p_;
    return s;
  }
  const fp::Mat& rho(Elem g) const { return action_[g]; }
  const std::vector<fp::Mat>& action() const { return action_; }
  fp::Vec act(Elem g, const fp::Vec& v) const { return fp::apply(action_[g], v, p_); }

  bool is_trivial_action() const {
    for (const auto& a : action_)
      if (a != fp::identity(d_)) return false;
    return true;
  }

  // Vector <-> integer code Σ v_i p^i.
  int code(const fp::Vec& v) const {
    int c = 0;
    for (int i = d_; i-- > 0;) c = c * p_ + v[i];
    return c;
  }
  fp::Vec vec(int code) const {
    fp::Vec v(d_);
    for (int i = 0; i < d_; ++i) {
      v[i] = code % p_;
      code /= p_;
    }
    return v;
  }

  friend bool operator==(const GModule& a, const GModule& b) {
    return a.group_ == b.group_ && a.p_ == b.p_ && a.d_ == b.d_ && a.action_ == b.action_;
  }

  // Cached coboundary space B²(G, C) inside the normalized cochains.
  const fp::Subspace& coboundaries() const;

 private:
  GroupPtr group_;
  int p_, d_;
  std::vector<fp::Mat> action_;
  mutable std::once_flag b2_once_;
  mutable std::unique_ptr<fp::Subspace> b2_;
};

inline ModulePtr trivial_module(const GroupPtr& g, int p, int d = 1) {
  return GModule::make(g, p, d, std::vector<fp::Mat>(g->order(), fp::identity(d)));
}

/// Smallest submodule containing v.
inline fp::Subspace submodule_generated(const GModule& m, const fp::Vec& v) {
  fp::Subspace s(m.prime(), m.dim());
  std::vector<fp::Vec> queue;
  if (s.add(v)) queue.push_back(v);
  const auto& gens = m.group()->generators();
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (Elem g : gens) {
      fp::Vec w = m.act(g, queue[q]);
      if (s.add(w)) queue.push_back(w);
    }
  return s;
}

/// Simple iff every nonzero vector generates the whole module.
inline bool is_simple_module(const GModule& m) {
  for (int c = 1; c < m.size(); ++c)
    if (submodule_generated(m, m.vec(c)).dim() < m.dim()) return false;
  return true;
}

/// Ker eta viewed as a G-module through conjugation.
struct KernelModule {
  ModulePtr module;
  GroupHom eta;
  std::vector<Elem> basis;
  std::vector<int> code_of;     // element of H -> module code, -1 outside the kernel
  std::vector<Elem> elem_of;    // module code -> element of H
  bool simple = false;

  fp::Vec coords(Elem k) const { return module->vec(code_of[k]); }
  Elem element(const fp::Vec& v) const { return elem_of[module->code(v)]; }
};

inline KernelModule module_from_kernel(const GroupHom& eta) {
  const GroupPtr& h = eta.src;
  const auto kel = eta.kernel().elements();
  if (kel.size() == 1) fail(ErrorKind::InvalidArgument, "module_from_kernel: trivial kernel");
  for (Elem a : kel)
    for (Elem b : kel)
      if (h->mul(a, b) != h->mul(b, a)) fail(ErrorKind::NotAbelianKernel, "kernel is not abelian");
  const int p = h->elem_order(kel[1]);
  if (!fp::is_prime(p)) fail(ErrorKind::NotElementaryAbelian, "kernel exponent is not prime");
  for (Elem a : kel)
    if (a != 0 && h->elem_order(a) != p) fail(ErrorKind::NotElementaryAbelian, "kernel is not elementary abelian");

  KernelModule km;
  km.eta = eta;
  ElementSet span(h->order());
  span.insert(0);
  for (Elem x : kel)
    if (!span.contains(x)) {
      km.basis.push_back(x);
      span = h->closure(km.basis);
    }
  const int d = static_cast<int>(km.basis.size());
  int q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  km.code_of.assign(h->order(), -1);
  km.elem_of.assign(q, 0);
  for (int c = 0; c < q; ++c) {
    Elem e = 0;
    int r = c;
    for (int i = 0; i < d; ++i) {
      for (int t = 0; t < r % p; ++t) e = h->mul(e, km.basis[i]);
      r /= p;
    }
    km.elem_of[c] = e;
    km.code_of[e] = c;
  }
  // action through a preimage of each g
  const GroupPtr& g = eta.dst;
  std::vector<Elem> pre(g->order(), -1);
  for (Elem x = 0; x < h->order(); ++x)
    if (pre[eta(x)] < 0) pre[eta(x)] = x;
  std::vector<fp::Mat> action(g->order(), fp::Mat(d, fp::Vec(d, 0)));
  auto vec_of = [&](int c) {
    fp::Vec v(d);
    for (int i = 0; i < d; ++i) {
      v[i] = c % p;
      c /= p;
    }
    return v;
  };
  for (Elem y = 0; y < g->order(); ++y)
    for (int j = 0; j < d; ++j) {
      fp::Vec col = vec_of(km.code_of[h->conj(pre[y], km.basis[j])]);
      for (int i = 0; i < d; ++i) action[y][i][j] = col[i];
    }
  km.module = GModule::make(g, p, d, std::move(action));
  km.simple = is_simple_module(*km.module);
  return km;
}

/// F_C = End_G(C) with basis and structure constants; e = [F_C : F_p].
struct EndField {
  ModulePtr module;
  int p = 0;
  int degree = 0;
  std::vector<fp::Mat> basis;
  std::vector<std::vector<fp::Vec>> structure;  // basis[i]·basis[j] = Σ structure[i][j][k] basis[k]

  int size() const {
    int s = 1;
    for (int i = 0; i < degree; ++i) s *= p;
    return s;
  }
  fp::Mat element(const fp::Vec& coeffs) const {
    const int d = module->dim();
    fp::Mat m(d, fp::Vec(d, 0));
    for (int k = 0; k < degree; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = (m[i][j] + coeffs[k] * basis[k][i][j]) % p;
    return m;
  }
  std::vector<fp::Mat> elements() const {
    std::vector<fp::Mat> out;
    for (int c = 0; c < size(); ++c) {
      fp::Vec co(degree);
      int r = c;
      for (int k = 0; k < degree; ++k) {
        co[k] = r % p;
        r /= p;
      }
      out.push_back(element(co));
    }
    return out;
  }
};

namespace detail {

// Linear conditions T·rho1(g) = rho2(g)·T over generators, unknown T flattened.
inline std::vector<fp::Vec> intertwiner_conditions(const GModule& m1, const GModule& m2) {
  const int d = m1.dim(), p = m1.prime();
  std::vector<fp::Vec> rows;
  for (Elem g : m1.group()->generators()) {
    const auto& r1 = m1.rho(g);
    const auto& r2 = m2.rho(g);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        fp::Vec row(static_cast<std::size_t>(d) * d, 0);
        for (int k = 0; k < d; ++k) {
          row[static_cast<std::size_t>(i) * d + k] = fp::mod(row[static_cast<std::size_t>(i) * d + k] + r1[k][j], p);
          row[static_cast<std::size_t>(k) * d + j] = fp::mod(row[static_cast<std::size_t>(k) * d + j] - r2[i][k], p);
        }
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

}  // namespace detail

inline EndField end_field(const ModulePtr& m) {
  if (!is_simple_module(*m)) fail(ErrorKind::NotSimple, "end_field needs a simple module");
  const int d = m->dim(), p = m->prime();
  EndField f;
  f.module = m;
  f.p = p;
  for (const auto& v : fp::nullspace(detail::intertwiner_conditions(*m, *m), d * d, p))
    f.basis.push_back(fp::unflatten(v, d));
  f.degree = static_cast<int>(f.basis.size());
  // coordinates of every element, for structure constants and the axiom check
  std::map<fp::Vec, fp::Vec> coords;
  for (int c = 0; c < f.size(); ++c) {
    fp::Vec co(f.degree);
    int r = c;
    for (int k = 0; k < f.degree; ++k) {
      co[k] = r % p;
      r /= p;
    }
    coords[fp::flatten(f.element(co))] = co;
  }
  f.structure.assign(f.degree, std::vector<fp::Vec>(f.degree));
  for (int i = 0; i < f.degree; ++i)
    for (int j = 0; j < f.degree; ++j) {
      auto prod = fp::mul(f.basis[i], f.basis[j], p);
      auto it = coords.find(fp::flatten(prod));
      if (it == coords.end()) fail(ErrorKind::NotSimple, "commutant is not closed under products");
      if (prod != fp::mul(f.basis[j], f.basis[i], p)) fail(ErrorKind::NotSimple, "commutant is not commutative");
      f.structure[i][j] = it->second;
    }
  for (const auto& x : f.elements()) {
    bool zero = true;
    for (const auto& r : x) zero = zero && fp::is_zero(r);
    if (!zero && !fp::invertible(x, p)) fail(ErrorKind::NotSimple, "commutant has a zero divisor");
  }
  return f;
}

/// G-module isomorphism T: m1 → m2 (T rho1(g) = rho2(g) T), if any.
inline std::optional<fp::Mat> module_isomorphism(const GModule& m1, const GModule& m2, const Limits& lim = {}) {
  if (m1.group() != m2.group() || m1.prime() != m2.prime() || m1.dim() != m2.dim()) return std::nullopt;
  const int d = m1.dim(), p = m1.prime();
  if (m1 == m2) return fp::identity(d);
  auto basis = fp::nullspace(detail::intertwiner_conditions(m1, m2), d * d, p);
  if (basis.empty()) return std::nullopt;
  SearchCounter counter(lim.search_budget);
  std::vector<int> co(basis.size(), 0);
  while (true) {
    // next coefficient vector (skipping zero)
    std::size_t i = 0;
    while (i < co.size() && ++co[i] == p) co[i++] = 0;
    if (i == co.size()) break;
    counter.tick("module isomorphism");
    fp::Vec t(static_cast<std::size_t>(d) * d, 0);
    for (std::size_t k = 0; k < basis.size(); ++k) fp::axpy(t, co[k], basis[k], p);
    fp::Mat T = fp::unflatten(t, d);
    if (fp::invertible(T, p)) return T;
  }
  return std::nullopt;
}

// ---- cochains ---------------------------------------------------------------
// A 2-cochain c: G×G → C is a flat vector, entry ((g·|G| + h)·d + k).
using Cochain = fp::Vec;

inline std::size_t cochain_size(const GModule& m) {
  const std::size_t n = m.group()->order();
  return n * n * static_cast<std::size_t>(m.dim());
}

inline fp::Vec cochain_at(const GModule& m, const Cochain& c, Elem g, Elem h) {
  const std::size_t n = m.group()->order(), d = m.dim();
  const std::size_t off = (static_cast<std::size_t>(g) * n + h) * d;
  return fp::Vec(c.begin() + off, c.begin() + off + d);
}

inline bool is_normalized(const GModule& m, const Cochain& c) {
  for (Elem g = 0; g < m.group()->order(); ++g)
    if (!fp::is_zero(cochain_at(m, c, 0, g)) || !fp::is_zero(cochain_at(m, c, g, 0))) return false;
  return true;
}

/// g·c(h,k) + c(g,hk) = c(g,h) + c(gh,k) for all triples.
inline bool is_cocycle(const GModule& m, const Cochain& c) {
  const auto& G = *m.group();
  const int p = m.prime();
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem h = 0; h < G.order(); ++h)
      for (Elem k = 0; k < G.order(); ++k) {
        fp::Vec l = m.act(g, cochain_at(m, c, h, k));
        fp::axpy(l, 1, cochain_at(m, c, g, G.mul(h, k)), p);
        fp::Vec r = cochain_at(m, c, g, h);
        fp::axpy(r, 1, cochain_at(m, c, G.mul(g, h), k), p);
        if (l != r) return false;
      }
  return true;
}

/// δf(g,h) = f(g) + g·f(h) − f(gh) for f: G → C given as |G|·d vector.
inline Cochain coboundary(const GModule& m, const fp::Vec& f) {
  const auto& G = *m.group();
  const int n = G.order(), d = m.dim(), p = m.prime();
  Cochain c(cochain_size(m), 0);
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h) {
      fp::Vec fg(f.begin() + g * d, f.begin() + (g + 1) * d);
      fp::Vec fh(f.begin() + h * d, f.begin() + (h + 1) * d);
      const Elem gh = G.mul(g, h);
      fp::Vec v = m.act(g, fh);
      fp::axpy(v, 1, fg, p);
      for (int k = 0; k < d; ++k) v[k] = fp::mod(v[k] - f[gh * d + k], p);
      for (int k = 0; k < d; ++k) c[(static_cast<std::size_t>(g) * n + h) * d + k] = v[k];
    }
  return c;
}

inline const fp::Subspace& GModule::coboundaries() const {
  std::call_once(b2_once_, [this] {
    const int n = group_->order();
    b2_ = std::make_unique<fp::Subspace>(p_, static_cast<int>(cochain_size(*this)));
    for (Elem g = 1; g < n; ++g)
      for (int k = 0; k < d_; ++k) {
        fp::Vec f(static_cast<std::size_t>(n) * d_, 0);
        f[g * d_ + k] = 1;
        b2_->add(coboundary(*this, f));
      }
  });
  return *b2_;
}

/// Applies a matrix entrywise to a cochain (End_G(C) action, or transport along a module isomorphism).
inline Cochain apply_entrywise(const fp::Mat& t, const Cochain& c, int d, int p) {
  Cochain out(c.size());
  for (std::size_t off = 0; off < c.size(); off += d) {
    fp::Vec v(c.begin() + off, c.begin() + off + d);
    fp::Vec w = fp::apply(t, v, p);
    std::copy(w.begin(), w.end(), out.begin() + off);
  }
  return out;
}

/// Element of H²(G, C) held by a normalized cocycle representative.
struct CocycleClass {
  ModulePtr module;
  Cochain rep;

  bool is_zero() const { return module->coboundaries().contains(rep); }
  friend bool operator==(const CocycleClass& a, const CocycleClass& b) {
    if (!(*a.module == *b.module)) return false;
    Cochain diff = a.rep;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fp::mod(diff[i] - b.rep[i], a.module->prime());
    return a.module->coboundaries().contains(diff);
  }
};

struct H2Space {
  ModulePtr module;
  EndField field;
  int z2_dim = 0;
  int b2_dim = 0;
  int dim_fp = 0;          // dim over F_p
  int dim_fc = 0;          // dim over F_C
  std::vector<CocycleClass> basis;  // F_p-basis of H² (representatives)
};

/// Normalized 2-cocycles as a solution space, modulo coboundaries.
inline H2Space h2_space(const ModulePtr& m, const Limits& lim = {}) {
  const auto& G = *m->group();
  const int n = G.order(), d = m->dim(), p = m->prime();
  const double unknowns = static_cast<double>(n - 1) * (n - 1) * d;
  const double eqs = static_cast<double>(n - 1) * (n - 1) * (n - 1) * d;
  if (eqs * unknowns * unknowns > static_cast<double>(lim.search_budget) * 1000.0)
    fail(ErrorKind::SearchBudgetExceeded, "h2_space: cocycle system too large");
  // unknown index for (g,h,k) with g,h ≠ 1
  auto var = [&](Elem g, Elem h, int k) { return ((g - 1) * (n - 1) + (h - 1)) * d + k; };
  const int nv = (n - 1) * (n - 1) * d;
  fp::Subspace eqspace(p, nv);
  for (Elem g = 1; g < n; ++g)
    for (Elem h = 1; h < n; ++h)
      for (Elem k = 1; k < n; ++k) {
        const Elem hk = G.mul(h, k), gh = G.mul(g, h);
        const auto& r = m->rho(g);
        for (int i = 0; i < d; ++i) {
          // (g·c(h,k))_i + c(g,hk)_i − c(g,h)_i − c(gh,k)_i = 0
          fp::Vec row(nv, 0);
          for (int j = 0; j < d; ++j) row[var(h, k, j)] = fp::mod(row[var(h, k, j)] + r[i][j], p);
          if (hk != 0) row[var(g, hk, i)] = fp::mod(row[var(g, hk, i)] + 1, p);
          row[var(g, h, i)] = fp::mod(row[var(g, h, i)] - 1, p);
          if (gh != 0) row[var(gh, k, i)] = fp::mod(row[var(gh, k, i)] - 1, p);
          eqspace.add(row);
        }
      }
  auto z = fp::nullspace(eqspace.rows(), nv, p);
  H2Space out;
  out.module = m;
  out.field = end_field(m);
  out.z2_dim = static_cast<int>(z.size());
  const fp::Subspace& b2 = m->coboundaries();
  out.b2_dim = b2.dim();
  fp::Subspace acc = b2;
  for (const auto& v : z) {
    Cochain c(cochain_size(*m), 0);
    for (Elem g = 1; g < n; ++g)
      for (Elem h = 1; h < n; ++h)
        for (int k = 0; k < d; ++k) c[(static_cast<std::size_t>(g) * n + h) * d + k] = v[var(g, h, k)];
    if (acc.add(c)) out.basis.push_back({m, std::move(c)});
  }
  out.dim_fp = static_cast<int>(out.basis.size());
  out.dim_fc = out.dim_fp / out.field.degree;
  return out;
}

/// Class of eta with simple abelian kernel, via a normalized section
/// s(g)s(h) = c(g,h)s(gh). Seed 0 takes the smallest preimage; other seeds
/// pick random preimages. With a target module the kernel is first
/// identified with it by a searched G-module isomorphism.
inline CocycleClass extension_class(const GroupHom& eta, const ModulePtr& target = nullptr, std::uint64_t seed = 0,
                                    const Limits& lim = {}) {
  KernelModule km = module_from_kernel(eta);
  if (!km.simple) fail(ErrorKind::NotSimple, "kernel is not a simple module");
  ModulePtr m = km.module;
  std::optional<fp::Mat> T;
  if (target) {
    T = module_isomorphism(*km.module, *target, lim);
    if (!T) fail(ErrorKind::ModuleMismatch, "kernel module is not isomorphic to the given module");
    m = target;
  }
  const GroupPtr& h = eta.src;
  const GroupPtr& g = eta.dst;
  const int n = g->order(), d = m->dim(), p = m->prime();
  std::vector<std::vector<Elem>> fib(n);
  for (Elem x = 0; x < h->order(); ++x) fib[eta(x)].push_back(x);
  std::vector<Elem> s(n);
  std::mt19937_64 rng(seed);
  for (Elem y = 0; y < n; ++y) {
    if (y == 0 || seed == 0) {
      s[y] = fib[y][0];
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, fib[y].size() - 1);
      s[y] = fib[y][pick(rng)];
    }
  }
  Cochain c(cochain_size(*m), 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Elem k = h->mul(h->mul(s[a], s[b]), h->inv(s[g->mul(a, b)]));
      fp::Vec v = km.coords(k);
      if (T) v = fp::apply(*T, v, p);
      for (int i = 0; i < d; ++i) c[(static_cast<std::size_t>(a) * n + b) * d + i] = v[i];
    }
  return {m, std::move(c)};
}

/// The group of pairs (a, g) with (a,g)(b,h) = (a + g·b + c(g,h), gh), and its
/// projection to G. Element (a, g) has index g·|C| + code(a).
inline GroupHom class_to_extension(const CocycleClass& x, const Limits& lim = {}, std::string name = {}) {
  const GModule& m = *x.module;
  const auto& G = *m.group();
  if (!is_normalized(m, x.rep)) fail(ErrorKind::InvalidArgument, "cocycle is not normalized");
  if (!is_cocycle(m, x.rep)) fail(ErrorKind::InvalidArgument, "cochain is not a cocycle");
  const int n = G.order(), q = m.size(), p = m.prime();
  check_order_cap(static_cast<std::size_t>(n) * q, lim, "extension");
  const int order = n * q;
  std::vector<fp::Vec> vecs(q);
  for (int a = 0; a < q; ++a) vecs[a] = m.vec(a);
  std::vector<Elem> flat(static_cast<std::size_t>(order) * order);
  for (Elem g = 0; g < n; ++g)
    for (int a = 0; a < q; ++a)
      for (Elem h = 0; h < n; ++h) {
        const fp::Vec cg = cochain_at(m, x.rep, g, h);
        const Elem gh = G.mul(g, h);
        for (int b = 0; b < q; ++b) {
          fp::Vec v = m.act(g, vecs[b]);
          fp::axpy(v, 1, vecs[a], p);
          fp::axpy(v, 1, cg, p);
          flat[static_cast<std::size_t>(g * q + a) * order + (h * q + b)] = gh * q + m.code(v);
        }
      }
  if (name.empty()) name = "E(" + G.name() + "," + std::to_string(q) + ")";
  auto e = make_group(order, std::move(flat), std::move(name));
  std::vector<Elem> im(order);
  for (int i = 0; i < order; ++i) im[i] = i / q;
  return GroupHom(e, m.group(), std::move(im));
}

/// F_C-span of a family of classes modulo coboundaries.
struct ClassSpan {
  ModulePtr module;
  fp::Subspace space;  // contains B²; F_C-invariant
  int degree = 1;      // [F_C : F_p]

  int dim_fc() const { return (space.dim() - module->coboundaries().dim()) / degree; }
  bool contains(const CocycleClass& x) const { return space.contains(x.rep); }
  bool is_subspace_of(const ClassSpan& o) const { return space.is_subspace_of(o.space); }
};

struct SpanResult {
  ClassSpan span;
  std::vector<std::size_t> basis_indices;  // F_C-independent members spanning it
  int span_dim = 0;
  int relation_dim = 0;
};

inline bool add_fc_orbit(ClassSpan& s, const EndField& f, const Cochain& c) {
  bool grew = false;
  for (const auto& b : f.basis) grew = s.space.add(apply_entrywise(b, c, s.module->dim(), s.module->prime())) || grew;
  return grew;
}

inline ClassSpan empty_span(const ModulePtr& m, const EndField& f) {
  return {m, m->coboundaries(), f.degree};
}

inline SpanResult span_and_relations(const std::vector<CocycleClass>& family, const ModulePtr& module = nullptr) {
  ModulePtr m = module ? module : (family.empty() ? nullptr : family.front().module);
  if (!m) fail(ErrorKind::InvalidArgument, "span_and_relations: no module");
  for (const auto& x : family)
    if (!(*x.module == *m)) fail(ErrorKind::ModuleMismatch, "classes over different modules");
  EndField f = end_field(m);
  SpanResult r{empty_span(m, f), {}, 0, 0};
  for (std::size_t i = 0; i < family.size(); ++i)
    if (add_fc_orbit(r.span, f, family[i].rep)) r.basis_indices.push_back(i);
  r.span_dim = r.span.dim_fc();
  r.relation_dim = static_cast<int>(family.size()) - r.span_dim;
  return r;
}

// ---- invariants of fundamental covers --------------------------------------

/// Total order on covers used to pick Λ_na representatives: source order, then
/// source table, then images.
inline bool cover_key_less(const GroupHom& a, const GroupHom& b) {
  if (a.src->order() != b.src->order()) return a.src->order() < b.src->order();
  auto ta = a.src->flat_table(), tb = b.src->flat_table();
  int c = 0;
  for (std::size_t i = 0; i < ta.size() && c == 0; ++i) c = (ta[i] > tb[i]) - (ta[i] < tb[i]);
  if (c != 0) return c < 0;
  return a.images < b.images;
}

struct NaMult {
  GroupHom rep;  // canonical member of the ≅_G class
  int mult = 0;
};

struct AbData {
  ModulePtr module;
  std::vector<CocycleClass> classes;  // leg classes, transported into `module`
  std::vector<CocycleClass> supp;     // F_C-basis of supp_C
  int supp_dim = 0;
  int mult = 0;

  ClassSpan span() const {
    EndField f = end_field(module);
    ClassSpan s = empty_span(module, f);
    for (const auto& x : supp) add_fc_orbit(s, f, x.rep);
    return s;
  }
};

struct FundamentalInvariants {
  GroupPtr base;
  std::vector<NaMult> na;
  std::vector<AbData> ab;
};

inline FundamentalInvariants cover_invariants(const GroupHom& pi, const Decomposition& dec, const Limits& lim = {}) {
  if (!is_fundamental(pi)) fail(ErrorKind::NotFundamental, "cover_invariants needs a fundamental cover");
  if (dec.family.base != pi.dst) fail(ErrorKind::BaseMismatch, "decomposition over another base");
  FundamentalInvariants inv;
  inv.base = pi.dst;
  for (const auto& leg : dec.family.legs) {
    if (leg.is_isomorphism()) continue;  // the decomposition of an isomorphism
    const auto kel = leg.kernel().elements();
    bool abelian = true;
    for (Elem a : kel)
      for (Elem b : kel) abelian = abelian && leg.src->mul(a, b) == leg.src->mul(b, a);
    if (!abelian) {
      bool found = false;
      for (auto& e : inv.na)
        if (isomorphic_over_G(leg, e.rep, lim)) {
          ++e.mult;
          if (cover_key_less(leg, e.rep)) e.rep = leg;
          found = true;
          break;
        }
      if (!found) inv.na.push_back({leg, 1});
      continue;
    }
    KernelModule km = module_from_kernel(leg);
    bool placed = false;
    for (auto& e : inv.ab)
      if (module_isomorphism(*km.module, *e.module, lim)) {
        e.classes.push_back(extension_class(leg, e.module, 0, lim));
        placed = true;
        break;
      }
    if (!placed) inv.ab.push_back({km.module, {extension_class(leg, km.module, 0, lim)}, {}, 0, 0});
  }
  for (auto& e : inv.ab) {
    SpanResult r = span_and_relations(e.classes, e.module);
    for (std::size_t i : r.basis_indices) e.supp.push_back(e.classes[i]);
    e.supp_dim = r.span_dim;
    e.mult = r.relation_dim;
  }
  std::sort(inv.na.begin(), inv.na.end(), [](const NaMult& a, const NaMult& b) { return cover_key_less(a.rep, b.rep); });
  return inv;
}

/// Convenience: decompose, then compute the invariants.
inline FundamentalInvariants cover_invariants(const GroupHom& pi, const Limits& lim = {}) {
  return cover_invariants(pi, indecomposable_decomposition(pi, 0, lim), lim);
}

namespace detail {

// supp of `from` transported into `to`'s module, as a span there.
inline ClassSpan transported_span(const AbData& from, const AbData& to, const fp::Mat& T) {
  EndField f = end_field(to.module);
  ClassSpan s = empty_span(to.module, f);
  for (const auto& x : from.supp)
    add_fc_orbit(s, f, apply_entrywise(T, x.rep, to.module->dim(), to.module->prime()));
  return s;
}

}  // namespace detail

struct CoverComparison {
  bool first_dominates_second = false;  // second ≼ first
  bool second_dominates_first = false;
  bool isomorphic = false;
  bool incomparable() const { return !first_dominates_second && !second_dominates_first; }
};

/// second ≼ first per the multiplicity and support conditions.
inline bool invariants_dominate(const FundamentalInvariants& first, const FundamentalInvariants& second,
                                const Limits& lim = {}) {
  if (first.base != second.base) fail(ErrorKind::BaseMismatch, "invariants over different bases");
  for (const auto& s : second.na) {
    int m = 0;
    for (const auto& f : first.na)
      if (isomorphic_over_G(s.rep, f.rep, lim)) m = f.mult;
    if (s.mult > m) return false;
  }
  for (const auto& s : second.ab) {
    const AbData* match = nullptr;
    std::optional<fp::Mat> T;
    for (const auto& f : first.ab)
      if ((T = module_isomorphism(*s.module, *f.module, lim))) {
        match = &f;
        break;
      }
    if (!match) {
      if (s.mult > 0 || s.supp_dim > 0) return false;
      continue;
    }
    if (s.mult > match->mult) return false;
    if (!detail::transported_span(s, *match, *T).is_subspace_of(match->span())) return false;
  }
  return true;
}

inline CoverComparison compare_covers(const FundamentalInvariants& a, const FundamentalInvariants& b,
                                      const Limits& lim = {}) {
  CoverComparison c;
  c.first_dominates_second = invariants_dominate(a, b, lim);
  c.second_dominates_first = invariants_dominate(b, a, lim);
  c.isomorphic = c.first_dominates_second && c.second_dominates_first;
  return c;
}

/// Equality of invariants: same na classes with equal mults, and per module
/// class equal mult and equal supp.
inline bool invariants_equal(const FundamentalInvariants& a, const FundamentalInvariants& b, const Limits& lim = {}) {
  if (a.na.size() != b.na.size() || a.ab.size() != b.ab.size()) return false;
  return compare_covers(a, b, lim).isomorphic;
}

}  // namespace cover
