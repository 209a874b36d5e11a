#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cover/catalog.hpp"
#include "cover/cohomology.hpp"
#include "cover/cover_engine.hpp"
#include "cover/square.hpp"

namespace cover::verify {

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

inline Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "skipped") return Status::Skipped;
  fail(ErrorKind::InvalidArgument, "unknown status '" + s + "'");
}

struct CheckRecord {
  std::string id;
  std::string anchor;
  Status status = Status::Skipped;
  double seconds = 0;
  std::string witness;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Report {
  std::vector<CheckRecord> records;  // sorted by id

  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.status == s;
    return n;
  }
  bool ok() const { return count(Status::Fail) == 0; }
  friend bool operator==(const Report&, const Report&) = default;
};

struct Outcome {
  bool pass = true;
  std::string witness;
};

// Collects per-instance expectations; keeps the first failure.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++n_;
    if (!ok && failure_.empty()) failure_ = what;
  }
  template <class F>
  void expect_lazy(bool ok, F&& what) {
    ++n_;
    if (!ok && failure_.empty()) failure_ = what();
  }
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  int count() const { return n_; }
  Outcome outcome(const std::string& summary) const {
    if (!failure_.empty()) return {false, failure_};
    return {true, summary.empty() ? std::to_string(n_) + " instances" : summary};
  }

 private:
  int n_ = 0;
  std::string failure_;
};

// Shared, lazily built objects for one suite run.
class Context {
 public:
  explicit Context(Limits lim) : lim(lim) {}
  Limits lim;

  const SecResult& sec(const GroupPtr& g) {
    for (const auto& [k, v] : secs_)
      if (k == g) return v;
    secs_.emplace_back(g, smallest_embedding_cover(g, 0, lim));
    return secs_.back().second;
  }
  CoverClassification classify(const GroupHom& eta) { return classify_cover(eta, sec(eta.dst), lim); }

  const std::vector<QuotientType>& sec_types(const GroupPtr& g) {
    for (const auto& [k, v] : types_)
      if (k == g) return v;
    types_.emplace_back(g, quotient_types(sec(g).group(), lim));
    return types_.back().second;
  }
  bool in_E(const GroupPtr& base, const GroupPtr& h) { return find_quotient_type(sec_types(base), h, lim).has_value(); }

  const std::vector<GroupHom>& pool();

 private:
  std::vector<std::pair<GroupPtr, SecResult>> secs_;
  std::vector<std::pair<GroupPtr, std::vector<QuotientType>>> types_;
  std::optional<std::vector<GroupHom>> pool_;
};

struct Check {
  std::string id;
  std::string anchor;
  std::function<Outcome(Context&)> run;
};

namespace detail {

inline GroupPtr cat(const std::string& n) { return catalog_group(n); }

inline GroupHom first_epi(const GroupPtr& src, const GroupPtr& dst) {
  auto es = enumerate_homs(src, dst, true);
  if (es.empty()) fail(ErrorKind::InvalidArgument, "no epimorphism " + src->name() + " -> " + dst->name());
  return es.front();
}

inline GroupHom sign() { return first_epi(cat("S3"), cat("C2")); }

inline GroupHom cyc(int n, int m) {
  auto dst = m == 1 ? cat("1") : cat("C" + std::to_string(m));
  std::vector<Elem> im(n);
  for (int i = 0; i < n; ++i) im[i] = i % m;
  return GroupHom::make(cat("C" + std::to_string(n)), dst, im);
}

inline GroupHom to_trivial(const GroupPtr& g) { return trivial_hom(g, cat("1")); }

inline std::vector<GroupHom> covers_of(const GroupPtr& g, int max_order) {
  std::vector<GroupHom> out;
  for (const auto& s : catalog_names()) {
    auto h = cat(s);
    if (h->order() > max_order || h->order() % g->order() != 0) continue;
    for (auto& e : enumerate_homs(h, g, true)) out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<GroupHom> small_covers(int max_order) {
  std::vector<GroupHom> out;
  for (const auto& g : catalog_names())
    for (auto& c : covers_of(cat(g), max_order)) out.push_back(std::move(c));
  return out;
}

inline bool kernel_abelian(const GroupHom& e) {
  const auto k = e.kernel().elements();
  for (Elem x : k)
    for (Elem y : k)
      if (e.src->mul(x, y) != e.src->mul(y, x)) return false;
  return true;
}

// C2 × S3 ↠ C2 with kernel the S3 factor
inline GroupHom proj_c2() {
  for (auto& e : enumerate_homs(cat("C2xS3"), cat("C2"), true))
    if (!kernel_abelian(e)) return e;
  fail(ErrorKind::InvalidArgument, "no projection onto C2");
}

inline GroupHom coordinate_projection(const GroupPtr& g, const GroupPtr& s) { return direct_product(g, s).pr1; }

inline GroupHom sign_cover() { return pullback(sign(), proj_c2()).eta; }

inline bool splits(const GroupHom& eta) {
  HomSearchOptions opt;
  opt.allow = [&](Elem g, Elem y) { return eta(y) == g; };
  return find_hom(eta.dst, eta.src, opt).has_value();
}

inline std::vector<GroupHom> quotient_covers(const GroupHom& pi) {
  std::vector<GroupHom> out;
  const Subgroup ker = pi.kernel();
  for (const auto& n : normal_subgroups(pi.src))
    if (n.is_subgroup_of(ker)) out.push_back(induced_cover(pi, n));
  return out;
}

inline GroupHom between(const Quotient& from, const Quotient& to) { return *factor_through(from.map, to.map); }

inline Square square_from_normals(const std::vector<Quotient>& q, int x, int y, int z, int w) {
  return Square::make(between(q[x], q[y]), between(q[x], q[z]), between(q[z], q[w]), between(q[y], q[w]));
}

// Some proper subgroup of fp.group projects onto every leg source.
inline bool family_compact(const FiberProduct& fp) {
  const auto& sets = fp.group->subgroup_sets();
  for (const auto& u : sets) {
    if (u.count() == fp.group->order()) continue;
    Subgroup U(fp.group, u);
    bool all = true;
    for (const auto& p : fp.projections) all = all && p.image_of(U).is_whole();
    if (all) return false;
  }
  return true;
}

inline CocycleClass combination(const std::vector<CocycleClass>& basis, const ModulePtr& m, int code) {
  const int p = m->prime();
  Cochain c(cochain_size(*m), 0);
  for (std::size_t i = 0; i < basis.size(); ++i, code /= p) {
    const int a = code % p;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = (c[k] + a * basis[i].rep[k]) % p;
  }
  return {m, c};
}

inline int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline Square c4_noncompact_square() {
  auto dp = direct_product(cat("C4"), cat("C2"));
  std::vector<Elem> beta(8);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b) beta[dp.pair(a, b)] = (a + 2 * b) % 4;
  return Square::make(dp.pr1, GroupHom::make(dp.group, cat("C4"), beta), cyc(4, 2), cyc(4, 2));
}

inline const std::vector<std::string>& square_names() {
  static const std::vector<std::string> v = {"1",  "C2",  "C3",   "C4",    "C2xC2", "S3", "C6",    "C2xC3",
                                             "D4", "Q8",  "S3xC2", "C9",   "C3xC3", "A4", "C8",    "C4xC2"};
  return v;
}

inline const char* const kGrid[] = {"C2", "C3", "C4", "C2xC2", "S3"};

}  // namespace detail

inline const std::vector<GroupHom>& Context::pool() {
  if (pool_) return *pool_;
  using namespace detail;
  std::vector<GroupHom> v;
  const GroupPtr g = cat("C2xS3");
  for (auto& q : quotient_covers(sec(g).cover)) v.push_back(q);
  for (auto& e : covers_of(g, 72)) v.push_back(e);
  v.push_back(coordinate_projection(g, cat("C2")));
  v.push_back(coordinate_projection(g, cat("C3")));
  for (const auto& c : enumerate_superbasic(g, lim).covers) {
    v.push_back(c.cover);
    v.push_back(power_cover(c.cover, 2, lim));
  }
  for (int p : {2, 3})
    for (const auto& x : h2_space(trivial_module(g, p), lim).basis) v.push_back(class_to_extension(x, lim));
  pool_ = std::move(v);
  return *pool_;
}

// ---------- individual checks ----------

namespace checks {

using namespace detail;

inline Outcome indecomposable_by_factorization(Context& ctx) {
  Tally t;
  for (auto& eta : small_covers(24)) {
    if (eta.is_isomorphism()) continue;
    bool factors = false;
    const int lo = eta.dst->order(), hi = eta.src->order();
    for (const auto& k : quotient_types(eta.src, ctx.lim)) {
      const int ko = k.quotient.group->order();
      if (ko <= lo || ko >= hi || factors) continue;
      for (const auto& e1 : enumerate_homs(eta.src, k.quotient.group, true, ctx.lim))
        if (factor_through(e1, eta)) {
          factors = true;
          break;
        }
    }
    t.expect_lazy(is_indecomposable(eta) == !factors, [&] { return eta.src->name() + " -> " + eta.dst->name(); });
  }
  t.require(t.count() > 100, "too few covers");
  return t.outcome("");
}

inline Outcome cartesian_iff_fiber_bijection(Context&) {
  Tally t;
  int cart = 0;
  for (const char* hn : {"S3", "C2xC2", "D4", "C6", "S3xC2", "Q8", "C4xC2", "A4", "C2xC2xC2"}) {
    const GroupPtr h = cat(hn);
    const auto ns = normal_subgroups(h);
    std::vector<Quotient> q;
    for (const auto& n : ns) q.push_back(quotient(h, n));
    for (std::size_t y = 0; y < ns.size(); ++y)
      for (std::size_t z = 0; z < ns.size(); ++z) {
        const Subgroup w = product(ns[y], ns[z]);
        std::size_t wi = 0;
        while (!(ns[wi] == w)) ++wi;
        Square s = square_from_normals(q, 0, static_cast<int>(y), static_cast<int>(z), static_cast<int>(wi));
        std::set<std::pair<Elem, Elem>> hit;
        for (Elem x = 0; x < h->order(); ++x) hit.insert({s.beta(x), s.eta(x)});
        int fiber = 0;
        for (Elem b = 0; b < s.beta.dst->order(); ++b)
          for (Elem g = 0; g < s.eta.dst->order(); ++g) fiber += s.alpha(b) == s.phi(g);
        const bool bij = static_cast<int>(hit.size()) == h->order() && fiber == h->order();
        const bool c = square_classify(s).cartesian;
        cart += c;
        t.expect(c == bij, std::string(hn));
      }
  }
  t.require(cart > 10, "too few cartesian squares");
  return t.outcome("");
}

inline Outcome compactness_full_scan(Context&) {
  Tally t;
  int compact = 0;
  const auto& names = square_names();
  for (const auto& a : names)
    for (const auto& b : names)
      for (const auto& g : names) {
        auto A = cat(a), B = cat(b), G = cat(g);
        if (B->order() % A->order() || G->order() % A->order()) continue;
        if (B->order() * G->order() / A->order() > 24) continue;
        auto alphas = enumerate_homs(B, A, true);
        auto phis = enumerate_homs(G, A, true);
        if (alphas.empty() || phis.empty()) continue;
        Square s = pullback(alphas.back(), phis.front());
        auto st = square_classify(s);
        bool naive = true;
        for (const auto& u : s.top_left()->subgroup_sets()) {
          if (u.count() == s.top_left()->order()) continue;
          Subgroup U(s.top_left(), u);
          if (s.beta.image_of(U).is_whole() && s.eta.image_of(U).is_whole()) naive = false;
        }
        t.expect(st.compact.value() == naive, b + " " + g + " over " + a);
        if (st.witness)
          t.expect(st.witness->order() < s.top_left()->order() && s.beta.image_of(*st.witness).is_whole() &&
                       s.eta.image_of(*st.witness).is_whole(),
                   "witness " + b + " " + g);
        compact += naive;
      }
  t.require(compact > 0 && compact < t.count(), "degenerate sample");
  return t.outcome("");
}

inline Outcome compact_iff_not_dominated(Context& ctx) {
  Tally t;
  int compact = 0;
  const auto names = catalog_names();
  for (const auto& a : names)
    for (const auto& b : names)
      for (const auto& g : names) {
        auto A = cat(a), B = cat(b), G = cat(g);
        if (B->order() % A->order() || G->order() % A->order()) continue;
        if (B->order() * G->order() / A->order() > 36) continue;
        for (const auto& alpha : enumerate_homs(B, A, true, ctx.lim)) {
          if (!is_indecomposable(alpha)) continue;
          for (const auto& phi : enumerate_homs(G, A, true, ctx.lim)) {
            auto st = square_classify(pullback(alpha, phi, ctx.lim));
            const bool c = st.cartesian && st.compact.value_or(false);
            t.expect(st.cartesian && c == !dominates(phi, alpha, ctx.lim).has_value(), b + "->" + a + " vs " + g);
            compact += c;
          }
        }
      }
  t.require(t.count() > 100 && compact > 0 && compact < t.count(), "degenerate sample");
  return t.outcome(std::to_string(t.count()) + " squares, " + std::to_string(compact) + " compact");
}

inline Outcome two_squares(Context&) {
  Tally t;
  int all = 0;
  for (const char* hn : {"S3", "C2xC2", "D4", "C6", "S3xC2", "Q8", "C4xC2", "C3xC3"}) {
    const GroupPtr h = cat(hn);
    const auto ns = normal_subgroups(h);
    const int k = static_cast<int>(ns.size());
    std::vector<Quotient> q;
    for (const auto& n : ns) q.push_back(quotient(h, n));
    auto le = [&](int i, int j) { return ns[i].is_subgroup_of(ns[j]); };
    for (int n1 = 0; n1 < k; ++n1)
      for (int n2 = 0; n2 < k; ++n2) {
        if (!le(n1, n2)) continue;
        for (int n3 = 0; n3 < k; ++n3)
          for (int n4 = 0; n4 < k; ++n4) {
            if (!le(n3, n4) || !le(n1, n4)) continue;
            for (int n5 = 0; n5 < k; ++n5) {
              if (!le(n2, n5) || !le(n4, n5)) continue;
              auto left = square_classify(square_from_normals(q, 0, n1, n3, n4));
              auto right = square_classify(square_from_normals(q, n1, n2, n4, n5));
              auto outer = square_classify(square_from_normals(q, 0, n2, n3, n5));
              const int c = left.cartesian + right.cartesian + outer.cartesian;
              t.expect(c != 2, std::string("two of three cartesian in ") + hn);
              if (c == 3) {
                ++all;
                t.expect(*outer.compact == (*left.compact && *right.compact), std::string("compactness in ") + hn);
              }
            }
          }
      }
  }
  t.require(all > 50, "too few all-cartesian diagrams");
  return t.outcome("");
}

inline Outcome expand_psi_surjective(Context&) {
  Tally t;
  int semi = 0;
  const std::vector<std::array<std::string, 3>> cases = {{"S3", "C2", "C2"}, {"C4", "C2", "C2"}, {"C2xC2", "C2", "C2"},
                                                         {"S3xC2", "C2", "C2"}, {"C2", "C2", "1"}, {"S3", "C2", "1"},
                                                         {"C3", "C2", "1"}};
  for (const auto& [bn, gn, an] : cases) {
    auto B = cat(bn), G = cat(gn), A = cat(an);
    for (const auto& alpha : enumerate_homs(B, A, true))
      for (const auto& phi : enumerate_homs(G, A, true)) {
        Square cart = pullback(alpha, phi);
        for (const char* hn : {"S3", "C6", "S3xC2", "C4xC2", "D4", "C2xC2xC2", "S3xS3", "C2xC2"}) {
          auto h2 = cat(hn);
          for (const auto& b2 : enumerate_homs(h2, B, true))
            for (const auto& e2 : enumerate_homs(h2, G, true)) {
              bool commutes = true;
              for (Elem x = 0; x < h2->order() && commutes; ++x) commutes = alpha(b2(x)) == phi(e2(x));
              if (!commutes) continue;
              if (!square_classify(Square::make(e2, b2, alpha, phi)).semi_cartesian) continue;
              std::vector<Elem> im(h2->order());
              for (Elem x = 0; x < h2->order(); ++x)
                for (Elem y = 0; y < cart.top_left()->order(); ++y)
                  if (cart.beta(y) == b2(x) && cart.eta(y) == e2(x)) im[x] = y;
              ++semi;
              t.expect(GroupHom::make(h2, cart.top_left(), im).is_surjective(), std::string(hn) + " over " + bn);
            }
        }
      }
  }
  t.require(semi > 10, "too few semi-cartesian diagrams");
  return t.outcome("");
}

inline Outcome fiber_product_tuples(Context& ctx) {
  Tally t;
  for (const char* gn : {"1", "C2", "C3", "S3"}) {
    const GroupPtr g = cat(gn);
    auto legs = covers_of(g, 12);
    for (std::size_t i = 0; i < legs.size() && i < 6; ++i)
      for (std::size_t j = i; j < legs.size() && j < 6; ++j) {
        auto fam = CoverFamily::make(g, {legs[i], legs[j]});
        auto fp = fiber_product(fam, ctx.lim);
        int brute = 0;
        for (Elem a = 0; a < legs[i].src->order(); ++a)
          for (Elem b = 0; b < legs[j].src->order(); ++b) brute += legs[i](a) == legs[j](b);
        bool ok = fp.group->order() == brute;
        for (const auto& tup : fp.tuples) ok = ok && legs[i](tup[0]) == legs[j](tup[1]);
        for (std::size_t k = 0; k < 2; ++k)
          ok = ok && fp.projections[k].is_surjective() && compose(fp.projections[k], fam.legs[k]) == fp.to_base;
        t.expect(ok, legs[i].src->name() + " x " + legs[j].src->name() + " over " + gn);
      }
  }
  t.require(t.count() > 20, "too few families");
  return t.outcome("");
}

inline Outcome end_field_is_field(Context& ctx) {
  Tally t;
  for (auto& e : small_covers(48)) {
    if (!is_indecomposable(e) || !kernel_abelian(e)) continue;
    auto km = module_from_kernel(e);
    auto F = end_field(km.module);
    const int p = km.module->prime();
    const auto els = F.elements();
    bool ok = static_cast<int>(els.size()) == ipow(p, F.degree);
    for (const auto& a : els)
      for (const auto& b : els) {
        ok = ok && fp::mul(a, b, p) == fp::mul(b, a, p);
        bool zero = true;
        for (const auto& r : a)
          for (int x : r) zero = zero && x == 0;
        if (!zero) ok = ok && fp::invertible(a, p);
      }
    t.expect(ok, e.src->name() + " -> " + e.dst->name());
  }
  (void)ctx;
  t.require(t.count() > 20, "too few modules");
  return t.outcome("");
}

inline Outcome extensions_iso_iff_unit_multiple(Context& ctx) {
  Tally t;
  std::vector<ModulePtr> mods;
  for (const char* g : {"C2", "C3", "C4", "C2xC2", "S3"})
    for (int p : {2, 3}) mods.push_back(trivial_module(cat(g), p));
  mods.push_back(module_from_kernel(first_epi(cat("A4"), cat("C3"))).module);
  for (const auto& m : mods) {
    auto h = h2_space(m, ctx.lim);
    if (h.dim_fp == 0 || h.dim_fp > 3) continue;
    const int total = ipow(m->prime(), h.dim_fp);
    std::vector<CocycleClass> cls;
    std::vector<GroupHom> ext;
    for (int c = 0; c < total; ++c) {
      cls.push_back(combination(h.basis, m, c));
      ext.push_back(class_to_extension(cls.back(), ctx.lim));
    }
    const auto units = h.field.elements();
    for (int a = 0; a < total; ++a)
      for (int b = 0; b < total; ++b) {
        bool multiple = false;
        for (const auto& u : units) {
          if (!fp::invertible(u, m->prime())) continue;
          CocycleClass ua{m, apply_entrywise(u, cls[a].rep, m->dim(), m->prime())};
          multiple = multiple || ua == cls[b];
        }
        t.expect(isomorphic_over_G(ext[a], ext[b], ctx.lim).has_value() == multiple,
                 m->group()->name() + " F" + std::to_string(m->prime()));
      }
  }
  t.require(t.count() > 50, "too few pairs");
  return t.outcome("");
}

inline Outcome nontrivial_combination_iff_dominated(Context& ctx) {
  Tally t;
  for (const char* gname : {"C2", "C3"}) {
    const int p = gname == std::string("C2") ? 2 : 3;
    auto m = trivial_module(cat(gname), p);
    auto x = h2_space(m, ctx.lim).basis.at(0);
    std::vector<CocycleClass> classes;
    std::vector<GroupHom> exts;
    for (int a = 0; a < p; ++a) {
      classes.push_back(combination({x}, m, a));
      exts.push_back(class_to_extension(classes.back(), ctx.lim));
    }
    for (int len = 1; len <= 3; ++len) {
      const int combos = ipow(p, len);
      for (int f = 0; f < combos; ++f) {
        CoverFamily fam{m->group(), {}};
        std::vector<CocycleClass> fc;
        for (int i = 0, r = f; i < len; ++i, r /= p) {
          fam.legs.push_back(exts[r % p]);
          fc.push_back(classes[r % p]);
        }
        auto eta_i = fiber_product(fam, ctx.lim).to_base;
        for (int z = 0; z < p; ++z) {
          bool comb = false;
          for (int cc = 1; cc < combos; ++cc) comb = comb || combination(fc, m, cc) == classes[z];
          t.expect(dominates(eta_i, exts[z], ctx.lim).has_value() == comb, std::string(gname) + " family " + std::to_string(f));
        }
      }
    }
  }
  return t.outcome("");
}

inline Outcome fundament_is_intersection(Context&) {
  Tally t;
  for (auto& pi : small_covers(36)) {
    const Subgroup ker = pi.kernel();
    ElementSet m = ker.set;
    for (const auto& n : normal_subgroups(pi.src))
      if (n.is_subgroup_of(ker) && !(n == ker) && is_indecomposable(induced_cover(pi, n))) m = m & n.set;
    auto [fm, f] = fundament(pi);
    t.expect(fm.set == m && is_fundamental(f), pi.src->name() + " -> " + pi.dst->name());
  }
  return t.outcome("");
}

inline Outcome fundamental_iff_fiber_product(Context& ctx) {
  Tally t;
  for (auto& eta : small_covers(48)) {
    if (!is_fundamental(eta) || eta.is_isomorphism()) continue;
    auto d = indecomposable_decomposition(eta, 0, ctx.lim);
    auto fp = fiber_product(d.family, ctx.lim);
    t.expect(decomposition_map(eta, d, fp).is_isomorphism(), eta.src->name() + " -> " + eta.dst->name());
  }
  for (const char* gn : {"C2", "C3", "S3", "C2xC2"}) {
    std::vector<GroupHom> ind;
    for (auto& e : covers_of(cat(gn), 24))
      if (is_indecomposable(e)) ind.push_back(e);
    for (std::size_t i = 0; i < ind.size() && i < 6; ++i)
      for (std::size_t j = i; j < ind.size() && j < 6; ++j)
        t.expect(is_fundamental(fiber_product(CoverFamily::make(cat(gn), {ind[i], ind[j]}), ctx.lim).to_base),
                 ind[i].src->name() + " x " + ind[j].src->name());
  }
  return t.outcome("");
}

inline Outcome relation_dimension_brute(Context& ctx) {
  Tally t;
  for (const char* gn : {"C2", "C3", "C2xC2"})
    for (int p : {2, 3}) {
      auto m = trivial_module(cat(gn), p);
      auto h = h2_space(m, ctx.lim);
      if (h.dim_fp == 0) continue;
      const int total = ipow(p, h.dim_fp);
      std::vector<CocycleClass> all;
      for (int c = 0; c < total; ++c) all.push_back(combination(h.basis, m, c));
      for (int len = 1; len <= 3; ++len) {
        const int fams = ipow(total, len);
        for (int f = 0; f < fams && f < 200; ++f) {
          std::vector<CocycleClass> fam;
          for (int i = 0, r = f; i < len; ++i, r /= total) fam.push_back(all[r % total]);
          int zero = 0;
          for (int cc = 0; cc < ipow(p, len); ++cc) zero += combination(fam, m, cc).is_zero();
          const auto sr = span_and_relations(fam, m);
          t.expect(ipow(p, sr.relation_dim) == zero && sr.span_dim + sr.relation_dim == len,
                   std::string(gn) + " F" + std::to_string(p));
        }
      }
    }
  return t.outcome("");
}

inline std::vector<GroupHom> multi_decomposition_covers() {
  std::vector<Elem> im(8);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b) im[a * 2 + b] = a % 2;
  auto s = sign();
  return {GroupHom::make(cat("C4xC2"), cat("C2"), im), fiber_product(CoverFamily::make(cat("C2"), {s, s})).to_base,
          first_epi(cat("C2xC2xC2"), cat("C2"))};
}

inline Outcome invariants_independent_of_decomposition(Context& ctx) {
  Tally t;
  for (const auto& pi : multi_decomposition_covers()) {
    auto d0 = indecomposable_decomposition(pi, 0, ctx.lim);
    auto i0 = cover_invariants(pi, d0, ctx.lim);
    int distinct = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      auto d = indecomposable_decomposition(pi, seed, ctx.lim);
      distinct += !(d.kernels == d0.kernels);
      t.expect(invariants_equal(i0, cover_invariants(pi, d, ctx.lim), ctx.lim), pi.src->name());
    }
    t.require(distinct > 0, "only one decomposition of " + pi.src->name());
  }
  return t.outcome("");
}

inline Outcome compare_agrees_with_domination(Context& ctx) {
  Tally t;
  for (const char* g : {"1", "C2", "C3", "C2xC2", "S3"}) {
    std::vector<GroupHom> fund;
    for (auto& e : covers_of(cat(g), 36))
      if (is_fundamental(e)) fund.push_back(e);
    std::vector<FundamentalInvariants> inv;
    for (const auto& f : fund) inv.push_back(cover_invariants(f, ctx.lim));
    for (std::size_t i = 0; i < fund.size(); ++i)
      for (std::size_t j = 0; j < fund.size(); ++j) {
        auto c = compare_covers(inv[i], inv[j], ctx.lim);
        t.expect(c.first_dominates_second == dominates(fund[i], fund[j], ctx.lim).has_value() &&
                     c.isomorphic == isomorphic_over_G(fund[i], fund[j], ctx.lim).has_value(),
                 fund[i].src->name() + " vs " + fund[j].src->name() + " over " + g);
      }
  }
  t.require(t.count() > 200, "too few pairs");
  return t.outcome("");
}

inline Outcome multiple_of_one_table(Context& ctx) {
  Tally t;
  std::vector<GroupHom> etas = {cyc(4, 2), first_epi(cat("C2xC2"), cat("C2"))};
  for (auto& pi : covers_of(cat("C2"), 16)) {
    if (!is_fundamental(pi)) continue;
    auto inv = cover_invariants(pi, ctx.lim);
    for (const auto& eta : etas) {
      auto x = extension_class(eta);
      int mult = 0;
      bool in_supp = false;
      for (const auto& e : inv.ab) {
        auto T = module_isomorphism(*x.module, *e.module, ctx.lim);
        if (!T) continue;
        mult = e.mult;
        in_supp = e.span().contains({e.module, apply_entrywise(*T, x.rep, e.module->dim(), e.module->prime())});
      }
      for (int k = 0; k <= 3; ++k) {
        const bool expect = !in_supp ? k == 0 : (x.is_zero() ? k <= mult : k <= mult + 1);
        t.expect(dominates(pi, power_cover(eta, k, ctx.lim), ctx.lim).has_value() == expect,
                 pi.src->name() + " vs " + eta.src->name() + "^" + std::to_string(k));
      }
    }
  }
  t.require(t.count() > 20, "too few instances");
  return t.outcome("");
}

inline Outcome ep_examples(Context& ctx) {
  Tally t;
  t.expect(has_embedding_property(cat("1"), ctx.lim).has_ep, "trivial group");
  for (const char* n : kGrid) t.expect(has_embedding_property(cat(n), ctx.lim).has_ep, n);
  auto r = has_embedding_property(cat("C2xS3"), ctx.lim);
  t.expect(!r.has_ep && r.witness && !dominates(r.witness->phi, r.witness->alpha, ctx.lim), "C2xS3 witness");
  t.expect(!dominates(proj_c2(), sign(), ctx.lim), "projection against sign");
  return t.outcome("");
}

inline Outcome sec_dominates_i_covers(Context& ctx) {
  Tally t;
  for (const char* n : {"C2xS3", "C4xC2", "D4", "S3xC2"}) {
    const auto& s = ctx.sec(cat(n));
    t.expect(has_embedding_property(s.group(), ctx.lim).has_ep, std::string(n) + " sec has EP");
    for (const auto& c : enumerate_superbasic(cat(n), ctx.lim).covers)
      t.expect(dominates(s.cover, c.cover, ctx.lim).has_value(), std::string(n) + " superbasic " + c.cover.src->name());
  }
  return t.outcome("");
}

inline Outcome sec_finite_and_quotients_are_i_covers(Context& ctx) {
  Tally t;
  for (const auto& n : catalog_names()) {
    const auto& s = ctx.sec(cat(n));
    t.expect(s.ep_report.has_ep, n);
  }
  for (const char* n : {"C2xS3", "C4xC2"})
    for (const auto& q : quotient_covers(ctx.sec(cat(n)).cover))
      t.expect(ctx.classify(q).i_cover, std::string(n) + " quotient " + std::to_string(q.src->order()));
  return t.outcome("");
}

inline Outcome compact_family_is_quotient(Context& ctx) {
  Tally t;
  const GroupPtr g = cat("C2xS3");
  const auto& types = ctx.sec_types(g);
  int compact = 0;
  for (const auto& ta : types) {
    const GroupPtr a = ta.quotient.group;
    std::vector<GroupHom> legs;
    for (const auto& tb : types) {
      const GroupPtr b = tb.quotient.group;
      if (b->order() <= a->order() || b->order() % a->order()) continue;
      auto es = enumerate_homs(b, a, true, ctx.lim);
      for (std::size_t i = 0; i < es.size() && i < 4; ++i) legs.push_back(es[i]);
    }
    for (std::size_t i = 0; i < legs.size(); ++i)
      for (std::size_t j = i; j < legs.size(); ++j) {
        const std::size_t order = static_cast<std::size_t>(legs[i].src->order()) * legs[j].src->order() / a->order();
        if (order > 108) continue;
        auto fp = fiber_product(CoverFamily::make(a, {legs[i], legs[j]}), ctx.lim);
        if (!family_compact(fp)) continue;
        ++compact;
        t.expect(ctx.in_E(g, fp.group), legs[i].src->name() + " x " + legs[j].src->name());
      }
  }
  t.require(compact > 3, "too few compact families");
  return t.outcome(std::to_string(compact) + " compact families");
}

inline Outcome basic_certificates(Context& ctx) {
  Tally t;
  for (const auto& eta : ctx.pool()) {
    auto c = ctx.classify(eta);
    if (c.basic) {
      auto st = square_classify(*c.basic_square);
      t.expect(c.i_cover && st.cartesian && st.compact.value_or(false) && ctx.in_E(eta.dst, c.basic_square->beta.dst),
               "basic " + eta.src->name());
    }
    if (c.superbasic)
      t.expect(c.indecomposable && find_quotient_type(quotient_types(eta.dst), c.superbasic_square->beta.dst),
               "superbasic " + eta.src->name());
  }
  return t.outcome("");
}

inline Outcome nonsplit_in_E_is_basic(Context& ctx) {
  Tally t;
  std::vector<GroupHom> etas = ctx.pool();
  for (const char* n : {"C4xC2", "D4", "C2xS3"})
    for (auto& q : quotient_covers(ctx.sec(cat(n)).cover)) etas.push_back(q);
  for (const auto& eta : etas) {
    if (!is_indecomposable(eta) || !ctx.in_E(eta.dst, eta.src) || splits(eta)) continue;
    t.expect(ctx.classify(eta).basic, eta.src->name() + " order " + std::to_string(eta.src->order()));
  }
  t.require(t.count() > 0, "no instances");
  return t.outcome("");
}

inline Outcome ep_iff_no_superbasic(Context& ctx) {
  Tally t;
  for (const auto& n : catalog_names()) {
    const GroupPtr g = cat(n);
    const bool ep = has_embedding_property(g, ctx.lim).has_ep;
    t.expect(ep == enumerate_superbasic(g, ctx.lim).covers.empty(), n);
    if (!ep) continue;
    for (auto& e : covers_of(g, 24)) t.expect(ctx.classify(e).i_cover == e.is_isomorphism(), n + " cover " + e.src->name());
  }
  return t.outcome("");
}

inline Outcome sec_steps_superbasic(Context& ctx) {
  Tally t;
  for (const char* n : {"C2xS3", "C4xC2", "D4"}) {
    const auto& s = ctx.sec(cat(n));
    GroupHom c = identity_hom(s.base);
    for (const auto& sq : s.chain) {
      c = compose(sq.eta, c);
      t.expect(ctx.classify(sq.eta).superbasic, std::string(n) + " step onto " + sq.eta.dst->name());
    }
    t.expect(c == s.cover && has_embedding_property(s.group(), ctx.lim).has_ep, std::string(n) + " chain");
  }
  return t.outcome("");
}

inline Outcome compose_basic(Context& ctx) {
  Tally t;
  int both = 0;
  for (const char* n : {"C2xS3", "C4xC2"}) {
    const auto& sec = ctx.sec(cat(n));
    std::vector<GroupHom> firsts = quotient_covers(sec.cover);
    firsts.push_back(coordinate_projection(cat(n), cat("C2")));
    for (const auto& e1 : firsts) {
      if (e1.src->order() > 54) continue;
      std::vector<GroupHom> seconds = {coordinate_projection(e1.src, cat("C2")), identity_hom(e1.src)};
      for (auto& c : enumerate_superbasic(e1.src, ctx.lim).covers) seconds.push_back(c.cover);
      for (const auto& e2 : seconds) {
        if (e2.src->order() > 108) continue;
        const bool lhs = ctx.classify(compose(e2, e1)).basic;
        t.expect(lhs == (ctx.classify(e1).basic && ctx.classify(e2).basic), e2.src->name() + " -> " + e1.src->name());
        both += lhs;
      }
    }
  }
  t.require(t.count() > 10 && both > 3, "degenerate sample");
  return t.outcome("");
}

inline Outcome basic_span_closed(Context& ctx) {
  Tally t;
  int seen = 0;
  static const GroupPtr c4c2c2 = direct_product(cat("C4xC2"), cat("C2")).group;
  for (const GroupPtr& g : {cat("C4xC2"), cat("C2xS3"), c4c2c2})
    for (int p : {2, 3}) {
      auto h = h2_space(trivial_module(g, p), ctx.lim);
      if (h.dim_fp == 0) continue;
      const int total = ipow(p, h.dim_fp);
      std::vector<bool> basic(total, false);
      for (int c = 1; c < total; ++c) basic[c] = ctx.classify(class_to_extension(combination(h.basis, h.module, c))).basic;
      for (int a = 1; a < total; ++a)
        for (int b = 1; b < total; ++b) {
          if (!basic[a] || !basic[b]) continue;
          int s = 0;
          for (int i = 0, m = 1, ra = a, rb = b; i < h.dim_fp; ++i, m *= p, ra /= p, rb /= p) s += ((ra + rb) % p) * m;
          if (s) t.expect(basic[s], g->name() + " F" + std::to_string(p));
        }
      for (int c = 1; c < total; ++c) seen += basic[c];
    }
  t.require(seen > 3, "too few basic classes");
  return t.outcome("");
}

inline Outcome basic_independent_fiber_product(Context& ctx) {
  Tally t;
  const GroupPtr g = direct_product(cat("C4xC2"), cat("C2")).group;
  auto h = h2_space(trivial_module(g, 2), ctx.lim);
  const SecResult& sec = ctx.sec(g);
  std::vector<int> basic;
  for (int c = 1; c < (1 << h.dim_fp); ++c)
    if (classify_cover(class_to_extension(combination(h.basis, h.module, c)), sec, ctx.lim).basic) basic.push_back(c);
  for (std::size_t i = 0; i < basic.size(); ++i)
    for (std::size_t j = i + 1; j < basic.size(); ++j) {
      auto e1 = class_to_extension(combination(h.basis, h.module, basic[i]));
      auto e2 = class_to_extension(combination(h.basis, h.module, basic[j]));
      auto eta = fiber_product(CoverFamily::make(g, {e1, e2}), ctx.lim).to_base;
      t.expect(classify_cover(eta, sec, ctx.lim).basic, "pair " + std::to_string(basic[i]) + "," + std::to_string(basic[j]));
    }
  t.require(t.count() > 0, "no independent basic pairs");
  return t.outcome("");
}

inline Outcome fprod_basic_iff_quotients_basic(Context& ctx) {
  Tally t;
  const GroupPtr g = cat("C2xS3");
  std::vector<GroupHom> legs;
  for (const auto& c : enumerate_superbasic(g, ctx.lim).covers) legs.push_back(c.cover);
  for (const auto& e : ctx.pool())
    if (is_indecomposable(e) && e.src->order() <= 36) legs.push_back(e);
  int yes = 0;
  for (std::size_t i = 0; i < legs.size(); ++i)
    for (std::size_t j = i; j < legs.size(); ++j) {
      if (static_cast<std::size_t>(legs[i].src->order()) * legs[j].src->order() / g->order() > 108) continue;
      auto eta_i = fiber_product(CoverFamily::make(g, {legs[i], legs[j]}), ctx.lim).to_base;
      if (!ctx.in_E(g, eta_i.src)) continue;
      bool all = true;
      for (const auto& q : quotient_covers(eta_i))
        if (is_indecomposable(q)) all = all && ctx.classify(q).basic;
      t.expect(ctx.classify(eta_i).basic == all, legs[i].src->name() + " x " + legs[j].src->name());
      yes += all;
    }
  t.require(t.count() > 3 && yes > 0, "degenerate sample");
  return t.outcome("");
}

inline Outcome going_down(Context& ctx) {
  Tally t;
  const auto& sec = ctx.sec(cat("C2xS3"));
  const GroupHom xi = sec.chain.at(0).eta;
  const GroupPtr g1 = xi.src;
  std::vector<GroupHom> etas = {sec.chain.at(1).eta, identity_hom(g1), coordinate_projection(g1, cat("C2"))};
  for (auto& c : enumerate_superbasic(g1, ctx.lim).covers) etas.push_back(c.cover);
  for (const auto& eta : etas) {
    if (!ctx.classify(eta).basic) continue;
    for (const auto& m : normal_subgroups(eta.src)) {
      if (!(eta.image_of(m) == xi.kernel())) continue;
      const Quotient q = quotient(eta.src, m);
      const GroupHom bar = *factor_through(q.map, compose(eta, xi));
      t.expect(square_classify(Square::make(eta, q.map, bar, xi)).semi_cartesian && ctx.classify(bar).basic,
               eta.src->name() + " / " + std::to_string(m.order()));
    }
  }
  t.require(t.count() > 2, "too few squares");
  return t.outcome("");
}

inline Outcome indecomposable_i_cover_is_basic(Context& ctx) {
  Tally t;
  for (const auto& eta : ctx.pool()) {
    auto c = ctx.classify(eta);
    if (c.indecomposable && c.i_cover) t.expect(c.basic, eta.src->name());
  }
  t.require(t.count() > 2, "too few indecomposable I-covers");
  return t.outcome("");
}

inline Outcome fundaments_agree(Context& ctx) {
  Tally t;
  for (const char* n : {"C2xS3", "C4xC2"}) {
    auto f0 = fundament(ctx.sec(cat(n)).cover).second;
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
      t.expect(isomorphic_over_G(fundament(smallest_embedding_cover(cat(n), seed, ctx.lim).cover).second, f0, ctx.lim)
                   .has_value(),
               std::string(n) + " seed " + std::to_string(seed));
  }
  return t.outcome("");
}

inline Outcome fundamental_i_cover_is_basic(Context& ctx) {
  Tally t;
  for (const auto& eta : ctx.pool()) {
    auto c = ctx.classify(eta);
    if (c.fundamental && c.i_cover) t.expect(c.basic, eta.src->name());
  }
  t.require(t.count() > 3, "too few fundamental I-covers");
  return t.outcome("");
}

inline Outcome basic_iff_i_cover_fundamental(Context& ctx) {
  Tally t;
  const GroupPtr g = cat("C2xS3");
  const auto& sec = ctx.sec(g);
  const GroupHom pi1 = fundament(sec.cover).second;
  int powers = 0;
  for (const auto& tau : ctx.pool()) {
    if (!is_fundamental(tau)) continue;
    auto c = ctx.classify(tau);
    const bool by_fund = dominates(pi1, tau, ctx.lim).has_value();
    t.expect(c.basic == c.i_cover && c.i_cover == by_fund, tau.src->name() + " order " + std::to_string(tau.src->order()));
  }
  for (const auto& sb : enumerate_superbasic(g, ctx.lim).covers)
    for (int n = 1; n <= 2; ++n) {
      auto tau = power_cover(sb.cover, n, ctx.lim);
      auto c = ctx.classify(tau);
      t.expect(c.basic == c.i_cover, "power " + std::to_string(n));
      ++powers;
    }
  t.require(t.count() >= 10 && powers > 0, "too few fundamental covers");
  return t.outcome("");
}

inline Outcome complete_characterization(Context& ctx) {
  Tally t;
  const GroupPtr g = cat("C2xS3");
  const GroupHom eta = sign_cover();
  t.expect(splits(eta), "sign cover splits");
  auto inv = cover_invariants(fundament(ctx.sec(g).cover).second, ctx.lim);
  KernelModule km = module_from_kernel(eta);
  int mult = 0;
  for (const auto& a : inv.ab)
    if (module_isomorphism(*km.module, *a.module, ctx.lim)) mult = a.mult;
  int best = 0;
  for (int n = 0; n <= 3; ++n)
    if (ctx.classify(power_cover(eta, n, ctx.lim)).basic) best = n;
  t.expect(best == mult && mult >= 1, "mult " + std::to_string(mult) + " vs powers " + std::to_string(best));
  // nonzero classes: in the support iff basic
  for (const auto& a : inv.ab) {
    auto h = h2_space(a.module, ctx.lim);
    if (h.dim_fp == 0 || h.dim_fp > 3) continue;
    const auto span = a.span();
    for (int c = 1; c < ipow(a.module->prime(), h.dim_fp); ++c) {
      auto x = combination(h.basis, a.module, c);
      t.expect(span.contains(x) == ctx.classify(class_to_extension(x, ctx.lim)).basic, "class " + std::to_string(c));
    }
  }
  return t.outcome("mult " + std::to_string(mult));
}

inline Outcome uniqueness_seeds(Context& ctx) {
  Tally t;
  const auto& base = ctx.sec(cat("C2xS3"));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = smallest_embedding_cover(cat("C2xS3"), seed, ctx.lim);
    t.expect(has_embedding_property(s.group(), ctx.lim).has_ep && isomorphic_over_G(s.cover, base.cover, ctx.lim),
             "seed " + std::to_string(seed));
  }
  return t.outcome("order " + std::to_string(base.group()->order()) + ", 10 seeds");
}

inline Outcome i_cover_power_criterion(Context& ctx) {
  Tally t;
  for (const auto& pi : ctx.pool()) {
    bool cond = true;
    std::vector<GroupHom> seen;
    for (const auto& q : quotient_covers(pi)) {
      if (!is_indecomposable(q)) continue;
      bool dup = false;
      for (const auto& s : seen) dup = dup || isomorphic_over_G(s, q, ctx.lim).has_value();
      if (dup) continue;
      seen.push_back(q);
      for (int n = 1; cond; ++n) {
        std::size_t order = pi.dst->order();
        for (int i = 0; i < n; ++i) order *= q.kernel().order();
        if (order > static_cast<std::size_t>(pi.src->order())) break;
        auto qn = power_cover(q, n, ctx.lim);
        if (!dominates(pi, qn, ctx.lim)) break;
        cond = ctx.classify(qn).basic;
      }
    }
    t.expect(ctx.classify(pi).i_cover == cond, pi.src->name() + " order " + std::to_string(pi.src->order()));
  }
  return t.outcome("");
}

inline Outcome general_builder(Context& ctx) {
  Tally t;
  auto r = general_I_cover({sign()}, ctx.lim);
  t.expect(r.group->order() == 12 && r.cover.src->order() == 36, "orders");
  t.expect(ctx.classify(r.cover).i_cover, "sign instance is an I-cover");
  auto expect_error = [&](const std::vector<GroupHom>& fam, ErrorKind k, const std::string& what) {
    try {
      general_I_cover(fam, ctx.lim);
      t.expect(false, what + " accepted");
    } catch (const CoverError& e) {
      t.expect(e.kind() == k, what + " raised " + to_string(e.kind()));
    }
  };
  expect_error({first_epi(cat("C6"), cat("C2"))}, ErrorKind::ConditionAViolated, "C6 -> C2");
  expect_error({cyc(4, 2), cyc(4, 2)}, ErrorKind::ConditionBViolated, "two C4 -> C2");
  for (const auto& fam : std::vector<std::vector<GroupHom>>{{cyc(4, 2)}, {sign(), cyc(4, 2)}, {cyc(9, 3)}})
    t.expect(ctx.classify(general_I_cover(fam, ctx.lim).cover).i_cover, "family over " + fam[0].dst->name());
  return t.outcome("");
}

inline Outcome sign_family(Context& ctx, int n) {
  Tally t;
  std::vector<GroupHom> fam(n, sign());
  auto r = general_I_cover(fam, ctx.lim);
  for (const auto& e : r.pulled) t.expect(splits(e) && e.kernel().order() == 3, "pulled leg");
  auto inv = cover_invariants(r.cover, ctx.lim);
  int mult = -1;
  for (const auto& a : inv.ab)
    if (a.module->prime() == 3) mult = a.mult;
  t.expect(mult == n, "mult " + std::to_string(mult));
  t.expect(ctx.classify(r.cover).i_cover, "I-cover");
  return t.outcome("mult " + std::to_string(mult) + " over |G| = " + std::to_string(r.group->order()));
}

inline Outcome direct_product_ep_triple(Context& ctx) {
  Tally t;
  int positive = 0;
  for (const char* gn : {"C2", "C3", "C4", "C2xC2", "S3", "C6", "C2xS3", "D4", "C3xC3", "A4", "S3xS3"})
    for (const auto& n : normal_subgroups(cat(gn))) {
      const GroupHom phi = quotient(cat(gn), n).map;
      for (const char* s : {"C2", "C3"}) {
        auto r = direct_product_ep(phi, cat(s), ctx.lim);
        t.expect(r.surjective_solution == r.epi_onto_product && r.epi_onto_product == r.psi_not_through_phi,
                 std::string(gn) + " / " + std::to_string(n.order()) + " S=" + s);
        positive += r.surjective_solution;
      }
    }
  t.require(t.count() >= 20 && positive > 5 && positive < t.count(), "degenerate sample");
  return t.outcome("");
}

inline Outcome direct_compact(Context& ctx) {
  Tally t;
  for (const char* gname : kGrid)
    for (const char* sname : {"C2", "C3"}) {
      const GroupPtr g = cat(gname), s = cat(sname);
      const DirectProduct gs = direct_product(g, s);
      const Subgroup ker = gs.pr1.kernel();
      for (const auto& n : normal_subgroups(gs.group)) {
        if (!intersect(n, ker).is_trivial()) continue;
        const Quotient qb = quotient(gs.group, n);
        const Quotient qa = quotient(g, gs.pr1.image_of(n));
        const GroupHom alpha = *factor_through(qb.map, compose(gs.pr1, qa.map));
        if (!square_classify(Square::make(gs.pr1, qb.map, alpha, qa.map)).compact.value_or(false)) continue;
        const DirectProduct as = direct_product(qa.group, s);
        bool matched = false;
        HomSearchOptions opt;
        opt.injective = true;
        opt.allow = [&](Elem b, Elem y) { return as.pr1(y) == alpha(b); };
        for_each_hom(
            qb.group, as.group, opt,
            [&](const std::vector<Elem>& th) {
              const Elem k = as.pr2(th[qb.map(gs.pair(0, 1))]);
              bool ok = k != 0;
              for (Elem x = 0; x < g->order() && ok; ++x)
                for (Elem y = 0; y < s->order() && ok; ++y) ok = as.pr2(th[qb.map(gs.pair(x, y))]) == k * y % s->order();
              matched = matched || ok;
              return !matched;
            },
            ctx.lim);
        t.expect(matched, std::string(gname) + " x " + sname);
      }
    }
  t.require(t.count() > 5, "too few compact squares");
  return t.outcome("");
}

inline Outcome c4_noncompact(Context&) {
  Tally t;
  Square s = c4_noncompact_square();
  auto st = square_classify(s);
  const Elem gen[1] = {2};  // (1, 0) in C4 × C2
  t.expect(st.cartesian && st.compact == false, "cartesian and not compact");
  t.expect(st.witness && *st.witness == generated_subgroup(s.top_left(), gen), "witness C4 x 1");
  return t.outcome("witness order " + std::to_string(st.witness ? st.witness->order() : 0));
}

inline Outcome not_superbasic(Context& ctx) {
  Tally t;
  for (const char* g : kGrid)
    for (const char* s : {"C2", "C3"})
      t.expect(!ctx.classify(coordinate_projection(cat(g), cat(s))).superbasic, std::string(g) + " x " + s);
  return t.outcome("");
}

inline Outcome not_i_cover(Context& ctx) {
  Tally t;
  for (const char* g : kGrid)
    for (const char* s : {"C2", "C3"})
      t.expect(!ctx.classify(coordinate_projection(cat(g), cat(s))).i_cover, std::string(g) + " x " + s);
  return t.outcome("");
}

}  // namespace checks

/// Every finite item the suite must cover; one slug per item.
inline const std::vector<std::string>& in_scope_anchors() {
  static const std::vector<std::string> v = {
      "indecomposable",
      "cartesian",
      "compact",
      "indecomposable-cartesian-square",
      "square-trivialities",
      "expand",
      "concrete",
      "about-abelian",
      "indecomposable-quotients-of-a-fiber-product",
      "fundament",
      "fiber-product-is-fundamental",
      "lambda",
      "fundamental-mult-supp",
      "compare",
      "dominates-multiple-of-one",
      "smallest-embedding-cover",
      "ev-trivialities",
      "compact-is-quotient",
      "basic-cover",
      "nonsplit-is-basic",
      "embedding-covers-have-no-basic-covers",
      "sec-transfinite",
      "compose-basic",
      "basic-subspace",
      "fprod-of-basics-is-basic",
      "going-down",
      "i-is-basic",
      "fec-is-unique",
      "i-dominates-basic",
      "finite-quotients-of-sec-k",
      "complete-characterization",
      "uniqueness",
      "i-cover",
      "general",
      "examples-of-i-covers",
      "ep-for-direct-product",
      "direct-compact",
      "c4-noncompact-square",
      "not-superbasic",
      "not-i-cover",
  };
  return v;
}

inline const std::vector<Check>& all_checks() {
  using namespace checks;
  static const std::vector<Check> v = [] {
    std::vector<Check> c = {
        {"indecomposable/factorization-search", "indecomposable", indecomposable_by_factorization},
        {"cartesian/fiber-map-bijective", "cartesian", cartesian_iff_fiber_bijection},
        {"compact/full-subgroup-scan", "compact", compactness_full_scan},
        {"indecomposable-cartesian-square/domination-oracle", "indecomposable-cartesian-square", compact_iff_not_dominated},
        {"square-trivialities/two-of-three", "square-trivialities", two_squares},
        {"expand/psi-surjective", "expand", expand_psi_surjective},
        {"concrete/agreeing-tuples", "concrete", fiber_product_tuples},
        {"about-abelian/endomorphism-field", "about-abelian", end_field_is_field},
        {"about-abelian/unit-multiples", "about-abelian", extensions_iso_iff_unit_multiple},
        {"indecomposable-quotients-of-a-fiber-product/combinations", "indecomposable-quotients-of-a-fiber-product",
         nontrivial_combination_iff_dominated},
        {"fundament/intersection", "fundament", fundament_is_intersection},
        {"fiber-product-is-fundamental/both-directions", "fiber-product-is-fundamental", fundamental_iff_fiber_product},
        {"lambda/relation-dimension", "lambda", relation_dimension_brute},
        {"fundamental-mult-supp/decomposition-independence", "fundamental-mult-supp",
         invariants_independent_of_decomposition},
        {"compare/witness-search", "compare", compare_agrees_with_domination},
        {"dominates-multiple-of-one/kappa-table", "dominates-multiple-of-one", multiple_of_one_table},
        {"smallest-embedding-cover/ep-examples", "smallest-embedding-cover", ep_examples},
        {"smallest-embedding-cover/sec-dominates-superbasic", "smallest-embedding-cover", sec_dominates_i_covers},
        {"ev-trivialities/finite-sec-and-quotients", "ev-trivialities", sec_finite_and_quotients_are_i_covers},
        {"compact-is-quotient/pair-families", "compact-is-quotient", compact_family_is_quotient},
        {"basic-cover/certificates", "basic-cover", basic_certificates},
        {"nonsplit-is-basic/pool", "nonsplit-is-basic", nonsplit_in_E_is_basic},
        {"embedding-covers-have-no-basic-covers/catalog", "embedding-covers-have-no-basic-covers", ep_iff_no_superbasic},
        {"sec-transfinite/superbasic-steps", "sec-transfinite", sec_steps_superbasic},
        {"compose-basic/pairs", "compose-basic", compose_basic},
        {"basic-subspace/sums", "basic-subspace", basic_span_closed},
        {"basic-subspace/independent-fiber-product", "basic-subspace", basic_independent_fiber_product},
        {"fprod-of-basics-is-basic/pairs", "fprod-of-basics-is-basic", fprod_basic_iff_quotients_basic},
        {"going-down/sec-chain", "going-down", going_down},
        {"i-is-basic/pool", "i-is-basic", indecomposable_i_cover_is_basic},
        {"fec-is-unique/seeds", "fec-is-unique", fundaments_agree},
        {"i-dominates-basic/pool", "i-dominates-basic", fundamental_i_cover_is_basic},
        {"finite-quotients-of-sec-k/k1", "finite-quotients-of-sec-k", basic_iff_i_cover_fundamental},
        {"complete-characterization/powers-and-support", "complete-characterization", complete_characterization},
        {"uniqueness/ten-seeds", "uniqueness", uniqueness_seeds},
        {"i-cover/power-criterion", "i-cover", i_cover_power_criterion},
        {"general/builder", "general", general_builder},
        {"examples-of-i-covers/sign-family-1", "examples-of-i-covers", [](Context& c) { return sign_family(c, 1); }},
        {"examples-of-i-covers/sign-family-2", "examples-of-i-covers", [](Context& c) { return sign_family(c, 2); }},
        {"ep-for-direct-product/triple", "ep-for-direct-product", direct_product_ep_triple},
        {"direct-compact/products", "direct-compact", direct_compact},
        {"c4-noncompact-square/c4-square", "c4-noncompact-square", c4_noncompact},
        {"not-superbasic/grid", "not-superbasic", not_superbasic},
        {"not-i-cover/grid", "not-i-cover", not_i_cover},
    };
    std::sort(c.begin(), c.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    return c;
  }();
  return v;
}

/// Checks whose id or anchor contains `filter` (empty: all). A budget of 0
/// seconds skips everything; a negative budget is unlimited. Cap overruns
/// count as skips.
inline Report run_suite(const std::string& filter = {}, double budget_seconds = -1, const Limits& lim = {},
                        const std::function<void(const CheckRecord&)>& progress = {}) {
  using clock = std::chrono::steady_clock;
  Context ctx(lim);
  Report rep;
  const auto start = clock::now();
  for (const auto& c : all_checks()) {
    if (!filter.empty() && c.id.find(filter) == std::string::npos && c.anchor.find(filter) == std::string::npos) continue;
    CheckRecord r{c.id, c.anchor, Status::Skipped, 0, ""};
    const double used = std::chrono::duration<double>(clock::now() - start).count();
    if (budget_seconds == 0 || (budget_seconds > 0 && used >= budget_seconds)) {
      r.witness = "budget";
    } else {
      const auto t0 = clock::now();
      try {
        Outcome o = c.run(ctx);
        r.status = o.pass ? Status::Pass : Status::Fail;
        r.witness = o.witness;
      } catch (const CoverError& e) {
        r.status = e.is_cap() ? Status::Skipped : Status::Fail;
        r.witness = e.what();
      } catch (const std::exception& e) {
        r.status = Status::Fail;
        r.witness = e.what();
      }
      r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    }
    if (progress) progress(r);
    rep.records.push_back(std::move(r));
  }
  return rep;
}

inline nlohmann::json record_json(const CheckRecord& r) {
  return {{"id", r.id}, {"anchor", r.anchor}, {"status", to_string(r.status)}, {"seconds", r.seconds}, {"witness", r.witness}};
}

inline std::string render_jsonl(const Report& rep) {
  std::string out;
  for (const auto& r : rep.records) out += record_json(r).dump() + "\n";
  return out;
}

inline Report parse_jsonl(const std::string& text) {
  Report rep;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      rep.records.push_back({j.at("id").get<std::string>(), j.at("anchor").get<std::string>(),
                             status_from_string(j.at("status").get<std::string>()), j.at("seconds").get<double>(),
                             j.at("witness").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::InvalidArgument, std::string("bad report line: ") + e.what());
    }
  }
  return rep;
}

inline std::string render_table(const Report& rep) {
  std::size_t w = 5;
  for (const auto& r : rep.records) w = std::max(w, r.id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w)) << "check" << "  status   seconds  witness\n";
  for (const auto& r : rep.records)
    os << std::left << std::setw(static_cast<int>(w)) << r.id << "  " << std::setw(7) << to_string(r.status) << "  "
       << std::right << std::setw(7) << std::fixed << std::setprecision(2) << r.seconds << "  " << r.witness << "\n";
  os << "passed " << rep.count(Status::Pass) << ", failed " << rep.count(Status::Fail) << ", skipped "
     << rep.count(Status::Skipped) << " of " << rep.records.size() << "\n";
  return os.str();
}

}  // namespace cover::verify
