#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "cover/cohomology.hpp"
#include "cover/homsearch.hpp"
#include "cover/square.hpp"

namespace cover {

/// φ: G ↠ A and α: B ↠ A; solvable iff some epi γ: G ↠ B has α∘γ = φ.
struct EmbeddingProblem {
  GroupHom phi;
  GroupHom alpha;
};

struct EmbeddingReport {
  bool has_ep = true;
  std::optional<EmbeddingProblem> witness;
  std::size_t problems_checked = 0;
};

namespace detail {

// Visits every problem (φ, α) with φ a quotient map of g and α: B ↠ A
// indecomposable, B running over the quotient types of g. Each φ stands for
// its whole Aut(A)-orbit, since α ranges over all epis onto A.
// Trivial A is skipped: there every problem is solved by a quotient map.
template <class Visit>
void for_each_embedding_problem(const GroupPtr& g, Visit&& visit, const Limits& lim) {
  check_order_cap(g->order(), lim, "embedding problems");
  const auto types = quotient_types(g, lim);
  const auto normals = normal_subgroups(g);
  for (std::size_t i = normals.size(); i-- > 0;) {
    const Subgroup& n = normals[i];
    if (n.order() == g->order()) continue;
    const Quotient qa = quotient(g, n);
    const int an = qa.group->order();
    for (const auto& t : types) {
      const GroupPtr& b = t.quotient.group;
      if (b->order() <= an || b->order() % an != 0) continue;
      for (auto& alpha : enumerate_homs(b, qa.group, true, lim)) {
        if (!is_indecomposable(alpha)) continue;
        if (!visit(EmbeddingProblem{qa.map, std::move(alpha)})) return;
      }
    }
  }
}

inline bool solvable(const EmbeddingProblem& p, const Limits& lim) { return dominates(p.phi, p.alpha, lim).has_value(); }

}  // namespace detail

inline EmbeddingReport has_embedding_property(const GroupPtr& g, const Limits& lim = {}) {
  EmbeddingReport r;
  detail::for_each_embedding_problem(
      g,
      [&](EmbeddingProblem p) {
        ++r.problems_checked;
        if (detail::solvable(p, lim)) return true;
        r.has_ep = false;
        r.witness = std::move(p);
        return false;
      },
      lim);
  return r;
}

struct SuperbasicCandidate {
  Square square;  // B ×_A G with eta the cover
  GroupHom cover;
  EmbeddingProblem problem;
};

struct SuperbasicList {
  std::vector<SuperbasicCandidate> covers;
  std::size_t skipped_over_cap = 0;
};

/// Pullbacks of all unsolvable indecomposable problems, one per ≅_G class.
inline SuperbasicList enumerate_superbasic(const GroupPtr& g, const Limits& lim = {}) {
  SuperbasicList out;
  detail::for_each_embedding_problem(
      g,
      [&](EmbeddingProblem p) {
        if (detail::solvable(p, lim)) return true;
        const std::size_t order =
            static_cast<std::size_t>(p.alpha.src->order()) * g->order() / p.alpha.dst->order();
        if (order > lim.max_order) {
          ++out.skipped_over_cap;
          return true;
        }
        Square s = pullback(p.alpha, p.phi, lim);
        for (const auto& c : out.covers)
          if (isomorphic_over_G(c.cover, s.eta, lim)) return true;
        GroupHom eta = s.eta;
        out.covers.push_back({std::move(s), std::move(eta), std::move(p)});
        return true;
      },
      lim);
  return out;
}

struct SecResult {
  GroupPtr base;
  GroupHom cover;            // E ↠ base
  std::vector<Square> chain;  // step k: G_k ↠ G_{k-1} as chain[k-1].eta
  EmbeddingReport ep_report;
  std::uint64_t seed = 0;

  const GroupPtr& group() const { return cover.src; }
};

class SecAborted : public CoverError {
 public:
  SecAborted(ErrorKind kind, const std::string& what, SecResult partial)
      : CoverError(kind, what), partial_(std::move(partial)) {}
  const SecResult& partial() const { return partial_; }

 private:
  SecResult partial_;
};

/// Iterates superbasic covers until the embedding property holds. Seed 0
/// takes the first unsolvable problem in enumeration order; other seeds pick
/// uniformly among the ≅_G classes of superbasic covers at each step.
inline SecResult smallest_embedding_cover(const GroupPtr& g, std::uint64_t seed = 0, const Limits& lim = {}) {
  SecResult r;
  r.base = g;
  r.cover = identity_hom(g);
  r.seed = seed;
  std::mt19937_64 rng(seed);
  GroupPtr cur = g;
  for (int iter = 0;; ++iter) {
    std::optional<Square> step;
    try {
      EmbeddingReport rep = has_embedding_property(cur, lim);
      if (rep.has_ep) {
        r.ep_report = std::move(rep);
        return r;
      }
      if (iter >= lim.max_iters)
        fail(ErrorKind::IterationCapExceeded,
             std::to_string(iter) + " steps without reaching the embedding property");
      if (seed == 0) {
        const EmbeddingProblem& p = *rep.witness;
        check_order_cap(static_cast<std::size_t>(p.alpha.src->order()) * cur->order() / p.alpha.dst->order(), lim,
                        "superbasic step");
        step = pullback(p.alpha, p.phi, lim);
      } else {
        SuperbasicList cands = enumerate_superbasic(cur, lim);
        if (cands.covers.empty()) {
          if (cands.skipped_over_cap) fail(ErrorKind::OrderCapExceeded, "every superbasic cover exceeds the order cap");
          fail(ErrorKind::InvalidArgument, "no superbasic cover although the embedding property fails");
        }
        std::uniform_int_distribution<std::size_t> pick(0, cands.covers.size() - 1);
        step = std::move(cands.covers[pick(rng)].square);
      }
    } catch (const CoverError& e) {
      if (!e.is_cap()) throw;
      throw SecAborted(e.kind(), "smallest_embedding_cover: " + e.detail(), r);
    }
    r.cover = compose(step->eta, r.cover);
    cur = step->eta.src;
    r.chain.push_back(std::move(*step));
  }
}

struct CoverClassification {
  bool indecomposable = false;
  bool fundamental = false;
  bool superbasic = false;
  bool basic = false;
  bool i_cover = false;
  std::optional<Square> basic_square;
  std::optional<Square> superbasic_square;
  std::optional<GroupHom> i_cover_map;  // E ↠ H over G from the computed sec
};

/// E_f(G) is read off as the quotient types of sec.group().
inline CoverClassification classify_cover(const GroupHom& eta, const SecResult& sec, const Limits& lim = {}) {
  if (sec.base != eta.dst) fail(ErrorKind::BaseMismatch, "classify_cover: sec of a different group");
  CoverClassification c;
  const GroupPtr& h = eta.src;
  const GroupPtr& g = eta.dst;
  c.indecomposable = is_indecomposable(eta);
  c.fundamental = is_fundamental(eta);
  if (auto psi = dominates(sec.cover, eta, lim)) {
    c.i_cover = true;
    c.i_cover_map = std::move(*psi);
  }
  const Subgroup ker = eta.kernel();
  std::optional<std::vector<QuotientType>> sec_types, g_types;
  const auto normals = normal_subgroups(h);
  for (std::size_t i = normals.size(); i-- > 0;) {
    const Subgroup& n = normals[i];
    if (!intersect(n, ker).is_trivial()) continue;
    if (c.basic && (c.superbasic || !c.indecomposable)) break;
    const Quotient qb = quotient(h, n);
    const Quotient qa = quotient(g, eta.image_of(n));
    GroupHom alpha = *factor_through(qb.map, compose(eta, qa.map));
    Square s = Square::make(eta, qb.map, std::move(alpha), qa.map);
    if (!square_classify(s).compact.value_or(false)) continue;
    const GroupPtr& b = qb.group;
    if (!c.basic) {
      if (!sec_types) sec_types = quotient_types(sec.group(), lim);
      if (find_quotient_type(*sec_types, b, lim)) {
        c.basic = true;
        c.basic_square = s;
      }
    }
    if (c.indecomposable && !c.superbasic && b->order() <= g->order()) {
      if (!g_types) g_types = quotient_types(g, lim);
      if (find_quotient_type(*g_types, b, lim)) {
        c.superbasic = true;
        c.superbasic_square = s;
      }
    }
  }
  return c;
}

inline CoverClassification classify_cover(const GroupHom& eta, const Limits& lim = {}) {
  return classify_cover(eta, smallest_embedding_cover(eta.dst, 0, lim), lim);
}

/// True iff b = Ker α × C for some subgroup C.
inline bool kernel_has_direct_complement(const GroupHom& alpha) {
  const Subgroup k = alpha.kernel();
  const int want = alpha.src->order() / k.order();
  for (const auto& c : normal_subgroups(alpha.src))
    if (c.order() == want && intersect(c, k).is_trivial()) return true;
  return false;
}

struct GeneralICover {
  GroupPtr group;                // G = (×_A B_i) × A
  GroupHom phi;                  // G ↠ A, second coordinate
  std::vector<GroupHom> pulled;  // η_i: H_i ↠ G
  GroupHom cover;                // η_I
};

inline GeneralICover general_I_cover(const std::vector<GroupHom>& alphas, const Limits& lim = {}) {
  if (alphas.empty()) fail(ErrorKind::InvalidArgument, "general_I_cover: empty family");
  const GroupPtr a = alphas.front().dst;
  for (const auto& al : alphas) {
    if (al.dst != a) fail(ErrorKind::BaseMismatch, "general_I_cover: maps onto different groups");
    if (!al.is_surjective()) fail(ErrorKind::TypeMismatch, "general_I_cover: not an epimorphism");
    if (!is_indecomposable(al)) fail(ErrorKind::InvalidArgument, "general_I_cover: " + al.src->name() + " map is decomposable");
  }
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (kernel_has_direct_complement(alphas[i]))
      fail(ErrorKind::ConditionAViolated, "member " + std::to_string(i) + " has a direct complement to its kernel");
  // members with trivial-action abelian kernel, grouped by the prime
  std::map<int, std::vector<CocycleClass>> by_prime;
  std::map<int, ModulePtr> target;
  for (const auto& al : alphas) {
    const auto kel = al.kernel().elements();
    bool abelian = true;
    for (Elem x : kel)
      for (Elem y : kel) abelian = abelian && al.src->mul(x, y) == al.src->mul(y, x);
    if (!abelian) continue;
    KernelModule km = module_from_kernel(al);
    if (!km.module->is_trivial_action()) continue;
    const int p = km.module->prime();
    if (!target.count(p)) target[p] = km.module;
    by_prime[p].push_back(extension_class(al, target[p], 0, lim));
  }
  for (const auto& [p, fam] : by_prime)
    if (span_and_relations(fam, target[p]).relation_dim > 0)
      fail(ErrorKind::ConditionBViolated, "classes over the trivial F" + std::to_string(p) + "-module are dependent");

  GeneralICover out;
  FiberProduct b = fiber_product(CoverFamily::make(a, alphas), lim);
  check_order_cap(static_cast<std::size_t>(b.group->order()) * a->order(), lim, "general_I_cover base");
  DirectProduct ga = direct_product(b.group, a, lim);
  out.group = ga.group;
  out.phi = ga.pr2;
  for (const auto& al : alphas) out.pulled.push_back(pullback(al, out.phi, lim).eta);
  out.cover = fiber_product(CoverFamily::make(out.group, out.pulled), lim).to_base;
  return out;
}

/// Three independently computed predicates for φ: G ↠ A against A × S ↠ A.
struct DirectProductEP {
  bool surjective_solution = false;  // α ≼ φ with α the coordinate projection
  bool epi_onto_product = false;     // some G ↠ A × S
  bool psi_not_through_phi = false;  // some G ↠ S not factoring through φ
};

inline DirectProductEP direct_product_ep(const GroupHom& phi, const GroupPtr& s, const Limits& lim = {}) {
  const GroupPtr& g = phi.src;
  const GroupPtr& a = phi.dst;
  DirectProduct dp = direct_product(a, s, lim);
  const GroupPtr& as = dp.group;
  const GroupHom& alpha = dp.pr1;
  DirectProductEP r;
  r.surjective_solution = dominates(phi, alpha, lim).has_value();
  if (g->order() % as->order() == 0) {
    HomSearchOptions opt;
    opt.epi_only = true;
    r.epi_onto_product = find_hom(g, as, opt, lim).has_value();
  }
  for (const auto& psi : enumerate_homs(g, s, true, lim))
    if (!factor_through(phi, psi)) {
      r.psi_not_through_phi = true;
      break;
    }
  return r;
}

}  // namespace cover
