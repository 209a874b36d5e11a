#include <gtest/gtest.h>

#include "cover/cover_engine.hpp"
#include "fixtures.hpp"

using namespace cover;
using fx::cat;

namespace {

const char* kSmall[] = {"C2", "C3", "C4", "C2xC2", "S3"};

// C2 × S3 ↠ C2 with kernel the S3 factor.
GroupHom proj_c2() {
  for (auto& e : enumerate_homs(cat("C2xS3"), cat("C2"), true)) {
    const auto k = e.kernel().elements();
    bool abelian = true;
    for (Elem x : k)
      for (Elem y : k) abelian = abelian && e.src->mul(x, y) == e.src->mul(y, x);
    if (!abelian) return e;
  }
  throw std::runtime_error("no projection");
}

const SecResult& sec_of(const GroupPtr& g) {
  static std::vector<std::pair<GroupPtr, SecResult>> cache;
  for (const auto& [k, v] : cache)
    if (k == g) return v;
  cache.emplace_back(g, smallest_embedding_cover(g));
  return cache.back().second;
}

CoverClassification classify(const GroupHom& eta) { return classify_cover(eta, sec_of(eta.dst)); }

// G × S ↠ G
GroupHom coordinate_projection(const GroupPtr& g, const GroupPtr& s) { return direct_product(g, s).pr1; }

bool splits_over(const GroupHom& eta) {
  HomSearchOptions opt;
  opt.allow = [&](Elem g, Elem y) { return eta(y) == g; };
  return find_hom(eta.dst, eta.src, opt).has_value();
}

// sign pulled back along the C2-projection: the order-36 superbasic cover of C2 × S3
GroupHom sign_cover() { return pullback(fx::sign(), proj_c2()).eta; }

// Covers of C2 × S3 from several sources, all with modest order.
std::vector<GroupHom> pool_over_c2s3() {
  static std::vector<GroupHom> pool = [] {
    std::vector<GroupHom> v;
    const GroupPtr g = cat("C2xS3");
    const SecResult& sec = sec_of(g);
    const Subgroup ker = sec.cover.kernel();
    for (const auto& n : normal_subgroups(sec.group()))
      if (n.set.is_subset_of(ker.set)) v.push_back(induced_cover(sec.cover, n));
    for (auto& e : fx::covers_of(g, catalog_names(), 72)) v.push_back(e);
    v.push_back(coordinate_projection(g, cat("C2")));
    v.push_back(coordinate_projection(g, cat("C3")));
    for (const auto& c : enumerate_superbasic(g).covers) {
      v.push_back(c.cover);
      v.push_back(power_cover(c.cover, 2));
    }
    for (int p : {2, 3}) {
      auto h = h2_space(trivial_module(g, p));
      for (const auto& x : h.basis) v.push_back(class_to_extension(x));
    }
    return v;
  }();
  return pool;
}

std::vector<GroupHom> quotient_covers(const GroupHom& pi) {
  std::vector<GroupHom> out;
  const Subgroup ker = pi.kernel();
  for (const auto& n : normal_subgroups(pi.src))
    if (n.set.is_subset_of(ker.set)) out.push_back(induced_cover(pi, n));
  return out;
}

}  // namespace

TEST(EmbeddingProperty, Examples) {
  EXPECT_TRUE(has_embedding_property(cat("1")).has_ep);
  for (const char* n : kSmall) EXPECT_TRUE(has_embedding_property(cat(n)).has_ep) << n;
  auto r = has_embedding_property(cat("C2xS3"));
  EXPECT_FALSE(r.has_ep);
  ASSERT_TRUE(r.witness);
  EXPECT_FALSE(dominates(r.witness->phi, r.witness->alpha));
  EXPECT_TRUE(is_indecomposable(r.witness->alpha));
  // the named witness: projection to C2 against sign
  EXPECT_FALSE(dominates(proj_c2(), fx::sign()));
}

TEST(EmbeddingProperty, ReportInvariant) {
  for (const auto& n : catalog_names()) {
    auto r = has_embedding_property(cat(n));
    EXPECT_EQ(r.has_ep, !r.witness.has_value()) << n;
  }
}

TEST(EmbeddingProperty, IffNoSuperbasic) {
  int with_ep = 0, without = 0;
  for (const auto& n : catalog_names()) {
    const bool ep = has_embedding_property(cat(n)).has_ep;
    auto sb = enumerate_superbasic(cat(n));
    EXPECT_EQ(sb.skipped_over_cap, 0u);
    EXPECT_EQ(ep, sb.covers.empty()) << n;
    (ep ? with_ep : without)++;
  }
  EXPECT_GT(with_ep, 5);
  EXPECT_GT(without, 3);
}

TEST(Superbasic, C2xS3ContainsSignPullback) {
  auto sb = enumerate_superbasic(cat("C2xS3"));
  ASSERT_FALSE(sb.covers.empty());
  const GroupHom target = sign_cover();
  EXPECT_EQ(target.src->order(), 36);
  EXPECT_EQ(target.kernel().order(), 3);
  bool found = false;
  for (const auto& c : sb.covers) found = found || isomorphic_over_G(c.cover, target).has_value();
  EXPECT_TRUE(found);
}

TEST(Superbasic, CandidatesAreCompactIndecomposableAndDistinct) {
  for (const char* n : {"C2xS3", "C4xC2", "D4", "S3xS3"}) {
    auto sb = enumerate_superbasic(cat(n));
    for (std::size_t i = 0; i < sb.covers.size(); ++i) {
      const auto& c = sb.covers[i];
      auto st = square_classify(c.square);
      EXPECT_TRUE(st.cartesian);
      EXPECT_TRUE(st.compact.value_or(false)) << n;
      EXPECT_TRUE(is_indecomposable(c.cover));
      for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(isomorphic_over_G(c.cover, sb.covers[j].cover));
    }
  }
}

TEST(Superbasic, CapSkipsAreCounted) {
  Limits lim;
  lim.max_order = 20;
  auto sb = enumerate_superbasic(cat("C2xS3"), lim);
  EXPECT_TRUE(sb.covers.empty());
  EXPECT_GT(sb.skipped_over_cap, 0u);
}

TEST(Sec, TrivialCases) {
  for (const char* n : {"1", "C2"}) {
    auto s = smallest_embedding_cover(cat(n));
    EXPECT_TRUE(s.chain.empty());
    EXPECT_EQ(s.group(), cat(n));
    EXPECT_TRUE(s.ep_report.has_ep);
  }
}

TEST(Sec, C2xS3) {
  const auto& s = sec_of(cat("C2xS3"));
  EXPECT_EQ(s.group()->order(), 108);  // fixed-point value of the seed-0 loop
  EXPECT_EQ(s.chain.size(), 2u);
  EXPECT_TRUE(has_embedding_property(s.group()).has_ep);
  EXPECT_TRUE(s.ep_report.has_ep);
  GroupHom c = identity_hom(s.base);
  for (const auto& sq : s.chain) c = compose(sq.eta, c);
  EXPECT_TRUE(c == s.cover);
  for (const auto& sq : s.chain) {
    EXPECT_TRUE(is_indecomposable(sq.eta));
    EXPECT_TRUE(square_classify(sq).compact.value_or(false));
  }
}

TEST(Sec, C4xC2IsC4xC4) {
  const auto& s = sec_of(cat("C4xC2"));
  EXPECT_TRUE(is_isomorphic(s.group(), direct_product(cat("C4"), cat("C4")).group));
}

TEST(Sec, HasEPGroupsAreFixed) {
  for (const auto& n : catalog_names())
    if (has_embedding_property(cat(n)).has_ep) {
      EXPECT_TRUE(smallest_embedding_cover(cat(n)).chain.empty()) << n;
    }
}

TEST(Sec, UniqueAcrossSeeds) {
  const auto& base = sec_of(cat("C2xS3"));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = smallest_embedding_cover(cat("C2xS3"), seed);
    EXPECT_TRUE(s.ep_report.has_ep);
    EXPECT_TRUE(isomorphic_over_G(s.cover, base.cover)) << "seed " << seed;
    EXPECT_TRUE(isomorphic_over_G(fundament(s.cover).second, fundament(base.cover).second)) << "seed " << seed;
  }
}

TEST(Sec, UniqueAcrossSeedsOtherBases) {
  for (const char* n : {"C4xC2", "D4", "S3xC2"}) {
    const auto& base = sec_of(cat(n));
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
      EXPECT_TRUE(isomorphic_over_G(smallest_embedding_cover(cat(n), seed).cover, base.cover)) << n << " " << seed;
  }
}

TEST(Sec, IterationCap) {
  Limits lim;
  lim.max_iters = 1;
  try {
    smallest_embedding_cover(cat("C2xS3"), 0, lim);
    FAIL();
  } catch (const SecAborted& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IterationCapExceeded);
    EXPECT_TRUE(e.is_cap());
    EXPECT_EQ(e.partial().chain.size(), 1u);
  }
}

TEST(Sec, OrderCap) {
  Limits lim;
  lim.max_order = 50;
  try {
    smallest_embedding_cover(cat("C2xS3"), 0, lim);
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderCapExceeded);
  }
}

TEST(Classify, IdentityCover) {
  auto c = classify(identity_hom(cat("C2")));
  EXPECT_TRUE(c.i_cover);
  EXPECT_TRUE(c.basic);
  EXPECT_FALSE(c.superbasic);
  EXPECT_FALSE(c.indecomposable);
}

TEST(Classify, C4OverC2) {
  auto c = classify(fx::cyc(4, 2));
  EXPECT_FALSE(c.basic);
  EXPECT_FALSE(c.i_cover);
}

TEST(Classify, SignCoverIsSuperbasic) {
  const GroupHom eta = sign_cover();
  auto c = classify(eta);
  EXPECT_TRUE(c.superbasic);
  EXPECT_TRUE(c.basic);
  EXPECT_TRUE(c.i_cover);
  ASSERT_TRUE(c.i_cover_map);
  EXPECT_TRUE(compose(*c.i_cover_map, eta) == sec_of(eta.dst).cover);
  ASSERT_TRUE(c.superbasic_square);
  auto st = square_classify(*c.superbasic_square);
  EXPECT_TRUE(st.cartesian && st.compact.value_or(false));
  EXPECT_TRUE(find_quotient_type(quotient_types(eta.dst), c.superbasic_square->beta.dst));
}

TEST(Classify, ImplicationChainAndFundamentalCase) {
  int fundamental = 0, basic = 0, total = 0;
  for (const auto& eta : pool_over_c2s3()) {
    auto c = classify(eta);
    if (c.superbasic) {
      EXPECT_TRUE(c.basic);
    }
    if (c.basic) {
      EXPECT_TRUE(c.i_cover) << eta.src->name();
    }
    if (c.indecomposable && c.i_cover) {
      EXPECT_TRUE(c.basic) << eta.src->name();
    }
    if (c.fundamental) {
      EXPECT_EQ(c.basic, c.i_cover) << eta.src->name();
      ++fundamental;
    }
    basic += c.basic;
    ++total;
  }
  EXPECT_GT(fundamental, 10);
  EXPECT_GT(basic, 5);
  EXPECT_GT(total - basic, 5);
}

TEST(Classify, ComposeBasic) {
  int pairs = 0, both = 0;
  for (const char* n : {"C2xS3", "C4xC2"}) {
    const auto& sec = sec_of(cat(n));
    // intermediate covers E/M ↠ G and E/N ↠ E/M for N ≤ M ≤ Ker ε, plus G × S
    std::vector<GroupHom> firsts = quotient_covers(sec.cover);
    firsts.push_back(coordinate_projection(cat(n), cat("C2")));
    for (const auto& e1 : firsts) {
      if (e1.src->order() > 54) continue;
      std::vector<GroupHom> seconds = {coordinate_projection(e1.src, cat("C2")), identity_hom(e1.src)};
      for (auto& c : enumerate_superbasic(e1.src).covers) seconds.push_back(c.cover);
      for (const auto& e2 : seconds) {
        if (e2.src->order() > 108) continue;
        const bool lhs = classify(compose(e2, e1)).basic;
        const bool rhs = classify(e1).basic && classify(e2).basic;
        EXPECT_EQ(lhs, rhs) << e2.src->name() << " -> " << e1.src->name() << " -> " << n;
        ++pairs;
        both += lhs;
      }
    }
  }
  EXPECT_GT(pairs, 10);
  EXPECT_GT(both, 3);
}

TEST(Classify, FiberProductOfIndecomposablesBasicIffQuotientsBasic) {
  const GroupPtr g = cat("C2xS3");
  const auto sec_types = quotient_types(sec_of(g).group());
  std::vector<GroupHom> legs;
  for (const auto& c : enumerate_superbasic(g).covers) legs.push_back(c.cover);
  for (auto& e : pool_over_c2s3())
    if (is_indecomposable(e) && e.src->order() <= 36) legs.push_back(e);
  int checked = 0, yes = 0;
  for (std::size_t i = 0; i < legs.size(); ++i)
    for (std::size_t j = i; j < legs.size(); ++j) {
      const std::size_t order = static_cast<std::size_t>(legs[i].src->order()) * legs[j].src->order() / g->order();
      if (order > 108) continue;
      auto eta_i = fiber_product(CoverFamily::make(g, {legs[i], legs[j]})).to_base;
      if (!find_quotient_type(sec_types, eta_i.src)) continue;  // source in E(G)
      bool all = true;
      for (const auto& q : quotient_covers(eta_i))
        if (is_indecomposable(q)) all = all && classify(q).basic;
      EXPECT_EQ(classify(eta_i).basic, all) << i << "," << j;
      ++checked;
      yes += all;
    }
  EXPECT_GT(checked, 3);
  EXPECT_GT(yes, 0);
}

TEST(Classify, BasicClassesCloseUnderSums) {
  // nonzero combinations of basic abelian-kernel covers stay basic
  int basic_seen = 0;
  static const GroupPtr c4c2c2 = direct_product(cat("C4xC2"), cat("C2")).group;
  for (const GroupPtr& g : {cat("C4xC2"), cat("C2xS3"), c4c2c2})
    for (int p : {2, 3}) {
      const std::string n = g->name();
      auto h = h2_space(trivial_module(g, p));
      const int dim = h.dim_fp;
      if (dim == 0) continue;
      int total = 1;
      for (int i = 0; i < dim; ++i) total *= p;
      std::vector<bool> basic(total, false);
      std::vector<CocycleClass> cls(total);
      for (int code = 1; code < total; ++code) {
        Cochain c(cochain_size(*h.module), 0);
        for (int i = 0, r = code; i < dim; ++i, r /= p)
          for (std::size_t k = 0; k < c.size(); ++k) c[k] = (c[k] + (r % p) * h.basis[i].rep[k]) % p;
        cls[code] = {h.module, c};
        basic[code] = classify(class_to_extension(cls[code])).basic;
        basic_seen += basic[code];
      }
      for (int a = 1; a < total; ++a)
        for (int b = 1; b < total; ++b) {
          if (!basic[a] || !basic[b]) continue;
          int s = 0;
          for (int i = 0, m = 1, ra = a, rb = b; i < dim; ++i, m *= p, ra /= p, rb /= p) s += ((ra % p + rb % p) % p) * m;
          if (s != 0) {
            EXPECT_TRUE(basic[s]) << n << " F" << p << " " << a << "+" << b;
          }
        }
    }
  EXPECT_GT(basic_seen, 3);
}

TEST(DirectProductEP, ThreePredicatesAgree) {
  int n = 0, positive = 0;
  for (const char* gname : {"C2", "C3", "C4", "C2xC2", "S3", "C6", "C2xS3", "D4", "C3xC3", "A4"})
    for (const auto& nsub : normal_subgroups(cat(gname))) {
      const GroupHom phi = quotient(cat(gname), nsub).map;
      for (const char* s : {"C2", "C3"}) {
        auto r = direct_product_ep(phi, cat(s));
        EXPECT_EQ(r.surjective_solution, r.epi_onto_product) << gname << " S=" << s;
        EXPECT_EQ(r.surjective_solution, r.psi_not_through_phi) << gname << " S=" << s;
        ++n;
        positive += r.surjective_solution;
      }
    }
  EXPECT_GE(n, 20);
  EXPECT_GT(positive, 5);
  EXPECT_GT(n - positive, 5);
}

TEST(DirectCompact, CompactSquaresOverProjectionAreProducts) {
  int compact = 0;
  for (const char* gname : kSmall)
    for (const char* sname : {"C2", "C3"}) {
      const GroupPtr g = cat(gname), s = cat(sname);
      const DirectProduct gs = direct_product(g, s);
      const GroupHom eta = gs.pr1;
      const Subgroup ker = eta.kernel();
      for (const auto& n : normal_subgroups(gs.group)) {
        if (!intersect(n, ker).is_trivial()) continue;
        const Quotient qb = quotient(gs.group, n);
        const Quotient qa = quotient(g, eta.image_of(n));
        const GroupHom alpha = *factor_through(qb.map, compose(eta, qa.map));
        Square sq = Square::make(eta, qb.map, alpha, qa.map);
        if (!square_classify(sq).compact.value_or(false)) continue;
        ++compact;
        // θ: B ≅ A × S over A with θ∘β = φ × σ on G × S, σ ∈ Aut(S)
        const DirectProduct as = direct_product(qa.group, s);
        bool matched = false;
        HomSearchOptions opt;
        opt.injective = true;
        opt.allow = [&](Elem b, Elem y) { return as.pr1(y) == alpha(b); };
        for_each_hom(qb.group, as.group, opt, [&](const std::vector<Elem>& th) {
          const Elem k = as.pr2(th[qb.map(gs.pair(0, 1))]);
          bool ok = k != 0;
          for (Elem x = 0; x < g->order() && ok; ++x)
            for (Elem y = 0; y < s->order() && ok; ++y)
              ok = as.pr2(th[qb.map(gs.pair(x, y))]) == k * y % s->order();
          matched = matched || ok;
          return !matched;
        });
        EXPECT_TRUE(matched) << gname << " x " << sname << " N order " << n.order();
      }
    }
  EXPECT_GT(compact, 5);
}

TEST(DirectProduct, ProjectionNeitherSuperbasicNorICover) {
  for (const char* gname : kSmall)
    for (const char* sname : {"C2", "C3"}) {
      auto c = classify(coordinate_projection(cat(gname), cat(sname)));
      EXPECT_FALSE(c.superbasic) << gname << " x " << sname;
      EXPECT_FALSE(c.i_cover) << gname << " x " << sname;
    }
}

TEST(GeneralICover, SingleSign) {
  auto r = general_I_cover({fx::sign()});
  EXPECT_EQ(r.group->order(), 12);
  EXPECT_TRUE(is_isomorphic(r.group, cat("S3xC2")));
  EXPECT_EQ(r.cover.src->order(), 36);
  EXPECT_TRUE(classify(r.cover).i_cover);
}

TEST(GeneralICover, Conditions) {
  try {
    general_I_cover({fx::first_epi(cat("C6"), cat("C2"))});
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConditionAViolated);
  }
  try {
    general_I_cover({fx::cyc(4, 2), fx::cyc(4, 2)});
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConditionBViolated);
  }
}

TEST(GeneralICover, ResultsAreICovers) {
  std::vector<std::vector<GroupHom>> families = {{fx::cyc(4, 2)}, {fx::sign(), fx::cyc(4, 2)}, {fx::cyc(9, 3)}};
  for (const auto& fam : families) {
    auto r = general_I_cover(fam);
    EXPECT_TRUE(classify(r.cover).i_cover) << r.group->name();
  }
}

TEST(CompleteCharacterization, PowersOfSplitSuperbasic) {
  const GroupPtr g = cat("C2xS3");
  const GroupHom eta = sign_cover();
  ASSERT_TRUE(splits_over(eta));
  auto fund = fundament(sec_of(g).cover).second;
  auto inv = cover_invariants(fund);
  KernelModule km = module_from_kernel(eta);
  int mult = 0;
  for (const auto& a : inv.ab)
    if (module_isomorphism(*km.module, *a.module)) mult = a.mult;
  int best = 0;
  for (int n = 0; n <= 3; ++n)
    if (classify(power_cover(eta, n)).basic) best = n;
  EXPECT_EQ(best, mult);
  EXPECT_GE(mult, 1);
}

TEST(GoingDown, BasicPushesDownAlongSecChain) {
  const auto& sec = sec_of(cat("C2xS3"));
  const GroupHom xi = sec.chain[0].eta;  // G_1 ↠ G_0
  const GroupPtr g1 = xi.src;
  std::vector<GroupHom> etas = {sec.chain[1].eta, identity_hom(g1), coordinate_projection(g1, cat("C2"))};
  for (auto& c : enumerate_superbasic(g1).covers) etas.push_back(c.cover);
  int checked = 0;
  for (const auto& eta : etas) {
    if (!classify(eta).basic) continue;
    const Subgroup target = xi.kernel();
    for (const auto& m : normal_subgroups(eta.src)) {
      if (!(eta.image_of(m) == target)) continue;
      const Quotient q = quotient(eta.src, m);
      const GroupHom bar = *factor_through(q.map, compose(eta, xi));
      EXPECT_TRUE(square_classify(Square::make(eta, q.map, bar, xi)).semi_cartesian);
      EXPECT_TRUE(classify(bar).basic) << eta.src->name();
      ++checked;
    }
  }
  EXPECT_GT(checked, 2);
}
