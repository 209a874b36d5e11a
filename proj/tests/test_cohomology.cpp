#include <gtest/gtest.h>

#include <cmath>

#include "cover/cohomology.hpp"
#include "fixtures.hpp"

using namespace cover;
using fx::cat;

namespace {

GroupPtr d9_group() {
  static GroupPtr g = group_from_permutations(9, {{1, 2, 3, 4, 5, 6, 7, 8, 0}, {0, 8, 7, 6, 5, 4, 3, 2, 1}}, "D9");
  return g;
}

GroupPtr s4() {
  static GroupPtr g = group_from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, "S4");
  return g;
}

// Twisted product table on pairs (a, g); a cochain is a cocycle iff this is a group.
std::vector<Elem> twisted_table(const GModule& m, const Cochain& c) {
  const auto& G = *m.group();
  const int n = G.order(), q = m.size(), order = n * q;
  std::vector<Elem> t(static_cast<std::size_t>(order) * order);
  for (Elem g = 0; g < n; ++g)
    for (int a = 0; a < q; ++a)
      for (Elem h = 0; h < n; ++h)
        for (int b = 0; b < q; ++b) {
          fp::Vec v = m.act(g, m.vec(b));
          fp::axpy(v, 1, m.vec(a), m.prime());
          fp::axpy(v, 1, cochain_at(m, c, g, h), m.prime());
          t[static_cast<std::size_t>(g * q + a) * order + h * q + b] = G.mul(g, h) * q + m.code(v);
        }
  return t;
}

struct BruteH2 {
  int cocycles = 0;
  int split = 0;
  double dim = 0;
};

// Every normalized cochain; cocycle by associativity; split by a section search.
BruteH2 brute_h2(const ModulePtr& m) {
  const auto& G = *m->group();
  const int n = G.order(), d = m->dim(), p = m->prime();
  const int free = (n - 1) * (n - 1) * d;
  long long total = 1;
  for (int i = 0; i < free; ++i) total *= p;
  BruteH2 r;
  for (long long code = 0; code < total; ++code) {
    Cochain c(cochain_size(*m), 0);
    long long x = code;
    for (Elem g = 1; g < n; ++g)
      for (Elem h = 1; h < n; ++h)
        for (int k = 0; k < d; ++k) {
          c[(static_cast<std::size_t>(g) * n + h) * d + k] = static_cast<int>(x % p);
          x /= p;
        }
    auto t = twisted_table(*m, c);
    const int order = n * m->size();
    if (table_axiom_violation(order, t)) continue;
    ++r.cocycles;
    auto e = make_group(order, t, "E");
    std::vector<Elem> im(order);
    for (int i = 0; i < order; ++i) im[i] = i / m->size();
    GroupHom pr(e, m->group(), im);
    HomSearchOptions opt;
    opt.allow = [&](Elem g, Elem y) { return pr(y) == g; };
    if (find_hom(m->group(), e, opt)) ++r.split;
  }
  r.dim = std::log(static_cast<double>(r.cocycles) / r.split) / std::log(static_cast<double>(p));
  return r;
}

ModulePtr trivial(const std::string& g, int p) { return trivial_module(cat(g), p); }

// A split/nonsplit catalog of extensions with simple abelian kernel.
std::vector<GroupHom> simple_abelian_extensions() {
  std::vector<GroupHom> out;
  for (const auto& g : {"1", "C2", "C3", "C4", "C2xC2", "S3", "C6"})
    for (auto& e : fx::covers_of(cat(g), catalog_names(), 36)) {
      if (!is_indecomposable(e)) continue;
      try {
        auto km = module_from_kernel(e);
        if (km.simple) out.push_back(e);
      } catch (const CoverError&) {
      }
    }
  return out;
}

bool splits_by_search(const GroupHom& eta) {
  HomSearchOptions opt;
  opt.allow = [&](Elem g, Elem y) { return eta(y) == g; };
  return find_hom(eta.dst, eta.src, opt).has_value();
}

CocycleClass scaled(const CocycleClass& x, int a) {
  Cochain c = x.rep;
  for (int& v : c) v = v * a % x.module->prime();
  return {x.module, c};
}

CocycleClass sum(const CocycleClass& x, const CocycleClass& y) {
  Cochain c = x.rep;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (c[i] + y.rep[i]) % x.module->prime();
  return {x.module, c};
}

}  // namespace

TEST(ModuleFromKernel, SignGivesInversion) {
  auto km = module_from_kernel(fx::sign());
  EXPECT_EQ(km.module->prime(), 3);
  EXPECT_EQ(km.module->dim(), 1);
  EXPECT_EQ(km.module->rho(1), fp::Mat{{2}});
  EXPECT_TRUE(km.simple);
}

TEST(ModuleFromKernel, CentralKernelsAreTrivial) {
  auto a = module_from_kernel(fx::first_epi(cat("C2xC2"), cat("C2")));
  EXPECT_EQ(a.module->prime(), 2);
  EXPECT_TRUE(a.module->is_trivial_action());
  auto b = module_from_kernel(fx::cyc(4, 2));
  EXPECT_EQ(b.module->dim(), 1);
  EXPECT_TRUE(b.module->is_trivial_action());
}

TEST(ModuleFromKernel, Errors) {
  try {
    module_from_kernel(fx::to_trivial(cat("S3")));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAbelianKernel);
  }
  try {
    module_from_kernel(fx::cyc(4, 1));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotElementaryAbelian);
  }
}

TEST(ModuleFromKernel, SimpleIffMinimalNormal) {
  int n = 0;
  for (const auto& g : {"1", "C2", "C3", "C2xC2", "S3", "C4"})
    for (auto& e : fx::covers_of(cat(g), catalog_names(), 48)) {
      try {
        auto km = module_from_kernel(e);
        EXPECT_EQ(km.simple, is_minimal_normal(e.kernel())) << e.src->name() << "->" << g;
        // action really is conjugation
        for (Elem h = 0; h < e.src->order(); ++h)
          for (Elem b : km.basis)
            EXPECT_EQ(km.coords(e.src->conj(h, b)), km.module->act(e(h), km.coords(b)));
        ++n;
      } catch (const CoverError&) {
      }
    }
  EXPECT_GT(n, 20);
}

TEST(EndField, Examples) {
  EXPECT_EQ(end_field(trivial("C2", 2)).size(), 2);
  EXPECT_EQ(end_field(trivial("S3", 5)).size(), 5);
  EXPECT_EQ(end_field(module_from_kernel(fx::sign()).module).size(), 3);
  // natural 2-dim F2-module of S3 = GL(2,2), from S4 ↠ S3
  auto nat = module_from_kernel(fx::first_epi(s4(), cat("S3")));
  EXPECT_EQ(nat.module->dim(), 2);
  EXPECT_TRUE(nat.simple);
  EXPECT_EQ(end_field(nat.module).size(), 2);
  // C3 acting on F2^2 without fixed points: End = F4
  auto f4 = module_from_kernel(fx::first_epi(cat("A4"), cat("C3")));
  EXPECT_TRUE(f4.simple);
  auto F = end_field(f4.module);
  EXPECT_EQ(F.size(), 4);
  EXPECT_EQ(F.degree, 2);
}

TEST(EndField, NotSimpleRejected) {
  try {
    end_field(trivial_module(cat("C2"), 2, 2));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSimple);
  }
}

TEST(H2, ExampleDimensions) {
  EXPECT_EQ(h2_space(trivial("C2", 2)).dim_fc, 1);
  EXPECT_EQ(h2_space(trivial("C3", 3)).dim_fc, 1);
  EXPECT_EQ(h2_space(trivial("C2", 3)).dim_fc, 0);
}

TEST(H2, MatchesBruteForceEnumeration) {
  struct Case {
    const char* g;
    int p;
    int expected;
  };
  for (const Case& c : std::vector<Case>{{"C2", 2, 1}, {"C3", 3, 1}, {"C2", 3, 0}, {"C3", 2, 0}, {"C4", 2, 1},
                                         {"C2xC2", 2, 3}}) {
    auto m = trivial(c.g, c.p);
    auto h = h2_space(m);
    auto b = brute_h2(m);
    EXPECT_EQ(h.dim_fp, c.expected) << c.g << " F" << c.p;
    EXPECT_NEAR(b.dim, c.expected, 1e-9) << c.g << " F" << c.p;
    int b2 = 1;
    for (int i = 0; i < h.b2_dim; ++i) b2 *= c.p;
    EXPECT_EQ(b.split, b2);
  }
}

TEST(H2, LargerInstances) {
  EXPECT_EQ(h2_space(module_from_kernel(fx::sign()).module).dim_fc, 0);  // coprime
  auto d9 = module_from_kernel(fx::first_epi(d9_group(), cat("S3")));
  EXPECT_FALSE(d9.module->is_trivial_action());
  EXPECT_EQ(h2_space(d9.module).dim_fc, 1);
  EXPECT_EQ(h2_space(trivial("S3", 3)).dim_fc, 0);
  EXPECT_EQ(h2_space(trivial("S3", 2)).dim_fc, 1);
  EXPECT_EQ(h2_space(trivial("C2xC2xC2", 2)).dim_fc, 6);
  EXPECT_EQ(h2_space(trivial("C6", 2)).dim_fc, 1);
}

TEST(H2, BasisElementsAreCocycles) {
  auto h = h2_space(trivial("C2xC2", 2));
  for (const auto& x : h.basis) {
    EXPECT_TRUE(is_cocycle(*x.module, x.rep));
    EXPECT_TRUE(is_normalized(*x.module, x.rep));
    EXPECT_FALSE(x.is_zero());
  }
}

TEST(ExtensionClass, Examples) {
  EXPECT_TRUE(extension_class(fx::first_epi(cat("C2xC2"), cat("C2"))).is_zero());
  auto x = extension_class(fx::cyc(4, 2));
  EXPECT_FALSE(x.is_zero());
  EXPECT_TRUE(extension_class(fx::sign()).is_zero());
}

TEST(ExtensionClass, ZeroIffSplit) {
  auto exts = simple_abelian_extensions();
  EXPECT_GT(exts.size(), 15u);
  int nonsplit = 0;
  for (const auto& e : exts) {
    auto x = extension_class(e);
    EXPECT_TRUE(is_cocycle(*x.module, x.rep));
    EXPECT_EQ(x.is_zero(), splits_by_search(e)) << e.src->name() << "->" << e.dst->name();
    nonsplit += !x.is_zero();
  }
  EXPECT_GT(nonsplit, 3);
}

TEST(ExtensionClass, IndependentOfSection) {
  for (const auto& e : simple_abelian_extensions()) {
    auto base = extension_class(e);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) EXPECT_TRUE(extension_class(e, base.module, seed) == base);
  }
}

TEST(ExtensionClass, ModuleMismatch) {
  try {
    extension_class(fx::cyc(4, 2), trivial("C2", 3));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ModuleMismatch);
  }
}

TEST(ClassToExtension, Examples) {
  auto m2 = trivial("C2", 2);
  auto zero = CocycleClass{m2, Cochain(cochain_size(*m2), 0)};
  auto split = class_to_extension(zero);
  EXPECT_TRUE(is_isomorphic(split.src, cat("C2xC2")));
  auto x = h2_space(m2).basis.at(0);
  EXPECT_TRUE(isomorphic_over_G(class_to_extension(x), fx::cyc(4, 2)));
  auto y = h2_space(trivial("C3", 3)).basis.at(0);
  EXPECT_TRUE(isomorphic_over_G(class_to_extension(y), fx::cyc(9, 3)));
}

TEST(ClassToExtension, RoundTrip) {
  for (const auto& e : simple_abelian_extensions()) {
    auto x = extension_class(e);
    auto back = class_to_extension(x);
    EXPECT_TRUE(isomorphic_over_G(back, e)) << e.src->name() << "->" << e.dst->name();
    // class of the rebuilt extension is x up to F_C^×
    auto y = extension_class(back, x.module);
    auto F = end_field(x.module);
    bool up_to_unit = false;
    for (const auto& a : F.elements()) {
      CocycleClass ax{x.module, apply_entrywise(a, x.rep, x.module->dim(), x.module->prime())};
      if (fp::invertible(a, x.module->prime()) && ax == y) up_to_unit = true;
    }
    EXPECT_TRUE(up_to_unit);
  }
}

TEST(SpanAndRelations, Examples) {
  auto x = h2_space(trivial("C2", 2)).basis.at(0);
  auto r2 = span_and_relations({x, x});
  EXPECT_EQ(r2.span_dim, 1);
  EXPECT_EQ(r2.relation_dim, 1);
  EXPECT_EQ(span_and_relations({x}).relation_dim, 0);
  CocycleClass zero{x.module, Cochain(x.rep.size(), 0)};
  auto r0 = span_and_relations({zero});
  EXPECT_EQ(r0.span_dim, 0);
  EXPECT_EQ(r0.relation_dim, 1);
}

TEST(SpanAndRelations, ModuleMismatch) {
  auto x = h2_space(trivial("C2", 2)).basis.at(0);
  auto y = h2_space(trivial("C3", 3)).basis.at(0);
  try {
    span_and_relations({x, y});
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ModuleMismatch);
  }
}

TEST(SpanAndRelations, FourDimensionalFieldSpan) {
  // over F4 a class and its F4-multiples span one F4-line
  auto m = module_from_kernel(fx::first_epi(cat("A4"), cat("C3"))).module;
  auto F = end_field(m);
  auto h = h2_space(m);
  EXPECT_EQ(h.dim_fc, 0);  // coprime order
  EXPECT_EQ(F.degree, 2);
}

TEST(FamilyDomination, NontrivialCombinationIffDominated) {
  // dominates(η_I, ζ) ⟺ ζ's class is a nontrivial combination of the η_i
  for (const auto& gname : {"C2", "C3"}) {
    const int p = gname == std::string("C2") ? 2 : 3;
    auto m = trivial(gname, p);
    auto x = h2_space(m).basis.at(0);
    std::vector<CocycleClass> classes;
    for (int a = 0; a < p; ++a) classes.push_back(scaled(x, a));
    std::vector<GroupHom> exts;
    for (const auto& c : classes) exts.push_back(class_to_extension(c));
    int checked = 0;
    for (int len = 1; len <= 3; ++len) {
      int combos = 1;
      for (int i = 0; i < len; ++i) combos *= p;
      for (int f = 0; f < combos; ++f) {
        std::vector<int> idx;
        for (int i = 0, r = f; i < len; ++i, r /= p) idx.push_back(r % p);
        CoverFamily fam{m->group(), {}};
        std::vector<CocycleClass> fam_classes;
        for (int i : idx) {
          fam.legs.push_back(exts[i]);
          fam_classes.push_back(classes[i]);
        }
        auto eta_i = fiber_product(fam).to_base;
        auto sr = span_and_relations(fam_classes);
        for (int z = 0; z < p; ++z) {
          // brute force over coefficient vectors
          bool comb = false;
          for (int cc = 1; cc < combos; ++cc) {
            CocycleClass s{m, Cochain(x.rep.size(), 0)};
            for (int i = 0, r = cc; i < len; ++i, r /= p) s = sum(s, scaled(fam_classes[i], r % p));
            if (s == classes[z]) comb = true;
          }
          const bool by_span = sr.span.contains(classes[z]) && (z != 0 || sr.relation_dim > 0);
          const bool dom = dominates(eta_i, exts[z]).has_value();
          EXPECT_EQ(dom, comb) << gname << " len " << len << " f " << f << " z " << z;
          EXPECT_EQ(by_span, comb);
          ++checked;
        }
      }
    }
    EXPECT_GT(checked, 10);
  }
}

TEST(CoverInvariants, Examples) {
  auto split = fx::first_epi(cat("C2xC2"), cat("C2"));
  auto two = fiber_product(CoverFamily::make(cat("C2"), {split, split})).to_base;
  auto inv = cover_invariants(two);
  ASSERT_EQ(inv.ab.size(), 1u);
  EXPECT_EQ(inv.ab[0].supp_dim, 0);
  EXPECT_EQ(inv.ab[0].mult, 2);
  EXPECT_TRUE(inv.na.empty());

  auto c4 = cover_invariants(fx::cyc(4, 2));
  ASSERT_EQ(c4.ab.size(), 1u);
  EXPECT_EQ(c4.ab[0].supp_dim, 1);
  EXPECT_EQ(c4.ab[0].mult, 0);

  // indecomposable with non-abelian kernel: A5 ↠ 1
  auto a5 = group_from_permutations(5, {{1, 2, 0, 3, 4}, {1, 2, 3, 4, 0}}, "A5");
  auto na = cover_invariants(fx::to_trivial(a5));
  ASSERT_EQ(na.na.size(), 1u);
  EXPECT_EQ(na.na[0].mult, 1);
  EXPECT_TRUE(na.ab.empty());
}

TEST(CoverInvariants, NotFundamental) {
  try {
    cover_invariants(fx::cyc(4, 1));
    FAIL();
  } catch (const CoverError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFundamental);
  }
}

TEST(CompareCovers, Examples) {
  auto c4 = fx::cyc(4, 2);
  auto split = fx::first_epi(cat("C2xC2"), cat("C2"));
  auto i4 = cover_invariants(c4), iv = cover_invariants(split);
  EXPECT_TRUE(compare_covers(i4, i4).isomorphic);
  EXPECT_TRUE(compare_covers(i4, iv).incomparable());
  EXPECT_FALSE(dominates(c4, split));
  EXPECT_FALSE(dominates(split, c4));
  auto both = fiber_product(CoverFamily::make(cat("C2"), {c4, split})).to_base;
  auto ib = cover_invariants(both);
  auto cmp = compare_covers(ib, i4);
  EXPECT_TRUE(cmp.first_dominates_second);
  EXPECT_FALSE(cmp.second_dominates_first);
  EXPECT_TRUE(dominates(both, c4));
}

TEST(CompareCovers, AgreesWithWitnessSearch) {
  int pairs = 0, dom = 0;
  for (const auto& g : {"1", "C2", "C3", "C2xC2", "S3"}) {
    std::vector<GroupHom> fund;
    for (auto& e : fx::covers_of(cat(g), catalog_names(), 36))
      if (is_fundamental(e)) fund.push_back(e);
    std::vector<FundamentalInvariants> invs;
    for (const auto& f : fund) invs.push_back(cover_invariants(f));
    for (std::size_t i = 0; i < fund.size(); ++i)
      for (std::size_t j = 0; j < fund.size(); ++j) {
        auto c = compare_covers(invs[i], invs[j]);
        const bool d = dominates(fund[i], fund[j]).has_value();
        EXPECT_EQ(c.first_dominates_second, d) << fund[i].src->name() << " vs " << fund[j].src->name() << " over " << g;
        EXPECT_EQ(c.isomorphic, isomorphic_over_G(fund[i], fund[j]).has_value());
        ++pairs;
        dom += d;
      }
  }
  EXPECT_GT(pairs, 200);
  EXPECT_GT(dom, 50);
}

TEST(CoverInvariants, UniqueAcrossDecompositions) {
  auto s = fx::sign();
  std::vector<Elem> im(8);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b) im[a * 2 + b] = a % 2;
  std::vector<GroupHom> covers = {
      GroupHom::make(cat("C4xC2"), cat("C2"), im),
      fiber_product(CoverFamily::make(cat("C2"), {s, s})).to_base,
      fx::first_epi(cat("C2xC2xC2"), cat("C2")),
  };
  for (const auto& pi : covers) {
    ASSERT_TRUE(is_fundamental(pi));
    auto d0 = indecomposable_decomposition(pi, 0);
    auto i0 = cover_invariants(pi, d0);
    int distinct = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      auto d = indecomposable_decomposition(pi, seed);
      distinct += !(d.kernels == d0.kernels);
      EXPECT_TRUE(invariants_equal(i0, cover_invariants(pi, d)));
    }
    EXPECT_GT(distinct, 0) << pi.src->name();
  }
}

TEST(CoverInvariants, MultipleOfOneCaseTable) {
  // κ-fold powers of an abelian-kernel indecomposable η against fundamental π over C2
  std::vector<GroupHom> etas = {fx::cyc(4, 2), fx::first_epi(cat("C2xC2"), cat("C2"))};
  std::vector<GroupHom> pis;
  for (auto& e : fx::covers_of(cat("C2"), catalog_names(), 16))
    if (is_fundamental(e)) pis.push_back(e);
  int checked = 0;
  for (const auto& pi : pis) {
    auto inv = cover_invariants(pi);
    for (const auto& eta : etas) {
      auto x = extension_class(eta);
      int mult = 0;
      bool in_supp = false;
      for (const auto& e : inv.ab) {
        auto T = module_isomorphism(*x.module, *e.module);
        if (!T) continue;
        mult = e.mult;
        CocycleClass tx{e.module, apply_entrywise(*T, x.rep, e.module->dim(), e.module->prime())};
        in_supp = e.span().contains(tx);
      }
      for (int k = 0; k <= 3; ++k) {
        const bool expect = !in_supp ? k == 0 : (x.is_zero() ? k <= mult : k <= mult + 1);
        EXPECT_EQ(dominates(pi, power_cover(eta, k)).has_value(), expect)
            << pi.src->name() << " eta " << eta.src->name() << " k " << k;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 20);
}
