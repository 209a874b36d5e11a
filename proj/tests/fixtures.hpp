#pragma once

#include <string>
#include <vector>

#include "cover/catalog.hpp"
#include "cover/square.hpp"

namespace fx {

using namespace cover;

inline GroupPtr cat(const std::string& n) { return catalog_group(n); }

// The unique epimorphism onto a catalog target, or the first one found.
inline GroupHom first_epi(const GroupPtr& src, const GroupPtr& dst) {
  auto es = enumerate_homs(src, dst, true);
  if (es.empty()) throw std::runtime_error("no epimorphism " + src->name() + " -> " + dst->name());
  return es.front();
}

inline GroupHom sign() { return first_epi(cat("S3"), cat("C2")); }

// C_n ↠ C_m, x ↦ x mod m
inline GroupHom cyc(int n, int m) {
  auto src = cat("C" + std::to_string(n));
  auto dst = m == 1 ? cat("1") : cat("C" + std::to_string(m));
  std::vector<Elem> im(n);
  for (int i = 0; i < n; ++i) im[i] = i % m;
  return GroupHom::make(src, dst, im);
}

inline GroupHom to_trivial(const GroupPtr& g) { return trivial_hom(g, cat("1")); }

// Every epimorphism onto a quotient type of each group, as covers H ↠ G.
inline std::vector<GroupHom> covers_of(const GroupPtr& g, const std::vector<std::string>& sources, int max_order) {
  std::vector<GroupHom> out;
  for (const auto& s : sources) {
    auto h = cat(s);
    if (h->order() > max_order || h->order() % g->order() != 0) continue;
    for (auto& e : enumerate_homs(h, g, true)) out.push_back(std::move(e));
  }
  return out;
}

inline GroupHom between(const Quotient& from, const Quotient& to) {
  auto f = factor_through(from.map, to.map);
  if (!f) throw std::runtime_error("between: kernels not nested");
  return *f;
}

}  // namespace fx
