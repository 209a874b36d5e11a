#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cover/group.hpp"

namespace cover {

namespace detail {

struct CatalogEntry {
  std::string name;
  std::string recipe;
  std::function<GroupPtr()> build;
};

inline GroupPtr perm_group(int degree, std::vector<Permutation> gens, const std::string& name) {
  return group_from_permutations(degree, gens, name);
}

inline GroupPtr product_of(const std::vector<GroupPtr>& fs, const std::string& name) {
  GroupPtr g = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i)
    g = direct_product(g, fs[i], {}, i + 1 == fs.size() ? name : std::string{}).group;
  return g;
}

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    auto s3 = [] { return perm_group(3, {{1, 0, 2}, {1, 2, 0}}, "S3"); };
    auto c = [](int n) { return [n] { return cyclic_group(n); }; };
    std::vector<CatalogEntry> v;
    v.push_back({"1", "trivial group", [] { return trivial_group(); }});
    for (int n : {2, 3, 4, 5, 6, 8, 9}) v.push_back({"C" + std::to_string(n), "Z/" + std::to_string(n), c(n)});
    v.push_back({"C2xC2", "C2 x C2", [] { return product_of({cyclic_group(2), cyclic_group(2)}, "C2xC2"); }});
    v.push_back({"C2xC3", "C2 x C3", [] { return product_of({cyclic_group(2), cyclic_group(3)}, "C2xC3"); }});
    v.push_back({"C4xC2", "C4 x C2", [] { return product_of({cyclic_group(4), cyclic_group(2)}, "C4xC2"); }});
    v.push_back({"C2xC2xC2", "C2 x C2 x C2",
                 [] { return product_of({cyclic_group(2), cyclic_group(2), cyclic_group(2)}, "C2xC2xC2"); }});
    v.push_back({"C3xC3", "C3 x C3", [] { return product_of({cyclic_group(3), cyclic_group(3)}, "C3xC3"); }});
    v.push_back({"S3", "<(0 1), (0 1 2)> on 3 points", s3});
    v.push_back({"S3xC2", "S3 x C2", [s3] { return product_of({s3(), cyclic_group(2)}, "S3xC2"); }});
    v.push_back({"C2xS3", "C2 x S3", [s3] { return product_of({cyclic_group(2), s3()}, "C2xS3"); }});
    v.push_back({"S3xS3", "S3 x S3", [s3] { return product_of({s3(), s3()}, "S3xS3"); }});
    v.push_back({"D4", "<(0 1 2 3), (1 3)> on 4 points", [] { return perm_group(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}, "D4"); }});
    v.push_back({"Q8", "regular <(0 1 2 3)(4 5 6 7), (0 4 2 6)(1 7 3 5)>",
                 [] { return perm_group(8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}}, "Q8"); }});
    v.push_back({"A4", "<(0 1 2), (0 1)(2 3)> on 4 points",
                 [] { return perm_group(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4"); }});
    return v;
  }();
  return entries;
}

}  // namespace detail

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : detail::catalog_entries()) out.push_back(e.name);
  return out;
}

/// Built-in group by name. Repeated lookups return the same object, so
/// catalog groups compare equal by reference.
inline GroupPtr catalog_group(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, GroupPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  for (const auto& e : detail::catalog_entries())
    if (e.name == name) return cache[name] = e.build();
  fail(ErrorKind::InvalidArgument, "unknown catalog group '" + name + "'");
}

/// Name of g if it is the catalog object itself (not merely isomorphic).
inline std::optional<std::string> catalog_name_of(const GroupPtr& g) {
  for (const auto& e : detail::catalog_entries())
    if (e.name == g->name()) return catalog_group(e.name) == g ? std::optional<std::string>(e.name) : std::nullopt;
  return std::nullopt;
}

inline std::string catalog_recipe(const std::string& name) {
  for (const auto& e : detail::catalog_entries())
    if (e.name == name) return e.recipe;
  fail(ErrorKind::InvalidArgument, "unknown catalog group '" + name + "'");
}

}  // namespace cover
