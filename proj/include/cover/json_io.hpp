#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cover/catalog.hpp"
#include "cover/cohomology.hpp"
#include "cover/cover_engine.hpp"
#include "cover/square.hpp"

namespace cover::io {

using nlohmann::json;

inline constexpr const char* kCatalogScheme = "catalog:";

[[noreturn]] inline void input_error(const std::string& what) { fail(ErrorKind::InvalidArgument, what); }

// ---------- writing ----------

inline json table_json(const GroupPtr& g) { return g->table_rows(); }

inline json group_json(const GroupPtr& g) {
  json j{{"name", g->name()}, {"order", g->order()}, {"table", table_json(g)}};
  if (auto c = catalog_name_of(g)) j["catalog"] = *c;
  return j;
}

// Catalog groups by URI, everything else inline.
inline json group_ref_json(const GroupPtr& g) {
  if (auto c = catalog_name_of(g)) return std::string(kCatalogScheme) + *c;
  return group_json(g);
}

inline json hom_json(const GroupHom& f) {
  return {{"src", group_ref_json(f.src)}, {"dst", group_ref_json(f.dst)}, {"images", f.images}};
}

inline json subgroup_json(const Subgroup& s) { return s.elements(); }

inline json square_json(const Square& s) {
  return {{"eta", hom_json(s.eta)}, {"beta", hom_json(s.beta)}, {"alpha", hom_json(s.alpha)}, {"phi", hom_json(s.phi)}};
}

inline json status_json(const SquareStatus& st) {
  json j{{"semi_cartesian", st.semi_cartesian}, {"cartesian", st.cartesian}};
  j["compact"] = st.compact ? json(*st.compact) : json(nullptr);
  j["witness"] = st.witness ? subgroup_json(*st.witness) : json(nullptr);
  return j;
}

inline json group_info_json(const GroupPtr& g) {
  json hist = json::object();
  for (Elem x = 0; x < g->order(); ++x) {
    const std::string k = std::to_string(g->elem_order(x));
    hist[k] = hist.value(k, 0) + 1;
  }
  return {{"name", g->name()},
          {"order", g->order()},
          {"abelian", g->is_abelian()},
          {"simple", is_simple_group(g)},
          {"center_order", center(g).order()},
          {"derived_order", derived_subgroup(g).order()},
          {"element_orders", hist},
          {"subgroups", g->subgroup_sets().size()},
          {"normal_subgroups", g->normal_subgroup_sets().size()}};
}

inline json quotients_json(const GroupPtr& g, const Limits& lim = {}) {
  json arr = json::array();
  for (const auto& t : quotient_types(g, lim))
    arr.push_back({{"kernel", subgroup_json(t.kernel)},
                   {"order", t.quotient.group->order()},
                   {"abelian", t.quotient.group->is_abelian()},
                   {"quotient", group_json(t.quotient.group)}});
  return {{"group", group_ref_json(g)}, {"count", arr.size()}, {"quotients", arr}};
}

inline json subgroups_json(const GroupPtr& g, bool normal_only) {
  json arr = json::array();
  for (const auto& s : subgroups(g, normal_only)) arr.push_back({{"order", s.order()}, {"elements", subgroup_json(s)}});
  return {{"group", group_ref_json(g)}, {"normal_only", normal_only}, {"count", arr.size()}, {"subgroups", arr}};
}

inline json homs_json(const GroupPtr& g, const GroupPtr& h, bool epi_only, const Limits& lim = {}) {
  json arr = json::array();
  for (const auto& f : enumerate_homs(g, h, epi_only, lim)) arr.push_back(f.images);
  return {{"src", group_ref_json(g)}, {"dst", group_ref_json(h)}, {"epi_only", epi_only}, {"count", arr.size()},
          {"images", arr}};
}

inline json module_json(const GModule& m) {
  return {{"group", group_ref_json(m.group())}, {"prime", m.prime()}, {"dim", m.dim()}, {"action", m.action()}};
}

inline json h2_json(const H2Space& h) {
  json basis = json::array();
  for (const auto& x : h.basis) basis.push_back(x.rep);
  return {{"module", module_json(*h.module)}, {"field_size", h.field.size()}, {"z2_dim", h.z2_dim},
          {"b2_dim", h.b2_dim},           {"dim_fp", h.dim_fp},             {"dim_fc", h.dim_fc},
          {"basis", basis}};
}

inline json sec_json(const SecResult& r) {
  json chain = json::array();
  for (const auto& s : r.chain) chain.push_back(square_json(s));
  return {{"base", group_ref_json(r.base)}, {"cover_group", group_json(r.group())}, {"cover_hom", hom_json(r.cover)},
          {"chain", chain},                 {"ep", r.ep_report.has_ep},            {"seed", r.seed}};
}

inline json classification_json(const CoverClassification& c) {
  json j{{"indecomposable", c.indecomposable}, {"fundamental", c.fundamental}, {"superbasic", c.superbasic},
         {"basic", c.basic},                   {"i_cover", c.i_cover}};
  j["basic_square"] = c.basic_square ? square_json(*c.basic_square) : json(nullptr);
  j["superbasic_square"] = c.superbasic_square ? square_json(*c.superbasic_square) : json(nullptr);
  j["i_cover_map"] = c.i_cover_map ? hom_json(*c.i_cover_map) : json(nullptr);
  return j;
}

// ---------- reading ----------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) input_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    input_error("malformed JSON in '" + path + "': " + e.what());
  }
}

/// Resolves group references and interns groups with identical tables, so
/// homs read from separate files share endpoint objects.
class GroupRegistry {
 public:
  explicit GroupRegistry(std::filesystem::path base_dir = ".") : base_(std::move(base_dir)) {}

  GroupPtr intern(GroupPtr g) {
    for (const auto& h : groups_)
      if (h->order() == g->order() && std::equal(h->flat_table().begin(), h->flat_table().end(), g->flat_table().begin()))
        return h;
    groups_.push_back(g);
    return g;
  }

  // "catalog:NAME", a path to a group file, or an inline object.
  GroupPtr group(const json& j) {
    if (j.is_string()) return group_ref(j.get<std::string>());
    if (!j.is_object()) input_error("group must be a string reference or an object");
    if (j.contains("catalog")) return intern(catalog_group(j.at("catalog").get<std::string>()));
    const std::string name = j.value("name", std::string("G"));
    try {
      if (j.contains("table")) return intern(group_from_table(j.at("table").get<std::vector<std::vector<int>>>(), name));
      if (j.contains("generators"))
        return intern(group_from_permutations(j.at("degree").get<int>(),
                                              j.at("generators").get<std::vector<Permutation>>(), name));
    } catch (const json::exception& e) {
      input_error(std::string("bad group object: ") + e.what());
    }
    input_error("group object needs 'table', 'generators' or 'catalog'");
  }

  GroupPtr group_ref(const std::string& ref) {
    if (ref.rfind(kCatalogScheme, 0) == 0) return intern(catalog_group(ref.substr(std::string(kCatalogScheme).size())));
    return group(read_json_file(resolve(ref)));
  }

  GroupHom hom(const json& j) {
    if (j.is_string()) {
      const std::string path = resolve(j.get<std::string>());
      GroupRegistry sub(std::filesystem::path(path).parent_path());
      sub.groups_ = groups_;
      GroupHom f = sub.hom(read_json_file(path));
      groups_ = sub.groups_;
      return f;
    }
    if (!j.is_object() || !j.contains("src") || !j.contains("dst") || !j.contains("images"))
      input_error("hom needs 'src', 'dst' and 'images'");
    GroupPtr src = group(j.at("src")), dst = group(j.at("dst"));
    std::vector<Elem> im;
    try {
      im = j.at("images").get<std::vector<Elem>>();
    } catch (const json::exception& e) {
      input_error(std::string("bad images: ") + e.what());
    }
    for (Elem y : im)
      if (y < 0 || y >= dst->order()) input_error("image index out of range");
    if (static_cast<int>(im.size()) != src->order()) input_error("images must have one entry per source element");
    return GroupHom::make(src, dst, std::move(im));
  }

  Square square(const json& j) {
    for (const char* k : {"eta", "beta", "alpha", "phi"})
      if (!j.contains(k)) input_error(std::string("square needs '") + k + "'");
    return Square::make(hom(j.at("eta")), hom(j.at("beta")), hom(j.at("alpha")), hom(j.at("phi")));
  }

  ModulePtr module(const json& j) {
    try {
      return GModule::make(group(j.at("group")), j.at("prime").get<int>(), j.at("dim").get<int>(),
                           j.at("action").get<std::vector<fp::Mat>>());
    } catch (const json::exception& e) {
      input_error(std::string("bad module: ") + e.what());
    }
  }

 private:
  std::string resolve(const std::string& p) const {
    std::filesystem::path q(p);
    if (q.is_relative() && !std::filesystem::exists(q)) q = base_ / q;
    return q.string();
  }

  std::filesystem::path base_;
  std::vector<GroupPtr> groups_;
};

}  // namespace cover::io
