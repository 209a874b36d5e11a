#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cover/cover.hpp"

using namespace cover;
using cover::io::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kNonCommuting = 3, kCap = 4 };

void emit(const json& j, const std::string& out = {}) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + out + "'");
  f << j.dump(2) << "\n";
}

GroupHom read_hom(io::GroupRegistry& reg, const std::string& path) { return reg.hom(json(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite cover calculus: squares, cohomology, embedding covers"};
  app.require_subcommand(1);

  Limits lim = Limits::from_env();
  io::GroupRegistry reg;
  std::function<int()> action;

  // group
  auto* group = app.add_subcommand("group", "inspect a finite group");
  group->require_subcommand(1);
  std::string gref, gref2;
  bool normal_only = false, all_homs = false;
  group->add_subcommand("info", "order, abelian, simple, ...")->add_option("group", gref)->required();
  group->add_subcommand("quotients", "normal subgroups and quotient classes")->add_option("group", gref)->required();
  auto* subs = group->add_subcommand("subgroups", "all subgroups");
  subs->add_option("group", gref)->required();
  subs->add_flag("--normal", normal_only, "normal subgroups only");
  auto* homs = group->add_subcommand("homs", "homomorphisms G -> H (epimorphisms by default)");
  homs->add_option("src", gref)->required();
  homs->add_option("dst", gref2)->required();
  homs->add_flag("--all", all_homs, "include non-surjective homomorphisms");
  group->final_callback([&] {
    action = [&] {
      GroupPtr g = reg.group_ref(gref);
      const std::string sub = group->get_subcommands().front()->get_name();
      if (sub == "info") emit(io::group_info_json(g));
      if (sub == "quotients") emit(io::quotients_json(g, lim));
      if (sub == "subgroups") emit(io::subgroups_json(g, normal_only));
      if (sub == "homs") emit(io::homs_json(g, reg.group_ref(gref2), !all_homs, lim));
      return kOk;
    };
  });

  // square
  auto* square = app.add_subcommand("square", "classify a commutative square eta, beta, alpha, phi");
  std::vector<std::string> hom_files;
  std::string square_file;
  square->add_option("homs", hom_files, "eta beta alpha phi hom files")->expected(4);
  square->add_option("--file", square_file, "one square file");
  square->final_callback([&] {
    action = [&] {
      Square s = [&] {
        if (!square_file.empty()) {
          io::GroupRegistry sub(std::filesystem::path(square_file).parent_path());
          return sub.square(io::read_json_file(square_file));
        }
        if (hom_files.size() != 4) fail(ErrorKind::InvalidArgument, "square needs four hom files or --file");
        return Square::make(read_hom(reg, hom_files[0]), read_hom(reg, hom_files[1]), read_hom(reg, hom_files[2]),
                            read_hom(reg, hom_files[3]));
      }();
      emit(io::status_json(square_classify(s)));
      return kOk;
    };
  });

  // fiber
  auto* fiber = app.add_subcommand("fiber", "fiber product of covers of one group");
  std::vector<std::string> legs;
  fiber->add_option("legs", legs, "hom files H_i -> G")->required();
  fiber->final_callback([&] {
    action = [&] {
      std::vector<GroupHom> hs;
      for (const auto& f : legs) hs.push_back(read_hom(reg, f));
      auto fp = fiber_product(CoverFamily::make(hs.front().dst, hs), lim);
      json projections = json::array();
      for (const auto& p : fp.projections) projections.push_back(io::hom_json(p));
      emit({{"group", io::group_json(fp.group)}, {"to_base", io::hom_json(fp.to_base)}, {"projections", projections},
            {"tuples", fp.tuples}});
      return kOk;
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "indecomposable / fundamental / basic / superbasic / I-cover");
  std::string cover_file;
  std::uint64_t classify_seed = 0;
  classify->add_option("cover", cover_file, "hom file H -> G")->required();
  classify->add_option("--seed", classify_seed, "seed for the smallest embedding cover");
  classify->final_callback([&] {
    action = [&] {
      GroupHom eta = read_hom(reg, cover_file);
      emit(io::classification_json(classify_cover(eta, smallest_embedding_cover(eta.dst, classify_seed, lim), lim)));
      return kOk;
    };
  });

  // h2
  auto* h2 = app.add_subcommand("h2", "second cohomology with coefficients in a simple module");
  std::string h2_group, kernel_of;
  int prime = 0;
  h2->add_option("group", h2_group, "group with trivial F_p action");
  h2->add_option("--prime", prime, "prime p for the trivial module");
  h2->add_option("--kernel-of", kernel_of, "hom file whose kernel is the module");
  h2->final_callback([&] {
    action = [&] {
      ModulePtr m;
      if (!kernel_of.empty()) {
        m = module_from_kernel(read_hom(reg, kernel_of)).module;
      } else {
        if (h2_group.empty() || prime < 2) fail(ErrorKind::InvalidArgument, "h2 needs a group and --prime, or --kernel-of");
        m = trivial_module(reg.group_ref(h2_group), prime);
      }
      emit(io::h2_json(h2_space(m, lim)));
      return kOk;
    };
  });

  // sec
  auto* sec = app.add_subcommand("sec", "smallest embedding cover");
  std::string sec_group, sec_out;
  std::uint64_t seed = 0;
  sec->add_option("group", sec_group)->required();
  sec->add_option("--seed", seed, "0 takes the first unsolvable problem, others pick at random");
  sec->add_option("--max-order", lim.max_order, "order cap");
  sec->add_option("--max-iters", lim.max_iters, "step cap");
  sec->add_option("--out", sec_out, "write the result here instead of stdout");
  sec->final_callback([&] {
    action = [&] {
      try {
        emit(io::sec_json(smallest_embedding_cover(reg.group_ref(sec_group), seed, lim)), sec_out);
        return kOk;
      } catch (const SecAborted& e) {
        json j = io::sec_json(e.partial());
        j["aborted"] = e.what();
        emit(j, sec_out);
        std::cerr << "cover: " << e.what() << "\n";
        return kCap;
      }
    };
  });

  // verify-paper
  auto* verify = app.add_subcommand("verify-paper", "replay every finite check");
  std::string filter, format = "table";
  double budget = -1;
  verify->add_option("--filter", filter, "substring of check id or anchor");
  verify->add_option("--budget", budget, "wall-clock seconds; 0 skips every check, negative is unlimited");
  verify->add_option("--format", format, "table or jsonl")->check(CLI::IsMember({"table", "jsonl"}));
  verify->final_callback([&] {
    action = [&] {
      auto rep = verify::run_suite(filter, budget, lim);
      std::cout << (format == "jsonl" ? verify::render_jsonl(rep) : verify::render_table(rep));
      return rep.ok() ? kOk : kVerifyFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    return action();
  } catch (const CoverError& e) {
    std::cerr << "cover: " << e.what() << "\n";
    if (e.kind() == ErrorKind::NonCommuting) return kNonCommuting;
    return e.is_cap() ? kCap : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "cover: " << e.what() << "\n";
    return kInputError;
  }
}
