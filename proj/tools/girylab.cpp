#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "girylab/suites.hpp"

namespace {

using girylab::Errc;
using girylab::Error;
using girylab::Json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) girylab::raise(Errc::parse_error, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

girylab::DistFamily family_from_json(const Json& j) {
  if (!j.is_object()) girylab::raise(Errc::parse_error, "family must be an object");
  if (j.value("default", "") == "dirac" && j.size() == 1) return girylab::dirac_family();
  std::map<std::uint64_t, girylab::Dist> table;
  for (const auto& [key, value] : j.items()) {
    if (key == "default") continue;
    table.emplace(std::stoull(key), girylab::dist_from_json(value));
  }
  const bool dirac_default = j.value("default", "") == "dirac";
  return [table = std::move(table), dirac_default](std::uint64_t i) -> std::optional<girylab::Dist> {
    if (const auto it = table.find(i); it != table.end()) return it->second;
    if (dirac_default) return girylab::Dist::dirac(i);
    return std::nullopt;
  };
}

int run_check(const std::vector<std::string>& suites, const girylab::SuiteConfig& cfg,
              const std::string& json_path) {
  const std::vector<std::string>& selected = suites.empty() ? girylab::suite_names() : suites;
  const std::vector<girylab::LawReport> reports = girylab::run_suites(selected, cfg);
  Json all = Json::array();
  bool ok = true;
  for (const girylab::LawReport& r : reports) {
    all.push_back(girylab::report_to_json(r));
    std::cout << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << " (cases=" << r.cases
              << ", failures=" << r.failures.size() << ", " << static_cast<long>(r.wall_ms)
              << " ms)\n";
    for (const Json& f : r.failures) std::cout << "  " << f.dump() << "\n";
    ok = ok && r.pass();
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) girylab::raise(Errc::bad_config, "cannot write " + json_path);
    out << all.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int run_eval(const std::string& path) {
  const Json doc = girylab::parse_json_text(slurp(path));
  if (!doc.is_object() || !doc.contains("op") || !doc["op"].is_string())
    girylab::raise(Errc::parse_error, "expression files carry an \"op\" string");
  const std::string op = doc["op"].get<std::string>();

  const auto dist_arg = [&doc](const char* key = "dist") {
    if (!doc.contains(key)) girylab::raise(Errc::parse_error, std::string("missing ") + key);
    return girylab::dist_from_json(doc[key]);
  };

  if (op == "dirac") {
    if (!doc.contains("index") || !doc["index"].is_number_unsigned())
      girylab::raise(Errc::parse_error, "dirac needs an unsigned \"index\"");
    std::cout << girylab::dist_to_json(girylab::Dist::dirac(doc["index"].get<std::uint64_t>())).dump()
              << "\n";
  } else if (op == "eps_N" || op == "min_support") {
    std::cout << girylab::min_support(dist_arg()) << "\n";
  } else if (op == "ev") {
    std::cout << girylab::ev(girylab::natset_from_json(doc.at("set")), dist_arg()).str() << "\n";
  } else if (op == "join") {
    std::cout << girylab::dist_to_json(girylab::join(girylab::dist_over_dist_from_json(doc))).dump()
              << "\n";
  } else if (op == "pushforward") {
    std::cout << girylab::dist_to_json(
                     girylab::pushforward(girylab::natmap_from_json(doc.at("map")), dist_arg()))
                     .dump()
              << "\n";
  } else if (op == "convex_combine") {
    std::cout << girylab::dist_to_json(
                     girylab::convex_combine(dist_arg(), family_from_json(doc.at("family"))))
                     .dump()
              << "\n";
  } else if (op == "affine_sum") {
    if (!doc.contains("space") || !doc["space"].is_string())
      girylab::raise(Errc::parse_error, "affine_sum needs a \"space\" name");
    const girylab::Space sp = girylab::builtin_space(doc["space"].get<std::string>());
    const girylab::Elem value =
        girylab::affine_sum(sp, dist_arg(), girylab::seqmap_from_json(doc.at("seq")));
    std::cout << girylab::elem_to_json(value).dump() << "\n";
  } else if (op == "barycenter") {
    if (!doc.contains("algebra") || !doc["algebra"].is_string())
      girylab::raise(Errc::parse_error, "barycenter needs an \"algebra\" name");
    const girylab::Algebra alg = girylab::builtin_algebra(doc["algebra"].get<std::string>());
    const girylab::Elem value = alg.action(girylab::carrier_dist_from_json(doc.at("measure")));
    std::cout << girylab::elem_to_json(value).dump() << "\n";
  } else if (op == "amp_min_support") {
    std::cout << girylab::amp_min_support(girylab::amp_from_json(doc)) << "\n";
  } else if (op == "l2_to_l1") {
    std::cout << girylab::dist_to_json(girylab::l2_to_l1(girylab::amp_from_json(doc))).dump()
              << "\n";
  } else if (op == "amp_combine") {
    std::cout << girylab::amp_combine(girylab::amp_from_json(doc),
                                      family_from_json(doc.at("family")),
                                      girylab::natset_from_json(doc.at("set")))
                     .str()
              << "\n";
  } else {
    girylab::raise(Errc::parse_error, "unknown op '" + op + "'");
  }
  return 0;
}

int run_refine(const std::string& tree_path, const std::string& script_path) {
  girylab::RefinementTree tree = girylab::tree_from_json(girylab::parse_json_text(slurp(tree_path)));
  if (!script_path.empty()) {
    const Json script = girylab::parse_json_text(slurp(script_path));
    if (!script.is_object() || !script.contains("splits") || !script["splits"].is_array())
      girylab::raise(Errc::parse_error, "scripts carry a \"splits\" array");
    for (const Json& s : script["splits"]) {
      std::vector<std::string> left, right;
      for (const Json& p : s.at("left")) left.push_back(p.get<std::string>());
      for (const Json& p : s.at("right")) right.push_back(p.get<std::string>());
      tree = tree.refine(s.at("atom").get<std::uint64_t>(), left, right);
    }
  }

  std::cout << girylab::tree_to_json(tree).dump() << "\n";
  for (std::size_t level = 1; level + 1 <= tree.depth(); ++level) {
    std::cout << "phi level " << level + 1 << " -> " << level << ":";
    for (const std::uint64_t v : tree.collapse(level)) std::cout << " " << v;
    std::cout << "\n";
  }
  bool ok = true;
  std::uint64_t squares = 0;
  for (std::size_t level = 1; level + 1 <= tree.depth(); ++level) {
    for (const std::string& point : tree.points()) {
      const girylab::CheckResult out = girylab::check_refinement_diagram(tree, level, point);
      ++squares;
      if (!out.pass) {
        std::cout << "FAIL " << out.witness << "\n";
        ok = false;
      }
    }
  }
  std::cout << "squares: " << squares << (ok ? " all commute" : " with failures") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact law checking for countably supported probability measures"};
  app.require_subcommand(1);

  girylab::SuiteConfig cfg;
  if (const char* env_seed = std::getenv("GIRYLAB_SEED")) cfg.seed = std::strtoull(env_seed, nullptr, 10);

  std::vector<std::string> suites;
  std::string json_path;
  CLI::App* check = app.add_subcommand("check", "run law suites");
  check->add_option("--suite", suites, "suite name (repeatable); all suites when omitted");
  check->add_option("--grid", cfg.grid_den, "weight grid denominator bound");
  check->add_option("--random", cfg.random_cases, "randomized cases per suite");
  check->add_option("--seed", cfg.seed, "random seed (GIRYLAB_SEED as fallback)");
  check->add_option("--cap", cfg.enumeration_cap, "tail enumeration cap");
  check->add_option("--n", cfg.ns_bound, "exhaustive endofunction bound");
  check->add_option("--json", json_path, "write the full report to this path");

  std::string eval_path;
  CLI::App* eval = app.add_subcommand("eval", "evaluate an expression file");
  eval->add_option("file", eval_path, "expression JSON file")->required();

  std::string tree_path, script_path;
  CLI::App* refine = app.add_subcommand("refine", "apply refinement scripts and check the diagrams");
  refine->add_option("tree", tree_path, "tree JSON file")->required();
  refine->add_option("--script", script_path, "additional splits to apply");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(suites, cfg, json_path);
    if (eval->parsed()) return run_eval(eval_path);
    if (refine->parsed()) return run_refine(tree_path, script_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::parse_error:
      case Errc::unknown_suite:
      case Errc::unknown_space:
      case Errc::unknown_algebra:
      case Errc::bad_config:
        return 2;
      default:
        return refine->parsed() ? 2 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
