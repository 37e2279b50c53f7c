#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "kummerquartic.h"

int main(int argc, char** argv) {
  CLI::App app{"Kummer quartic surfaces, double solids, and their"
               " machine-checked certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string preset, params_file, field, format = "json", out_path;
  app.add_option("--preset", preset, "surface preset name");
  app.add_option("--params", params_file,
                 "JSON file with field and parameter expressions");
  app.add_option("--field", field, "field, e.g. Q, Q(i), Q(t), Q(z20)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--out", out_path, "write the report to a file");

  size_t trope = 1, base = 0;
  std::string group, block = "all";
  std::vector<int> signs;
  std::vector<std::string> relations, point, only;
  bool allow_radical = false, quartic_perms = false;

  app.add_subcommand("segre", "Segre relation residual");
  app.add_subcommand("nodes", "verify or search the 16 nodes");
  app.add_subcommand("tropes", "the 16 trope planes and their conics");
  auto* rc = app.add_subcommand("recover-curve",
                                "branch points, sextic, reduced group");
  rc->add_option("--trope", trope, "trope index, 1-based");
  auto* base_opt = rc->add_option("--base", base, "base node index, 0-based");
  auto* aut = app.add_subcommand("aut", "projective automorphism groups");
  aut->add_option("--group", group, "group preset name");
  aut->add_option("--relations", relations, "generator words to check");
  aut->add_flag("--quartic-perms", quartic_perms,
                "permutations of the six special quartics");
  auto* sheets = app.add_subcommand("sheets", "the 32 double-solid sheets");
  sheets->add_flag("--allow-radical", allow_radical,
                   "work in a quadratic extension when roots are missing");
  auto* gram = app.add_subcommand("gram", "sheet intersection Gram matrix");
  gram->add_option("--block", block, "sheet selection")
      ->check(CLI::IsMember({"all", "plus", "minus"}));
  gram->add_flag("--allow-radical", allow_radical);
  auto* cr = app.add_subcommand("class-rank",
                                "invariant class-group rank criteria");
  cr->add_option("--group", group, "group preset to lift");
  auto* signs_opt =
      cr->add_option("--signs", signs, "w-signs, one per generator");
  cr->add_flag("--allow-radical", allow_radical);
  app.add_subcommand("lines", "the 30 fixed lines");
  app.add_subcommand("quadrics", "the 10 semi-invariant quadrics");
  app.add_subcommand("incidence", "line/quadric incidence table");
  app.add_subcommand("orbits", "the 15 special length-4 orbits");
  auto* cp = app.add_subcommand("classify-point", "orbit-length trichotomy");
  cp->add_option("--point", point, "four coordinates")->expected(4);
  auto* vp = app.add_subcommand("verify-paper", "run the acceptance suite");
  vp->add_option("--only", only, "restrict to named criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc2 = app.exit(e);
    return rc2 == 0 ? 0 : KQ_PARSE_ERROR;
  }

  auto* sub = app.get_subcommands()[0];
  nlohmann::json config;
  if (!params_file.empty()) {
    std::ifstream in(params_file);
    if (!in) {
      std::cerr << "cannot open " << params_file << "\n";
      return KQ_PARSE_ERROR;
    }
    auto file = nlohmann::json::parse(in, nullptr, false);
    if (file.is_discarded() || !file.is_object()) {
      std::cerr << params_file << " is not a JSON object\n";
      return KQ_PARSE_ERROR;
    }
    config.update(file);
  }
  if (!preset.empty()) config["preset"] = preset;
  if (!field.empty()) config["field"] = field;
  config["format"] = format;
  if (sub == rc) {
    config["trope"] = trope;
    if (*base_opt) config["base"] = base;
  }
  if ((sub == aut || sub == cr) && !group.empty()) config["group"] = group;
  if (sub == aut) {
    if (!relations.empty()) config["relations"] = relations;
    if (quartic_perms) config["quartic-perms"] = true;
  }
  if (sub == gram) config["block"] = block;
  if (allow_radical) config["allow-radical"] = true;
  if (sub == cr && *signs_opt) config["signs"] = signs;
  if (sub == cp) config["point"] = point;
  if (sub == vp && !only.empty()) config["only"] = only;

  kq_context* ctx = kq_context_new();
  char* out = nullptr;
  int code = kq_run(ctx, sub->get_name().c_str(), config.dump().c_str(), &out);
  std::string text = out ? out : "";
  kq_string_free(out);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream of(out_path);
    of << text << "\n";
  }
  if (code != KQ_OK)
    std::cerr << "kq: " << kq_strerror(code)
              << (*kq_last_error(ctx) ? ": " : "") << kq_last_error(ctx)
              << "\n";
  kq_context_free(ctx);
  return code;
}
