// fpn: resolutions and finiteness checks for graded algebras and finite monoids.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "fpn/cli/commands.hpp"

namespace {

void add_common(CLI::App* sub, fpn::cli::JobConfig& c, bool with_input) {
  if (with_input) sub->add_option("input", c.input, "input file (.alg, .mon or .ret)")->required()->check(CLI::ExistingFile);
  sub->add_option("--field", c.field, "Q or GF(p); overrides the file's field line");
  sub->add_option("--degree-bound,-D", c.degree_bound, "internal degree cutoff D")->capture_default_str();
  sub->add_option("--hom-bound,-n", c.hom_bound, "homological length n")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for randomized checks")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fpn::cli;
  CLI::App app{"fpn: homological finiteness of graded algebras, monoids and groups"};
  app.require_subcommand(1);
  JobConfig c;
  std::map<std::string, Format> formats{{"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", c.format, "table, json or csv")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  auto* resolve = app.add_subcommand("resolve", "resolve K (left, right, weak-bi) or the ring itself (bi)");
  add_common(resolve, c, true);
  resolve->add_option("--side", c.side, "left, right, weak-bi or bi")
      ->check(CLI::IsMember({"left", "right", "weak-bi", "bi"}))
      ->capture_default_str();

  auto* bires = app.add_subcommand("group-bires", "bimodule resolution of a finite group ring");
  add_common(bires, c, true);

  auto* retract = app.add_subcommand("retract", "transport a resolution along a retraction");
  add_common(retract, c, true);

  auto* verify = app.add_subcommand("verify", "run the built-in fixtures");
  add_common(verify, c, false);
  std::map<std::string, fpn::VerifyLevel> levels{{"fast", fpn::VerifyLevel::fast}, {"exhaustive", fpn::VerifyLevel::exhaustive}};
  verify->add_option("--level", c.level, "fast or exhaustive")->transform(CLI::CheckedTransformer(levels, CLI::ignore_case));
  verify->add_option("--fixture", c.fixtures, "run only the named fixture (repeatable)");

  // --format is accepted after the subcommand too.
  for (auto* sub : {resolve, bires, retract, verify})
    sub->add_option("--format", c.format, "table, json or csv")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::error;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    auto report = run(c);
    std::cout << render(report.json, c.format);
    return report.exit;
  } catch (const fpn::ParseError& e) {
    std::cerr << "fpn: parse error: " << e.what() << '\n';
    if (c.format == Format::json) std::cout << error_json(c.command, "parse", e.what()).dump(2) << '\n';
  } catch (const fpn::ValidationError& e) {
    std::cerr << "fpn: validation failed: " << e.what() << '\n';
    if (c.format == Format::json) std::cout << error_json(c.command, "validation", e.what()).dump(2) << '\n';
  } catch (const fpn::Unsupported& e) {
    std::cerr << "fpn: unsupported input: " << e.what() << '\n';
    if (c.format == Format::json) std::cout << error_json(c.command, "unsupported", e.what()).dump(2) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "fpn: error: " << e.what() << '\n';
    if (c.format == Format::json) std::cout << error_json(c.command, "error", e.what()).dump(2) << '\n';
  }
  return exit_code::error;
}
