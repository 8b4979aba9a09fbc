#include <CLI11.hpp>

#include <iostream>

#include "fixfnm/cli.hpp"

using fixfnm::cli::Command;
using fixfnm::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Fixed subgroups of endomorphisms of F_n x F_m"};
  app.require_subcommand(1);
  RunConfig config;
  app.add_flag("--json", config.json, "machine-readable output");
  app.add_option("--threads", config.threads, "threads for the oracle scan")
      ->check(CLI::Range(1u, 256u));

  std::string phi, psi;
  std::vector<std::string> declare;

  auto* classify = app.add_subcommand("classify", "type tag and payload of an endo file");
  classify->add_option("endo", phi)->required();

  auto* fix = app.add_subcommand("fix", "fixed subgroup descriptor of an endo file");
  fix->add_option("endo", phi)->required();

  auto* intersect = app.add_subcommand("intersect", "decide whether Fix(phi) and Fix(psi) meet");
  intersect->add_option("phi", phi)->required();
  intersect->add_option("psi", psi)->required();
  intersect->add_option("--declare", declare, "hom file and basis file of a declared Fix")
      ->expected(2)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  int radius = 0;
  auto* oracle = app.add_subcommand("oracle", "exhaustive common fixed points in a ball");
  oracle->add_option("phi", phi)->required();
  oracle->add_option("psi", psi)->required();
  oracle->add_option("--radius", radius)->required();

  auto* eq = app.add_subcommand("eq", "bounded equalizer search");
  eq->add_option("phi", phi)->required();
  eq->add_option("psi", psi)->required();
  eq->add_option("--radius", radius)->required();

  auto* mihailova = app.add_subcommand("mihailova", "Mihailova-style instance for a presentation");
  mihailova->add_option("presentation", phi)->required();
  mihailova->add_option("word", config.word)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fixfnm::cli::kExitUsage;
  }

  config.inputs.push_back(phi);
  if (!psi.empty()) config.inputs.push_back(psi);
  for (std::size_t i = 0; i + 1 < declare.size(); i += 2) {
    config.declarations.emplace_back(declare[i], declare[i + 1]);
  }
  if (classify->parsed()) config.command = Command::classify;
  if (fix->parsed()) config.command = Command::fix;
  if (intersect->parsed()) config.command = Command::intersect;
  if (oracle->parsed()) config.command = Command::oracle;
  if (eq->parsed()) config.command = Command::eq;
  if (mihailova->parsed()) config.command = Command::mihailova;
  if (oracle->parsed() || eq->parsed()) config.radius = radius;

  const auto result = fixfnm::cli::run(config);
  (result.exit_code >= fixfnm::cli::kExitUsage ? std::cerr : std::cout) << result.report;
  return result.exit_code;
}
