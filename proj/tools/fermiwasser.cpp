// Command-line front end; everything past flag parsing lives in fw::run.

#include "CLI11.hpp"
#include "fermiwasser/cli.hpp"

#include <iostream>
#include <map>

int main(int argc, char** argv) {
  CLI::App app{"Fermionic Wasserstein distances and detailed-balance checks"};
  app.require_subcommand(1);

  fw::RunConfig cfg;
  std::string cls = "Fsigmasigma";
  double tol_gap = 0.0, tol_feas = 0.0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--class", cls, "F, Fsigma or Fsigmasigma")
        ->check(CLI::IsMember({"F", "Fsigma", "Fsigmasigma"}));
    sub->add_option("--tol-gap", tol_gap, "absolute duality-gap tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-feas", tol_feas, "relative feasibility tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for the randomized suites");
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* distance = app.add_subcommand("distance", "W for every pair of systems in the input files");
  distance->add_option("inputs", cfg.inputs, "system JSON files")->required()->check(CLI::ExistingFile);
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", cfg.suites, "suite ids (default: all)");
  auto* fdb = app.add_subcommand("fdb", "detailed balance of B, deviation bounds for A against B");
  fdb->add_option("inputs", cfg.inputs, "[A] B system files")->required()->check(CLI::ExistingFile);
  auto* lattice = app.add_subcommand("lattice", "build and check a CAR lattice frame");
  lattice->add_option("input", cfg.inputs, "lattice JSON file")->check(CLI::ExistingFile);
  int k = 0;
  auto* k_opt = lattice->add_option("--k", k, "lattice size when no file is given")->check(CLI::Range(1, 3));
  auto* report = app.add_subcommand("report", "validation summary of systems");
  report->add_option("inputs", cfg.inputs, "system JSON files")->required()->check(CLI::ExistingFile);
  for (auto* sub : {distance, verify, fdb, lattice, report}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fw::kExitConfig;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.cls = fw::parse_class(cls);
  if (tol_gap > 0) cfg.tol_gap = tol_gap;
  if (tol_feas > 0) cfg.tol_feas = tol_feas;
  if (k_opt->count() > 0) cfg.lattice_k = k;
  return fw::run(cfg, std::cout, std::cerr);
}
