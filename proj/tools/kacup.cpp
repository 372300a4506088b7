// kacup: verification and minimizer search for finite Kac algebras.
#include <CLI11.hpp>

#include <iostream>

#include "kac/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty principles on finite Kac algebras"};
  app.require_subcommand(1);

  kac::RunConfig config;
  double eq_tol = config.tol.eq_tol;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--algebra", config.algebra,
                    "zn:N, zn-group:N, s3|d4|q8-function, s3|d4|q8-group, file:PATH, table:PATH, table-group:PATH")
        ->required();
    cmd->add_option("--element", config.elements, "element JSON file (repeatable)");
    cmd->add_option("--seed", config.seed, "random seed");
    cmd->add_option("--tol", eq_tol, "equality tolerance");
    cmd->add_option("--out", config.out, "output directory");
    cmd->add_option("--suite", config.suite, "axioms, inequalities, minimizers, hardy or all")
        ->check(CLI::IsMember({"axioms", "inequalities", "minimizers", "hardy", "all"}));
  };

  auto* verify = app.add_subcommand("verify", "axioms and inequality suite");
  add_common(verify);
  verify->add_option("--samples", config.samples, "random elements for the inequality suite")
      ->check(CLI::PositiveNumber);

  auto* minimizers = app.add_subcommand("minimizers", "biprojections, bi-shifts and minimizer verdicts");
  add_common(minimizers);
  minimizers->add_option("--random", config.random, "random non-minimizers to classify")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    config.tol = kac::ToleranceConfig::with_eq_tol(eq_tol);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  if (*verify) return kac::cmd_verify(config, std::cout);
  return kac::cmd_minimizers(config, std::cout);
}
