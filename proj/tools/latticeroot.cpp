#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "latticeroot/cli.hpp"

int main(int argc, char** argv) {
  using latticeroot::OutputFormat;
  CLI::App app{"Lattice cohomology, graded roots and Pin(2) invariants of plumbed 3-manifolds"};
  app.require_subcommand(1, 1);

  latticeroot::RunConfig cfg;
  std::int64_t max_level = 0;
  std::uint64_t budget = 0;
  const std::map<std::string, OutputFormat> formats{
      {"json", OutputFormat::json}, {"text", OutputFormat::text}, {"dot", OutputFormat::dot}, {"ascii", OutputFormat::ascii}};

  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "Check the plumbing graph and its intersection form"},
      {"spinc", "List spin-c orbits"},
      {"hm", "HM of the minus-boundary from lattice cohomology"},
      {"root", "Graded root (text, json, dot or ascii)"},
      {"pin2", "Pin(2) correction terms and HS module"},
      {"mubar", "Neumann-Siebenmann invariant and the parity invariant"},
      {"gysin", "Gysin decomposition into I0, I1, I2 summands"},
      {"seifert", "Plumbing graph of Seifert data"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.input, "Plumbing graph JSON (file path or inline)");
    sub->add_option("--seifert", cfg.seifert, "Seifert data JSON (file path or inline)");
    sub->add_option("--orbit", cfg.orbit, "all, self-conjugate, or an orbit index");
    sub->add_option("--max-level", max_level, "Highest level to enumerate");
    sub->add_option("--budget", budget, "Lattice point budget");
    sub->add_flag("--assume-conjecture", cfg.assume_conjecture,
                  "Use the lattice derived groups as A' in odd gradings");
    sub->add_option("--format", cfg.format, "json, text, dot or ascii")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : latticeroot::exit_code::bad_input;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (sub->count("--max-level")) cfg.max_level = max_level;
    if (sub->count("--budget")) cfg.budget = budget;
  }
  return latticeroot::run(cfg, std::cout, std::cerr);
}
