#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "slint/cli.hpp"

using namespace slint;

int main(int argc, char** argv) {
  CLI::App app{"Entailment, interpolation and definability for semilattices with monotone operators"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string format, output = "text", sharing = "theta";
  std::string sigma;

  const std::map<std::string, cli::Command> commands{
      {"check", cli::Command::Check},
      {"interpolate", cli::Command::Interpolate},
      {"justify", cli::Command::Justify},
      {"beth", cli::Command::Beth},
      {"model-check", cli::Command::ModelCheck},
  };
  const std::map<std::string, std::string> help{
      {"check", "decide whether the goal follows"},
      {"interpolate", "compute an interpolating term or concept"},
      {"justify", "find a minimal set of axioms entailing the goal"},
      {"beth", "check implicit definability and extract an explicit definition"},
      {"model-check", "check a finite model against the laws, axioms and atoms"},
  };

  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("input", cfg.input, "input file (.slp, .elp or .model)")->required();
    sub->add_option("--format", format, "input format, overrides the file extension")
        ->check(CLI::IsMember({"slp", "elp", "model"}));
    sub->add_option("--output,-o", output, "report format")->check(CLI::IsMember({"text", "json"}));
    if (cmd == cli::Command::Check || cmd == cli::Command::Interpolate)
      sub->add_flag("--trace", cfg.trace, "show fired instances or separations");
    if (cmd == cli::Command::Interpolate) {
      sub->add_flag("!--no-verify", cfg.verify, "skip the certificate re-check");
      sub->add_flag("--justify-first", cfg.justify_first, "EL input: interpolate over a minimal sub-ontology");
    }
    if (cmd != cli::Command::ModelCheck && cmd != cli::Command::Justify)
      sub->add_option("--sharing", sharing, "which functions count as shared")
          ->check(CLI::IsMember({"theta", "intersection"}));
    if (cmd == cli::Command::Beth) {
      sub->add_option("--sigma", sigma, "comma-separated subsignature")->required();
      sub->add_option("--target", cfg.target, "constant to define")->required();
      sub->add_option("--model", cfg.model, "finite model for refuting explicit definitions");
      sub->add_option("--depth", cfg.depth, "term depth for the model refutation")
          ->capture_default_str()
          ->check(CLI::Range(0, 8));
    }
    sub->callback([&cfg, cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInputError;
  }

  if (!format.empty()) cfg.format = cli::parse_format(format);
  cfg.output = output == "json" ? cli::Output::Json : cli::Output::Text;
  cfg.sharing = sharing == "intersection" ? SharingMode::Intersection : SharingMode::Theta;
  std::size_t start = 0;
  while (start < sigma.size()) {
    std::size_t end = sigma.find(',', start);
    if (end == std::string::npos) end = sigma.size();
    std::string name = sigma.substr(start, end - start);
    if (!name.empty()) cfg.sigma.push_back(name);
    start = end + 1;
  }
  return cli::run(cfg, std::cout, std::cerr);
}
