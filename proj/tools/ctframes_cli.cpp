// Batch experiment runner over the ctframes shared library. Talks to the
// library exclusively through the C interface.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ctframes.h"

namespace {

int status_to_exit_code(ctf_status s) {
  switch (s) {
    case CTF_OK: return 0;
    case CTF_ERR_CHECK_FAILED: return 1;
    case CTF_ERR_PARSE: return 2;
    case CTF_ERR_IO: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctframes: continuous-frame, multiplier and density-operator experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool quiet = false;
  CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "config file path")->required();
  run->add_option("--out", out_path, "report output path (overrides the config)");
  run->add_option("--format", format, "report format: json or csv (overrides the config)");
  run->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
    has_seed = true;
  });
  run->add_flag("--quiet", quiet, "do not print the report to stdout");

  std::string experiment;
  CLI::App* describe = app.add_subcommand("describe", "describe an experiment");
  describe->add_option("name", experiment, "experiment name")->required();

  CLI::App* list = app.add_subcommand("version", "print the library version");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << ctf_version() << "\n";
    return 0;
  }

  if (describe->parsed()) {
    char* text = nullptr;
    const ctf_status s = ctf_describe_experiment(experiment.c_str(), &text);
    if (s != CTF_OK) {
      std::cerr << "error: " << ctf_last_error() << "\n";
      return status_to_exit_code(s);
    }
    std::cout << text;
    ctf_string_free(text);
    return 0;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config file \"" << config_path << "\"\n";
    return 3;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string config = buffer.str();

  ctf_run_options options{};
  options.has_seed = has_seed ? 1 : 0;
  options.seed = seed;
  options.out_path = out_path.empty() ? nullptr : out_path.c_str();
  options.format = format.empty() ? nullptr : format.c_str();
  options.quiet = quiet ? 1 : 0;

  char* report = nullptr;
  const ctf_status s = ctf_run_experiment(config.c_str(), &options, &report);
  if (report) {
    if (!quiet) std::cout << report;
    ctf_string_free(report);
  }
  if (s != CTF_OK && s != CTF_ERR_CHECK_FAILED)
    std::cerr << "error: " << ctf_last_error() << "\n";
  return status_to_exit_code(s);
}
