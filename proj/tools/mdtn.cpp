// mdtn: runs one verification suite and writes <output>/<command>.csv.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mdtn/cli.hpp"
#include "mdtn/error.hpp"

namespace {

struct Flags {
  std::string config;
  std::string output_dir;
  int threads = 0;
  long long seed = -1;
};

int dispatch(mdtn::Command command, const Flags& f) {
  try {
    mdtn::KeyValueConfig kv = f.config.empty() ? mdtn::KeyValueConfig{} : mdtn::KeyValueConfig::load(f.config);
    mdtn::RunOverrides o;
    if (!f.output_dir.empty()) o.output_dir = f.output_dir;
    if (f.threads > 0) o.threads = f.threads;
    if (f.seed >= 0) o.seed = static_cast<std::uint64_t>(f.seed);
    if (const char* env = std::getenv("MDTN_TOLERANCE")) o.tolerance = mdtn::parse_number(env, "MDTN_TOLERANCE");
    const mdtn::RunConfig cfg = mdtn::resolve_config(command, kv, o);
    const mdtn::RunOutput out = mdtn::run_suite(cfg);
    for (const auto& line : out.summary) std::cout << line << "\n";
    if (out.status == 2) return 2;
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / (std::string(mdtn::command_name(command)) + ".csv");
    std::ofstream file(path, std::ios::binary);
    file << out.csv;
    if (!file) {
      std::cerr << "cannot write " << path.string() << "\n";
      return 2;
    }
    std::cout << "wrote " << path.string() << "\n";
    return out.status;
  } catch (const mdtn::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical Maxwell DtN parametrix: verification suites.\n"
               "Exit status: 0 all checks pass, 1 a check failed, 2 configuration or precondition error.\n"
               "MDTN_TOLERANCE overrides the built-in default tolerance of identities, eikonal (plane chart)\n"
               "and residual when the config file does not set one."};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<mdtn::Command, const char*> commands[] = {
      {mdtn::Command::Identities, "algebraic identities at random cotangent points"},
      {mdtn::Command::Eikonal, "order of the eikonal residual in x1"},
      {mdtn::Command::Residual, "transport hierarchy coefficients, boundary condition, normalization"},
      {mdtn::Command::DtnCompare, "per-mode DtN errors against the exact ball impedances, h sweep"},
      {mdtn::Command::TeScan, "transmission eigenvalue scan of the parabolic region"},
      {mdtn::Command::Quantizer, "torus quantization estimates"},
  };
  std::vector<std::pair<CLI::App*, mdtn::Command>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(mdtn::command_name(cmd), help);
    sub->add_option("-c,--config", flags.config, "key-value config file")->check(CLI::ExistingFile);
    sub->add_option("-o,--output-dir", flags.output_dir, "directory for the CSV report (default: config 'output' or .)");
    sub->add_option("-j,--threads", flags.threads, "worker threads (default: config 'threads' or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "seed for random test points (default: config 'seed' or 1)")
        ->check(CLI::NonNegativeNumber);
    subs.emplace_back(sub, cmd);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) return dispatch(cmd, flags);
  }
  return 2;
}
