// Command-line front end. Talks to the library only through the C interface.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ptlab/ptlab.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 1;

struct ConfigDeleter {
  void operator()(ptlab_config* c) const { ptlab_config_free(c); }
};
struct ResultDeleter {
  void operator()(ptlab_result* r) const { ptlab_result_free(r); }
};
using ConfigHandle = std::unique_ptr<ptlab_config, ConfigDeleter>;
using ResultHandle = std::unique_ptr<ptlab_result, ResultDeleter>;

int report(ptlab_status status) {
  std::cerr << "error: " << ptlab_last_error() << "\n";
  // unreadable config files count as config errors
  return status == PTLAB_ERR_IO ? kExitConfig : static_cast<int>(status);
}

ConfigHandle load(const std::string& path, int& exit_code) {
  ptlab_config* raw = nullptr;
  const auto status = ptlab_config_load(path.c_str(), &raw);
  if (status != PTLAB_OK) exit_code = report(status);
  return ConfigHandle(raw);
}

unsigned resolve_threads(int flag_value) {
  if (flag_value > 0) return static_cast<unsigned>(flag_value);
  if (const char* env = std::getenv("PTLAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid PTLAB_THREADS='" << env << "'\n";
  }
  return 1;
}

// Secondary tables go next to the primary file: out.csv -> out.<name>.csv.
std::filesystem::path sibling(const std::filesystem::path& primary, const std::string& name) {
  auto p = primary;
  const auto ext = primary.has_extension() ? primary.extension().string() : std::string(".csv");
  p.replace_filename(primary.stem().string() + "." + name + ext);
  return p;
}

bool write_file(const std::filesystem::path& path, const char* text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

int run_command(const std::string& config_path, const std::string& out_flag, int threads_flag) {
  int code = 0;
  auto config = load(config_path, code);
  if (!config) return code;

  ptlab_result* raw = nullptr;
  const auto status = ptlab_run(config.get(), resolve_threads(threads_flag), &raw);
  ResultHandle result(raw);
  if (!result) return report(status);

  std::string out_path = out_flag.empty() ? ptlab_config_output(config.get()) : out_flag;
  const size_t tables = ptlab_result_table_count(result.get());
  if (out_path.empty() || out_path == "-") {
    for (size_t i = 0; i < tables; ++i) {
      if (i) std::cout << '\n';
      std::cout << ptlab_result_table_csv(result.get(), i);
    }
    std::cout.flush();
  } else {
    const std::filesystem::path primary(out_path);
    for (size_t i = 0; i < tables; ++i) {
      const auto path = i == 0 ? primary : sibling(primary, ptlab_result_table_name(result.get(), i));
      if (!write_file(path, ptlab_result_table_csv(result.get(), i))) {
        std::cerr << "error: cannot write '" << path.string() << "'\n";
        return kExitIo;
      }
    }
  }
  if (status != PTLAB_OK) return report(status);
  return 0;
}

int validate_command(const std::string& config_path) {
  int code = 0;
  auto config = load(config_path, code);
  if (!config) return code;
  std::cout << "ok: scenario " << ptlab_config_scenario(config.get()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and pseudo-PT thresholds of modulated non-Hermitian lattices"};
  app.set_version_flag("--version", std::string("ptlab ") + ptlab_version());
  app.require_subcommand(1);

  std::string run_config;
  std::string out_path;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
  run->add_option("config", run_config, "Path to the JSON config")->required();
  run->add_option("--out", out_path, "Output CSV path (overrides the config; '-' for stdout)");
  run->add_option("--threads", threads, "Worker threads (fallback: PTLAB_THREADS, then 1)")
      ->check(CLI::PositiveNumber);

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Parse and validate a config file");
  validate->add_option("config", validate_config, "Path to the JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*run) return run_command(run_config, out_path, threads);
  if (*validate) return validate_command(validate_config);
  return kExitConfig;
}
