// casimir: lateral Casimir force between corrugated plasma-model plates.
//
//   casimir rho --L 50,100,200,400 --k-max 0.03 --points 31
//   casimir force-vs-k --points 30 --out fig2.csv
//   casimir force-vs-L --L-min 100 --L-max 1200 --points 24
//   casimir plane-plane --lambda-p 1 --L 1000
//
// Exit status: 0 when every quadrature converged, 1 otherwise, 2 on usage
// errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "casimir/commands.hpp"
#include "casimir/run_config.hpp"

namespace {

void apply_thread_cap() {
  const char* env = std::getenv("CASIMIR_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    throw casimir::cli::UsageError("CASIMIR_THREADS must be a positive integer");
  }
  omp_set_num_threads(static_cast<int>(std::min<long>(n, omp_get_max_threads())));
}

const std::map<std::string, std::string>& flag_help() {
  static const std::map<std::string, std::string> help = {
      {"lambda-p", "plasma wavelength, nm (136)"},
      {"L", "separation, nm; a comma list for rho and force-vs-L"},
      {"lambda-c", "corrugation period, nm (1200)"},
      {"k", "corrugation wavenumber, nm^-1"},
      {"a1", "corrugation amplitude of the sphere, nm (59)"},
      {"a2", "corrugation amplitude of the plate, nm (8)"},
      {"b", "lateral mismatch, nm (quarter period)"},
      {"radius", "sphere radius, nm (1e5)"},
      {"rel-tol", "outer relative tolerance (1e-5)"},
      {"abs-tol", "outer absolute tolerance (0)"},
      {"max-depth", "bisection depth limit (30)"},
      {"max-subdivisions", "subdivision budget per integral (200)"},
      {"k-min", "lower end of the k range, nm^-1"},
      {"k-max", "upper end of the k range, nm^-1"},
      {"L-min", "lower end of the L range, nm (100)"},
      {"L-max", "upper end of the L range, nm (1200)"},
      {"fit-min", "power-law fit window start, nm (150)"},
      {"fit-max", "power-law fit window end, nm (300)"},
      {"points", "number of sweep points"},
      {"out", "output file (stdout)"},
  };
  return help;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lateral Casimir force between corrugated plasma-model plates"};
  std::string command;
  std::string config_path;
  bool log_spacing = false;
  std::map<std::string, std::string> values;

  app.add_option("command", command, "rho | force-vs-k | force-vs-L | plane-plane")
      ->required()
      ->check(CLI::IsMember(casimir::cli::command_names()));
  app.add_option("--config", config_path, "key = value file; flags override it");
  for (const auto& [key, help] : flag_help()) {
    app.add_option("--" + key, values[key], help);
  }
  app.add_flag("--log-spacing", log_spacing, "log-spaced sweep points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    apply_thread_cap();
    casimir::cli::RunConfig cfg;
    if (!config_path.empty()) cfg.load_file(config_path);
    cfg.command = command;
    for (const auto& [key, value] : values) {
      if (app.count("--" + key) > 0) cfg.apply(key, value);
    }
    if (log_spacing) cfg.log_spacing = true;

    bool converged = false;
    if (cfg.out.empty()) {
      converged = casimir::cli::run(cfg, std::cout);
      std::cout.flush();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw casimir::cli::UsageError("cannot open output file '" + cfg.out + "'");
      converged = casimir::cli::run(cfg, file);
      if (!file) {
        std::cerr << "error: write to '" << cfg.out << "' failed\n";
        return 1;
      }
    }
    if (!converged) {
      std::cerr << "warning: at least one integral did not converge within its budget\n";
      return 1;
    }
    return 0;
  } catch (const casimir::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
