// Serial vs OpenMP wall clock for run_all on a scenario config.
//
//   fairrank_bench [config.toml] [repeats]
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "fairrank/error.hpp"
#include "fairrank/io.hpp"
#include "fairrank/simulation.hpp"

namespace {

std::string bundle_bytes(const fairrank::RunBundle& b) {
  return b.missed_opportunity.to_csv() + b.rank_difference.to_csv() + b.skew.to_csv() + b.manifest_json;
}

}  // namespace

int main(int argc, char** argv) {
  using Clock = std::chrono::steady_clock;
  const std::string path = argc > 1 ? argv[1] : "configs/desk.toml";
  const int repeats = argc > 2 ? std::max(1, std::atoi(argv[2])) : 3;

  fairrank::ScenarioConfig config;
  try {
    config = fairrank::io::load_config(path);
  } catch (const fairrank::Error& e) {
    std::cerr << "ERROR " << fairrank::to_string(e.code()) << ": " << e.detail() << "\n";
    return 2;
  }

  std::string reference;
  double best[2] = {1e300, 1e300};
  for (int rep = 0; rep < repeats; ++rep) {
    for (int mode = 0; mode < 2; ++mode) {
      const auto exec = mode == 0 ? fairrank::Execution::Serial : fairrank::Execution::Parallel;
      const auto start = Clock::now();
      const auto bundle = fairrank::run_all(config, exec);
      best[mode] = std::min(best[mode], std::chrono::duration<double>(Clock::now() - start).count());
      const auto bytes = bundle_bytes(bundle);
      if (reference.empty()) reference = bytes;
      if (bytes != reference) {
        std::cerr << "serial and parallel outputs differ\n";
        return 1;
      }
    }
  }

  std::cout << std::fixed << std::setprecision(3);
  std::cout << "config    " << path << "\n";
  std::cout << "threads   " << omp_get_max_threads() << "\n";
  std::cout << "serial    " << best[0] << " s\n";
  std::cout << "parallel  " << best[1] << " s\n";
  std::cout << "speedup   " << best[0] / best[1] << "x\n";
  return 0;
}
