/*
 * Copyright (c) 2026, the nbdll authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// bench: timed throughput runs with exact conservation checking.
//
//   bench --scenario ratio  --threads 4 --size 200 --ratio 5:5:90 \
//         --duration 4 --trials 15 --warmup 2 --seed 1 --csv out.csv
//   bench --scenario sorted --threads 8 --size 200 --duration 4 --csv -
//
// --instrument additionally aggregates the per-operation shared-memory
// counters (reads, writes, CAS by kind) and reports them via --json.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nbdll/bench.hpp"

namespace {

bool parseRatio(const std::string& s, nbdll::BenchConfig& cfg) {
  unsigned i = 0, d = 0, m = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> i >> c1 >> d >> c2 >> m) || c1 != ':' || c2 != ':') return false;
  if (i + d + m != 100) return false;
  cfg.insertPct = i;
  cfg.deletePct = d;
  cfg.movePct = m;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  nbdll::BenchConfig cfg;
  std::string ratio = "5:5:90";
  std::string csvPath, jsonPath;
  bool quiet = false;

  CLI::App app{
      "Throughput benchmark for the concurrent list. Every trial runs on a "
      "fresh list and is checked after quiescence: item conservation must be "
      "exact, and the sorted scenario's traversals strictly sorted."};
  app.add_option("--scenario", cfg.scenario, "ratio | sorted")
      ->check(CLI::IsMember({"ratio", "sorted"}))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--size", cfg.size,
                 "ratio: initial items; sorted: key range")
      ->capture_default_str();
  app.add_option("--ratio", ratio,
                 "insert:delete:move percentages (ratio scenario)")
      ->capture_default_str();
  app.add_option("--duration", cfg.durationSec, "Seconds per trial")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--trials", cfg.trials, "Measured trials")
      ->capture_default_str();
  app.add_option("--warmup", cfg.warmup, "Discarded leading trials")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Workload seed")->capture_default_str();
  app.add_option("--extra-move-left-prob", cfg.extraMoveLeftProb,
                 "Probability of a moveLeft right after each insertBefore")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--csv", csvPath, "Write per-trial CSV here ('-' = stdout)");
  app.add_option("--json", jsonPath,
                 "Write the full result as JSON here ('-' = stdout)");
  app.add_flag("--instrument", cfg.instrument,
               "Collect per-operation shared-memory counters");
  app.add_flag("--quiet", quiet, "No progress output");

  CLI11_PARSE(app, argc, argv);

  if (!parseRatio(ratio, cfg)) {
    std::cerr << "bench: --ratio must be i:d:m with i+d+m == 100\n";
    return 2;
  }

  try {
    nbdll::BenchResult r =
        nbdll::runBench(cfg, quiet ? nullptr : &std::cerr);

    if (!csvPath.empty()) {
      if (csvPath == "-") {
        nbdll::writeCsv(std::cout, r);
      } else {
        std::ofstream out(csvPath);
        if (!out) {
          std::cerr << "bench: cannot write " << csvPath << "\n";
          return 2;
        }
        nbdll::writeCsv(out, r);
      }
    }
    if (!jsonPath.empty()) {
      if (jsonPath == "-") {
        std::cout << r.toJson().dump(2) << "\n";
      } else {
        std::ofstream out(jsonPath);
        if (!out) {
          std::cerr << "bench: cannot write " << jsonPath << "\n";
          return 2;
        }
        out << r.toJson().dump(2) << "\n";
      }
    }
    if (!quiet) {
      std::cerr << "mean " << std::fixed << std::setprecision(0)
                << r.meanOpsPerSec() << " ops/s over " << r.trials.size()
                << " trials; conservation "
                << (r.conservationOk ? "exact" : "VIOLATED");
      if (cfg.scenario == "sorted")
        std::cerr << "; traversals "
                  << (r.sortedOk ? "strictly sorted" : "UNSORTED");
      std::cerr << "\n";
      if (!r.note.empty()) std::cerr << r.note << "\n";
    }
    return r.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 2;
  }
}
