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

// lincheck: exhaustive linearizability checking.
//
//   lincheck run --scenario <name>   explore one catalog scenario (or --all)
//   lincheck list                    show the catalog
//   lincheck check <history-file>    check a recorded history (JSON lines)

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nbdll/lincheck.hpp"
#include "nbdll/scenarios.hpp"

namespace {

int runCommand(const std::string& name, bool all, unsigned maxPreemptions,
               std::uint64_t maxSchedules, bool noMonitor, bool noLin,
               std::uint64_t budget, bool json) {
  using namespace nbdll;
  SuiteOptions opt;
  opt.bounds.maxPreemptions = maxPreemptions;
  opt.bounds.maxSchedules = maxSchedules;
  opt.monitor = !noMonitor;
  opt.linearizability = !noLin;
  opt.linBudget = budget;
  opt.log = json ? nullptr : &std::cerr;

  if (all) {
    SuiteReport rep = runExhaustiveSuite(opt);
    if (json) {
      std::cout << rep.toJson().dump(2) << "\n";
    } else {
      for (const auto& s : rep.scenarios)
        std::cout << (s.pass ? "pass" : "FAIL") << "  " << s.name << "  ("
                  << s.schedules << " schedules)"
                  << (s.message.empty() ? "" : "  " + s.message) << "\n";
      std::cout << (rep.pass ? "PASS" : "FAIL") << ": " << rep.schedules
                << " schedules, " << rep.historiesChecked
                << " histories checked, " << rep.microSteps
                << " monitored micro-steps\n";
    }
    return rep.pass ? 0 : 1;
  }

  const ScenarioSpec* spec = findScenario(name);
  if (spec == nullptr) {
    std::cerr << "unknown scenario '" << name << "'; try: lincheck list\n";
    return 2;
  }
  std::uint64_t microSteps = 0;
  SuiteScenarioResult r = runScenario(*spec, opt, nullptr, &microSteps);
  if (json) {
    nbdll::Json j;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["schedules"] = r.schedules;
    j["historiesChecked"] = r.historiesChecked;
    j["microSteps"] = microSteps;
    j["outcomes"] = r.explored;
    if (!r.message.empty()) j["message"] = r.message;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name << ": "
              << r.schedules << " schedules, " << r.historiesChecked
              << " histories checked, " << microSteps << " micro-steps\n";
    for (const auto& k : r.explored) std::cout << "  outcome " << k << "\n";
    if (!r.message.empty()) std::cout << r.message << "\n";
  }
  return r.pass ? 0 : 1;
}

int checkCommand(const std::string& path, std::uint64_t budget, bool json) {
  using namespace nbdll;
  History h;
  HistorySetup setup;
  try {
    if (path == "-") {
      std::tie(h, setup) = loadHistoryFile(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 2;
      }
      std::tie(h, setup) = loadHistoryFile(in);
    }
  } catch (const std::exception& e) {
    std::cerr << "cannot parse " << path << ": " << e.what() << "\n";
    return 2;
  }

  LinResult r = checkLinearizable(h, setup, budget);
  if (json) {
    Json j;
    j["kind"] = r.kind == LinResult::Kind::ok           ? "ok"
                : r.kind == LinResult::Kind::violation ? "violation"
                                                       : "inconclusive";
    j["statesExplored"] = r.statesExplored;
    j["detail"] = r.detail;
    if (r.kind == LinResult::Kind::ok) {
      j["witness"] = r.witness;
    } else if (r.kind == LinResult::Kind::violation) {
      Json pfx = Json::array();
      for (const auto& e : r.shortestViolatingPrefix) pfx.push_back(e.toJson());
      j["shortestViolatingPrefix"] = pfx;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    switch (r.kind) {
      case LinResult::Kind::ok:
        std::cout << "linearizable (" << r.statesExplored
                  << " states explored)\n"
                  << witnessToString(h, r);
        break;
      case LinResult::Kind::violation:
        std::cout << "NOT linearizable: " << r.detail << "\n"
                  << "shortest violating prefix ("
                  << r.shortestViolatingPrefix.size() << " events):\n";
        for (const auto& e : r.shortestViolatingPrefix)
          std::cout << "  " << e.toJson().dump() << "\n";
        break;
      case LinResult::Kind::inconclusive:
        std::cout << "inconclusive: " << r.detail << "\n";
        break;
    }
  }
  return r.kind == LinResult::Kind::ok            ? 0
         : r.kind == LinResult::Kind::violation ? 1
                                                : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exhaustive linearizability checking for the concurrent list: explore "
      "catalog scenarios under the deterministic scheduler, or check a "
      "recorded history against the sequential specification."};
  app.require_subcommand(1);

  // run
  std::string scenario;
  bool all = false;
  unsigned maxPreemptions = 2;
  std::uint64_t maxSchedules = 0;
  bool noMonitor = false, noLin = false, json = false;
  std::uint64_t budget = nbdll::kDefaultLinBudget;
  CLI::App* run = app.add_subcommand(
      "run", "Explore every schedule of a catalog scenario");
  run->add_option("--scenario", scenario, "Catalog scenario name");
  run->add_flag("--all", all, "Run the whole catalog");
  run->add_option("--max-preemptions", maxPreemptions,
                  "Preemption bound for the scheduler (default 2)");
  run->add_option("--max-schedules", maxSchedules,
                  "Stop after this many schedules (0 = no limit)");
  run->add_flag("--no-monitor", noMonitor,
                "Skip the per-step invariant and potential ledger");
  run->add_flag("--no-lincheck", noLin,
                "Skip the per-schedule linearizability check");
  run->add_option("--budget", budget,
                  "Linearizability search state budget per history");
  run->add_flag("--json", json, "Machine-readable output");

  // list
  CLI::App* list = app.add_subcommand("list", "Show the scenario catalog");

  // check
  std::string historyPath;
  std::uint64_t checkBudget = nbdll::kDefaultLinBudget;
  bool checkJson = false;
  CLI::App* check = app.add_subcommand(
      "check", "Check a recorded history file (JSON lines; '-' for stdin)");
  check->add_option("file", historyPath, "History file")->required();
  check->add_option("--budget", checkBudget, "Search state budget");
  check->add_flag("--json", checkJson, "Machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!all && scenario.empty()) {
        std::cerr << "lincheck run: need --scenario <name> or --all\n";
        return 2;
      }
      return runCommand(scenario, all, maxPreemptions, maxSchedules, noMonitor,
                        noLin, budget, json);
    }
    if (list->parsed()) {
      for (const auto& spec : nbdll::scenarioCatalog())
        std::cout << spec.scenario.name << "  (" << spec.scenario.threads.size()
                  << " threads, " << spec.expected.size() << " outcomes)\n";
      return 0;
    }
    if (check->parsed()) return checkCommand(historyPath, checkBudget, checkJson);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
