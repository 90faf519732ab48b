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

#ifndef NBDLL_SCENARIOS_HPP_
#define NBDLL_SCENARIOS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbdll/explorer.hpp"
#include "nbdll/lincheck.hpp"
#include "nbdll/monitor.hpp"

namespace nbdll {

// A catalog entry: the concurrent scenario and the outcomes it must — and
// may only — produce. The expected keys are pinned literals reviewed against
// the sequential specification; at run time they are additionally
// cross-checked against enumerateModelOutcomes, so the three views (pinned,
// derived from the model, explored concurrently) must all agree.
struct ScenarioSpec {
  Scenario scenario;
  std::vector<std::string> expected;  // sorted ScheduleOutcome keys
};

// All interleavings of the scenario's per-thread programs applied to the
// sequential specification: the complete set of outcome keys a linearizable
// implementation may produce. Sorted.
std::vector<std::string> enumerateModelOutcomes(const Scenario& sc);

// The exhaustive-suite catalog. Covers, at minimum: inserts into one gap,
// insert against delete of the same item, deletes of adjacent items, delete
// against each move direction, insert against moveLeft, disjoint updates,
// end-of-list boundary races, and a three-thread mixed race on one item.
const std::vector<ScenarioSpec>& scenarioCatalog();
const ScenarioSpec* findScenario(const std::string& name);

struct SuiteOptions {
  ExplorerBounds bounds;
  bool monitor = true;          // full per-step ledger, sweeps, witnesses
  bool linearizability = true;  // per-schedule witness search
  std::uint64_t linBudget = kDefaultLinBudget;
  bool collectStepRecords = false;  // feed verifyStepBound across the suite
  std::ostream* log = nullptr;
};

struct SuiteScenarioResult {
  std::string name;
  std::uint64_t schedules = 0;
  std::uint64_t historiesChecked = 0;
  std::vector<std::string> explored;  // sorted outcome keys
  bool pass = false;
  std::string message;  // first failure, empty when pass
};

struct SuiteReport {
  bool pass = false;
  std::uint64_t schedules = 0;
  std::uint64_t historiesChecked = 0;
  std::uint64_t microSteps = 0;
  std::vector<SuiteScenarioResult> scenarios;
  std::vector<StepBoundRecord> stepRecords;  // when collectStepRecords

  Json toJson() const;
};

// Explores one scenario exhaustively, checking every schedule against the
// ledger (optional) and the linearizability oracle (optional), then compares
// the explored outcome set with the pinned and the model-derived sets.
SuiteScenarioResult runScenario(const ScenarioSpec& spec,
                                const SuiteOptions& opt,
                                std::vector<StepBoundRecord>* stepsOut,
                                std::uint64_t* microStepsOut);

// Runs the whole catalog. Any violation aborts the scenario with its
// counterexample schedule in the message; the report aggregates totals.
SuiteReport runExhaustiveSuite(const SuiteOptions& opt = {});

}  // namespace nbdll

#endif  // NBDLL_SCENARIOS_HPP_
