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

#include <set>
#include <string>

#include "doctest.h"
#include "nbdll/scenarios.hpp"

namespace nbdll {
namespace {

TEST_CASE("the catalog covers the required races with unique names") {
  const auto& cat = scenarioCatalog();
  CHECK(cat.size() >= 12);

  std::set<std::string> names;
  for (const auto& spec : cat) names.insert(spec.scenario.name);
  CHECK(names.size() == cat.size());

  for (const char* required :
       {"insertInsertSameGap", "insertVsDeleteSameItem", "deleteDeleteAdjacent",
        "deleteVsMoveLeft", "deleteVsMoveRight", "insertVsMoveLeft",
        "disjointUpdates", "eolInsertVsMoveRight", "eolDeleteVsInsert",
        "threeThreadSameItem"}) {
    CAPTURE(required);
    CHECK(names.count(required) == 1);
  }

  CHECK(findScenario("insertInsertSameGap") != nullptr);
  CHECK(findScenario("noSuchScenario") == nullptr);
}

TEST_CASE("pinned outcome sets equal the model-derived sets") {
  for (const auto& spec : scenarioCatalog()) {
    CAPTURE(spec.scenario.name);
    REQUIRE(!spec.expected.empty());
    CHECK(spec.expected == enumerateModelOutcomes(spec.scenario));
  }
}

TEST_CASE("pinned sets capture the intended race semantics") {
  // Two inserts into one gap: each order gives one true and invalidates the
  // other cursor, so exactly two outcomes and no (true, true).
  const ScenarioSpec* gap = findScenario("insertInsertSameGap");
  REQUIRE(gap != nullptr);
  CHECK(gap->expected.size() == 2);
  for (const auto& key : gap->expected) {
    CAPTURE(key);
    CHECK(key.find("true") != std::string::npos);
    CHECK(key.find("invalidCursor") != std::string::npos);
  }

  // Adjacent deletes never invalidate each other: deleting an item moves
  // cursors on it to the successor, and the deleter's own cursor is exempt.
  const ScenarioSpec* adj = findScenario("deleteDeleteAdjacent");
  REQUIRE(adj != nullptr);
  for (const auto& key : adj->expected)
    CHECK(key.find("invalidCursor") == std::string::npos);
}

TEST_CASE("runScenario explores, checks and matches the pinned outcomes") {
  SuiteOptions opt;
  opt.collectStepRecords = true;

  std::vector<StepBoundRecord> steps;
  std::uint64_t microSteps = 0;
  for (const char* name : {"deleteVsMoveRight", "getVsDelete"}) {
    CAPTURE(name);
    const ScenarioSpec* spec = findScenario(name);
    REQUIRE(spec != nullptr);
    SuiteScenarioResult r = runScenario(*spec, opt, &steps, &microSteps);
    CHECK(r.pass);
    CHECK(r.message.empty());
    CHECK(r.schedules > 0);
    CHECK(r.historiesChecked == r.schedules);
    CHECK(r.explored == spec->expected);
  }
  CHECK(!steps.empty());
  CHECK(microSteps > 0);
  auto sb = verifyStepBound(steps, kDefaultStepBoundK);
  CHECK(sb.pass);
}

}  // namespace
}  // namespace nbdll
