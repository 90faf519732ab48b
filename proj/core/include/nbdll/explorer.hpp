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

#ifndef NBDLL_EXPLORER_HPP_
#define NBDLL_EXPLORER_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbdll/json_util.hpp"
#include "nbdll/sim_backend.hpp"
#include "nbdll/step.hpp"

namespace nbdll {

// One operation of a thread program. Either a list operation by code, or an
// arbitrary coroutine over the access port (used by port-level tests).
struct PlannedOp {
  using Factory =
      std::function<Step<Response>(SimCtx&, CursorState<SimBackend>&)>;

  std::string label;
  OpCode op = OpCode::get;
  Value arg;
  Factory custom;  // when set, overrides op/arg

  static PlannedOp of(OpCode op, Value arg = Value()) {
    PlannedOp p;
    p.label = toString(op);
    p.op = op;
    p.arg = arg;
    return p;
  }
  static PlannedOp make(std::string label, Factory f) {
    PlannedOp p;
    p.label = std::move(label);
    p.custom = std::move(f);
    return p;
  }
};

// A scenario: the initial list contents, and per thread a starting cursor
// position (number of moveRights from the first item) plus the operations it
// will run, in order.
struct Scenario {
  struct ThreadSpec {
    unsigned startIndex = 0;
    std::vector<PlannedOp> ops;
  };

  std::string name;
  std::vector<Value> initialItems;
  std::vector<ThreadSpec> threads;
};

struct ExplorerBounds {
  unsigned maxOpsPerThread = 2;
  unsigned maxPreemptions = 2;
  std::uint64_t maxSchedules = 0;          // 0 = unlimited
  std::uint64_t maxStepsPerSchedule = 100000;  // safety net
};

// The terminal state of one schedule: every response in program order per
// thread, plus the final quiescent traversal (EOL included).
struct ScheduleOutcome {
  std::vector<std::vector<Response>> responses;
  std::vector<Value> traversal;

  std::string key() const;
  friend bool operator==(const ScheduleOutcome& a, const ScheduleOutcome& b) {
    return a.key() == b.key();
  }
};

// Checker callbacks invoked while a schedule runs. Implementations signal a
// failed check by throwing ExplorationViolation; the explorer aborts and
// reports the schedule as a counterexample.
class ScheduleObserver {
 public:
  virtual ~ScheduleObserver() = default;
  // After setup (initial items loaded, cursors parked, histories reset).
  virtual void onScheduleStart(SimWorld&) {}
  virtual void onOpBegin(SimWorld&, unsigned /*tid*/, std::size_t /*opIndex*/,
                         const PlannedOp& /*op*/) {}
  // After the access has been applied to the cell, before the thread resumes.
  virtual void onAccess(SimWorld&, unsigned /*tid*/, const PendingAccess&,
                        std::uint64_t /*stepIndex*/) {}
  // Ghost events emitted by the slice that followed the applied access (or
  // the op launch); each is one micro-step of the same scheduling point.
  virtual void onGhostEvent(SimWorld&, unsigned /*tid*/, const GhostEvent&) {}
  virtual void onOpEnd(SimWorld&, unsigned /*tid*/, std::size_t /*opIndex*/,
                       const Response&) {}
  virtual void onScheduleEnd(SimWorld&, const ScheduleOutcome&) {}
};

class ExplorationViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One applied scheduling point of a trace.
struct StepTriple {
  unsigned tid = 0;
  std::uint32_t cellId = 0;
  AccessKind kind = AccessKind::read;
};

struct ExplorationReport {
  std::string scenario;
  ExplorerBounds bounds;
  std::uint64_t schedules = 0;
  std::uint64_t maxScheduleSteps = 0;
  bool boundExhausted = false;

  bool violation = false;
  std::string violationMessage;
  std::vector<StepTriple> violationTrace;
  std::vector<unsigned> violationChoices;

  struct Outcome {
    ScheduleOutcome terminal;
    std::uint64_t count = 0;
  };
  std::map<std::string, Outcome> outcomes;  // keyed by ScheduleOutcome::key()

  Json toJson() const;

  // Convenience for scenario assertions: the set of outcome keys explored.
  std::vector<std::string> outcomeKeys() const;
};

// Visits every interleaving of the scenario within the bounds exactly once
// (depth-first, by replay), invoking the observer's checks along the way.
// Deterministic: equal inputs produce byte-identical reports.
ExplorationReport explore(const Scenario& scenario,
                          const ExplorerBounds& bounds,
                          ScheduleObserver* observer = nullptr);

}  // namespace nbdll

#endif  // NBDLL_EXPLORER_HPP_
