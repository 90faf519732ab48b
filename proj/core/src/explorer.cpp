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

#include "nbdll/explorer.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <optional>
#include <sstream>

#include "nbdll/algorithm.hpp"

namespace nbdll {

namespace {

using B = SimBackend;
using Node = NodeRecord<B>;

// One scheduled thread: its suspension point, cursor, context, and progress
// through its program.
struct SimThread {
  unsigned tid = 0;
  const Scenario::ThreadSpec* spec = nullptr;
  SimThreadCore core;
  CursorState<B> cursor;
  std::optional<SimCtx> ctx;
  std::optional<Step<Response>> op;
  std::size_t launched = 0;  // ops started so far
  std::vector<Response> responses;

  bool enabled() const { return core.hasPending; }
  bool programDone() const {
    return launched == spec->ops.size() && !op.has_value();
  }
};

Step<Response> makeOp(const PlannedOp& p, SimCtx& ctx, CursorState<B>& cur) {
  if (p.custom) return p.custom(ctx, cur);
  switch (p.op) {
    case OpCode::createCursor: return Algo<B>::createCursor(ctx, cur);
    case OpCode::destroyCursor: return Algo<B>::destroyCursor(ctx, cur);
    case OpCode::resetCursor: return Algo<B>::resetCursor(ctx, cur);
    case OpCode::get: return Algo<B>::get(ctx, cur);
    case OpCode::moveRight: return Algo<B>::moveRight(ctx, cur);
    case OpCode::moveLeft: return Algo<B>::moveLeft(ctx, cur);
    case OpCode::insertBefore: return Algo<B>::insertBefore(ctx, cur, p.arg);
    case OpCode::deleteItem: return Algo<B>::deleteItem(ctx, cur);
  }
  throw std::logic_error("makeOp: bad op code");
}

std::vector<Value> quiescentTraversal(SimWorld& world) {
  std::vector<Value> out;
  const Node* n = world.list.head->nxt.peek();
  while (n != world.list.tail) {
    out.push_back(n->val);
    n = n->nxt.peek();
  }
  return out;
}

// Record of one schedule run, filled in while it executes so a thrown
// violation still leaves the partial trace for the report.
struct RunRecord {
  std::vector<unsigned> choices;
  std::vector<std::vector<unsigned>> enabledAt;  // ascending tids, per step
  std::vector<StepTriple> trace;
  ScheduleOutcome outcome;
  std::uint64_t steps = 0;
};

class ScheduleRunner {
 public:
  ScheduleRunner(const Scenario& sc, const ExplorerBounds& bounds,
                 ScheduleObserver* obs, RunRecord& rec)
      : sc_(sc), bounds_(bounds), obs_(obs), rec_(rec) {}

  void run(const std::vector<unsigned>& prefix) {
    setup();
    if (obs_) {
      obs_->onScheduleStart(world_);
      // Setup ran before history reset, so observers never saw the cursors
      // being parked; announce each thread's live cursor explicitly.
      for (auto& t : threads_) {
        GhostEvent e{};
        e.kind = GhostEvent::Kind::cursorCreate;
        e.cursor = &t->cursor;
        e.node = t->cursor.node;
        obs_->onGhostEvent(world_, t->tid, e);
      }
    }
    for (auto& t : threads_) launchReady(*t);

    int lastRunning = -1;
    for (;;) {
      std::vector<unsigned> enabled;
      for (auto& t : threads_)
        if (t->enabled()) enabled.push_back(t->tid);
      if (enabled.empty()) break;

      unsigned chosen;
      std::size_t i = rec_.choices.size();
      if (i < prefix.size()) {
        chosen = prefix[i];
        assert(std::find(enabled.begin(), enabled.end(), chosen) !=
               enabled.end());
      } else if (lastRunning >= 0 &&
                 std::find(enabled.begin(), enabled.end(),
                           static_cast<unsigned>(lastRunning)) !=
                     enabled.end()) {
        chosen = static_cast<unsigned>(lastRunning);
      } else {
        chosen = enabled.front();
      }

      rec_.choices.push_back(chosen);
      rec_.enabledAt.push_back(std::move(enabled));
      step(*threads_[chosen]);
      lastRunning = static_cast<int>(chosen);

      if (++rec_.steps > bounds_.maxStepsPerSchedule)
        throw ExplorationViolation("schedule exceeded maxStepsPerSchedule");
    }

    for (auto& t : threads_) {
      if (!t->programDone())
        throw ExplorationViolation("schedule ended with an unfinished program");
      rec_.outcome.responses.push_back(t->responses);
    }
    rec_.outcome.traversal = quiescentTraversal(world_);
    if (obs_) obs_->onScheduleEnd(world_, rec_.outcome);
  }

 private:
  // Loads initial items and parks each thread's cursor, then resets cell
  // histories so the explored schedule starts from a clean baseline.
  void setup() {
    {
      SimThreadCore setupCore;
      SimCtx setupCtx(&world_, &setupCore);
      CursorState<B> setupCursor;
      world_.list.activeCursors.fetch_add(1, std::memory_order_relaxed);
      driveSolo(setupCore, Algo<B>::createCursor(setupCtx, setupCursor));
      for (const Value& v : sc_.initialItems)
        driveSolo(setupCore,
                  Algo<B>::insertBefore(setupCtx, setupCursor, v));
      driveSolo(setupCore, Algo<B>::destroyCursor(setupCtx, setupCursor));
      world_.list.activeCursors.fetch_sub(1, std::memory_order_relaxed);
    }
    threads_.reserve(sc_.threads.size());
    for (unsigned tid = 0; tid < sc_.threads.size(); ++tid) {
      auto t = std::make_unique<SimThread>();
      t->tid = tid;
      t->spec = &sc_.threads[tid];
      t->ctx.emplace(&world_, &t->core);
      world_.list.activeCursors.fetch_add(1, std::memory_order_relaxed);
      driveSolo(t->core, Algo<B>::createCursor(*t->ctx, t->cursor));
      for (unsigned k = 0; k < t->spec->startIndex; ++k) {
        Response r = driveSolo(t->core, Algo<B>::moveRight(*t->ctx, t->cursor));
        if (r != Response::yes())
          throw std::invalid_argument(
              "scenario startIndex beyond the end of the initial list");
      }
      threads_.push_back(std::move(t));
    }
    world_.resetHistories();
  }

  // Runs one coroutine to completion single-threaded (setup only).
  Response driveSolo(SimThreadCore& core, Step<Response> op) {
    op.start();
    while (!op.done()) {
      assert(core.hasPending);
      world_.apply(core.pending);
      core.hasPending = false;
      core.resumePoint.resume();
    }
    core.events.clear();
    return op.result();
  }

  // Starts ops on an idle thread until one suspends at its first shared
  // access (ops with no shared accesses complete during launch).
  void launchReady(SimThread& t) {
    while (!t.core.hasPending && t.launched < t.spec->ops.size()) {
      const PlannedOp& p = t.spec->ops[t.launched];
      if (obs_) obs_->onOpBegin(world_, t.tid, t.launched, p);
      if (p.op == OpCode::createCursor && !p.custom)
        world_.list.activeCursors.fetch_add(1, std::memory_order_relaxed);
      t.op.emplace(makeOp(p, *t.ctx, t.cursor));
      ++t.launched;
      t.op->start();
      drainEvents(t);
      if (t.op->done()) retire(t);
    }
  }

  // Applies the chosen thread's pending access, lets it run to its next
  // suspension, and processes everything that happened in that slice.
  void step(SimThread& t) {
    world_.apply(t.core.pending);
    t.core.hasPending = false;
    rec_.trace.push_back(
        StepTriple{t.tid, t.core.pending.cell->id, t.core.pending.kind});
    if (obs_) obs_->onAccess(world_, t.tid, t.core.pending, rec_.steps);
    t.core.resumePoint.resume();
    drainEvents(t);
    if (t.op->done()) {
      retire(t);
      launchReady(t);
    }
  }

  void retire(SimThread& t) {
    Response r = t.op->result();
    t.op.reset();
    t.responses.push_back(r);
    const PlannedOp& p = t.spec->ops[t.responses.size() - 1];
    if (p.op == OpCode::destroyCursor && !p.custom)
      world_.list.activeCursors.fetch_sub(1, std::memory_order_relaxed);
    if (obs_) obs_->onOpEnd(world_, t.tid, t.responses.size() - 1, r);
  }

  void drainEvents(SimThread& t) {
    for (const GhostEvent& e : t.core.events)
      if (obs_) obs_->onGhostEvent(world_, t.tid, e);
    t.core.events.clear();
  }

  const Scenario& sc_;
  const ExplorerBounds& bounds_;
  ScheduleObserver* obs_;
  RunRecord& rec_;
  SimWorld world_;
  std::vector<std::unique_ptr<SimThread>> threads_;
};

bool contains(const std::vector<unsigned>& v, unsigned x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::string ScheduleOutcome::key() const {
  std::ostringstream os;
  for (std::size_t t = 0; t < responses.size(); ++t) {
    if (t) os << ';';
    os << 't' << t << "=[";
    for (std::size_t k = 0; k < responses[t].size(); ++k) {
      if (k) os << ',';
      os << responses[t][k].toString();
    }
    os << ']';
  }
  os << " | [";
  for (std::size_t k = 0; k < traversal.size(); ++k) {
    if (k) os << ',';
    os << traversal[k].toString();
  }
  os << ']';
  return os.str();
}

std::vector<std::string> ExplorationReport::outcomeKeys() const {
  std::vector<std::string> keys;
  keys.reserve(outcomes.size());
  for (const auto& [k, o] : outcomes) keys.push_back(k);
  return keys;
}

Json ExplorationReport::toJson() const {
  Json traceJson = Json::array();
  for (const StepTriple& s : violationTrace)
    traceJson.push_back(Json::array({s.tid, s.cellId, toString(s.kind)}));
  Json outcomesJson = Json::array();
  for (const auto& [key, o] : outcomes) {
    Json respJson = Json::array();
    for (const auto& tr : o.terminal.responses) {
      Json one = Json::array();
      for (const Response& r : tr) one.push_back(responseToJson(r));
      respJson.push_back(std::move(one));
    }
    Json travJson = Json::array();
    for (const Value& v : o.terminal.traversal)
      travJson.push_back(valueToJson(v));
    outcomesJson.push_back(Json{{"key", key},
                                {"count", o.count},
                                {"responses", std::move(respJson)},
                                {"traversal", std::move(travJson)}});
  }
  return Json{
      {"scenario", scenario},
      {"bounds",
       Json{{"maxOpsPerThread", bounds.maxOpsPerThread},
            {"maxPreemptions", bounds.maxPreemptions},
            {"maxSchedules", bounds.maxSchedules},
            {"maxStepsPerSchedule", bounds.maxStepsPerSchedule}}},
      {"schedules", schedules},
      {"maxScheduleSteps", maxScheduleSteps},
      {"boundExhausted", boundExhausted},
      {"violation", violation},
      {"violationMessage", violationMessage},
      {"violationTrace", std::move(traceJson)},
      {"violationChoices", violationChoices},
      {"outcomes", std::move(outcomesJson)},
  };
}

ExplorationReport explore(const Scenario& scenario,
                          const ExplorerBounds& bounds,
                          ScheduleObserver* observer) {
  for (const auto& t : scenario.threads) {
    if (t.ops.size() > bounds.maxOpsPerThread)
      throw std::invalid_argument("thread program exceeds maxOpsPerThread");
  }

  ExplorationReport report;
  report.scenario = scenario.name;
  report.bounds = bounds;

  // Depth-first enumeration by replay: each stack entry is a choice-sequence
  // prefix whose last element deviates from the default extension.
  std::vector<std::vector<unsigned>> stack;
  stack.push_back({});

  while (!stack.empty()) {
    if (bounds.maxSchedules != 0 && report.schedules >= bounds.maxSchedules) {
      report.boundExhausted = true;
      break;
    }
    std::vector<unsigned> prefix = std::move(stack.back());
    stack.pop_back();

    RunRecord rec;
    try {
      ScheduleRunner runner(scenario, bounds, observer, rec);
      runner.run(prefix);
    } catch (const ExplorationViolation& v) {
      report.violation = true;
      report.violationMessage = v.what();
      report.violationTrace = rec.trace;
      report.violationChoices = rec.choices;
      return report;
    }

    ++report.schedules;
    if (rec.steps > report.maxScheduleSteps)
      report.maxScheduleSteps = rec.steps;
    auto [it, fresh] = report.outcomes.try_emplace(
        rec.outcome.key(),
        ExplorationReport::Outcome{rec.outcome, 0});
    ++it->second.count;
    (void)fresh;

    // Branch: for every step beyond the prefix, push each feasible
    // alternative choice (preemption-bounded), deepest first so that the
    // stack pops in depth-first order.
    unsigned preemptions = 0;
    std::vector<unsigned> preemptionsBefore(rec.choices.size(), 0);
    for (std::size_t i = 0; i < rec.choices.size(); ++i) {
      preemptionsBefore[i] = preemptions;
      if (i > 0 && rec.choices[i] != rec.choices[i - 1] &&
          contains(rec.enabledAt[i], rec.choices[i - 1]))
        ++preemptions;
    }
    for (std::size_t i = rec.choices.size(); i-- > prefix.size();) {
      for (auto alt = rec.enabledAt[i].rbegin();
           alt != rec.enabledAt[i].rend(); ++alt) {
        if (*alt == rec.choices[i]) continue;
        bool preempts = i > 0 && *alt != rec.choices[i - 1] &&
                        contains(rec.enabledAt[i], rec.choices[i - 1]);
        if (preemptionsBefore[i] + (preempts ? 1u : 0u) >
            bounds.maxPreemptions)
          continue;
        std::vector<unsigned> branch(rec.choices.begin(),
                                     rec.choices.begin() +
                                         static_cast<std::ptrdiff_t>(i));
        branch.push_back(*alt);
        stack.push_back(std::move(branch));
      }
    }
  }

  return report;
}

}  // namespace nbdll
