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

#include <algorithm>
#include <array>
#include <vector>

#include "doctest.h"
#include "nbdll/explorer.hpp"

namespace nbdll {
namespace {

using Node = NodeRecord<SimBackend>;

std::vector<Value> keys(std::initializer_list<std::int64_t> ks) {
  std::vector<Value> out;
  for (auto k : ks) out.emplace_back(k);
  out.push_back(detail::ValueFactory::eol());
  return out;
}

Scenario twoThreads(std::string name, std::vector<Value> initial,
                    Scenario::ThreadSpec t0, Scenario::ThreadSpec t1) {
  Scenario sc;
  sc.name = std::move(name);
  sc.initialItems = std::move(initial);
  sc.threads = {std::move(t0), std::move(t1)};
  return sc;
}

TEST_CASE("a solo insert explores exactly one schedule") {
  Scenario sc;
  sc.name = "soloInsert";
  sc.threads = {{0, {PlannedOp::of(OpCode::insertBefore, Value(5))}}};

  ExplorationReport r = explore(sc, ExplorerBounds{});
  CHECK(!r.violation);
  CHECK(!r.boundExhausted);
  CHECK(r.schedules == 1);
  CHECK(r.maxScheduleSteps == 26);
  REQUIRE(r.outcomes.size() == 1);
  const auto& o = r.outcomes.begin()->second;
  CHECK(o.count == 1);
  REQUIRE(o.terminal.responses.size() == 1);
  CHECK(o.terminal.responses[0] == std::vector<Response>{Response::yes()});
  CHECK(o.terminal.traversal == keys({5}));
}

TEST_CASE("a solo delete explores exactly one schedule") {
  Scenario sc;
  sc.name = "soloDelete";
  sc.initialItems = {Value(7)};
  sc.threads = {{0, {PlannedOp::of(OpCode::deleteItem)}}};

  ExplorationReport r = explore(sc, ExplorerBounds{});
  CHECK(!r.violation);
  CHECK(r.schedules == 1);
  CHECK(r.maxScheduleSteps == 25);
  REQUIRE(r.outcomes.size() == 1);
  const auto& o = r.outcomes.begin()->second;
  CHECK(o.terminal.responses[0] == std::vector<Response>{Response::yes()});
  CHECK(o.terminal.traversal == keys({}));
}

TEST_CASE("read-only programs explore to a single outcome") {
  Scenario sc = twoThreads("getVsMoveRight", {Value(1), Value(2)},
                           {0, {PlannedOp::of(OpCode::get)}},
                           {0, {PlannedOp::of(OpCode::moveRight)}});
  ExplorationReport r = explore(sc, ExplorerBounds{});
  CHECK(!r.violation);
  CHECK(r.schedules > 1);
  REQUIRE(r.outcomes.size() == 1);
  const auto& o = r.outcomes.begin()->second;
  CHECK(o.terminal.responses[0] ==
        std::vector<Response>{Response::of(Value(1))});
  CHECK(o.terminal.responses[1] == std::vector<Response>{Response::yes()});
  CHECK(o.terminal.traversal == keys({1, 2}));
}

// Port-level example: two threads race cas(v, v, w1) and cas(v, v, w2) on the
// same cell. Exactly one must win in every schedule.
TEST_CASE("a raw CAS race has exactly one winner in every schedule") {
  struct WinnerObserver : ScheduleObserver {
    void onScheduleEnd(SimWorld& w, const ScheduleOutcome& o) override {
      // The surviving value must match the thread that reported success.
      bool t0Won = o.responses[0][0] == Response::yes();
      bool t1Won = o.responses[1][0] == Response::yes();
      CHECK(t0Won != t1Won);
      Node* final = w.list.head->copy.peek();
      CHECK(final == (t0Won ? w.list.head : w.list.tail));
    }
  };

  // The two desired values must exist before the scenario runs, so resolve
  // them lazily: thread 0 installs head, thread 1 installs tail.
  Scenario sc;
  sc.name = "rawCasRace";
  sc.threads = {
      {0, {PlannedOp::make("casToHead",
                           [](SimCtx& cx, CursorState<SimBackend>&)
                               -> Step<Response> {
                             bool ok = co_await cx.cas(
                                 cx.list().head->copy,
                                 static_cast<Node*>(nullptr), cx.list().head,
                                 Role{AccessRole::forwardCas, -1});
                             co_return ok ? Response::yes() : Response::no();
                           })}},
      {0, {PlannedOp::make("casToTail",
                           [](SimCtx& cx, CursorState<SimBackend>&)
                               -> Step<Response> {
                             bool ok = co_await cx.cas(
                                 cx.list().head->copy,
                                 static_cast<Node*>(nullptr), cx.list().tail,
                                 Role{AccessRole::forwardCas, -1});
                             co_return ok ? Response::yes() : Response::no();
                           })}},
  };

  WinnerObserver obs;
  ExplorationReport r = explore(sc, ExplorerBounds{}, &obs);
  CHECK(!r.violation);
  CHECK(r.schedules == 2);  // one access per thread: two orders
  CHECK(r.outcomes.size() == 2);
  for (const auto& [key, o] : r.outcomes) {
    int wins = 0;
    for (const auto& tr : o.terminal.responses)
      wins += (tr[0] == Response::yes()) ? 1 : 0;
    CHECK(wins == 1);
  }
}

// Port-level example: two "helpers" race plain writes of committed to the
// same status cell. The final value is committed in every schedule and both
// writes append to the cell history.
TEST_CASE("racing committed writes leave the status committed") {
  auto writeCommitted = []() {
    return PlannedOp::make(
        "writeCommitted",
        [](SimCtx& cx, CursorState<SimBackend>&) -> Step<Response> {
          co_await cx.write(cx.list().dum->status, InfoStatus::committed,
                            Role{AccessRole::commitWrite, -1});
          co_return Response::ackd();
        });
  };

  struct HistoryObserver : ScheduleObserver {
    void onScheduleEnd(SimWorld& w, const ScheduleOutcome&) override {
      CHECK((w.list.dum->status.peek() == InfoStatus::committed));
      for (const auto& rec : w.cells()) {
        if (rec.owner == w.list.dum && std::string(rec.field) == "status") {
          // Initial value plus both (duplicate) writes.
          REQUIRE(rec.history.size() == 3);
          CHECK((simDecode<InfoStatus>(rec.history[0]) ==
                 InfoStatus::aborted));
          CHECK((simDecode<InfoStatus>(rec.history[1]) ==
                 InfoStatus::committed));
          CHECK((simDecode<InfoStatus>(rec.history[2]) ==
                 InfoStatus::committed));
        }
      }
    }
  };

  Scenario sc;
  sc.name = "racingCommitWrites";
  sc.threads = {{0, {writeCommitted()}}, {0, {writeCommitted()}}};

  HistoryObserver obs;
  ExplorationReport r = explore(sc, ExplorerBounds{}, &obs);
  CHECK(!r.violation);
  CHECK(r.schedules == 2);
  CHECK(r.outcomes.size() == 1);
  CHECK(r.outcomes.begin()->second.count == 2);
}

// Tracks help windows per thread; used to confirm that the exploration of a
// same-gap race includes a late helper: one that enters help for a descriptor
// that commits without any successful CAS by the helper itself.
struct LateHelperObserver : ScheduleObserver {
  struct Window {
    const void* info = nullptr;
    int okCas = 0;
    int failedFlagCas = 0;
  };
  std::array<std::vector<Window>, 8> stacks;
  bool lateHelpSeen = false;
  bool helpingCasSeen = false;

  void onScheduleStart(SimWorld&) override {
    for (auto& s : stacks) s.clear();
  }
  void onAccess(SimWorld&, unsigned tid, const PendingAccess& p,
                std::uint64_t) override {
    if (p.kind != AccessKind::cas) return;
    auto& st = stacks.at(tid);
    if (st.empty()) return;
    if (p.casOk)
      ++st.back().okCas;
    else if (p.role.role == AccessRole::flagCas)
      ++st.back().failedFlagCas;
  }
  void onGhostEvent(SimWorld&, unsigned tid, const GhostEvent& e) override {
    auto& st = stacks.at(tid);
    if (e.kind == GhostEvent::Kind::helpEnter) {
      st.push_back(Window{e.info, 0, 0});
    } else if (e.kind == GhostEvent::Kind::helpExit) {
      REQUIRE(!st.empty());
      Window w = st.back();
      st.pop_back();
      if (e.helpResult && w.okCas == 0 && w.failedFlagCas > 0)
        lateHelpSeen = true;
      if (e.helpResult && w.okCas > 0 && w.failedFlagCas > 0)
        helpingCasSeen = true;
    }
  }
};

TEST_CASE("a same-gap insert race yields one winner and one invalid cursor") {
  Scenario sc = twoThreads(
      "sameGapInsertRace", {Value(1)},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(10))}},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(20))}});

  LateHelperObserver obs;
  ExplorationReport r = explore(sc, ExplorerBounds{}, &obs);
  CHECK(!r.violation);
  CHECK(!r.boundExhausted);
  CHECK(r.schedules > 100);
  CHECK(r.outcomes.size() >= 2);  // either thread can win

  bool t0Wins = false, t1Wins = false;
  for (const auto& [key, o] : r.outcomes) {
    REQUIRE(o.terminal.responses.size() == 2);
    const Response& r0 = o.terminal.responses[0][0];
    const Response& r1 = o.terminal.responses[1][0];
    // Exactly one success and one invalidCursor, never anything else.
    bool t0Won = r0 == Response::yes() && r1 == Response::invalid();
    bool t1Won = r1 == Response::yes() && r0 == Response::invalid();
    CHECK((t0Won || t1Won));
    t0Wins |= t0Won;
    t1Wins |= t1Won;
    CHECK(o.terminal.traversal == (t0Won ? keys({10, 1}) : keys({20, 1})));
  }
  CHECK(t0Wins);
  CHECK(t1Wins);
  // The suite contains both helper flavors: a late helper that finds the
  // descriptor already applied (no successful CAS of its own), and a genuine
  // helper that completes another thread's operation.
  CHECK(obs.lateHelpSeen);
  CHECK(obs.helpingCasSeen);
}

TEST_CASE("inserts into disjoint gaps both succeed in every schedule") {
  Scenario sc = twoThreads(
      "disjointInserts", {Value(1), Value(2)},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(10))}},
      {1, {PlannedOp::of(OpCode::insertBefore, Value(20))}});

  ExplorationReport r = explore(sc, ExplorerBounds{});
  CHECK(!r.violation);
  CHECK(r.schedules > 100);
  REQUIRE(r.outcomes.size() == 1);
  const auto& o = r.outcomes.begin()->second;
  CHECK(o.terminal.responses[0] == std::vector<Response>{Response::yes()});
  CHECK(o.terminal.responses[1] == std::vector<Response>{Response::yes()});
  CHECK(o.terminal.traversal == keys({10, 1, 20, 2}));
  CHECK(o.count == r.schedules);
}

TEST_CASE("a zero preemption bound explores only thread-at-a-time orders") {
  Scenario sc = twoThreads(
      "sameGapNoPreemption", {Value(1)},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(10))}},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(20))}});
  ExplorerBounds b;
  b.maxPreemptions = 0;
  ExplorationReport r = explore(sc, b);
  CHECK(!r.violation);
  // Without preemptions only the two sequential orders exist.
  CHECK(r.schedules == 2);
  CHECK(r.outcomes.size() == 2);
  for (const auto& [key, o] : r.outcomes) {
    const Response& r0 = o.terminal.responses[0][0];
    const Response& r1 = o.terminal.responses[1][0];
    CHECK(((r0 == Response::yes() && r1 == Response::invalid()) ||
           (r1 == Response::yes() && r0 == Response::invalid())));
  }
}

TEST_CASE("the schedule budget reports exhaustion") {
  Scenario sc = twoThreads(
      "sameGapBudget", {Value(1)},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(10))}},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(20))}});
  ExplorerBounds b;
  b.maxSchedules = 5;
  ExplorationReport r = explore(sc, b);
  CHECK(r.boundExhausted);
  CHECK(r.schedules == 5);
}

TEST_CASE("exploration is deterministic down to the serialized report") {
  Scenario sc = twoThreads(
      "sameGapInsertRace", {Value(1)},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(10))}},
      {0, {PlannedOp::of(OpCode::insertBefore, Value(20))}});
  ExplorationReport a = explore(sc, ExplorerBounds{});
  ExplorationReport b = explore(sc, ExplorerBounds{});
  CHECK(a.toJson().dump(2) == b.toJson().dump(2));
  CHECK(a.schedules == b.schedules);
  CHECK(a.outcomeKeys() == b.outcomeKeys());
}

TEST_CASE("an observer violation aborts with the counterexample trace") {
  struct Bomb : ScheduleObserver {
    void onAccess(SimWorld&, unsigned, const PendingAccess& p,
                  std::uint64_t) override {
      if (p.kind == AccessKind::cas && p.casOk)
        throw ExplorationViolation("tripwire: first successful CAS");
    }
  };
  Scenario sc;
  sc.name = "tripwire";
  sc.threads = {{0, {PlannedOp::of(OpCode::insertBefore, Value(5))}}};
  Bomb bomb;
  ExplorationReport r = explore(sc, ExplorerBounds{}, &bomb);
  CHECK(r.violation);
  CHECK(r.violationMessage == "tripwire: first successful CAS");
  CHECK(!r.violationTrace.empty());
  CHECK(r.violationTrace.size() == r.violationChoices.size());
  // The trace ends at the offending access: the first flag CAS.
  CHECK((r.violationTrace.back().kind == AccessKind::cas));
}

}  // namespace
}  // namespace nbdll
