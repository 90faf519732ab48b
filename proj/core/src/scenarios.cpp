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

#include "nbdll/scenarios.hpp"

#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nbdll {

namespace {

using Ops = std::vector<PlannedOp>;

PlannedOp ins(std::int64_t v) {
  return PlannedOp::of(OpCode::insertBefore, Value(v));
}
PlannedOp del() { return PlannedOp::of(OpCode::deleteItem); }
PlannedOp get() { return PlannedOp::of(OpCode::get); }
PlannedOp movR() { return PlannedOp::of(OpCode::moveRight); }
PlannedOp movL() { return PlannedOp::of(OpCode::moveLeft); }
PlannedOp rst() { return PlannedOp::of(OpCode::resetCursor); }

Scenario make(std::string name, std::vector<std::int64_t> initial,
              std::vector<Scenario::ThreadSpec> threads) {
  Scenario sc;
  sc.name = std::move(name);
  for (auto v : initial) sc.initialItems.emplace_back(v);
  sc.threads = std::move(threads);
  return sc;
}

ScenarioSpec spec(Scenario sc, std::vector<std::string> expected) {
  return ScenarioSpec{std::move(sc), std::move(expected)};
}

// Model-side application of one planned op for thread t (mirrors the
// checker's semantics: createCursor re-parks an existing handle).
Response applyPlanned(SeqModel& model, std::map<unsigned, std::uint64_t>& names,
                      unsigned t, const PlannedOp& op) {
  if (op.custom)
    throw std::invalid_argument("custom ops have no model semantics");
  if (op.op == OpCode::createCursor) {
    auto it = names.find(t);
    if (it == names.end()) {
      names[t] = model.createCursor(t);
      return Response::ackd();
    }
    return model.resetCursor(it->second);
  }
  auto it = names.find(t);
  if (it == names.end())
    throw std::invalid_argument("thread has no cursor in the model");
  if (op.op == OpCode::destroyCursor) {
    Response r = model.destroyCursor(it->second);
    names.erase(it);
    return r;
  }
  return model.apply(op.op, it->second, op.arg);
}

struct EnumState {
  SeqModel model;
  std::map<unsigned, std::uint64_t> names;
  std::vector<std::size_t> pc;
  std::vector<std::vector<Response>> responses;
};

void enumRec(const Scenario& sc, const EnumState& s,
             std::set<std::string>& out) {
  bool done = true;
  for (unsigned t = 0; t < sc.threads.size(); ++t) {
    if (s.pc[t] >= sc.threads[t].ops.size()) continue;
    done = false;
    EnumState next = s;
    Response r = applyPlanned(next.model, next.names, t,
                              sc.threads[t].ops[s.pc[t]]);
    next.responses[t].push_back(r);
    ++next.pc[t];
    enumRec(sc, next, out);
  }
  if (done) {
    ScheduleOutcome o;
    o.responses = s.responses;
    o.traversal = s.model.values();
    out.insert(o.key());
  }
}

// Per-schedule history recording plus the per-schedule linearizability
// verdict. Any non-ok verdict aborts the exploration so the explorer can
// report the schedule as a counterexample.
class HistoryCollector : public ScheduleObserver {
 public:
  HistoryCollector(const Scenario& sc, std::uint64_t budget)
      : budget_(budget) {
    setup_.initialItems = sc.initialItems;
    for (const auto& t : sc.threads)
      setup_.threadStart.push_back(t.startIndex);
  }

  std::uint64_t checked() const { return checked_; }

  void onScheduleStart(SimWorld&) override {
    h_.clear();
    openOp_.clear();
    seq_ = 1;
  }
  void onOpBegin(SimWorld&, unsigned tid, std::size_t,
                 const PlannedOp& op) override {
    HistoryEvent e;
    e.kind = HistoryEvent::Kind::invoke;
    e.thread = tid;
    e.seq = seq_++;
    e.op = op.op;
    e.arg = op.arg;
    h_.push_back(e);
    openOp_[tid] = op.op;
  }
  void onOpEnd(SimWorld&, unsigned tid, std::size_t,
               const Response& r) override {
    HistoryEvent e;
    e.kind = HistoryEvent::Kind::respond;
    e.thread = tid;
    e.seq = seq_++;
    e.op = openOp_.at(tid);
    e.resp = r;
    h_.push_back(e);
  }
  void onScheduleEnd(SimWorld&, const ScheduleOutcome&) override {
    ++checked_;
    LinResult lr = checkLinearizable(h_, setup_, budget_);
    if (lr.kind == LinResult::Kind::ok) return;
    std::ostringstream os;
    if (lr.kind == LinResult::Kind::inconclusive) {
      os << "linearizability check inconclusive: " << lr.detail;
    } else {
      os << "schedule is not linearizable: " << lr.detail
         << "; violating prefix:";
      for (const HistoryEvent& e : lr.shortestViolatingPrefix)
        os << " " << e.toJson().dump();
    }
    throw ExplorationViolation(os.str());
  }

 private:
  HistorySetup setup_;
  std::uint64_t budget_;
  History h_;
  std::map<unsigned, OpCode> openOp_;
  std::uint64_t seq_ = 1;
  std::uint64_t checked_ = 0;
};

}  // namespace

std::vector<std::string> enumerateModelOutcomes(const Scenario& sc) {
  EnumState s;
  if (!sc.initialItems.empty()) {
    std::uint64_t loader = s.model.createCursor(~0ull >> 1);
    for (const Value& v : sc.initialItems) {
      if (s.model.insertBefore(loader, v) != Response::yes())
        throw std::invalid_argument("initial items failed to load");
    }
    s.model.destroyCursor(loader);
  }
  for (unsigned t = 0; t < sc.threads.size(); ++t) {
    std::uint64_t name = s.model.createCursor(t);
    for (unsigned k = 0; k < sc.threads[t].startIndex; ++k) {
      if (s.model.moveRight(name) != Response::yes())
        throw std::invalid_argument("start index exceeds the list");
    }
    s.names[t] = name;
  }
  s.pc.assign(sc.threads.size(), 0);
  s.responses.assign(sc.threads.size(), {});
  std::set<std::string> out;
  enumRec(sc, s, out);
  return {out.begin(), out.end()};
}

const std::vector<ScenarioSpec>& scenarioCatalog() {
  static const std::vector<ScenarioSpec> catalog = [] {
    std::vector<ScenarioSpec> c;

    // Two inserts into the same gap: exactly one wins, the other observes
    // the raised invalidation bit.
    c.push_back(spec(make("insertInsertSameGap", {10},
                          {{0, {ins(1)}}, {0, {ins(2)}}}),
                     {"t0=[invalidCursor];t1=[true] | [2,10,EOL]",
                      "t0=[true];t1=[invalidCursor] | [1,10,EOL]"}));

    // Insert before an item that is concurrently deleted.
    c.push_back(spec(make("insertVsDeleteSameItem", {10, 20},
                          {{0, {ins(5)}}, {0, {del()}}}),
                     {"t0=[invalidCursor];t1=[true] | [20,EOL]",
                      "t0=[true];t1=[true] | [5,20,EOL]"}));

    // Deletes of two adjacent items.
    c.push_back(spec(make("deleteDeleteAdjacent", {1, 2, 3},
                          {{0, {del()}}, {1, {del()}}}),
                     {"t0=[true];t1=[true] | [3,EOL]"}));

    // Both threads delete the same item.
    c.push_back(spec(make("deleteDeleteSameItem", {1, 2},
                          {{0, {del()}}, {0, {del()}}}),
                     {"t0=[invalidCursor];t1=[true] | [2,EOL]",
                      "t0=[true];t1=[invalidCursor] | [2,EOL]"}));

    // Delete against a moveLeft onto the deleted position.
    c.push_back(spec(make("deleteVsMoveLeft", {1, 2},
                          {{1, {del()}}, {1, {movL()}}}),
                     {"t0=[true];t1=[invalidCursor] | [1,EOL]",
                      "t0=[true];t1=[true] | [1,EOL]"}));

    // Delete against a moveRight across the deleted position.
    c.push_back(spec(make("deleteVsMoveRight", {1, 2},
                          {{0, {del()}}, {0, {movR()}}}),
                     {"t0=[true];t1=[invalidCursor] | [2,EOL]",
                      "t0=[true];t1=[true] | [2,EOL]"}));

    // Insert before the item a moveLeft is about to land on.
    c.push_back(spec(make("insertVsMoveLeft", {2, 3},
                          {{0, {ins(1)}}, {1, {movL()}}}),
                     {"t0=[true];t1=[true] | [1,2,3,EOL]"}));

    // Insert ahead of a moveRight's destination.
    c.push_back(spec(make("insertVsMoveRight", {2, 3},
                          {{1, {ins(9)}}, {0, {movR()}}}),
                     {"t0=[true];t1=[true] | [2,9,3,EOL]"}));

    // Updates on positions far apart.
    c.push_back(spec(make("disjointUpdates", {1, 2, 3, 4},
                          {{0, {ins(9)}}, {2, {del()}}}),
                     {"t0=[true];t1=[true] | [9,1,2,4,EOL]"}));

    // End-of-list boundary: append race against a moveRight parked at EOL.
    c.push_back(spec(make("eolInsertVsMoveRight", {1},
                          {{1, {ins(9)}}, {1, {movR()}}}),
                     {"t0=[true];t1=[false] | [1,9,EOL]"}));

    // End-of-list boundary: delete at EOL (a no-op returning false) against
    // an append into the same gap.
    c.push_back(spec(make("eolDeleteVsInsert", {1},
                          {{1, {del()}}, {1, {ins(9)}}}),
                     {"t0=[false];t1=[true] | [1,9,EOL]"}));

    // Three threads on one item: insert, delete and a move.
    c.push_back(spec(make("threeThreadSameItem", {5},
                          {{0, {ins(1)}}, {0, {del()}}, {0, {movR()}}}),
                     {"t0=[invalidCursor];t1=[true];t2=[invalidCursor] | [EOL]",
                      "t0=[invalidCursor];t1=[true];t2=[true] | [EOL]",
                      "t0=[true];t1=[true];t2=[invalidCursor] | [1,EOL]",
                      "t0=[true];t1=[true];t2=[true] | [1,EOL]"}));

    // Insert copies the item, the copy is then deleted: cursors parked on
    // the original recover over a copied-then-marked chain.
    c.push_back(spec(make("copiedThenMarkedChain", {10},
                          {{0, {ins(7)}}, {0, {del()}}, {0, {get()}}}),
                     {"t0=[invalidCursor];t1=[true];t2=[10] | [EOL]",
                      "t0=[invalidCursor];t1=[true];t2=[invalidCursor] | [EOL]",
                      "t0=[true];t1=[true];t2=[10] | [7,EOL]",
                      "t0=[true];t1=[true];t2=[invalidCursor] | [7,EOL]"}));

    // Two-op thread: insert then moveLeft, racing a delete of the insert
    // position.
    c.push_back(spec(make("insertMoveLeftVsDelete", {1, 2},
                          {{1, {ins(5), movL()}}, {1, {del()}}}),
                     {"t0=[invalidCursor,true];t1=[true] | [1,EOL]",
                      "t0=[true,invalidCursor];t1=[true] | [1,5,EOL]",
                      "t0=[true,true];t1=[true] | [1,5,EOL]"}));

    // A read racing the delete of its item.
    c.push_back(spec(make("getVsDelete", {1, 2},
                          {{0, {del()}}, {0, {get()}}}),
                     {"t0=[true];t1=[1] | [2,EOL]",
                      "t0=[true];t1=[invalidCursor] | [2,EOL]"}));

    // Reset re-parks at the first item while an insert changes which item
    // that is.
    c.push_back(spec(make("resetVsInsert", {5},
                          {{0, {ins(1)}}, {0, {rst(), get()}}}),
                     {"t0=[true];t1=[ack,1] | [1,5,EOL]",
                      "t0=[true];t1=[ack,5] | [1,5,EOL]"}));

    return c;
  }();
  return catalog;
}

const ScenarioSpec* findScenario(const std::string& name) {
  for (const ScenarioSpec& s : scenarioCatalog())
    if (s.scenario.name == name) return &s;
  return nullptr;
}

SuiteScenarioResult runScenario(const ScenarioSpec& spec,
                                const SuiteOptions& opt,
                                std::vector<StepBoundRecord>* stepsOut,
                                std::uint64_t* microStepsOut) {
  SuiteScenarioResult res;
  res.name = spec.scenario.name;

  ScheduleMonitor::Options mo;
  mo.collectStepRecords = opt.collectStepRecords;
  ScheduleMonitor mon(mo);
  HistoryCollector hist(spec.scenario, opt.linBudget);
  ObserverChain chain;
  if (opt.monitor) chain.add(&mon);
  if (opt.linearizability) chain.add(&hist);

  ExplorationReport r = explore(spec.scenario, opt.bounds, &chain);
  res.schedules = r.schedules;
  res.historiesChecked = hist.checked();
  res.explored = r.outcomeKeys();

  if (r.violation) {
    std::ostringstream os;
    os << r.violationMessage << "; schedule choices: [";
    for (std::size_t i = 0; i < r.violationChoices.size(); ++i)
      os << (i ? "," : "") << r.violationChoices[i];
    os << "]";
    res.message = os.str();
    return res;
  }
  if (r.boundExhausted) {
    res.message = "schedule budget exhausted before full exploration";
    return res;
  }

  std::vector<std::string> derived = enumerateModelOutcomes(spec.scenario);
  if (derived != spec.expected) {
    std::ostringstream os;
    os << "pinned expected outcomes disagree with the model enumeration;"
       << " model derives:";
    for (const std::string& k : derived) os << "\n    " << k;
    res.message = os.str();
    return res;
  }
  if (res.explored != spec.expected) {
    std::ostringstream os;
    os << "explored outcomes differ from the specification; explored:";
    for (const std::string& k : res.explored) os << "\n    " << k;
    os << "\n  expected:";
    for (const std::string& k : spec.expected) os << "\n    " << k;
    res.message = os.str();
    return res;
  }

  res.pass = true;
  if (stepsOut)
    stepsOut->insert(stepsOut->end(), mon.stepRecords().begin(),
                     mon.stepRecords().end());
  if (microStepsOut) *microStepsOut += mon.microSteps();
  return res;
}

SuiteReport runExhaustiveSuite(const SuiteOptions& opt) {
  SuiteReport rep;
  rep.pass = true;
  for (const ScenarioSpec& s : scenarioCatalog()) {
    if (opt.log)
      *opt.log << "scenario " << s.scenario.name << " ..." << std::flush;
    SuiteScenarioResult r = runScenario(
        s, opt, opt.collectStepRecords ? &rep.stepRecords : nullptr,
        &rep.microSteps);
    if (opt.log) {
      *opt.log << (r.pass ? " ok" : " FAIL") << " (" << r.schedules
               << " schedules)" << std::endl;
      if (!r.pass) *opt.log << "  " << r.message << std::endl;
    }
    rep.schedules += r.schedules;
    rep.historiesChecked += r.historiesChecked;
    rep.pass = rep.pass && r.pass;
    rep.scenarios.push_back(std::move(r));
  }
  return rep;
}

Json SuiteReport::toJson() const {
  Json j;
  j["pass"] = pass;
  j["schedules"] = schedules;
  j["historiesChecked"] = historiesChecked;
  j["microSteps"] = microSteps;
  j["scenarios"] = Json::array();
  for (const SuiteScenarioResult& s : scenarios) {
    Json js;
    js["name"] = s.name;
    js["pass"] = s.pass;
    js["schedules"] = s.schedules;
    js["historiesChecked"] = s.historiesChecked;
    js["outcomes"] = s.explored;
    if (!s.message.empty()) js["message"] = s.message;
    j["scenarios"].push_back(std::move(js));
  }
  return j;
}

}  // namespace nbdll
