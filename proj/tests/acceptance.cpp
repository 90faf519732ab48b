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

// The acceptance gate. Each criterion prints exactly one line:
//
//   criterion N: PASS - <what was established>
//   criterion N: FAIL - <first failure>
//
// Run one with --criterion N (the ctest entries acceptance_c1..c9 do this),
// or all of them with --criterion all.

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nbdll/bench.hpp"
#include "nbdll/explorer.hpp"
#include "nbdll/history.hpp"
#include "nbdll/lincheck.hpp"
#include "nbdll/list.hpp"
#include "nbdll/metrics.hpp"
#include "nbdll/monitor.hpp"
#include "nbdll/scenarios.hpp"
#include "nbdll/stress.hpp"

namespace {

using namespace nbdll;
using Clock = std::chrono::steady_clock;

struct Crit {
  bool pass = false;
  std::string summary;
};

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmtSecs(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << s << " s";
  return os.str();
}

// --- criterion 1: sequential equivalence ---------------------------------

Crit criterion1() {
  Crit c;
  auto t0 = Clock::now();
  SeqEquivResult r = runSeqEquivalence(10000, 200, 20260825);
  double secs = secondsSince(t0);
  std::ostringstream os;
  if (!r.ok) {
    os << "divergence from the sequential specification: " << r.firstDivergence;
  } else if (!r.allOpsCovered()) {
    os << "not every operation kind was exercised";
  } else if (secs >= 30.0) {
    os << "took " << fmtSecs(secs) << " (budget 30 s)";
  } else {
    c.pass = true;
    os << r.programs << " seeded programs (<=200 ops each), " << r.opsExecuted
       << " operations, all 8 operation kinds, every response and final "
          "state matched the sequential specification, "
       << fmtSecs(secs);
  }
  c.summary = os.str();
  return c;
}

// --- criterion 2: exhaustive linearizability -----------------------------

Crit criterion2() {
  Crit c;
  std::ostringstream os;

  // Shape of the catalog: the required races, 2-3 threads, <=2 ops per
  // thread, at most 4 initial items.
  const auto& cat = scenarioCatalog();
  std::set<std::string> names;
  for (const auto& s : cat) names.insert(s.scenario.name);
  for (const char* req :
       {"insertInsertSameGap", "insertVsDeleteSameItem", "deleteDeleteAdjacent",
        "deleteVsMoveLeft", "deleteVsMoveRight", "insertVsMoveLeft",
        "disjointUpdates", "eolInsertVsMoveRight", "eolDeleteVsInsert",
        "threeThreadSameItem"}) {
    if (names.count(req) == 0) {
      c.summary = std::string("catalog misses required scenario ") + req;
      return c;
    }
  }
  if (cat.size() < 12) {
    c.summary = "catalog has fewer than 12 scenarios";
    return c;
  }
  for (const auto& s : cat) {
    const std::size_t n = s.scenario.threads.size();
    bool shapeOk = n >= 2 && n <= 3 && s.scenario.initialItems.size() <= 4;
    for (const auto& t : s.scenario.threads) shapeOk &= t.ops.size() <= 2;
    if (!shapeOk) {
      c.summary = "scenario " + s.scenario.name + " outside the bound shape";
      return c;
    }
  }

  auto t0 = Clock::now();
  SuiteOptions opt;  // monitor + per-schedule linearizability, default bounds
  SuiteReport rep = runExhaustiveSuite(opt);
  double secs = secondsSince(t0);
  if (!rep.pass) {
    for (const auto& s : rep.scenarios)
      if (!s.pass) {
        os << s.name << ": " << s.message;
        break;
      }
  } else if (rep.historiesChecked != rep.schedules) {
    os << "only " << rep.historiesChecked << " of " << rep.schedules
       << " schedules were checked";
  } else if (secs >= 600.0) {
    os << "took " << fmtSecs(secs) << " (budget 10 min)";
  } else {
    c.pass = true;
    os << cat.size() << " scenarios, " << rep.schedules
       << " schedules explored, every history linearizable, every per-step "
          "invariant held over "
       << rep.microSteps << " micro-steps, outcome sets matched the "
       << "model on all scenarios, " << fmtSecs(secs);
  }
  c.summary = os.str();
  return c;
}

// --- criterion 3: solo update CAS counts ---------------------------------

bool soloCas(OpStats& s, const Response& r, const char* what,
             std::ostringstream& os) {
  if (r != Response::yes()) {
    os << what << " did not return true";
    return false;
  }
  if (s.flagCasIssued != 3 || s.forwardCasIssued != 1 ||
      s.backwardCasIssued != 1 || s.casIssued() != 5 || s.casSucceeded() != 5) {
    os << what << " issued " << s.flagCasIssued << " flag + "
       << s.forwardCasIssued << " forward + " << s.backwardCasIssued
       << " backward CAS (" << s.casSucceeded() << " succeeded), expected "
       << "exactly 3+1+1 all succeeding";
    return false;
  }
  return true;
}

Crit criterion3() {
  Crit c;
  std::ostringstream os;

  {  // At EOL on a previously empty list.
    List list;
    auto cur = list.createCursor();
    OpStats si;
    List::setStats(&si);
    Response ri = list.insertBefore(cur, Value(5));
    List::setStats(nullptr);
    if (!soloCas(si, ri, "solo insertBefore (at EOL)", os)) {
      list.destroyCursor(cur);
      c.summary = os.str();
      return c;
    }
    list.moveLeft(cur);
    OpStats sd;
    List::setStats(&sd);
    Response rd = list.deleteItem(cur);
    List::setStats(nullptr);
    list.destroyCursor(cur);
    if (!soloCas(sd, rd, "solo delete (only item)", os)) {
      c.summary = os.str();
      return c;
    }
  }
  {  // Interior position.
    List list;
    auto cur = list.createCursor();
    for (std::int64_t v : {1, 2, 3}) list.insertBefore(cur, Value(v));
    list.resetCursor(cur);
    list.moveRight(cur);  // on item 2
    OpStats si;
    List::setStats(&si);
    Response ri = list.insertBefore(cur, Value(9));
    List::setStats(nullptr);
    if (!soloCas(si, ri, "solo insertBefore (interior)", os)) {
      list.destroyCursor(cur);
      c.summary = os.str();
      return c;
    }
    OpStats sd;
    List::setStats(&sd);
    Response rd = list.deleteItem(cur);
    List::setStats(nullptr);
    list.destroyCursor(cur);
    if (!soloCas(sd, rd, "solo delete (interior)", os)) {
      c.summary = os.str();
      return c;
    }
  }

  c.pass = true;
  c.summary =
      "solo insertBefore and solo delete each issued exactly 5 CAS "
      "(3 flag + 1 forward + 1 backward, all succeeding), at EOL-adjacent "
      "and interior positions";
  return c;
}

// --- criterion 4: moves/gets/resets never write shared memory ------------

Crit criterion4(double stressSeconds) {
  Crit c;
  std::ostringstream os;

  // Deterministic side: the monitor rejects any shared write or CAS issued
  // outside help() by a read-only operation, at every step of every
  // schedule of the exhaustive suite.
  SuiteOptions opt;
  opt.linearizability = false;  // the ledger run is what matters here
  SuiteReport rep = runExhaustiveSuite(opt);
  if (!rep.pass) {
    for (const auto& s : rep.scenarios)
      if (!s.pass) {
        os << "suite: " << s.name << ": " << s.message;
        break;
      }
    c.summary = os.str();
    return c;
  }

  // Native-atomics side: instrumented counters over a timed stress run.
  ReadOnlyStressResult rs = runReadOnlyStress(stressSeconds, 2, 2, 20260825);
  if (!rs.ok) {
    os << "stress: " << rs.note;
    c.summary = os.str();
    return c;
  }
  if (rs.observerOps == 0 || rs.updaterOps == 0) {
    os << "stress did not execute (observer " << rs.observerOps
       << ", updater " << rs.updaterOps << " ops)";
    c.summary = os.str();
    return c;
  }

  c.pass = true;
  os << "moveLeft/moveRight/get/resetCursor issued zero shared writes and "
        "zero CAS across "
     << rep.schedules << " schedules and a " << std::fixed
     << std::setprecision(0) << stressSeconds << " s atomic stress ("
     << rs.observerOps << " observed ops, " << rs.observerTotals.reads
     << " shared reads, against " << rs.updaterOps << " update rounds)";
  c.summary = os.str();
  return c;
}

// --- criterion 5: the same-gap insert race -------------------------------

class GapRaceObserver : public ScheduleObserver {
 public:
  std::uint64_t schedules = 0;

  void onScheduleEnd(SimWorld&, const ScheduleOutcome& o) override {
    ++schedules;
    std::vector<Response> all;
    for (const auto& per : o.responses)
      for (const Response& r : per) all.push_back(r);
    const bool ok =
        all.size() == 2 &&
        ((all[0] == Response::yes() && all[1] == Response::invalid()) ||
         (all[0] == Response::invalid() && all[1] == Response::yes()));
    if (!ok)
      throw ExplorationViolation(
          "same-gap schedule did not end as one true + one invalidCursor: " +
          o.key());
  }
};

Crit criterion5() {
  Crit c;
  const ScenarioSpec* spec = findScenario("insertInsertSameGap");
  if (spec == nullptr) {
    c.summary = "insertInsertSameGap missing from the catalog";
    return c;
  }
  GapRaceObserver obs;
  ExplorerBounds bounds;
  ExplorationReport rep = explore(spec->scenario, bounds, &obs);
  std::ostringstream os;
  if (rep.violation) {
    os << rep.violationMessage;
  } else if (rep.schedules == 0 || obs.schedules != rep.schedules) {
    os << "observer saw " << obs.schedules << " of " << rep.schedules
       << " schedules";
  } else {
    c.pass = true;
    os << "in every one of " << rep.schedules
       << " explored schedules exactly one insert returned true and the "
          "other invalidCursor";
  }
  c.summary = os.str();
  return c;
}

// --- criterion 6: the potential-function ledger --------------------------

Crit criterion6() {
  Crit c;
  std::ostringstream os;
  SuiteOptions opt;
  opt.linearizability = false;
  auto t0 = Clock::now();
  SuiteReport rep = runExhaustiveSuite(opt);
  double secs = secondsSince(t0);
  if (!rep.pass) {
    for (const auto& s : rep.scenarios)
      if (!s.pass) {
        os << s.name << ": " << s.message;
        break;
      }
  } else if (rep.microSteps == 0) {
    os << "no micro-steps were checked";
  } else {
    c.pass = true;
    os << "on the deterministic backend the potential stayed >= 0, every "
          "recovery iteration paid exactly -1, every failing terminal step "
          "paid <= -1, and every step class stayed within its table bound, "
          "at each of "
       << rep.microSteps << " micro-steps over " << rep.schedules
       << " schedules, " << fmtSecs(secs);
  }
  c.summary = os.str();
  return c;
}

// --- criterion 7: the amortized step bound -------------------------------

Scenario randomScenario(std::mt19937_64& rng, unsigned threadsMin,
                        unsigned threadsMax, unsigned opsMax) {
  Scenario sc;
  sc.name = "random";
  const unsigned items = static_cast<unsigned>(rng() % 5);  // 0..4
  for (unsigned i = 0; i < items; ++i)
    sc.initialItems.emplace_back(static_cast<std::int64_t>(10 * (i + 1)));
  const unsigned threads =
      threadsMin + static_cast<unsigned>(rng() % (threadsMax - threadsMin + 1));
  std::int64_t fresh = 100;
  for (unsigned t = 0; t < threads; ++t) {
    Scenario::ThreadSpec ts;
    ts.startIndex = static_cast<unsigned>(rng() % (items + 1));
    const unsigned ops = 1 + static_cast<unsigned>(rng() % opsMax);
    for (unsigned k = 0; k < ops; ++k) {
      switch (rng() % 6) {
        case 0:
          ts.ops.push_back(PlannedOp::of(OpCode::insertBefore, Value(fresh++)));
          break;
        case 1: ts.ops.push_back(PlannedOp::of(OpCode::deleteItem)); break;
        case 2: ts.ops.push_back(PlannedOp::of(OpCode::moveRight)); break;
        case 3: ts.ops.push_back(PlannedOp::of(OpCode::moveLeft)); break;
        case 4: ts.ops.push_back(PlannedOp::of(OpCode::get)); break;
        default: ts.ops.push_back(PlannedOp::of(OpCode::resetCursor)); break;
      }
    }
    sc.threads.push_back(std::move(ts));
  }
  return sc;
}

Crit criterion7() {
  Crit c;
  std::ostringstream os;

  // The exhaustive suite's records, pooled, at the default K.
  SuiteOptions opt;
  opt.linearizability = false;
  opt.collectStepRecords = true;
  SuiteReport rep = runExhaustiveSuite(opt);
  if (!rep.pass) {
    c.summary = "suite failed before the bound could be checked";
    return c;
  }
  StepBoundReport sb = verifyStepBound(rep.stepRecords, kDefaultStepBoundK);
  if (!sb.pass) {
    os << "suite records break K=" << kDefaultStepBoundK << ": "
       << sb.detail;
    c.summary = os.str();
    return c;
  }

  // 100 seeded concurrent stress explorations, each checked on its own.
  std::mt19937_64 rng(20260825);
  std::uint64_t stressSchedules = 0;
  for (unsigned run = 0; run < 100; ++run) {
    Scenario sc = randomScenario(rng, 2, 3, 3);
    ExplorerBounds bounds;
    bounds.maxOpsPerThread = 4;
    bounds.maxSchedules = 40;
    ScheduleMonitor::Options mo;
    mo.collectStepRecords = true;
    ScheduleMonitor mon(mo);
    ExplorationReport r = explore(sc, bounds, &mon);
    if (r.violation) {
      os << "stress run " << run << ": " << r.violationMessage;
      c.summary = os.str();
      return c;
    }
    stressSchedules += r.schedules;
    StepBoundReport s = verifyStepBound(mon.stepRecords(), kDefaultStepBoundK);
    if (!s.pass) {
      os << "stress run " << run << " breaks K=" << kDefaultStepBoundK << ": "
         << s.detail;
      c.summary = os.str();
      return c;
    }
  }

  // 100 seeded sequential runs (no preemptions: one operation at a time)
  // must satisfy the bound already at K=2.
  std::uint64_t serialSchedules = 0;
  for (unsigned run = 0; run < 100; ++run) {
    Scenario sc = run < 50 ? randomScenario(rng, 1, 1, 6)
                           : randomScenario(rng, 2, 3, 3);
    ExplorerBounds bounds;
    bounds.maxOpsPerThread = 6;
    bounds.maxPreemptions = 0;
    ScheduleMonitor::Options mo;
    mo.collectStepRecords = true;
    ScheduleMonitor mon(mo);
    ExplorationReport r = explore(sc, bounds, &mon);
    if (r.violation) {
      os << "serial run " << run << ": " << r.violationMessage;
      c.summary = os.str();
      return c;
    }
    serialSchedules += r.schedules;
    StepBoundReport s = verifyStepBound(mon.stepRecords(), 2);
    if (!s.pass) {
      os << "serial run " << run << " breaks K=2: " << s.detail;
      c.summary = os.str();
      return c;
    }
  }

  c.pass = true;
  os << "steps(op) <= K*(cDot per update + 1) held with K="
     << kDefaultStepBoundK << " over the suite (" << rep.stepRecords.size()
     << " op records) and 100 seeded stress explorations (" << stressSchedules
     << " schedules), and with K=2 over 100 sequential explorations ("
     << serialSchedules << " schedules)";
  c.summary = os.str();
  return c;
}

// --- criterion 8: recorded concurrent histories --------------------------

Crit criterion8() {
  Crit c;
  std::ostringstream os;
  auto t0 = Clock::now();

  const unsigned kThreads = 4;
  const unsigned kRuns = 1000;
  std::uint64_t inconclusive = 0, events = 0, maxEvents = 0;

  for (unsigned run = 0; run < kRuns; ++run) {
    std::mt19937_64 setupRng(977 * run + 5);
    const unsigned items = static_cast<unsigned>(setupRng() % 5);
    HistorySetup setup;
    for (unsigned i = 0; i < items; ++i)
      setup.initialItems.emplace_back(static_cast<std::int64_t>(10 * (i + 1)));
    for (unsigned t = 0; t < kThreads; ++t)
      setup.threadStart.push_back(
          static_cast<unsigned>(setupRng() % (items + 1)));

    List list;
    {  // load the initial items
      auto c0 = list.createCursor();
      for (const Value& v : setup.initialItems) list.insertBefore(c0, v);
      list.destroyCursor(c0);
    }

    HistoryRecorder rec(kThreads);
    std::barrier<> sync(kThreads);
    std::vector<std::thread> workers;
    for (unsigned tid = 0; tid < kThreads; ++tid) {
      workers.emplace_back([&, tid] {
        std::mt19937_64 rng(1000003ULL * run + 31 * tid + 7);
        auto cur = list.createCursor();
        for (unsigned k = 0; k < setup.threadStart[tid]; ++k)
          list.moveRight(cur);
        sync.arrive_and_wait();  // recording starts only when all are parked
        for (unsigned round = 0; round < 2; ++round) {
          const unsigned burst = 1 + static_cast<unsigned>(rng() % 2);
          for (unsigned b = 0; b < burst; ++b) {
            switch (rng() % 10) {
              case 0:
              case 1:
              case 2: {
                Value v(static_cast<std::int64_t>(100 + rng() % 50));
                recordWrap(rec, tid, OpCode::insertBefore, v,
                           [&] { return list.insertBefore(cur, v); });
                break;
              }
              case 3:
              case 4:
              case 5:
                recordWrap(rec, tid, OpCode::deleteItem, Value(),
                           [&] { return list.deleteItem(cur); });
                break;
              case 6:
                recordWrap(rec, tid, OpCode::moveRight, Value(),
                           [&] { return list.moveRight(cur); });
                break;
              case 7:
                recordWrap(rec, tid, OpCode::moveLeft, Value(),
                           [&] { return list.moveLeft(cur); });
                break;
              case 8:
                recordWrap(rec, tid, OpCode::get, Value(),
                           [&] { return list.get(cur); });
                break;
              default:
                recordWrap(rec, tid, OpCode::resetCursor, Value(),
                           [&] { return list.resetCursor(cur); });
                break;
            }
          }
          sync.arrive_and_wait();  // bounded concurrency window
        }
        list.destroyCursor(cur);
      });
    }
    for (auto& w : workers) w.join();

    History h = rec.collect();
    events += h.size();
    maxEvents = std::max<std::uint64_t>(maxEvents, h.size());
    if (h.size() > 40) {
      os << "run " << run << " produced " << h.size() << " events (> 40)";
      c.summary = os.str();
      return c;
    }
    LinResult r = checkLinearizable(h, setup);
    if (r.kind == LinResult::Kind::violation) {
      os << "run " << run << " not linearizable: " << r.detail;
      c.summary = os.str();
      return c;
    }
    if (r.kind == LinResult::Kind::inconclusive) ++inconclusive;
  }

  double secs = secondsSince(t0);
  const double inconclusiveRate =
      100.0 * static_cast<double>(inconclusive) / kRuns;
  if (inconclusiveRate >= 1.0) {
    os << inconclusive << " of " << kRuns << " histories inconclusive ("
       << std::setprecision(2) << inconclusiveRate << "%)";
    c.summary = os.str();
    return c;
  }
  if (secs >= 300.0) {
    os << "took " << fmtSecs(secs) << " (budget 5 min)";
    c.summary = os.str();
    return c;
  }
  c.pass = true;
  os << kRuns << " recorded 4-thread histories (" << events
     << " events, max " << maxEvents
     << " per history) all linearizable, 0 violations, " << inconclusive
     << " inconclusive, " << fmtSecs(secs);
  c.summary = os.str();
  return c;
}

// --- criterion 9: sorted benchmark ---------------------------------------

Crit criterion9(const std::string& advisoryPath, double duration,
                unsigned trials) {
  Crit c;
  std::ostringstream os;

  bool requireScaling = false;
  double minScaling = 1.0;
  {
    std::ifstream in(advisoryPath);
    if (in) {
      try {
        Json adv = Json::parse(in);
        requireScaling = adv.value("requireScaling", false);
        minScaling = adv.value("minScaling8v4", 1.0);
      } catch (const std::exception& e) {
        os << "cannot parse advisory file " << advisoryPath << ": "
           << e.what();
        c.summary = os.str();
        return c;
      }
    }
  }

  double mean4 = 0, mean8 = 0;
  for (unsigned threads : {4u, 8u}) {
    BenchConfig cfg;
    cfg.scenario = "sorted";
    cfg.threads = threads;
    cfg.size = 200;  // key range 2*10^2
    cfg.durationSec = duration;
    cfg.trials = trials;
    cfg.warmup = 1;
    cfg.seed = 20260825;
    BenchResult r = runBench(cfg);
    if (!r.ok()) {
      os << "threads=" << threads << ": " << r.note;
      c.summary = os.str();
      return c;
    }
    for (const auto& t : r.trials)
      if (t.opsTotal == 0) {
        os << "threads=" << threads << " trial " << t.trial << " ran no ops";
        c.summary = os.str();
        return c;
      }
    (threads == 4 ? mean4 : mean8) = r.meanOpsPerSec();
  }

  const unsigned hw = std::thread::hardware_concurrency();
  const double scaling = mean4 > 0 ? mean8 / mean4 : 0.0;
  std::ostringstream sc;
  sc << std::fixed << std::setprecision(2) << scaling << "x at 8 vs 4 threads";
  if (requireScaling && hw >= 8 && scaling < minScaling) {
    os << "throughput scaling " << sc.str() << " below required "
       << minScaling << "x";
    c.summary = os.str();
    return c;
  }

  c.pass = true;
  os << "sorted workload over key range 200 at 4 and 8 threads: every "
        "quiescent traversal strictly sorted, conservation exact in every "
        "trial; scaling "
     << sc.str()
     << (requireScaling && hw >= 8
             ? ""
             : (hw < 8 ? " (advisory only: " + std::to_string(hw) +
                             " hardware thread(s))"
                       : " (advisory only)"));
  c.summary = os.str();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::string criterion = "all";
  std::string advisory = "advisory.json";
  double stressSeconds = 60.0;
  double benchDuration = 4.0;
  unsigned benchTrials = 3;

  CLI::App app{"Acceptance gate: one pass/fail line per criterion."};
  app.add_option("--criterion", criterion, "1..9 or 'all'");
  app.add_option("--advisory", advisory,
                 "Advisory JSON for the scaling check (criterion 9)");
  app.add_option("--stress-seconds", stressSeconds,
                 "Timed stress length for criterion 4");
  app.add_option("--bench-duration", benchDuration,
                 "Seconds per benchmark trial for criterion 9");
  app.add_option("--bench-trials", benchTrials,
                 "Measured benchmark trials for criterion 9");
  CLI11_PARSE(app, argc, argv);

  auto runOne = [&](int n) -> Crit {
    switch (n) {
      case 1: return criterion1();
      case 2: return criterion2();
      case 3: return criterion3();
      case 4: return criterion4(stressSeconds);
      case 5: return criterion5();
      case 6: return criterion6();
      case 7: return criterion7();
      case 8: return criterion8();
      case 9: return criterion9(advisory, benchDuration, benchTrials);
      default: return {false, "no such criterion"};
    }
  };

  std::vector<int> which;
  if (criterion == "all") {
    for (int i = 1; i <= 9; ++i) which.push_back(i);
  } else {
    try {
      which.push_back(std::stoi(criterion));
    } catch (const std::exception&) {
      std::cerr << "--criterion must be 1..9 or 'all'\n";
      return 2;
    }
  }

  bool allPass = true;
  for (int n : which) {
    Crit r;
    try {
      r = runOne(n);
    } catch (const std::exception& e) {
      r.pass = false;
      r.summary = std::string("unhandled error: ") + e.what();
    }
    allPass &= r.pass;
    std::cout << "criterion " << n << ": " << (r.pass ? "PASS" : "FAIL")
              << " - " << r.summary << std::endl;
  }
  return allPass ? 0 : 1;
}
