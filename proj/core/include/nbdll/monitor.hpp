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

#ifndef NBDLL_MONITOR_HPP_
#define NBDLL_MONITOR_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nbdll/explorer.hpp"
#include "nbdll/metrics.hpp"

namespace nbdll {

// Fans one explorer callback stream out to several observers, in order.
class ObserverChain : public ScheduleObserver {
 public:
  ObserverChain() = default;
  explicit ObserverChain(std::vector<ScheduleObserver*> obs)
      : obs_(std::move(obs)) {}
  void add(ScheduleObserver* o) { obs_.push_back(o); }

  void onScheduleStart(SimWorld& w) override {
    for (auto* o : obs_) o->onScheduleStart(w);
  }
  void onOpBegin(SimWorld& w, unsigned tid, std::size_t k,
                 const PlannedOp& op) override {
    for (auto* o : obs_) o->onOpBegin(w, tid, k, op);
  }
  void onAccess(SimWorld& w, unsigned tid, const PendingAccess& p,
                std::uint64_t s) override {
    for (auto* o : obs_) o->onAccess(w, tid, p, s);
  }
  void onGhostEvent(SimWorld& w, unsigned tid, const GhostEvent& e) override {
    for (auto* o : obs_) o->onGhostEvent(w, tid, e);
  }
  void onOpEnd(SimWorld& w, unsigned tid, std::size_t k,
               const Response& r) override {
    for (auto* o : obs_) o->onOpEnd(w, tid, k, r);
  }
  void onScheduleEnd(SimWorld& w, const ScheduleOutcome& out) override {
    for (auto* o : obs_) o->onScheduleEnd(w, out);
  }

 private:
  std::vector<ScheduleObserver*> obs_;
};

// The per-schedule ledger. At every micro-step of an explored schedule (each
// applied shared access and each drained ghost event) it replays the
// potential's auxiliary-variable update rules, recomputes the three potential
// parts from scratch, and asserts the per-step Δ entry for that step's class;
// it also sweeps the per-configuration invariants, tracks link freezing for
// unreachable nodes, enforces that cursor moves and reads never write shared
// memory, and checks the move reachability witnesses at completion. Any
// failed check throws ExplorationViolation, which the explorer converts into
// a violation report carrying the schedule trace.
class ScheduleMonitor : public ScheduleObserver {
 public:
  struct Options {
    bool potential = true;      // Δ-table assertions per micro-step
    bool sweeps = true;         // per-configuration invariant sweep
    bool witnesses = true;      // move reachability witnesses
    bool readOnlyMoves = true;  // moves/gets must not write or CAS
    bool histories = true;      // end-of-schedule frozen-link check
    bool collectStepRecords = false;  // accumulate verifyStepBound input
  };

  ScheduleMonitor() = default;
  explicit ScheduleMonitor(Options o) : opt_(o) {}

  // Inputs for verifyStepBound, accumulated across every completed op of
  // every schedule observed (only when collectStepRecords is set).
  const std::vector<StepBoundRecord>& stepRecords() const {
    return stepRecords_;
  }
  std::uint64_t microSteps() const { return microSteps_; }
  std::uint64_t schedulesSeen() const { return schedules_; }

  void onScheduleStart(SimWorld& w) override;
  void onOpBegin(SimWorld& w, unsigned tid, std::size_t opIndex,
                 const PlannedOp& op) override;
  void onAccess(SimWorld& w, unsigned tid, const PendingAccess& p,
                std::uint64_t stepIndex) override;
  void onGhostEvent(SimWorld& w, unsigned tid, const GhostEvent& e) override;
  void onOpEnd(SimWorld& w, unsigned tid, std::size_t opIndex,
               const Response& r) override;
  void onScheduleEnd(SimWorld& w, const ScheduleOutcome& out) override;

 private:
  // Expected Δ of one micro-step, per potential part: an exact value, an
  // inclusive upper bound, or unconstrained.
  struct Delta {
    enum class M : std::uint8_t { exact, atMost, any };
    M cm = M::exact;
    std::int64_t cv = 0;
    M fm = M::exact;
    std::int64_t fv = 0;
    M sm = M::exact;
    std::int64_t sv = 0;

    static Delta zero() { return {}; }
    Delta& cursor(M m, std::int64_t v) { cm = m; cv = v; return *this; }
    Delta& flag(M m, std::int64_t v) { fm = m; fv = v; return *this; }
    Delta& state(M m, std::int64_t v) { sm = m; sv = v; return *this; }
  };

  // One configuration snapshot kept while a move is in flight, for the
  // reachability witness: the reachable chain and every node's nxt target.
  struct WitnessSnap {
    std::set<const SimNode*> reachable;
    std::map<const SimNode*, const SimNode*> nxt;
  };

  struct OpTrack {
    bool active = false;
    OpCode code = OpCode::get;
    std::size_t opIndex = 0;
    std::string label;
    bool update = false;
    bool readOnly = false;
    bool move = false;
    std::array<int, 3> lose{3, 3, 3};
    int phiState = 2;
    std::uint64_t attempts = 0;
    std::uint64_t ucIters = 0;
    std::uint64_t cDot = 1;
    std::int64_t attemptDelta = 0;
    bool attemptOpen = false;
    std::vector<WitnessSnap> window;       // moves only
    const SimNode* moveSrc = nullptr;      // c.node before the final assign
    const SimNode* moveDst = nullptr;      // assigned node
  };

  struct InfoTrack {
    unsigned creatorTid = 0;
    std::array<bool, 3> flagTried{false, false, false};
  };

  Configuration config() const;
  OpTrack* track(unsigned tid);
  OpTrack* helpedCreatorTrack(unsigned tid);  // creator of the helped Info
  [[noreturn]] void fail(const std::string& msg) const;
  void microStep(const std::string& what, const Delta& d, OpTrack* attrib,
                 bool ucStep);
  void sweepNow();
  void rechargeAfterFlag(const SimNode* target, unsigned creatorTid);
  void rechargeAll();
  void nodeTriple(const OpTrack& t, unsigned tid,
                  std::array<const SimNode*, 3>& out) const;

  Options opt_;
  SimWorld* world_ = nullptr;
  std::map<unsigned, OpTrack> ops_;
  std::map<unsigned, const void*> cursorOf_;       // tid -> cursor address
  std::map<const void*, const SimNode*> cursors_;  // cursor -> node
  std::map<const void*, InfoTrack> infos_;
  std::map<unsigned, const void*> helping_;        // tid -> Info being helped
  std::set<const SimNode*> abortSet_;
  std::set<const SimNode*> prevReach_;
  std::set<const SimNode*> everUnreachable_;
  std::map<const SimNode*, std::pair<const SimNode*, const SimNode*>> frozen_;
  PotentialState last_;
  std::string lastWhat_;
  std::uint64_t stepsThisSchedule_ = 0;
  std::uint64_t microSteps_ = 0;
  std::uint64_t schedules_ = 0;
  std::vector<StepBoundRecord> stepRecords_;
};

}  // namespace nbdll

#endif  // NBDLL_MONITOR_HPP_
