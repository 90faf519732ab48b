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

#include "nbdll/monitor.hpp"

#include <sstream>

namespace nbdll {

namespace {

bool isUcRole(AccessRole r) {
  switch (r) {
    case AccessRole::ucGuardState:
    case AccessRole::ucGuardPrv:
    case AccessRole::ucGuardPrvNxt:
    case AccessRole::ucBodyState:
    case AccessRole::ucHopCopy:
    case AccessRole::ucHopNxt:
    case AccessRole::ucInfoRead:
    case AccessRole::ucSnapNxt:
    case AccessRole::ucSnapPrv:
      return true;
    default:
      return false;
  }
}

// Read roles whose result is a pointer the algorithm dereferences; Invariant
// 1 promises these are never null.
bool isPointerReadRole(AccessRole r) {
  switch (r) {
    case AccessRole::ucGuardPrv:
    case AccessRole::ucGuardPrvNxt:
    case AccessRole::ucHopCopy:
    case AccessRole::ucHopNxt:
    case AccessRole::ucInfoRead:
    case AccessRole::ucSnapNxt:
    case AccessRole::ucSnapPrv:
    case AccessRole::oldInfoX:
    case AccessRole::oldInfoZ:
    case AccessRole::ciInfo:
    case AccessRole::doPtrRead:
    case AccessRole::mlTestPrv:
    case AccessRole::mlTestPrvNxt:
    case AccessRole::mlTestNxt:
    case AccessRole::mlCopyRead:
    case AccessRole::mlPrvRead:
    case AccessRole::headNxtCreate:
    case AccessRole::headNxtReset:
      return true;
    default:
      return false;
  }
}

// Roles executed inside help(I); their steps belong to I's creator.
bool isHelpRole(AccessRole r) {
  switch (r) {
    case AccessRole::flagCas:
    case AccessRole::doPtrRead:
    case AccessRole::copyWrite:
    case AccessRole::stateWrite:
    case AccessRole::forwardCas:
    case AccessRole::backwardCas:
    case AccessRole::commitWrite:
    case AccessRole::abortRead:
    case AccessRole::abortWrite:
    case AccessRole::statusReturnRead:
      return true;
    default:
      return false;
  }
}

}  // namespace

Configuration ScheduleMonitor::config() const {
  Configuration cfg;
  cfg.world = world_;
  for (const auto& [c, n] : cursors_) cfg.cursorNodes.push_back(n);
  for (const auto& [tid, t] : ops_) {
    if (!t.active || !t.update) continue;
    UpdateAux a;
    a.cursorNode = cursors_.at(cursorOf_.at(tid));
    a.lose = t.lose;
    a.phiState = t.phiState;
    cfg.updates.push_back(a);
  }
  cfg.abortSet = abortSet_;
  return cfg;
}

ScheduleMonitor::OpTrack* ScheduleMonitor::track(unsigned tid) {
  auto it = ops_.find(tid);
  if (it == ops_.end() || !it->second.active) return nullptr;
  return &it->second;
}

ScheduleMonitor::OpTrack* ScheduleMonitor::helpedCreatorTrack(unsigned tid) {
  auto h = helping_.find(tid);
  if (h == helping_.end()) return nullptr;
  auto it = infos_.find(h->second);
  if (it == infos_.end()) return nullptr;
  OpTrack* t = track(it->second.creatorTid);
  return (t != nullptr && t->update) ? t : nullptr;
}

void ScheduleMonitor::fail(const std::string& msg) const {
  std::ostringstream os;
  os << "monitor: " << msg << " (micro-step " << stepsThisSchedule_
     << " of schedule " << schedules_ << ", after '" << lastWhat_ << "')";
  throw ExplorationViolation(os.str());
}

void ScheduleMonitor::rechargeAfterFlag(const SimNode* target,
                                        unsigned creatorTid) {
  // Another operation set the info of node_i(op): recompute node_i at this
  // instant and recharge lose_i for every running update except the setter.
  for (auto& [tid, t] : ops_) {
    if (!t.active || !t.update || tid == creatorTid) continue;
    std::array<const SimNode*, 3> nodes{nullptr, nullptr, nullptr};
    nodeTriple(t, tid, nodes);
    for (int i = 0; i < 3; ++i)
      if (nodes[i] == target) t.lose[static_cast<std::size_t>(i)] = 3;
  }
}

void ScheduleMonitor::rechargeAll() {
  // A forward or backward CAS succeeded: every running update's lose_i and
  // phi_state recharge.
  for (auto& [tid, t] : ops_) {
    if (!t.active || !t.update) continue;
    t.lose = {3, 3, 3};
    t.phiState = 2;
  }
}

void ScheduleMonitor::nodeTriple(const OpTrack&, unsigned tid,
                                 std::array<const SimNode*, 3>& out) const {
  std::vector<const SimNode*> chain = reachableChain(*world_);
  std::set<const SimNode*> reach(chain.begin(), chain.end());
  const SimNode* n1 = realNode(cursors_.at(cursorOf_.at(tid)), reach);
  std::size_t pos = chain.size();
  for (std::size_t k = 0; k < chain.size(); ++k)
    if (chain[k] == n1) {
      pos = k;
      break;
    }
  if (pos == chain.size() || pos == 0 || pos + 1 >= chain.size())
    fail("node_1 of a running update is not an interior reachable node");
  out = {chain[pos - 1], n1, chain[pos + 1]};
}

void ScheduleMonitor::sweepNow() {
  std::vector<std::string> viols = sweepInvariants(config());
  if (!viols.empty()) {
    std::string joined = "invariant sweep failed:";
    for (const std::string& v : viols) joined += " [" + v + "]";
    fail(joined);
  }
  std::vector<const SimNode*> chain = reachableChain(*world_);
  std::set<const SimNode*> reach(chain.begin(), chain.end());
  for (const SimNode* n : prevReach_) {
    if (reach.count(n)) continue;
    everUnreachable_.insert(n);
    frozen_.emplace(n, std::make_pair(n->nxt.peek(), n->prv.peek()));
  }
  for (const SimNode* n : chain)
    if (everUnreachable_.count(n))
      fail("an unreachable node became reachable again");
  if (opt_.histories) {
    for (const auto& [n, links] : frozen_) {
      if (n->nxt.peek() != links.first || n->prv.peek() != links.second)
        fail("frozen-after-unreachable: links changed after removal");
    }
  }
  prevReach_ = std::move(reach);
}

void ScheduleMonitor::microStep(const std::string& what, const Delta& d,
                                OpTrack* attrib, bool ucStep) {
  ++microSteps_;
  ++stepsThisSchedule_;
  const auto cursorsNow = static_cast<std::uint64_t>(
      world_->list.activeCursors.load(std::memory_order_relaxed));
  for (auto& [tid, t] : ops_)
    if (t.active && t.cDot < cursorsNow) t.cDot = cursorsNow;

  if (opt_.potential) {
    PotentialState now = computePotential(config());
    if (!now.nonNegative())
      fail("negative potential component at '" + what + "'");
    const std::int64_t dc = now.cursorPart - last_.cursorPart;
    const std::int64_t df = now.flagPart - last_.flagPart;
    const std::int64_t ds = now.statePart - last_.statePart;
    auto check = [&](const char* part, Delta::M m, std::int64_t want,
                     std::int64_t got) {
      if (m == Delta::M::exact && got != want) {
        std::ostringstream os;
        os << "delta mismatch at '" << what << "': " << part << " changed by "
           << got << ", expected exactly " << want;
        fail(os.str());
      }
      if (m == Delta::M::atMost && got > want) {
        std::ostringstream os;
        os << "delta mismatch at '" << what << "': " << part << " changed by "
           << got << ", expected at most " << want;
        fail(os.str());
      }
    };
    check("cursorPart", d.cm, d.cv, dc);
    check("flagPart", d.fm, d.fv, df);
    check("statePart", d.sm, d.sv, ds);
    if (attrib != nullptr && attrib->attemptOpen && !ucStep)
      attrib->attemptDelta += dc + df + ds;
    last_ = now;
  }

  if (opt_.sweeps) sweepNow();

  if (opt_.witnesses) {
    bool anyMove = false;
    for (const auto& [tid, t] : ops_)
      if (t.active && t.move) anyMove = true;
    if (anyMove) {
      WitnessSnap snap;
      std::vector<const SimNode*> chain = reachableChain(*world_);
      snap.reachable.insert(chain.begin(), chain.end());
      for (const SimNode* n : world_->nodes()) snap.nxt[n] = n->nxt.peek();
      for (auto& [tid, t] : ops_)
        if (t.active && t.move) t.window.push_back(snap);
    }
  }

  lastWhat_ = what;
}

void ScheduleMonitor::onScheduleStart(SimWorld& w) {
  world_ = &w;
  ops_.clear();
  cursorOf_.clear();
  cursors_.clear();
  infos_.clear();
  helping_.clear();
  abortSet_.clear();
  everUnreachable_.clear();
  frozen_.clear();
  stepsThisSchedule_ = 0;
  ++schedules_;
  lastWhat_ = "scheduleStart";
  std::vector<const SimNode*> chain = reachableChain(w);
  prevReach_.clear();
  prevReach_.insert(chain.begin(), chain.end());
  last_ = opt_.potential ? computePotential(config()) : PotentialState{};
  if (opt_.sweeps) {
    std::vector<std::string> viols = sweepInvariants(config());
    if (!viols.empty()) fail("setup left a dirty configuration: " + viols[0]);
  }
}

void ScheduleMonitor::onOpBegin(SimWorld& w, unsigned tid,
                                std::size_t opIndex, const PlannedOp& op) {
  world_ = &w;
  if (op.custom != nullptr && opt_.potential)
    fail("the ledger only understands catalog operations; got custom op '" +
         op.label + "'");
  OpTrack t;
  t.active = true;
  t.code = op.op;
  t.opIndex = opIndex;
  t.label = op.label;
  t.update = isUpdate(op.op);
  // Custom port-level programs carry no catalog semantics: never classify
  // them as read-only or as moves.
  t.readOnly = !t.update && op.custom == nullptr;
  t.move = op.custom == nullptr &&
           (op.op == OpCode::moveLeft || op.op == OpCode::moveRight);
  t.attempts = t.update ? 0 : 1;  // update attempts arrive as events
  t.cDot = static_cast<std::uint64_t>(
      w.list.activeCursors.load(std::memory_order_relaxed));
  if (t.cDot == 0) t.cDot = 1;
  const bool update = t.update;
  ops_[tid] = std::move(t);
  Delta d = Delta::zero();
  if (update) {
    // A fresh update enters with phi_state = 2; the flag part grows by its
    // lose budget, its node_i suffix terms, and the u^2 term — untabled.
    d.flag(Delta::M::any, 0);
    d.state(Delta::M::exact, 2);
  }
  microStep("opBegin(" + op.label + ")", d, nullptr, false);
}

void ScheduleMonitor::onAccess(SimWorld& w, unsigned tid,
                               const PendingAccess& p, std::uint64_t) {
  world_ = &w;
  const SimWorld::CellRecord& rec = w.cells().at(p.cell->id);
  const AccessRole role = p.role.role;
  const int idx = p.role.index;

  OpTrack* own = track(tid);
  if (opt_.readOnlyMoves && own != nullptr && own->readOnly &&
      p.kind != AccessKind::read)
    fail("read-only operation '" + own->label + "' issued a " +
         toString(p.kind) + " (" + toString(role) + ")");

  if (p.kind == AccessKind::read && isPointerReadRole(role) && p.value == 0)
    fail(std::string("null pointer read at ") + toString(role));

  if (isHelpRole(role) && helping_.find(tid) == helping_.end())
    fail(std::string(toString(role)) + " outside help()");

  Delta d = Delta::zero();
  OpTrack* attrib = isHelpRole(role) ? helpedCreatorTrack(tid) : own;
  bool uc = isUcRole(role);
  if (uc) attrib = nullptr;

  switch (role) {
    case AccessRole::flagCas: {
      const auto* I = simDecode<const SimInfo*>(p.desired);
      auto it = infos_.find(I);
      if (it == infos_.end()) fail("flag CAS for an unseen descriptor");
      if (helping_.at(tid) != static_cast<const void*>(I))
        fail("flag CAS descriptor differs from the helped descriptor");
      if (idx < 0 || idx > 2) fail("flag CAS without a node index");
      InfoTrack& itk = it->second;
      const auto* target = static_cast<const SimNode*>(rec.owner);
      const auto i = static_cast<std::size_t>(idx);
      if (p.casOk) {
        if (itk.flagTried[i])
          fail("a non-first flag CAS of the same descriptor succeeded");
        itk.flagTried[i] = true;
        if (attrib == nullptr) fail("flag CAS success with finished creator");
        for (const SimNode* u : w.nodes())
          if (u->nxt.peek() == target) abortSet_.insert(u);
        rechargeAfterFlag(target, itk.creatorTid);
        d.flag(Delta::M::atMost, -3);
      } else if (!itk.flagTried[i]) {
        itk.flagTried[i] = true;
        if (attrib == nullptr)
          fail("first flag CAS failure with finished creator");
        attrib->lose[i] = 2;
        d.flag(Delta::M::exact, -1);
      }
      break;
    }
    case AccessRole::stateWrite: {
      const std::size_t n = rec.history.size();
      const bool first =
          n >= 2 && simDecode<NodeState>(rec.history[n - 2]) ==
                        NodeState::ordinary;
      if (first) {
        if (attrib == nullptr) fail("first state write with finished creator");
        for (auto& [t2, trk] : ops_)
          if (trk.active && trk.update) trk.phiState = 2;
        d.state(Delta::M::atMost,
                2 * static_cast<std::int64_t>(attrib->cDot));
      }
      break;
    }
    case AccessRole::forwardCas: {
      if (p.casOk) {
        if (attrib == nullptr) fail("forward CAS success with finished creator");
        abortSet_.insert(static_cast<const SimNode*>(rec.owner));
        rechargeAll();
        const auto c = static_cast<std::int64_t>(attrib->cDot);
        d.cursor(Delta::M::atMost, c);
        d.flag(Delta::M::atMost, 63 * c);
        d.state(Delta::M::atMost, 2 * c);
      }
      break;
    }
    case AccessRole::backwardCas: {
      if (p.casOk) {
        if (attrib == nullptr)
          fail("backward CAS success with finished creator");
        rechargeAll();
        const auto c = static_cast<std::int64_t>(attrib->cDot);
        d.flag(Delta::M::atMost, 9 * c);
        d.state(Delta::M::atMost, 2 * c);
      }
      break;
    }
    case AccessRole::commitWrite:
    case AccessRole::abortWrite: {
      const std::size_t n = rec.history.size();
      const bool first =
          n >= 2 && simDecode<InfoStatus>(rec.history[n - 2]) ==
                        InfoStatus::inProgress;
      if (first) {
        const auto* I = static_cast<const SimInfo*>(rec.owner);
        for (const SimNode* u : w.nodes())
          if (u->info.peek() == I) abortSet_.erase(u);
        if (role == AccessRole::commitWrite) {
          if (attrib == nullptr) fail("first commit with finished creator");
          d.flag(Delta::M::atMost,
                 27 * static_cast<std::int64_t>(attrib->cDot));
        }
        // First abort write is exact zero: the flag drops of the
        // descriptor's flagged nodes cancel against their abort resets.
      }
      break;
    }
    case AccessRole::newNxtLocal:
      fail("private-node store surfaced as a scheduled access");
    default:
      break;  // reads and duplicate writes leave the potential unchanged
  }

  std::string what(toString(role));
  if (idx >= 0) what += "[" + std::to_string(idx) + "]";
  if (p.kind == AccessKind::cas) what += p.casOk ? ":ok" : ":fail";
  microStep(what, d, attrib, uc);
}

void ScheduleMonitor::onGhostEvent(SimWorld& w, unsigned tid,
                                   const GhostEvent& e) {
  world_ = &w;
  using K = GhostEvent::Kind;
  Delta d = Delta::zero();
  OpTrack* attrib = nullptr;
  bool uc = false;
  std::string what;

  switch (e.kind) {
    case K::cursorCreate: {
      cursorOf_[tid] = e.cursor;
      cursors_[e.cursor] = static_cast<const SimNode*>(e.node);
      what = "cursorCreate";
      break;
    }
    case K::cursorDestroy: {
      cursors_.erase(e.cursor);
      d.cursor(Delta::M::atMost, 0);
      what = "cursorDestroy";
      break;
    }
    case K::hop: {
      auto it = cursors_.find(e.cursor);
      if (it == cursors_.end()) fail("hop of an unknown cursor");
      it->second = static_cast<const SimNode*>(e.node);
      OpTrack* own = track(tid);
      if (own == nullptr) fail("hop outside an operation");
      ++own->ucIters;
      uc = true;
      d.cursor(Delta::M::exact, -1);
      what = e.viaCopy ? "hop(copy)" : "hop(nxt)";
      break;
    }
    case K::cursorAssign: {
      // A createCursor op may target a handle destroyed earlier in the same
      // schedule; every other site requires a registered cursor.
      auto it = cursors_.find(e.cursor);
      if (it == cursors_.end()) {
        if (e.site != GhostEvent::AssignSite::create)
          fail("assignment to an unknown cursor");
        it = cursors_.emplace(e.cursor, nullptr).first;
        cursorOf_[tid] = e.cursor;
      }
      const SimNode* prev = it->second;
      it->second = static_cast<const SimNode*>(e.node);
      OpTrack* own = track(tid);
      using S = GhostEvent::AssignSite;
      switch (e.site) {
        case S::create:
        case S::reset:
          d.cursor(Delta::M::atMost, 0);
          what = e.site == S::create ? "assign(create)" : "assign(reset)";
          break;
        case S::insCommit:
        case S::delCommit:
          d.cursor(Delta::M::exact, -1);
          attrib = own;
          what = e.site == S::insCommit ? "assign(insCommit)"
                                        : "assign(delCommit)";
          break;
        case S::moveRightStep:
        case S::moveLeftPlain:
        case S::moveLeftCopy:
        case S::moveLeftPrv: {
          d.cursor(Delta::M::any, 0);
          if (own != nullptr && own->move) {
            own->moveSrc = prev;
            own->moveDst = static_cast<const SimNode*>(e.node);
          }
          what = "assign(move)";
          break;
        }
        case S::none:
          fail("cursor assignment without a site");
      }
      break;
    }
    case K::attemptBegin: {
      OpTrack* own = track(tid);
      if (own == nullptr || !own->update)
        fail("attemptBegin outside an update");
      if (own->attemptOpen && opt_.potential && own->attemptDelta > -1) {
        std::ostringstream os;
        os << "unsuccessful attempt of '" << own->label
           << "' changed the potential by " << own->attemptDelta
           << " (needs <= -1)";
        fail(os.str());
      }
      own->attemptOpen = true;
      ++own->attempts;
      own->attemptDelta = 0;
      what = "attemptBegin";
      break;
    }
    case K::checkInfoFail: {
      OpTrack* own = track(tid);
      if (own == nullptr || !own->update)
        fail("checkInfo failure outside an update");
      attrib = own;
      using F = GhostEvent::FailMode;
      switch (e.fail) {
        case F::inProgress:
        case F::infoMismatch: {
          if (e.index < 0 || e.index > 2) fail("checkInfo fail without index");
          const auto i = static_cast<std::size_t>(e.index);
          if (own->lose[i] > 0) --own->lose[i];
          d.flag(Delta::M::exact, -1);
          what = e.fail == F::inProgress ? "checkInfoFail(inProgress)"
                                         : "checkInfoFail(infoMismatch)";
          break;
        }
        case F::stateNotOrdinary: {
          if (own->phiState > 0) --own->phiState;
          d.state(Delta::M::exact, -1);
          what = "checkInfoFail(state)";
          break;
        }
        default:
          what = "checkInfoFail(other)";
          break;
      }
      break;
    }
    case K::helpEnter: {
      if (helping_.count(tid)) fail("nested help()");
      infos_.try_emplace(e.info, InfoTrack{tid, {false, false, false}});
      helping_[tid] = e.info;
      what = "helpEnter";
      break;
    }
    case K::helpExit: {
      helping_.erase(tid);
      what = "helpExit";
      break;
    }
    default:
      what = "event";
      break;
  }
  microStep(what, d, attrib, uc);
}

void ScheduleMonitor::onOpEnd(SimWorld& w, unsigned tid, std::size_t,
                              const Response& r) {
  world_ = &w;
  OpTrack* own = track(tid);
  if (own == nullptr) fail("opEnd without a running op");
  const OpTrack t = *own;

  if (t.update && opt_.potential) {
    if (!t.attemptOpen) fail("update finished without an attempt");
    if (r == Response::yes()) {
      const std::int64_t bound = 106 * static_cast<std::int64_t>(t.cDot);
      if (t.attemptDelta > bound) {
        std::ostringstream os;
        os << "successful attempt of '" << t.label
           << "' changed the potential by " << t.attemptDelta << " (bound "
           << bound << ")";
        fail(os.str());
      }
    } else if (t.attemptDelta > 0) {
      fail("final attempt of a non-true update increased the potential");
    }
  }

  if (t.move && opt_.witnesses && r == Response::yes()) {
    if (t.moveDst == nullptr || t.moveSrc == nullptr)
      fail("move returned true without assigning the cursor");
    bool found = false;
    for (const WitnessSnap& s : t.window) {
      if (!s.reachable.count(t.moveDst)) continue;
      if (t.code == OpCode::moveLeft) {
        auto it = s.nxt.find(t.moveDst);
        if (it != s.nxt.end() && it->second == t.moveSrc) found = true;
      } else {
        auto it = s.nxt.find(t.moveSrc);
        if (it != s.nxt.end() && it->second == t.moveDst) found = true;
      }
      if (found) break;
    }
    if (!found)
      fail("move witness: no configuration during '" + t.label +
           "' had the destination reachable adjacent to the source");
  }

  if (opt_.collectStepRecords)
    stepRecords_.push_back(
        StepBoundRecord{t.code, t.attempts, t.ucIters, t.cDot});

  Delta d = Delta::zero();
  if (t.code == OpCode::destroyCursor) {
    cursors_.erase(cursorOf_.at(tid));
    d.cursor(Delta::M::atMost, 0);
  } else if (t.update) {
    d.flag(Delta::M::any, 0);
    d.state(Delta::M::atMost, 0);
  }
  own->active = false;
  microStep("opEnd(" + t.label + ")", d, nullptr, false);
}

void ScheduleMonitor::onScheduleEnd(SimWorld& w, const ScheduleOutcome&) {
  world_ = &w;
  for (const auto& [tid, t] : ops_)
    if (t.active) fail("schedule ended with a running op");
  if (opt_.sweeps) sweepNow();
}

}  // namespace nbdll
