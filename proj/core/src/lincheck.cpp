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

#include "nbdll/lincheck.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace nbdll {

std::vector<LinOp> parseHistory(const History& h) {
  std::vector<LinOp> ops;
  std::map<unsigned, std::size_t> open;  // thread -> index of pending op
  for (const HistoryEvent& e : h) {
    if (e.kind == HistoryEvent::Kind::invoke) {
      if (open.count(e.thread))
        throw std::invalid_argument(
            "thread " + std::to_string(e.thread) +
            " invoked at seq " + std::to_string(e.seq) +
            " while an operation was still open");
      LinOp o;
      o.thread = e.thread;
      o.op = e.op;
      o.arg = e.arg;
      o.invokeSeq = e.seq;
      open[e.thread] = ops.size();
      ops.push_back(o);
    } else {
      auto it = open.find(e.thread);
      if (it == open.end())
        throw std::invalid_argument(
            "thread " + std::to_string(e.thread) + " responded at seq " +
            std::to_string(e.seq) + " without an open operation");
      LinOp& o = ops[it->second];
      o.completed = true;
      o.resp = e.resp;
      o.respondSeq = e.seq;
      open.erase(it);
    }
  }
  return ops;
}

namespace {

// The abstract state a linearization prefix has reached: the model plus the
// thread -> cursor-name binding (names are minted as createCursor
// operations linearize).
struct ModelCtx {
  SeqModel model;
  std::map<unsigned, std::uint64_t> names;
};

ModelCtx initialCtx(const HistorySetup& setup) {
  ModelCtx m;
  if (!setup.initialItems.empty()) {
    // Load through a scratch cursor parked at EOL; inserting before EOL
    // appends, so items land in the given order.
    std::uint64_t loader = m.model.createCursor(~0ull >> 1);
    for (const Value& v : setup.initialItems) {
      Response r = m.model.insertBefore(loader, v);
      if (r != Response::yes())
        throw std::invalid_argument("setup items failed to load");
    }
    m.model.destroyCursor(loader);
  }
  for (unsigned t = 0; t < setup.threadStart.size(); ++t) {
    std::uint64_t name = m.model.createCursor(t);
    for (unsigned k = 0; k < setup.threadStart[t]; ++k) {
      Response r = m.model.moveRight(name);
      if (r != Response::yes())
        throw std::invalid_argument("thread start index exceeds the list");
    }
    m.names[t] = name;
  }
  return m;
}

// Applies one operation instance to the abstract state and returns the
// model's response. createCursor on a thread that already holds a handle
// re-parks it (the concurrent list reuses the process-local handle).
Response applyOp(ModelCtx& m, const LinOp& o) {
  if (o.op == OpCode::createCursor) {
    auto it = m.names.find(o.thread);
    if (it == m.names.end()) {
      m.names[o.thread] = m.model.createCursor(o.thread);
      return Response::ackd();
    }
    return m.model.resetCursor(it->second);
  }
  auto it = m.names.find(o.thread);
  if (it == m.names.end())
    throw std::invalid_argument("thread " + std::to_string(o.thread) +
                                " has no cursor for " + toString(o.op));
  if (o.op == OpCode::destroyCursor) {
    Response r = m.model.destroyCursor(it->second);
    m.names.erase(it);
    return r;
  }
  return m.model.apply(o.op, it->second, o.arg);
}

// Canonical key of an abstract state: list values in order, then per thread
// the cursor's item position and invalidation bits. Thread ids (not minted
// cursor names) keep keys stable across linearization orders.
std::string stateKey(const ModelCtx& m) {
  std::string k;
  for (const SeqItem& it : m.model.items()) {
    k += it.value.toString();
    k += ',';
  }
  k += '|';
  for (const auto& [t, name] : m.names) {
    const SeqCursor* c = m.model.findCursor(name);
    std::size_t pos = 0;
    for (const SeqItem& it : m.model.items()) {
      if (it.id == c->itemId) break;
      ++pos;
    }
    k += std::to_string(t);
    k += ':';
    k += std::to_string(pos);
    if (c->invDel) k += 'D';
    if (c->invIns) k += 'I';
    k += ';';
  }
  return k;
}

enum class SearchVerdict : std::uint8_t { found, exhausted, budget };

class Searcher {
 public:
  Searcher(const std::vector<LinOp>& ops, const HistorySetup& setup,
           std::uint64_t budget, std::uint64_t& states)
      : ops_(ops), setup_(setup), budget_(budget), states_(states) {
    if (ops.size() > 63)
      throw std::invalid_argument(
          "histories beyond 63 operations are not supported");
    std::map<unsigned, std::size_t> lastOfThread;
    prev_.assign(ops_.size(), kNone);
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      auto it = lastOfThread.find(ops_[i].thread);
      if (it != lastOfThread.end()) prev_[i] = it->second;
      lastOfThread[ops_[i].thread] = i;
      if (ops_[i].completed) completedMask_ |= std::uint64_t{1} << i;
    }
  }

  SearchVerdict run() {
    witness_.clear();
    path_.clear();
    seen_.clear();
    budgetHit_ = false;
    bool found = dfs(initialCtx(setup_), 0);
    if (found) return SearchVerdict::found;
    return budgetHit_ ? SearchVerdict::budget : SearchVerdict::exhausted;
  }

  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bool dfs(const ModelCtx& m, std::uint64_t mask) {
    if (budgetHit_) return false;
    if (++states_ > budget_) {
      budgetHit_ = true;
      return false;
    }
    if ((mask & completedMask_) == completedMask_) {
      witness_ = path_;
      return true;
    }
    if (!seen_.insert({mask, stateKey(m)}).second) return false;

    // An operation may linearize next only if it is its thread's next
    // unlinearized operation and no unlinearized completed operation
    // responded before it was invoked.
    std::uint64_t minRespond = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < ops_.size(); ++i)
      if (!(mask >> i & 1) && ops_[i].completed)
        minRespond = std::min(minRespond, ops_[i].respondSeq);

    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (mask >> i & 1) continue;
      if (prev_[i] != kNone && !(mask >> prev_[i] & 1)) continue;
      if (minRespond < ops_[i].invokeSeq) continue;
      ModelCtx next = m;
      Response r = applyOp(next, ops_[i]);
      if (ops_[i].completed && r != ops_[i].resp) continue;
      path_.push_back(i);
      if (dfs(next, mask | std::uint64_t{1} << i)) return true;
      path_.pop_back();
    }
    return false;
  }

  const std::vector<LinOp>& ops_;
  const HistorySetup& setup_;
  std::uint64_t budget_;
  std::uint64_t& states_;
  std::uint64_t completedMask_ = 0;
  std::vector<std::size_t> prev_;
  std::set<std::pair<std::uint64_t, std::string>> seen_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> witness_;
  bool budgetHit_ = false;
};

// Replays a witness against a fresh model and verifies every completed
// operation's recorded response. A mismatch is a checker defect, not a
// property of the history.
void verifyWitness(const std::vector<LinOp>& ops, const HistorySetup& setup,
                   const std::vector<std::size_t>& witness) {
  ModelCtx m = initialCtx(setup);
  std::uint64_t linSet = 0;
  for (std::size_t i : witness) {
    const LinOp& o = ops.at(i);
    Response r = applyOp(m, o);
    if (o.completed && r != o.resp)
      throw std::logic_error("witness replay diverged from the recorded "
                             "response of op " +
                             std::to_string(i));
    linSet |= std::uint64_t{1} << i;
  }
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].completed && !(linSet >> i & 1))
      throw std::logic_error("witness omitted completed op " +
                             std::to_string(i));
}

}  // namespace

LinResult checkLinearizable(const History& h, const HistorySetup& setup,
                            std::uint64_t stateBudget) {
  LinResult res;
  std::vector<LinOp> ops = parseHistory(h);

  Searcher full(ops, setup, stateBudget, res.statesExplored);
  SearchVerdict v = full.run();
  if (v == SearchVerdict::found) {
    res.kind = LinResult::Kind::ok;
    res.witness = full.witness();
    verifyWitness(ops, setup, res.witness);
    return res;
  }
  if (v == SearchVerdict::budget) {
    res.kind = LinResult::Kind::inconclusive;
    res.detail = "state budget of " + std::to_string(stateBudget) +
                 " exhausted before a verdict";
    return res;
  }

  // Definitively non-linearizable. Locate the shortest violating prefix:
  // linearizability is prefix-closed, so the first prefix with no witness is
  // the shortest one.
  res.kind = LinResult::Kind::violation;
  for (std::size_t len = 1; len <= h.size(); ++len) {
    History prefix(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(len));
    std::vector<LinOp> prefixOps = parseHistory(prefix);
    Searcher s(prefixOps, setup, stateBudget, res.statesExplored);
    SearchVerdict pv = s.run();
    if (pv == SearchVerdict::found) continue;
    res.shortestViolatingPrefix = std::move(prefix);
    if (pv == SearchVerdict::budget)
      res.detail = "prefix scan exhausted the budget; reported prefix is the "
                   "shortest one certified, not necessarily minimal";
    else
      res.detail = "no linearization of the first " + std::to_string(len) +
                   " events";
    return res;
  }
  // Unreachable: the full history itself failed above.
  res.shortestViolatingPrefix = h;
  res.detail = "no linearization of the complete history";
  return res;
}

std::string witnessToString(const History& h, const LinResult& r) {
  std::ostringstream os;
  if (r.kind != LinResult::Kind::ok) {
    os << "no witness (verdict is not ok)";
    return os.str();
  }
  std::vector<LinOp> ops = parseHistory(h);
  os << "witness order (operations take effect between their invocation and "
        "response; positions below are a reading aid, not pinned "
        "instrumentation points):\n";
  std::size_t k = 1;
  for (std::size_t i : r.witness) {
    const LinOp& o = ops.at(i);
    os << "  " << k++ << ". t" << o.thread << " " << toString(o.op);
    if (o.op == OpCode::insertBefore) os << "(" << o.arg.toString() << ")";
    if (o.completed)
      os << " -> " << o.resp.toString() << "  [seq " << o.invokeSeq << ".."
         << o.respondSeq << "]";
    else
      os << " -> pending (completed by closure)  [seq " << o.invokeSeq
         << "..]";
    os << "\n";
  }
  std::uint64_t inWitness = 0;
  for (std::size_t i : r.witness) inWitness |= std::uint64_t{1} << i;
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (!ops[i].completed && !(inWitness >> i & 1))
      os << "  -. t" << ops[i].thread << " " << toString(ops[i].op)
         << " pending, dropped by closure  [seq " << ops[i].invokeSeq
         << "..]\n";
  return os.str();
}

}  // namespace nbdll
