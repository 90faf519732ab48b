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

#include "nbdll/stress.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "nbdll/list.hpp"
#include "nbdll/seq_model.hpp"

namespace nbdll {

namespace {

// Weighted choice of the next operation for equivalence programs. Weights
// keep the list short-to-medium and exercise every operation type often.
OpCode pickOp(std::mt19937_64& rng, std::size_t cursorCount) {
  if (cursorCount == 0) return OpCode::createCursor;
  struct WeightedOp {
    OpCode op;
    int weight;
  };
  const WeightedOp table[] = {
      {OpCode::createCursor, cursorCount < 5 ? 6 : 0},
      {OpCode::destroyCursor, 4},
      {OpCode::resetCursor, 10},
      {OpCode::get, 18},
      {OpCode::moveRight, 18},
      {OpCode::moveLeft, 14},
      {OpCode::insertBefore, 16},
      {OpCode::deleteItem, 14},
  };
  int total = 0;
  for (const auto& w : table) total += w.weight;
  int pick = static_cast<int>(rng() % static_cast<std::uint64_t>(total));
  for (const auto& w : table) {
    pick -= w.weight;
    if (pick < 0) return w.op;
  }
  return OpCode::get;
}

std::string divergenceNote(std::uint64_t program, std::uint64_t opIndex,
                           OpCode op, const Response& impl,
                           const Response& model) {
  std::ostringstream os;
  os << "program " << program << ", op " << opIndex << " (" << toString(op)
     << "): implementation returned " << impl.toString()
     << ", specification returned " << model.toString();
  return os.str();
}

std::string stateNote(std::uint64_t program, const std::vector<Value>& impl,
                      const std::vector<Value>& model, const char* which) {
  std::ostringstream os;
  os << "program " << program << ": final " << which << " diverges:";
  os << " implementation = [";
  for (const Value& v : impl) os << ' ' << v.toString();
  os << " ], specification = [";
  for (const Value& v : model) os << ' ' << v.toString();
  os << " ]";
  return os.str();
}

}  // namespace

SeqEquivResult runSeqEquivalence(std::uint64_t programs, std::uint64_t maxOps,
                                 std::uint64_t seed) {
  SeqEquivResult res;
  for (std::uint64_t p = 0; p < programs; ++p) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (p + 1)));
    List list;
    SeqModel model;
    std::vector<std::pair<List::Cursor, std::uint64_t>> cursors;

    std::uint64_t len = 1 + rng() % maxOps;
    for (std::uint64_t k = 0; k < len; ++k) {
      OpCode op = pickOp(rng, cursors.size());
      ++res.opCounts[static_cast<std::size_t>(op)];
      ++res.opsExecuted;

      if (op == OpCode::createCursor) {
        cursors.emplace_back(list.createCursor(), model.createCursor());
        continue;
      }
      std::size_t ci = rng() % cursors.size();
      auto& [cur, name] = cursors[ci];
      Value arg(static_cast<std::int64_t>(rng() % 1000));

      Response ri = list.apply(op, cur, arg);
      Response rm = model.apply(op, name, arg);
      if (ri != rm) {
        res.ok = false;
        res.firstDivergence = divergenceNote(p, k, op, ri, rm);
        return res;
      }
      if (op == OpCode::destroyCursor)
        cursors.erase(cursors.begin() + static_cast<std::ptrdiff_t>(ci));
    }

    std::vector<Value> want = model.values();
    std::vector<Value> fwd = list.traverse();
    if (fwd != want) {
      res.ok = false;
      res.firstDivergence = stateNote(p, fwd, want, "forward traversal");
      return res;
    }
    std::vector<Value> bwd = list.traverseBackward();
    if (bwd != want) {
      res.ok = false;
      res.firstDivergence = stateNote(p, bwd, want, "backward traversal");
      return res;
    }
    for (auto& [cur, name] : cursors) {
      Response ri = list.destroyCursor(cur);
      Response rm = model.destroyCursor(name);
      if (ri != rm) {
        res.ok = false;
        res.firstDivergence = divergenceNote(p, len, OpCode::destroyCursor, ri, rm);
        return res;
      }
    }
    ++res.programs;
  }
  return res;
}

ReadOnlyStressResult runReadOnlyStress(double seconds, unsigned updaterThreads,
                                       unsigned observerThreads,
                                       std::uint64_t seed) {
  ReadOnlyStressResult res;
  List list;
  std::atomic<bool> stop{false};
  std::atomic<bool> failed{false};
  std::atomic<std::uint64_t> observerOps{0}, updaterOps{0};
  std::mutex noteMutex;
  OpStats observerTotals;

  auto updater = [&](std::uint64_t tseed) {
    std::mt19937_64 rng(tseed);
    auto c = list.createCursor();
    std::int64_t net = 0;  // successful inserts minus successful deletes
    std::uint64_t local = 0;
    while (!stop.load(std::memory_order_relaxed)) {
      if (net >= 8) {
        (void)list.resetCursor(c);
        if (list.deleteItem(c) == Response::yes()) --net;
        ++local;
        continue;
      }
      Value v(static_cast<std::int64_t>(rng() % 1000));
      if (list.insertBefore(c, v) == Response::yes()) ++net;
      if (rng() % 2 == 0) (void)list.moveLeft(c);
      if (list.deleteItem(c) == Response::yes()) --net;
      if (rng() % 8 == 0) (void)list.resetCursor(c);
      local += 3;
    }
    updaterOps.fetch_add(local, std::memory_order_relaxed);
    list.destroyCursor(c);
  };

  auto observer = [&](std::uint64_t tseed) {
    std::mt19937_64 rng(tseed);
    auto c = list.createCursor();
    OpStats mine;
    std::uint64_t local = 0;
    while (!stop.load(std::memory_order_relaxed) &&
           !failed.load(std::memory_order_relaxed)) {
      OpStats s;
      List::setStats(&s);
      switch (rng() % 8) {
        case 0:
        case 1:
          (void)list.moveRight(c);
          break;
        case 2:
        case 3:
          (void)list.moveLeft(c);
          break;
        case 4:
        case 5:
        case 6:
          (void)list.get(c);
          break;
        default:
          (void)list.resetCursor(c);
          break;
      }
      List::setStats(nullptr);
      ++local;
      if (s.writes != 0 || s.localWrites != 0 || s.casIssued() != 0) {
        bool first = !failed.exchange(true);
        if (first) {
          std::lock_guard<std::mutex> lk(noteMutex);
          std::ostringstream os;
          os << "observer operation issued " << s.writes << " shared writes, "
             << s.localWrites << " local writes and " << s.casIssued()
             << " CAS";
          res.note = os.str();
        }
        break;
      }
      mine.merge(s);
    }
    observerOps.fetch_add(local, std::memory_order_relaxed);
    {
      std::lock_guard<std::mutex> lk(noteMutex);
      observerTotals.merge(mine);
    }
    list.destroyCursor(c);
  };

  std::vector<std::thread> threads;
  for (unsigned i = 0; i < updaterThreads; ++i)
    threads.emplace_back(updater, seed + i);
  for (unsigned i = 0; i < observerThreads; ++i)
    threads.emplace_back(observer, seed + 1000 + i);

  std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  stop.store(true);
  for (auto& t : threads) t.join();

  res.ok = !failed.load();
  res.observerOps = observerOps.load();
  res.updaterOps = updaterOps.load();
  res.observerTotals = observerTotals;
  if (res.ok && (res.observerTotals.writes != 0 ||
                 res.observerTotals.casIssued() != 0)) {
    res.ok = false;
    res.note = "aggregate observer counters nonzero";
  }
  return res;
}

}  // namespace nbdll
