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

#include "nbdll/bench.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nbdll/list.hpp"

namespace nbdll {
namespace {

// Per-thread tallies, merged after the threads join.
struct Tally {
  std::uint64_t ops = 0;
  std::uint64_t inserts = 0;
  std::uint64_t deletes = 0;
  std::uint64_t moves = 0;
  std::uint64_t invalid = 0;
  OpStats stats;

  void merge(const Tally& o) {
    ops += o.ops;
    inserts += o.inserts;
    deletes += o.deletes;
    moves += o.moves;
    invalid += o.invalid;
    stats.merge(o.stats);
  }
};

std::uint64_t mixSeed(std::uint64_t seed, unsigned trial, unsigned thread) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (trial * 8191ULL + thread + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Tallies one operation invocation; returns whether it reported true.
bool countOp(Tally& t, const Response& r) {
  ++t.ops;
  if (r.kind == Response::Kind::invalidCursor) ++t.invalid;
  return r.kind == Response::Kind::retTrue;
}

// The "ratio" worker: mixed single-operation steps on a shared list.
void ratioWorker(List& list, const BenchConfig& cfg, unsigned trial,
                 unsigned tid, const std::atomic<bool>& go,
                 const std::atomic<bool>& stop, Tally& out) {
  std::mt19937_64 rng(mixSeed(cfg.seed, trial, tid));
  std::uniform_int_distribution<unsigned> pct(0, 99);
  std::uniform_int_distribution<unsigned> coin(0, 1);
  const std::uint64_t valueRange = cfg.size ? cfg.size * 4 : 1024;
  std::uniform_int_distribution<std::int64_t> val(
      0, static_cast<std::int64_t>(valueRange) - 1);

  Tally t;
  while (!go.load(std::memory_order_acquire)) std::this_thread::yield();

  auto c = list.createCursor();
  while (!stop.load(std::memory_order_relaxed)) {
    unsigned r = pct(rng);
    if (r < cfg.insertPct) {
      if (countOp(t, list.insertBefore(c, Value(val(rng))))) ++t.inserts;
      if (std::generate_canonical<double, 53>(rng) < cfg.extraMoveLeftProb) {
        ++t.moves;
        countOp(t, list.moveLeft(c));
      }
    } else if (r < cfg.insertPct + cfg.deletePct) {
      if (countOp(t, list.deleteItem(c))) ++t.deletes;
    } else {
      ++t.moves;
      Response resp = coin(rng) ? list.moveRight(c) : list.moveLeft(c);
      countOp(t, resp);
      if (resp.kind == Response::Kind::retFalse) {
        // Parked against an end of the list: re-park at the first item so
        // the walk keeps sampling the interior.
        countOp(t, list.resetCursor(c));
      }
    }
  }
  list.destroyCursor(c);
  out = t;
}

// One logical "sorted" step: position by moveRight from a reset cursor to
// the first item with value >= k, then insert (skip when present) or delete
// (absent is a no-op). invalidCursor anywhere restarts the step.
void sortedStep(List& list, List::Cursor& c, std::int64_t k, bool insert,
                Tally& t) {
  for (;;) {  // restart loop
    countOp(t, list.resetCursor(c));
    for (;;) {  // scan loop
      Response g = list.get(c);
      countOp(t, g);
      if (g.kind == Response::Kind::invalidCursor) break;  // restart
      if (g.kind != Response::Kind::value)
        throw std::logic_error("bench: get returned a non-value response");
      Value v = g.val;
      if (v.isEol() || v >= Value(k)) {
        if (insert) {
          if (!v.isEol() && v == Value(k)) return;  // present: skip
          Response ir = list.insertBefore(c, Value(k));
          if (countOp(t, ir)) ++t.inserts;
          if (ir.kind == Response::Kind::invalidCursor) break;  // restart
          return;
        }
        if (v.isEol() || v != Value(k)) return;  // absent: no-op
        Response dr = list.deleteItem(c);
        if (countOp(t, dr)) ++t.deletes;
        if (dr.kind == Response::Kind::invalidCursor) break;  // restart
        return;
      }
      ++t.moves;
      Response m = list.moveRight(c);
      countOp(t, m);
      if (m.kind == Response::Kind::invalidCursor) break;  // restart
      // A false moveRight means the cursor reached EOL between the get and
      // the move; the next get sees EOL and closes the step.
    }
  }
}

void sortedWorker(List& list, const BenchConfig& cfg, unsigned trial,
                  unsigned tid, const std::atomic<bool>& go,
                  const std::atomic<bool>& stop, Tally& out) {
  std::mt19937_64 rng(mixSeed(cfg.seed, trial, tid));
  std::uniform_int_distribution<std::int64_t> key(
      0, static_cast<std::int64_t>(cfg.size ? cfg.size : 1) - 1);
  std::uniform_int_distribution<unsigned> coin(0, 1);

  Tally t;
  while (!go.load(std::memory_order_acquire)) std::this_thread::yield();

  auto c = list.createCursor();
  while (!stop.load(std::memory_order_relaxed))
    sortedStep(list, c, key(rng), coin(rng) == 0, t);
  list.destroyCursor(c);
  out = t;
}

// Appends the values in order through a scratch cursor parked at EOL.
std::uint64_t loadInitial(List& list, const BenchConfig& cfg) {
  auto c = list.createCursor();  // fresh list: parked at EOL
  std::uint64_t n = 0;
  if (cfg.scenario == "sorted") {
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(cfg.size); k += 2) {
      list.insertBefore(c, Value(k));
      ++n;
    }
  } else {
    for (std::uint64_t i = 0; i < cfg.size; ++i) {
      list.insertBefore(c, Value(static_cast<std::int64_t>(i)));
      ++n;
    }
  }
  list.destroyCursor(c);
  return n;
}

}  // namespace

std::string BenchConfig::ratioString() const {
  std::ostringstream os;
  os << insertPct << ":" << deletePct << ":" << movePct;
  return os.str();
}

Json BenchConfig::toJson() const {
  Json j;
  j["scenario"] = scenario;
  j["threads"] = threads;
  j["size"] = size;
  j["ratio"] = ratioString();
  j["durationSec"] = durationSec;
  j["trials"] = trials;
  j["warmup"] = warmup;
  j["seed"] = seed;
  j["extraMoveLeftProb"] = extraMoveLeftProb;
  j["instrument"] = instrument;
  return j;
}

double BenchResult::meanOpsPerSec() const {
  if (trials.empty()) return 0.0;
  double s = 0;
  for (const auto& t : trials) s += t.opsPerSec();
  return s / static_cast<double>(trials.size());
}

Json BenchResult::toJson() const {
  Json j;
  j["config"] = config.toJson();
  j["conservationOk"] = conservationOk;
  j["sortedOk"] = sortedOk;
  j["meanOpsPerSec"] = meanOpsPerSec();
  if (!note.empty()) j["note"] = note;
  Json rows = Json::array();
  for (const auto& t : trials) {
    Json r;
    r["trial"] = t.trial;
    r["opsTotal"] = t.opsTotal;
    r["opsPerSec"] = t.opsPerSec();
    r["inserts"] = t.inserts;
    r["deletes"] = t.deletes;
    r["moves"] = t.moves;
    r["invalidCursor"] = t.invalidCursor;
    r["finalLen"] = t.finalLen;
    rows.push_back(r);
  }
  j["trials"] = rows;
  if (config.instrument) {
    Json s;
    s["attempts"] = instrumented.attempts;
    s["ucIterations"] = instrumented.ucIterations;
    s["reads"] = instrumented.reads;
    s["writes"] = instrumented.writes;
    s["localWrites"] = instrumented.localWrites;
    s["flagCasIssued"] = instrumented.flagCasIssued;
    s["flagCasSucceeded"] = instrumented.flagCasSucceeded;
    s["forwardCasIssued"] = instrumented.forwardCasIssued;
    s["forwardCasSucceeded"] = instrumented.forwardCasSucceeded;
    s["backwardCasIssued"] = instrumented.backwardCasIssued;
    s["backwardCasSucceeded"] = instrumented.backwardCasSucceeded;
    s["maxActiveCursors"] = instrumented.maxActiveCursors;
    j["instrumented"] = s;
  }
  return j;
}

BenchResult runBench(const BenchConfig& cfg, std::ostream* log) {
  if (cfg.scenario != "ratio" && cfg.scenario != "sorted")
    throw std::invalid_argument("bench: unknown scenario '" + cfg.scenario +
                                "' (expected ratio or sorted)");
  if (cfg.scenario == "ratio" &&
      cfg.insertPct + cfg.deletePct + cfg.movePct != 100)
    throw std::invalid_argument("bench: ratio percentages must sum to 100");
  if (cfg.threads == 0) throw std::invalid_argument("bench: threads must be > 0");

  BenchResult res;
  res.config = cfg;

  const unsigned totalTrials = cfg.warmup + cfg.trials;
  for (unsigned trial = 0; trial < totalTrials; ++trial) {
    List list;
    const std::uint64_t initialLen = loadInitial(list, cfg);

    std::atomic<bool> go{false}, stop{false};
    std::vector<Tally> tallies(cfg.threads);
    std::vector<std::thread> workers;
    workers.reserve(cfg.threads);
    for (unsigned tid = 0; tid < cfg.threads; ++tid) {
      workers.emplace_back([&, tid] {
        OpStats stats;
        if (cfg.instrument) List::setStats(&stats);
        if (cfg.scenario == "ratio")
          ratioWorker(list, cfg, trial, tid, go, stop, tallies[tid]);
        else
          sortedWorker(list, cfg, trial, tid, go, stop, tallies[tid]);
        if (cfg.instrument) List::setStats(nullptr);
        tallies[tid].stats = stats;
      });
    }

    auto t0 = std::chrono::steady_clock::now();
    go.store(true, std::memory_order_release);
    std::this_thread::sleep_for(std::chrono::duration<double>(cfg.durationSec));
    stop.store(true, std::memory_order_relaxed);
    for (auto& w : workers) w.join();
    auto t1 = std::chrono::steady_clock::now();

    Tally total;
    for (auto& t : tallies) total.merge(t);

    // Quiescent checks: exact conservation, and sortedness for "sorted".
    std::vector<Value> items = list.traverse();
    if (items.empty() || !items.back().isEol())
      throw std::logic_error("bench: traversal did not end at EOL");
    items.pop_back();
    const std::uint64_t finalLen = items.size();
    const std::uint64_t expectedLen =
        initialLen + total.inserts - total.deletes;
    if (finalLen != expectedLen && res.conservationOk) {
      res.conservationOk = false;
      std::ostringstream os;
      os << "conservation violated in trial " << trial << ": final length "
         << finalLen << " != " << initialLen << " + " << total.inserts
         << " - " << total.deletes;
      res.note = os.str();
    }
    if (cfg.scenario == "sorted") {
      for (std::size_t i = 1; i < items.size(); ++i) {
        if (!(items[i - 1] < items[i])) {
          if (res.sortedOk) {
            res.sortedOk = false;
            std::ostringstream os;
            os << "sortedness violated in trial " << trial << " at index "
               << i << ": " << items[i - 1].toString()
               << " !< " << items[i].toString();
            res.note = os.str();
          }
          break;
        }
      }
    }

    const bool measured = trial >= cfg.warmup;
    if (measured) {
      BenchTrial row;
      row.trial = trial - cfg.warmup + 1;
      row.opsTotal = total.ops;
      row.seconds = std::chrono::duration<double>(t1 - t0).count();
      row.inserts = total.inserts;
      row.deletes = total.deletes;
      row.moves = total.moves;
      row.invalidCursor = total.invalid;
      row.finalLen = finalLen;
      res.trials.push_back(row);
      res.instrumented.merge(total.stats);
    }
    if (log) {
      *log << (measured ? "trial " : "warmup ")
           << (measured ? trial - cfg.warmup + 1 : trial + 1) << "/"
           << (measured ? cfg.trials : cfg.warmup) << ": " << total.ops
           << " ops, final length " << finalLen << "\n";
    }
  }
  return res;
}

void writeCsv(std::ostream& os, const BenchResult& r) {
  const BenchConfig& c = r.config;
  os << "# scenario=" << c.scenario << " threads=" << c.threads
     << " size=" << c.size << " ratio=" << c.ratioString()
     << " duration=" << c.durationSec << " trials=" << c.trials
     << " warmup=" << c.warmup << " seed=" << c.seed
     << " extra_move_left_after_insert_prob=" << c.extraMoveLeftProb
     << " instrument=" << (c.instrument ? 1 : 0) << "\n";
  os << "# conservation=" << (r.conservationOk ? "exact" : "VIOLATED")
     << " sorted_traversals=" << (c.scenario == "sorted"
                                      ? (r.sortedOk ? "strict" : "VIOLATED")
                                      : "n/a")
     << "\n";
  os << "scenario,threads,trial,ops_total,ops_per_sec,inserts,deletes,moves,"
        "invalid_cursor,final_len\n";
  for (const auto& t : r.trials) {
    os << c.scenario << "," << c.threads << "," << t.trial << "," << t.opsTotal
       << "," << std::fixed << std::setprecision(2) << t.opsPerSec()
       << std::defaultfloat << "," << t.inserts << "," << t.deletes << ","
       << t.moves << "," << t.invalidCursor << "," << t.finalLen << "\n";
  }
}

}  // namespace nbdll
