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

#ifndef NBDLL_BENCH_HPP_
#define NBDLL_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbdll/json_util.hpp"
#include "nbdll/stats.hpp"

namespace nbdll {

// Workload configuration for the throughput benchmarks. Two scenarios:
//
//  "ratio"  — each thread draws operations from a fixed mix
//             (insertPct/deletePct/movePct, moves split evenly between
//             directions) against a pre-filled list of `size` items. After
//             each insertBefore the thread additionally issues a moveLeft
//             with probability extraMoveLeftProb (the freshly inserted item
//             becomes the cursor's left neighbour, so this samples the
//             backward pointer right after an insert).
//  "sorted" — the list is kept as a sorted set over keys [0, size). Each
//             logical step picks a key uniformly and either inserts it
//             (skipped when already present) or removes it. Positioning is
//             by moveRight from a reset cursor; a logical step restarts
//             from resetCursor whenever an operation reports invalidCursor.
//             Every quiescent traversal must be strictly sorted.
//
// The operation stream is a pure function of (seed, trial, thread): timing
// decides only how many operations of that stream get executed.
struct BenchConfig {
  std::string scenario = "ratio";  // "ratio" or "sorted"
  unsigned threads = 4;
  std::uint64_t size = 200;  // ratio: initial items; sorted: key range
  unsigned insertPct = 5;
  unsigned deletePct = 5;
  unsigned movePct = 90;
  double durationSec = 4.0;
  unsigned trials = 15;  // measured trials
  unsigned warmup = 2;   // discarded leading trials
  std::uint64_t seed = 1;
  double extraMoveLeftProb = 0.5;
  bool instrument = false;  // collect OpStats (adds per-op counter cost)

  std::string ratioString() const;  // "5:5:90"
  Json toJson() const;
};

// One measured trial, aggregated over all threads. Successful operations are
// those returning true; moves and ops count invocations. finalLen is the
// number of user items after the trial quiesced.
struct BenchTrial {
  unsigned trial = 0;  // 1-based within the measured trials
  std::uint64_t opsTotal = 0;
  double seconds = 0.0;
  std::uint64_t inserts = 0;
  std::uint64_t deletes = 0;
  std::uint64_t moves = 0;
  std::uint64_t invalidCursor = 0;
  std::uint64_t finalLen = 0;

  double opsPerSec() const { return seconds > 0 ? opsTotal / seconds : 0.0; }
};

struct BenchResult {
  BenchConfig config;
  std::vector<BenchTrial> trials;  // measured trials only
  // Every trial (warmup included) must satisfy, exactly,
  //   finalLen == initialLen + successful inserts - successful deletes.
  bool conservationOk = true;
  // "sorted" only: every quiescent traversal strictly increasing.
  bool sortedOk = true;
  std::string note;        // first check failure, empty when all pass
  OpStats instrumented;    // aggregated when config.instrument

  bool ok() const { return conservationOk && sortedOk; }
  double meanOpsPerSec() const;
  Json toJson() const;
};

// Runs the configured workload: warmup + measured trials, each on a fresh
// list, with the conservation and sortedness checks applied after every
// trial. Progress goes to log when given.
BenchResult runBench(const BenchConfig& cfg, std::ostream* log = nullptr);

// CSV with `# key=value` metadata lines, then the header
//   scenario,threads,trial,ops_total,ops_per_sec,inserts,deletes,moves,invalid_cursor,final_len
// and one row per measured trial.
void writeCsv(std::ostream& os, const BenchResult& r);

}  // namespace nbdll

#endif  // NBDLL_BENCH_HPP_
