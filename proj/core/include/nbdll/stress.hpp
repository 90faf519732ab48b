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

#ifndef NBDLL_STRESS_HPP_
#define NBDLL_STRESS_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "nbdll/stats.hpp"

namespace nbdll {

// Result of the randomized sequential-equivalence run: seeded programs are
// executed against both the concurrent list (single-threaded) and the
// sequential specification, comparing every response and the final state.
struct SeqEquivResult {
  bool ok = true;
  std::uint64_t programs = 0;
  std::uint64_t opsExecuted = 0;
  std::array<std::uint64_t, 8> opCounts{};  // indexed by OpCode
  std::string firstDivergence;              // empty when ok

  bool allOpsCovered() const {
    for (auto c : opCounts)
      if (c == 0) return false;
    return true;
  }
};

// Runs `programs` seeded random programs of at most `maxOps` operations each.
// Stops at the first divergence.
SeqEquivResult runSeqEquivalence(std::uint64_t programs, std::uint64_t maxOps,
                                 std::uint64_t seed);

// Result of the timed multi-threaded read-only stress: concurrent updater
// threads churn the list while observer threads run moves/gets/resets under
// instrumentation; any shared write or CAS issued by an observer operation is
// a failure.
struct ReadOnlyStressResult {
  bool ok = true;
  std::uint64_t observerOps = 0;
  std::uint64_t updaterOps = 0;
  OpStats observerTotals;
  std::string note;
};

ReadOnlyStressResult runReadOnlyStress(double seconds, unsigned updaterThreads,
                                       unsigned observerThreads,
                                       std::uint64_t seed);

}  // namespace nbdll

#endif  // NBDLL_STRESS_HPP_
