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

#ifndef NBDLL_STATS_HPP_
#define NBDLL_STATS_HPP_

#include <cstdint>

#include "nbdll/roles.hpp"

namespace nbdll {

// Per-operation instrumentation counters. Attached to a context for the
// duration of one operation; aggregated by the harnesses.
struct OpStats {
  std::uint64_t attempts = 0;
  std::uint64_t ucIterations = 0;  // updateCursor loop iterations (hops)
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;       // shared-cell writes (plain stores)
  std::uint64_t localWrites = 0;  // stores to cells of not-yet-published nodes
  std::uint64_t flagCasIssued = 0, flagCasSucceeded = 0;
  std::uint64_t forwardCasIssued = 0, forwardCasSucceeded = 0;
  std::uint64_t backwardCasIssued = 0, backwardCasSucceeded = 0;
  std::uint64_t maxActiveCursors = 0;  // running max of the list's cursor count

  std::uint64_t casIssued() const {
    return flagCasIssued + forwardCasIssued + backwardCasIssued;
  }
  std::uint64_t casSucceeded() const {
    return flagCasSucceeded + forwardCasSucceeded + backwardCasSucceeded;
  }

  void countIssue(Role r) {
    if (r.role == AccessRole::newNxtLocal) {
      ++localWrites;
      return;
    }
    switch (kindOf(r.role)) {
      case AccessKind::read:
        ++reads;
        break;
      case AccessKind::write:
        ++writes;
        break;
      case AccessKind::cas:
        switch (r.role) {
          case AccessRole::flagCas: ++flagCasIssued; break;
          case AccessRole::forwardCas: ++forwardCasIssued; break;
          default: ++backwardCasIssued; break;
        }
        break;
    }
  }

  void countCasSuccess(Role r) {
    switch (r.role) {
      case AccessRole::flagCas: ++flagCasSucceeded; break;
      case AccessRole::forwardCas: ++forwardCasSucceeded; break;
      default: ++backwardCasSucceeded; break;
    }
  }

  void merge(const OpStats& o) {
    attempts += o.attempts;
    ucIterations += o.ucIterations;
    reads += o.reads;
    writes += o.writes;
    localWrites += o.localWrites;
    flagCasIssued += o.flagCasIssued;
    flagCasSucceeded += o.flagCasSucceeded;
    forwardCasIssued += o.forwardCasIssued;
    forwardCasSucceeded += o.forwardCasSucceeded;
    backwardCasIssued += o.backwardCasIssued;
    backwardCasSucceeded += o.backwardCasSucceeded;
    if (o.maxActiveCursors > maxActiveCursors)
      maxActiveCursors = o.maxActiveCursors;
  }
};

}  // namespace nbdll

#endif  // NBDLL_STATS_HPP_
