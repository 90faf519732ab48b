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

#ifndef NBDLL_LINCHECK_HPP_
#define NBDLL_LINCHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nbdll/history.hpp"
#include "nbdll/seq_model.hpp"

namespace nbdll {

// One operation instance parsed out of a history: its invocation, and its
// response when the history contains one (otherwise the operation is
// pending and subject to completion closure).
struct LinOp {
  unsigned thread = 0;
  OpCode op = OpCode::get;
  Value arg;
  std::uint64_t invokeSeq = 0;
  bool completed = false;
  Response resp;
  std::uint64_t respondSeq = 0;
};

// Groups a history's events into operation instances, in invocation order.
// Throws std::invalid_argument when events of one thread do not alternate
// invoke/respond.
std::vector<LinOp> parseHistory(const History& h);

struct LinResult {
  enum class Kind : std::uint8_t { ok, violation, inconclusive };

  Kind kind = Kind::ok;
  // ok: indices into parseHistory(h), in a witness linearization order
  // (pending operations absent from the witness were dropped).
  std::vector<std::size_t> witness;
  // violation: the shortest event prefix that already has no linearization.
  History shortestViolatingPrefix;
  std::uint64_t statesExplored = 0;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultLinBudget = 500000;

// Decides whether the history is linearizable against the sequential
// specification, by exhaustive search over all response-consistent,
// real-time-respecting linearization orders (with completion closure for
// pending operations. No assumption is made about where operations take
// effect). Search states are memoized by (linearized set, abstract state).
// Returns ok with a witness — independently replayed against a fresh model
// before returning — violation with the shortest violating prefix, or
// inconclusive when the state budget is exhausted first.
LinResult checkLinearizable(const History& h, const HistorySetup& setup = {},
                            std::uint64_t stateBudget = kDefaultLinBudget);

// Diagnostic hint printer: renders the witness order with, for each
// operation, the gap between its invocation and response events in which it
// took effect. This is an aid for reading counter-free checker output; the
// verdict above never relies on pinned instrumentation points.
std::string witnessToString(const History& h, const LinResult& r);

}  // namespace nbdll

#endif  // NBDLL_LINCHECK_HPP_
