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

#ifndef NBDLL_METRICS_HPP_
#define NBDLL_METRICS_HPP_

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "nbdll/sim_backend.hpp"

namespace nbdll {

// Ghost accounting over configurations of the deterministic backend: the
// true-location map (realNode/length), the three-part potential, and the
// per-configuration invariant sweep. All functions here are pure views of a
// SimWorld plus the auxiliary variables the schedule monitor maintains; they
// never touch the algorithm's control flow.

using SimNode = NodeRecord<SimBackend>;
using SimInfo = InfoRecord<SimBackend>;

// The potential, split into its three parts. All quantities are small
// integers (unit-weighted counters), so exact 64-bit arithmetic suffices.
struct PotentialState {
  std::int64_t cursorPart = 0;
  std::int64_t flagPart = 0;
  std::int64_t statePart = 0;

  std::int64_t total() const { return cursorPart + flagPart + statePart; }
  bool nonNegative() const {
    return cursorPart >= 0 && flagPart >= 0 && statePart >= 0;
  }
  friend bool operator==(const PotentialState& a, const PotentialState& b) {
    return a.cursorPart == b.cursorPart && a.flagPart == b.flagPart &&
           a.statePart == b.statePart;
  }
};

// Auxiliary variables of one running update operation. The monitor maintains
// them per the step rules; computePotential only reads them. cursorNode is
// the operation's current c.node, from which node_1 = realNode(cursorNode)
// and its neighbours are recomputed lazily at every query.
struct UpdateAux {
  const SimNode* cursorNode = nullptr;
  std::array<int, 3> lose{3, 3, 3};  // each in [0, 3]
  int phiState = 2;                  // in [0, 2]
};

// A monitor-supplied view of one configuration: the world (list structure
// and cell histories), every active cursor's position, every running
// update's auxiliary variables, and the set of nodes with abort(u) = 1.
struct Configuration {
  const SimWorld* world = nullptr;
  std::vector<const SimNode*> cursorNodes;
  std::vector<UpdateAux> updates;
  std::set<const SimNode*> abortSet;
};

// The reachable list: head, the item nodes, the end-of-list node, tail —
// following nxt from head. Throws if the walk does not reach tail within a
// sane bound (corrupted structure).
std::vector<const SimNode*> reachableChain(const SimWorld& world);

// The true location of a cursor parked at u: follow copy while the node is
// copied-and-unreachable, nxt while marked-and-unreachable. length(u) is the
// number of hops that walk takes; lengthOf returns it.
const SimNode* realNode(const SimNode* u,
                        const std::set<const SimNode*>& reachable);
std::size_t lengthOf(const SimNode* u,
                     const std::set<const SimNode*>& reachable);

// Exact value of the three potential parts at this configuration:
//   cursorPart = sum of length(c.node) over active cursors,
//   flagPart   = sum over updates of 3*sum_i phi_flag(node_i) + sum_i lose_i,
//                plus 27 * (running updates)^2, where phi_flag(v) sums
//                abort(w) - flag(w) over the reachable suffix from v,
//   statePart  = sum over updates of phi_state.
PotentialState computePotential(const Configuration& cfg);

// Per-configuration invariant sweep: Invariant-1 clauses (cursor placement,
// EOL-before-tail, absVal order along nxt/prv links, non-null structure),
// copy presence for copied nodes, and the cell-history properties (ABA
// freedom of nxt/prv/info, state and status monotonicity, untouched
// outward sentinel links). Returns one message per violation; empty means
// the configuration is clean.
std::vector<std::string> sweepInvariants(const Configuration& cfg);

// One completed operation's contribution to the amortized step bound.
struct StepBoundRecord {
  OpCode op = OpCode::get;
  std::uint64_t attempts = 0;      // 1 for moves/gets, attempt count for updates
  std::uint64_t ucIterations = 0;  // updateCursor loop iterations (hops)
  std::uint64_t cDot = 1;          // max active cursors during the op
};

struct StepBoundReport {
  bool pass = false;
  std::uint64_t units = 0;   // sum of attempts + ucIterations
  std::uint64_t budget = 0;  // K * (sum of update cDot + #moves + #updates)
  std::string detail;
};

// Asserts the amortized bound over a complete execution: total attempt units
// plus updateCursor iterations must not exceed
//   K * (sum over updates of cDot(op) + #non-update ops + #updates).
// K is a configured constant, not a derived claim.
StepBoundReport verifyStepBound(const std::vector<StepBoundRecord>& records,
                                std::uint64_t K);

inline constexpr std::uint64_t kDefaultStepBoundK = 128;

}  // namespace nbdll

#endif  // NBDLL_METRICS_HPP_
