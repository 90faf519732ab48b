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

#ifndef NBDLL_NODE_HPP_
#define NBDLL_NODE_HPP_

#include <array>
#include <atomic>
#include <cstdint>

#include "nbdll/arena.hpp"
#include "nbdll/roles.hpp"
#include "nbdll/value.hpp"

#if NBDLL_GHOST
#include "nbdll/dyadic.hpp"
#endif

namespace nbdll {

template <class B>
struct NodeRecord;
template <class B>
struct InfoRecord;

#if NBDLL_GHOST
inline constexpr bool kGhostCompiled = true;
#else
inline constexpr bool kGhostCompiled = false;
#endif

namespace detail {

#if NBDLL_GHOST
// Ghost per-node state in instrumented flavors: a unique node identity, the
// logical item identity (shared by a node and its copies), and the abstract
// position absVal. None of it is read by the algorithm's control flow. The
// initializers are methods so callers can stay fully dependent on the backend
// and compile cleanly when ghost state is configured out.
template <bool Ghost>
struct GhostNodeFields {
  std::uint64_t nodeId = 0;
  std::uint64_t itemId = 0;
  DyadicRational absVal;

  void initRaw(std::uint64_t node, std::uint64_t item, std::int64_t abs) {
    nodeId = node;
    itemId = item;
    absVal = DyadicRational(abs);
  }
  // New node inserted between pred and cur: fresh item, midpoint position.
  void initInsert(std::uint64_t item, const GhostNodeFields& predGhost,
                  const GhostNodeFields& curGhost) {
    itemId = item;
    absVal = DyadicRational::midpoint(predGhost.absVal, curGhost.absVal);
  }
  // Copy node: same item, same position as the original.
  void initCopy(const GhostNodeFields& orig) {
    itemId = orig.itemId;
    absVal = orig.absVal;
  }
};
template <>
struct GhostNodeFields<false> {};

template <bool Ghost>
struct GhostInfoFields {
  std::uint64_t infoId = 0;
  std::uint64_t creatorOp = 0;       // ghost op id of the creating operation
  std::uint32_t creatorAttempt = 0;  // attempt ordinal within that operation
};
template <>
struct GhostInfoFields<false> {};
#else
template <bool Ghost>
struct GhostNodeFields {};
template <bool Ghost>
struct GhostInfoFields {};
#endif

}  // namespace detail

// A list cell. val is immutable; nxt/prv/copy/info/state are shared cells of
// the backend B. Identity is never reused: nodes live in the list's arena
// until the whole list is destroyed.
template <class B>
struct NodeRecord {
  using Node = NodeRecord<B>;
  using Info = InfoRecord<B>;

  const Value val;
  typename B::template Cell<Node*> nxt;
  typename B::template Cell<Node*> prv;
  typename B::template Cell<Node*> copy;
  typename B::template Cell<Info*> info;
  typename B::template Cell<NodeState> state;
  [[no_unique_address]] detail::GhostNodeFields<B::ghost> ghost;

  NodeRecord(Value v, Node* nxt0, Node* prv0, Node* copy0, Info* info0,
             NodeState state0)
      : val(v), nxt(nxt0), prv(prv0), copy(copy0), info(info0), state(state0) {}
};

// An operation descriptor. Everything except status is immutable, so those
// fields are plain members; status is a shared cell written with plain writes.
template <class B>
struct InfoRecord {
  using Node = NodeRecord<B>;
  using Info = InfoRecord<B>;

  const std::array<Node*, 3> nodes;
  const std::array<Info*, 3> oldInfo;
  Node* const newNxt;
  Node* const newPrv;
  const bool rmv;
  typename B::template Cell<InfoStatus> status;
  [[no_unique_address]] detail::GhostInfoFields<B::ghost> ghost;

  InfoRecord(std::array<Node*, 3> nodes0, std::array<Info*, 3> oldInfo0,
             Node* newNxt0, Node* newPrv0, bool rmv0, InfoStatus status0)
      : nodes(nodes0),
        oldInfo(oldInfo0),
        newNxt(newNxt0),
        newPrv(newPrv0),
        rmv(rmv0),
        status(status0) {}
};

// The process-local cursor state: a single link into the list.
template <class B>
struct CursorState {
  NodeRecord<B>* node = nullptr;
};

// Shared per-list state: the sentinels, the per-list dummy descriptor, the
// node arena, and instrumentation counters.
template <class B>
struct ListCore {
  using Node = NodeRecord<B>;
  using Info = InfoRecord<B>;

  Node* head = nullptr;
  Node* tail = nullptr;
  Info* dum = nullptr;
  Arena arena;
  std::atomic<std::int64_t> activeCursors{0};
  std::atomic<std::uint64_t> nextNodeId{1};
  std::atomic<std::uint64_t> nextItemId{1};
  std::atomic<std::uint64_t> nextInfoId{1};
  std::atomic<std::uint64_t> nextOpId{1};
};

// The updateCursor snapshot: (node, info, nxt, prv, invDel, invIns).
template <class B>
struct UpdateCursorResult {
  NodeRecord<B>* node = nullptr;
  InfoRecord<B>* info = nullptr;
  NodeRecord<B>* nxt = nullptr;
  NodeRecord<B>* prv = nullptr;
  bool invDel = false;
  bool invIns = false;
};

}  // namespace nbdll

#endif  // NBDLL_NODE_HPP_
