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

#ifndef NBDLL_ATOMIC_BACKEND_HPP_
#define NBDLL_ATOMIC_BACKEND_HPP_

#include <atomic>
#include <coroutine>

#include "nbdll/node.hpp"
#include "nbdll/roles.hpp"
#include "nbdll/stats.hpp"
#include "nbdll/value.hpp"

namespace nbdll {

// A shared cell backed by a native atomic. All operations are sequentially
// consistent; the algorithm's model is atomic registers plus single-word CAS.
template <class T>
struct AtomicCell {
  std::atomic<T> a;
  explicit AtomicCell(T v) : a(v) {}

  // Pre-publication initialization (list construction only).
  void initStore(T v) { a.store(v, std::memory_order_relaxed); }
  // Monitor/debug peek outside the access port.
  T peek() const { return a.load(std::memory_order_seq_cst); }
};

template <bool Ghost>
struct AtomicBackend;

// Context servicing cell accesses directly against native atomics. Its
// awaitables are always ready, so operation coroutines run straight through
// on the calling thread with no suspension.
template <class B>
class DirectCtx {
 public:
  DirectCtx(ListCore<B>* list, OpStats* stats) : list_(list), stats_(stats) {}

  ListCore<B>& list() { return *list_; }

  template <class T>
  struct ReadAwait {
    std::atomic<T>* a;
    bool await_ready() const noexcept { return true; }
    void await_suspend(std::coroutine_handle<>) const noexcept {}
    T await_resume() const { return a->load(std::memory_order_seq_cst); }
  };

  template <class T>
  struct CasAwait {
    std::atomic<T>* a;
    T expected, desired;
    OpStats* stats;
    Role role;
    bool await_ready() const noexcept { return true; }
    void await_suspend(std::coroutine_handle<>) const noexcept {}
    bool await_resume() const {
      T e = expected;
      bool ok = a->compare_exchange_strong(e, desired,
                                           std::memory_order_seq_cst,
                                           std::memory_order_seq_cst);
      if (ok && stats) stats->countCasSuccess(role);
      return ok;
    }
  };

  template <class T>
  struct WriteAwait {
    std::atomic<T>* a;
    T v;
    bool await_ready() const noexcept { return true; }
    void await_suspend(std::coroutine_handle<>) const noexcept {}
    void await_resume() const { a->store(v, std::memory_order_seq_cst); }
  };

  template <class T>
  ReadAwait<T> read(AtomicCell<T>& c, Role r) {
    if (stats_) stats_->countIssue(r);
    return {&c.a};
  }

  template <class T>
  CasAwait<T> cas(AtomicCell<T>& c, T expected, T desired, Role r) {
    if (stats_) stats_->countIssue(r);
    return {&c.a, expected, desired, stats_, r};
  }

  template <class T>
  WriteAwait<T> write(AtomicCell<T>& c, T v, Role r) {
    if (stats_) stats_->countIssue(r);
    return {&c.a, v};
  }

  // Initialization write to a cell of a node this operation just created and
  // has not yet published. Counted, but not a scheduling point.
  template <class T>
  void storeLocal(AtomicCell<T>& c, T v, Role r) {
    if (stats_) stats_->countIssue(r);
    c.a.store(v, std::memory_order_seq_cst);
  }

  NodeRecord<B>* newNode(Value v, NodeRecord<B>* nxt, NodeRecord<B>* prv,
                         NodeRecord<B>* copy, InfoRecord<B>* info,
                         NodeState st) {
    auto* n = list_->arena.template create<NodeRecord<B>>(v, nxt, prv, copy,
                                                          info, st);
    if constexpr (B::ghost) {
      n->ghost.nodeId =
          list_->nextNodeId.fetch_add(1, std::memory_order_relaxed);
    }
    return n;
  }

  InfoRecord<B>* newInfo(std::array<NodeRecord<B>*, 3> nodes,
                         std::array<InfoRecord<B>*, 3> oldInfo,
                         NodeRecord<B>* newNxt, NodeRecord<B>* newPrv, bool rmv,
                         InfoStatus st) {
    auto* i = list_->arena.template create<InfoRecord<B>>(nodes, oldInfo,
                                                          newNxt, newPrv, rmv,
                                                          st);
    if constexpr (B::ghost) {
      i->ghost.infoId =
          list_->nextInfoId.fetch_add(1, std::memory_order_relaxed);
    }
    return i;
  }

  std::uint64_t freshItemId() {
    return list_->nextItemId.fetch_add(1, std::memory_order_relaxed);
  }

  void ghost(const GhostEvent& e) {
    if (!stats_) return;
    switch (e.kind) {
      case GhostEvent::Kind::attemptBegin: {
        ++stats_->attempts;
        auto active = static_cast<std::uint64_t>(
            list_->activeCursors.load(std::memory_order_relaxed));
        if (active > stats_->maxActiveCursors)
          stats_->maxActiveCursors = active;
        break;
      }
      case GhostEvent::Kind::hop:
        ++stats_->ucIterations;
        break;
      default:
        break;
    }
  }

 private:
  ListCore<B>* list_;
  OpStats* stats_;
};

// The native-atomics backend. Ghost selects whether nodes carry ghost fields
// (identities, absVal); instrumentation counters are independent of it.
template <bool Ghost>
struct AtomicBackend {
  static constexpr bool ghost = Ghost && kGhostCompiled;
  template <class T>
  using Cell = AtomicCell<T>;
  using Ctx = DirectCtx<AtomicBackend<Ghost>>;
};

}  // namespace nbdll

#endif  // NBDLL_ATOMIC_BACKEND_HPP_
