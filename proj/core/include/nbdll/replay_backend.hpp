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

#ifndef NBDLL_REPLAY_BACKEND_HPP_
#define NBDLL_REPLAY_BACKEND_HPP_

#include <atomic>
#include <cassert>
#include <coroutine>
#include <vector>

#include "nbdll/algorithm.hpp"
#include "nbdll/atomic_backend.hpp"
#include "nbdll/node.hpp"
#include "nbdll/roles.hpp"

namespace nbdll {

// Suspension point of one replayed thread. The access itself runs when the
// replay driver resumes the coroutine, so pinning execution to one thread at
// a time reproduces any schedule over the real atomic cells.
struct ReplayThreadCore {
  std::coroutine_handle<> resumePoint;
  bool hasPending = false;
  AccessKind pendingKind = AccessKind::read;
  Role pendingRole{AccessRole::ucGuardState, -1};
  std::vector<GhostEvent> events;
};

class ReplayCtx;

// The schedule-replay backend: native atomic cells, but the operation
// coroutines suspend before each shared access exactly like the
// deterministic backend. Replaying a recorded thread sequence executes the
// same interleaving against real atomics.
struct ReplayBackend {
  static constexpr bool ghost = kGhostCompiled;
  template <class T>
  using Cell = AtomicCell<T>;
  using Ctx = ReplayCtx;
};

class ReplayCtx {
 public:
  using B = ReplayBackend;
  using Node = NodeRecord<B>;
  using Info = InfoRecord<B>;

  ReplayCtx(ListCore<B>* list, ReplayThreadCore* self)
      : list_(list), self_(self) {}

  ListCore<B>& list() { return *list_; }

  struct SuspendBase {
    ReplayThreadCore* self;
    AccessKind kind;
    Role role;
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<> h) const {
      assert(!self->hasPending);
      self->resumePoint = h;
      self->hasPending = true;
      self->pendingKind = kind;
      self->pendingRole = role;
    }
  };

  template <class T>
  struct ReadAwait : SuspendBase {
    std::atomic<T>* a;
    T await_resume() const { return a->load(std::memory_order_seq_cst); }
  };

  template <class T>
  struct CasAwait : SuspendBase {
    std::atomic<T>* a;
    T expected, desired;
    bool await_resume() const {
      T e = expected;
      return a->compare_exchange_strong(e, desired,
                                        std::memory_order_seq_cst,
                                        std::memory_order_seq_cst);
    }
  };

  template <class T>
  struct WriteAwait : SuspendBase {
    std::atomic<T>* a;
    T v;
    void await_resume() const { a->store(v, std::memory_order_seq_cst); }
  };

  template <class T>
  ReadAwait<T> read(AtomicCell<T>& c, Role r) {
    return {{self_, AccessKind::read, r}, &c.a};
  }

  template <class T>
  CasAwait<T> cas(AtomicCell<T>& c, T expected, T desired, Role r) {
    return {{self_, AccessKind::cas, r}, &c.a, expected, desired};
  }

  template <class T>
  WriteAwait<T> write(AtomicCell<T>& c, T v, Role r) {
    return {{self_, AccessKind::write, r}, &c.a, v};
  }

  template <class T>
  void storeLocal(AtomicCell<T>& c, T v, Role) {
    c.a.store(v, std::memory_order_seq_cst);
  }

  Node* newNode(Value v, Node* nxt, Node* prv, Node* copy, Info* info,
                NodeState st) {
    auto* n =
        list_->arena.template create<Node>(v, nxt, prv, copy, info, st);
    if constexpr (B::ghost) {
      n->ghost.nodeId =
          list_->nextNodeId.fetch_add(1, std::memory_order_relaxed);
    }
    return n;
  }

  Info* newInfo(std::array<Node*, 3> nodes, std::array<Info*, 3> oldInfo,
                Node* newNxt, Node* newPrv, bool rmv, InfoStatus st) {
    auto* i = list_->arena.template create<Info>(nodes, oldInfo, newNxt,
                                                 newPrv, rmv, st);
    if constexpr (B::ghost) {
      i->ghost.infoId =
          list_->nextInfoId.fetch_add(1, std::memory_order_relaxed);
    }
    return i;
  }

  std::uint64_t freshItemId() {
    return list_->nextItemId.fetch_add(1, std::memory_order_relaxed);
  }

  void ghost(const GhostEvent& e) { self_->events.push_back(e); }

 private:
  ListCore<B>* list_;
  ReplayThreadCore* self_;
};

}  // namespace nbdll

#endif  // NBDLL_REPLAY_BACKEND_HPP_
