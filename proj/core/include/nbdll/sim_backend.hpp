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

#ifndef NBDLL_SIM_BACKEND_HPP_
#define NBDLL_SIM_BACKEND_HPP_

#include <cassert>
#include <coroutine>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "nbdll/algorithm.hpp"
#include "nbdll/node.hpp"
#include "nbdll/roles.hpp"

namespace nbdll {

// Cell contents in the deterministic backend are type-erased into one word so
// the scheduler can apply any access without knowing the cell's type.
using RawWord = std::uint64_t;

template <class T>
RawWord simEncode(T v) {
  if constexpr (std::is_pointer_v<T>) {
    return reinterpret_cast<RawWord>(v);
  } else {
    static_assert(std::is_enum_v<T>);
    return static_cast<RawWord>(static_cast<std::underlying_type_t<T>>(v));
  }
}

template <class T>
T simDecode(RawWord w) {
  if constexpr (std::is_pointer_v<T>) {
    return reinterpret_cast<T>(w);
  } else {
    static_assert(std::is_enum_v<T>);
    return static_cast<T>(static_cast<std::underlying_type_t<T>>(w));
  }
}

// A shared cell under the deterministic backend: the erased word plus the
// cell's index in the world's registry.
struct SimCellBase {
  RawWord raw = 0;
  std::uint32_t id = 0;
};

template <class T>
struct SimCell : SimCellBase {
  explicit SimCell(T v) { raw = simEncode(v); }
  // Pre-publication initialization (list construction only).
  void initStore(T v) { raw = simEncode(v); }
  // Monitor/debug peek outside the access port.
  T peek() const { return simDecode<T>(raw); }
};

// One registered shared access, waiting for the scheduler to apply it.
struct PendingAccess {
  AccessKind kind = AccessKind::read;
  Role role{AccessRole::ucGuardState, -1};
  SimCellBase* cell = nullptr;
  RawWord expected = 0;  // CAS
  RawWord desired = 0;   // CAS
  RawWord value = 0;     // write value; read result
  bool casOk = false;    // CAS result
};

// The per-thread suspension point the context writes into and the scheduler
// reads from. The explorer's thread records embed one of these.
struct SimThreadCore {
  std::coroutine_handle<> resumePoint;
  PendingAccess pending;
  bool hasPending = false;
  std::vector<GhostEvent> events;  // emitted since the last drain
};

class SimCtx;

// The deterministic stepped backend: every shared access suspends the
// operation coroutine; the explorer chooses which thread's access to apply
// next.
struct SimBackend {
  static constexpr bool ghost = kGhostCompiled;
  template <class T>
  using Cell = SimCell<T>;
  using Ctx = SimCtx;
};

// The shared world of one simulation: the list, the registry of every shared
// cell (with full write history), and registries of all nodes/descriptors
// ever created. Rebuilt from scratch for every explored schedule.
class SimWorld {
 public:
  using Node = NodeRecord<SimBackend>;
  using Info = InfoRecord<SimBackend>;

  struct CellRecord {
    SimCellBase* cell = nullptr;
    const void* owner = nullptr;  // owning NodeRecord / InfoRecord
    const char* field = "";       // "nxt" | "prv" | "copy" | "info" | "state" | "status"
    std::vector<RawWord> history;  // initial value, then every successful write
  };

  SimWorld() {
    initListCore(list);
    Node* head = list.head;
    Node* tail = list.tail;
    Node* eol = head->nxt.peek();
    registerNode(head);
    registerNode(tail);
    registerNode(eol);
    registerInfo(list.dum);
  }
  SimWorld(const SimWorld&) = delete;
  SimWorld& operator=(const SimWorld&) = delete;

  // Applies one registered access to its cell; successful writes append to
  // the cell's history. Results land back in the pending record.
  void apply(PendingAccess& p) {
    CellRecord& rec = cells_[p.cell->id];
    assert(rec.cell == p.cell);
    switch (p.kind) {
      case AccessKind::read:
        p.value = p.cell->raw;
        break;
      case AccessKind::write:
        p.cell->raw = p.value;
        rec.history.push_back(p.value);
        break;
      case AccessKind::cas:
        if (p.cell->raw == p.expected) {
          p.cell->raw = p.desired;
          rec.history.push_back(p.desired);
          p.casOk = true;
        } else {
          p.casOk = false;
        }
        break;
    }
    ++steps_;
  }

  // Truncates every cell history to just the current value. Called after
  // scenario setup so each explored schedule starts from a clean baseline.
  void resetHistories() {
    for (CellRecord& rec : cells_) rec.history.assign(1, rec.cell->raw);
  }

  void registerNode(Node* n) {
    registerCell(&n->nxt, n, "nxt");
    registerCell(&n->prv, n, "prv");
    registerCell(&n->copy, n, "copy");
    registerCell(&n->info, n, "info");
    registerCell(&n->state, n, "state");
    nodes_.push_back(n);
  }

  void registerInfo(Info* i) {
    registerCell(&i->status, i, "status");
    infos_.push_back(i);
  }

  // Records a store to a cell of a not-yet-published node (insertBefore's
  // initialization of the new node's nxt). Not a scheduling point.
  void applyLocalStore(SimCellBase* cell, RawWord v) {
    CellRecord& rec = cells_[cell->id];
    cell->raw = v;
    rec.history.push_back(v);
  }

  const std::vector<CellRecord>& cells() const { return cells_; }
  const std::vector<Node*>& nodes() const { return nodes_; }
  const std::vector<Info*>& infos() const { return infos_; }
  std::uint64_t steps() const { return steps_; }

  ListCore<SimBackend> list;

 private:
  void registerCell(SimCellBase* c, const void* owner, const char* field) {
    c->id = static_cast<std::uint32_t>(cells_.size());
    cells_.push_back(CellRecord{c, owner, field, {c->raw}});
  }

  std::vector<CellRecord> cells_;
  std::vector<Node*> nodes_;
  std::vector<Info*> infos_;
  std::uint64_t steps_ = 0;
};

// Cell-access context for the deterministic backend. Each read/write/CAS
// suspends after registering the access with the thread record; the explorer
// applies it against the world and resumes the coroutine, which then decodes
// the result.
class SimCtx {
 public:
  using B = SimBackend;
  using Node = NodeRecord<B>;
  using Info = InfoRecord<B>;

  SimCtx(SimWorld* world, SimThreadCore* self) : world_(world), self_(self) {}

  ListCore<B>& list() { return world_->list; }
  SimWorld& world() { return *world_; }

  struct SuspendBase {
    SimThreadCore* self;
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<> h) const {
      assert(!self->hasPending);
      self->resumePoint = h;
      self->hasPending = true;
    }
  };

  template <class T>
  struct ReadAwait : SuspendBase {
    T await_resume() const {
      return simDecode<T>(this->self->pending.value);
    }
  };

  struct CasAwait : SuspendBase {
    bool await_resume() const { return this->self->pending.casOk; }
  };

  struct WriteAwait : SuspendBase {
    void await_resume() const {}
  };

  template <class T>
  ReadAwait<T> read(SimCell<T>& c, Role r) {
    self_->pending = PendingAccess{AccessKind::read, r, &c, 0, 0, 0, false};
    return ReadAwait<T>{{self_}};
  }

  template <class T>
  CasAwait cas(SimCell<T>& c, T expected, T desired, Role r) {
    self_->pending = PendingAccess{AccessKind::cas,      r,
                                   &c,                   simEncode(expected),
                                   simEncode(desired), 0,
                                   false};
    return CasAwait{{self_}};
  }

  template <class T>
  WriteAwait write(SimCell<T>& c, T v, Role r) {
    self_->pending =
        PendingAccess{AccessKind::write, r, &c, 0, 0, simEncode(v), false};
    return WriteAwait{{self_}};
  }

  template <class T>
  void storeLocal(SimCell<T>& c, T v, Role) {
    world_->applyLocalStore(&c, simEncode(v));
  }

  Node* newNode(Value v, Node* nxt, Node* prv, Node* copy, Info* info,
                NodeState st) {
    auto* n = world_->list.arena.template create<Node>(v, nxt, prv, copy, info,
                                                       st);
    if constexpr (B::ghost) {
      n->ghost.nodeId =
          world_->list.nextNodeId.fetch_add(1, std::memory_order_relaxed);
    }
    world_->registerNode(n);
    return n;
  }

  Info* newInfo(std::array<Node*, 3> nodes, std::array<Info*, 3> oldInfo,
                Node* newNxt, Node* newPrv, bool rmv, InfoStatus st) {
    auto* i = world_->list.arena.template create<Info>(nodes, oldInfo, newNxt,
                                                       newPrv, rmv, st);
    if constexpr (B::ghost) {
      i->ghost.infoId =
          world_->list.nextInfoId.fetch_add(1, std::memory_order_relaxed);
    }
    world_->registerInfo(i);
    return i;
  }

  std::uint64_t freshItemId() {
    return world_->list.nextItemId.fetch_add(1, std::memory_order_relaxed);
  }

  void ghost(const GhostEvent& e) { self_->events.push_back(e); }

 private:
  SimWorld* world_;
  SimThreadCore* self_;
};

}  // namespace nbdll

#endif  // NBDLL_SIM_BACKEND_HPP_
