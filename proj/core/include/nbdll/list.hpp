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

#ifndef NBDLL_LIST_HPP_
#define NBDLL_LIST_HPP_

#include <cassert>
#include <memory>
#include <thread>
#include <vector>

#include "nbdll/algorithm.hpp"
#include "nbdll/atomic_backend.hpp"
#include "nbdll/stats.hpp"

namespace nbdll {

template <bool Ghost>
class BasicList;

// A per-thread location in a BasicList. Confined to its creating thread
// (debug-asserted); rebindOwner() hands it to another thread when no
// operation is in flight. Destroying the handle implies destroyCursor.
template <bool Ghost>
class BasicCursor {
 public:
  using Backend = AtomicBackend<Ghost>;

  BasicCursor() = default;
  BasicCursor(BasicCursor&& o) noexcept
      : list_(std::exchange(o.list_, nullptr)),
        state_(o.state_),
        owner_(o.owner_) {}
  BasicCursor& operator=(BasicCursor&& o) noexcept {
    if (this != &o) {
      release();
      list_ = std::exchange(o.list_, nullptr);
      state_ = o.state_;
      owner_ = o.owner_;
    }
    return *this;
  }
  BasicCursor(const BasicCursor&) = delete;
  BasicCursor& operator=(const BasicCursor&) = delete;
  ~BasicCursor() { release(); }

  bool live() const { return list_ != nullptr; }

  // Transfers ownership to the calling thread. Only legal while no operation
  // with this cursor is in flight.
  void rebindOwner() { owner_ = std::this_thread::get_id(); }

 private:
  template <bool G>
  friend class BasicList;

  BasicCursor(BasicList<Ghost>* list) : list_(list), owner_(std::this_thread::get_id()) {}

  void checkUse() const {
    assert(list_ && "cursor used after destroy");
    assert(owner_ == std::this_thread::get_id() &&
           "cursor used from a thread that does not own it");
  }
  void release();

  BasicList<Ghost>* list_ = nullptr;
  CursorState<Backend> state_;
  std::thread::id owner_;
};

// The concurrent doubly-linked list over native atomics. All operations are
// linearizable and lock-free; moves, gets and cursor management never write
// shared memory. Statistics collection is optional per call via setStats()
// (a thread-local OpStats sink used by the operations invoked on that
// thread).
template <bool Ghost>
class BasicList {
 public:
  using Backend = AtomicBackend<Ghost>;
  using Cursor = BasicCursor<Ghost>;

  BasicList() { initListCore(core_); }
  BasicList(const BasicList&) = delete;
  BasicList& operator=(const BasicList&) = delete;
  ~BasicList() {
    assert(core_.activeCursors.load() == 0 &&
           "list destroyed while cursors are live");
  }

  Cursor createCursor() {
    Cursor c(this);
    core_.activeCursors.fetch_add(1, std::memory_order_relaxed);
    runOp([&](Ctx& cx) { return Algo<Backend>::createCursor(cx, c.state_); });
    return c;
  }

  Response destroyCursor(Cursor& c) {
    c.checkUse();
    Response r = runOp(
        [&](Ctx& cx) { return Algo<Backend>::destroyCursor(cx, c.state_); });
    core_.activeCursors.fetch_sub(1, std::memory_order_relaxed);
    c.list_ = nullptr;
    return r;
  }

  Response resetCursor(Cursor& c) {
    c.checkUse();
    return runOp(
        [&](Ctx& cx) { return Algo<Backend>::resetCursor(cx, c.state_); });
  }

  Response get(Cursor& c) {
    c.checkUse();
    return runOp([&](Ctx& cx) { return Algo<Backend>::get(cx, c.state_); });
  }

  Response moveRight(Cursor& c) {
    c.checkUse();
    return runOp(
        [&](Ctx& cx) { return Algo<Backend>::moveRight(cx, c.state_); });
  }

  Response moveLeft(Cursor& c) {
    c.checkUse();
    return runOp(
        [&](Ctx& cx) { return Algo<Backend>::moveLeft(cx, c.state_); });
  }

  Response insertBefore(Cursor& c, Value v) {
    c.checkUse();
    assert(!v.isEol() && !v.isNone() && "insertBefore requires a user value");
    return runOp(
        [&](Ctx& cx) { return Algo<Backend>::insertBefore(cx, c.state_, v); });
  }

  Response deleteItem(Cursor& c) {
    c.checkUse();
    return runOp(
        [&](Ctx& cx) { return Algo<Backend>::deleteItem(cx, c.state_); });
  }

  // Applies an operation by code; the uniform entry point for harnesses.
  Response apply(OpCode op, Cursor& c, Value arg = Value()) {
    switch (op) {
      case OpCode::resetCursor: return resetCursor(c);
      case OpCode::get: return get(c);
      case OpCode::moveRight: return moveRight(c);
      case OpCode::moveLeft: return moveLeft(c);
      case OpCode::insertBefore: return insertBefore(c, arg);
      case OpCode::deleteItem: return deleteItem(c);
      case OpCode::destroyCursor: return destroyCursor(c);
      case OpCode::createCursor: break;  // use createCursor()
    }
    assert(false && "createCursor has no cursor argument");
    return Response::ackd();
  }

  // Directs per-operation counters of this thread's subsequent calls into s
  // (nullptr to stop collecting).
  static void setStats(OpStats* s) { statsSink() = s; }

  // Quiescent traversal (no concurrent updates may be running): values from
  // the first item through EOL.
  std::vector<Value> traverse() const {
    std::vector<Value> out;
    const NodeRecord<Backend>* n = core_.head->nxt.peek();
    while (n != core_.tail) {
      out.push_back(n->val);
      n = n->nxt.peek();
    }
    return out;
  }

  // Quiescent backward traversal via prv links, reversed into forward order.
  std::vector<Value> traverseBackward() const {
    std::vector<Value> out;
    const NodeRecord<Backend>* n = core_.tail->prv.peek();
    while (n != core_.head) {
      out.push_back(n->val);
      n = n->prv.peek();
    }
    return {out.rbegin(), out.rend()};
  }

  std::int64_t activeCursors() const {
    return core_.activeCursors.load(std::memory_order_relaxed);
  }

  ListCore<Backend>& core() { return core_; }

 private:
  using Ctx = typename Backend::Ctx;

  static OpStats*& statsSink() {
    thread_local OpStats* sink = nullptr;
    return sink;
  }

  // Builds a context, starts the operation coroutine and drives it to
  // completion. Direct contexts never suspend, so start() finishes the op.
  template <class F>
  Response runOp(F&& op) {
    OpStats* s = statsSink();
    if (s) {
      auto active = static_cast<std::uint64_t>(
          core_.activeCursors.load(std::memory_order_relaxed));
      if (active > s->maxActiveCursors) s->maxActiveCursors = active;
    }
    Ctx cx(&core_, s);
    Step<Response> task = op(cx);
    task.start();
    return task.result();
  }

  ListCore<Backend> core_;
};

template <bool Ghost>
void BasicCursor<Ghost>::release() {
  if (list_) {
    checkUse();
    list_->destroyCursor(*this);
  }
}

using List = BasicList<false>;
using GhostList = BasicList<kGhostCompiled>;

// newList(): a fresh list containing only the EOL item.
template <bool Ghost = false>
std::unique_ptr<BasicList<Ghost>> newList() {
  return std::make_unique<BasicList<Ghost>>();
}

}  // namespace nbdll

#endif  // NBDLL_LIST_HPP_
