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

#include "doctest.h"

#include <optional>
#include <vector>

#include "nbdll/sim_backend.hpp"

using namespace nbdll;

namespace {

using B = SimBackend;
using Algo8 = Algo<B>;

// A minimal single- or two-thread driver for direct backend tests. The real
// exploration driver lives in the explorer; this one just steps coroutines
// by hand.
struct MiniThread {
  SimThreadCore core;
  CursorState<B> cursor;
  std::optional<SimCtx> ctx;
  std::optional<Step<Response>> op;
  std::optional<Response> resp;

  void attach(SimWorld& w) { ctx.emplace(&w, &core); }

  template <class F>
  void launch(F&& make) {
    resp.reset();
    op.emplace(make(*ctx));
    op->start();
    finishIfDone();
  }

  // Applies the registered access and resumes to the next one.
  void step(SimWorld& w) {
    REQUIRE(core.hasPending);
    w.apply(core.pending);
    core.hasPending = false;
    core.resumePoint.resume();
    finishIfDone();
  }

  bool runnable() const { return core.hasPending; }
  bool finished() const { return resp.has_value(); }

 private:
  void finishIfDone() {
    if (op && op->done()) {
      resp = op->result();
      op.reset();
    }
  }
};

Response drive(SimWorld& w, MiniThread& t) {
  while (!t.finished()) t.step(w);
  return *t.resp;
}

std::vector<Value> traverse(SimWorld& w) {
  std::vector<Value> out;
  const NodeRecord<B>* n = w.list.head->nxt.peek();
  while (n != w.list.tail) {
    out.push_back(n->val);
    n = n->nxt.peek();
  }
  return out;
}

}  // namespace

TEST_CASE("solo operations take the expected number of scheduling points") {
  SimWorld w;
  MiniThread t;
  t.attach(w);

  t.launch([&](SimCtx& cx) { return Algo8::createCursor(cx, t.cursor); });
  CHECK(drive(w, t) == Response::ackd());
  CHECK(w.steps() == 1);  // one read of head.nxt

  std::uint64_t before = w.steps();
  t.launch([&](SimCtx& cx) { return Algo8::insertBefore(cx, t.cursor, Value(5)); });
  CHECK(drive(w, t) == Response::yes());
  CHECK(w.steps() - before == 26);  // uncontended insertBefore

  before = w.steps();
  t.launch([&](SimCtx& cx) { return Algo8::resetCursor(cx, t.cursor); });
  CHECK(drive(w, t) == Response::ackd());
  CHECK(w.steps() - before == 1);

  before = w.steps();
  t.launch([&](SimCtx& cx) { return Algo8::deleteItem(cx, t.cursor); });
  CHECK(drive(w, t) == Response::yes());
  CHECK(w.steps() - before == 25);  // uncontended delete

  before = w.steps();
  t.launch([&](SimCtx& cx) { return Algo8::get(cx, t.cursor); });
  Response g = drive(w, t);
  CHECK(g.kind == Response::Kind::value);
  CHECK(g.val.isEol());
  CHECK(w.steps() - before == 4);  // updateCursor without hops
}

TEST_CASE("cell histories record initial values and every successful write") {
  SimWorld w;
  MiniThread t;
  t.attach(w);
  NodeRecord<B>* head = w.list.head;
  NodeRecord<B>* tail = w.list.tail;
  NodeRecord<B>* eol = head->nxt.peek();

  t.launch([&](SimCtx& cx) { return Algo8::createCursor(cx, t.cursor); });
  REQUIRE(drive(w, t) == Response::ackd());
  t.launch([&](SimCtx& cx) { return Algo8::insertBefore(cx, t.cursor, Value(5)); });
  REQUIRE(drive(w, t) == Response::yes());

  auto historyOf = [&](const SimCellBase& c) {
    return w.cells()[c.id].history;
  };

  // Outward sentinel links never change.
  CHECK(historyOf(head->prv).size() == 1);
  CHECK(historyOf(tail->nxt).size() == 1);

  // head.nxt: eol, then the new node. tail.prv: eol, then the copy.
  REQUIRE(historyOf(head->nxt).size() == 2);
  REQUIRE(historyOf(tail->prv).size() == 2);
  NodeRecord<B>* inserted = simDecode<NodeRecord<B>*>(historyOf(head->nxt)[1]);
  NodeRecord<B>* yCopy = simDecode<NodeRecord<B>*>(historyOf(tail->prv)[1]);
  CHECK(inserted->val == Value(5));
  CHECK(yCopy->val.isEol());
  CHECK(t.cursor.node == yCopy);

  // The superseded EOL node: copy written once, state ordinary -> copied.
  CHECK(historyOf(eol->copy) ==
        std::vector<RawWord>{0, simEncode(yCopy)});
  CHECK(historyOf(eol->state) ==
        std::vector<RawWord>{simEncode(NodeState::ordinary),
                             simEncode(NodeState::copied)});

  // The new node's nxt was initialized privately: history has the null
  // registration value plus the local store.
  CHECK(historyOf(inserted->nxt) ==
        std::vector<RawWord>{0, simEncode(yCopy)});

  // The descriptor: inProgress at registration, then committed.
  REQUIRE(w.infos().size() == 2);  // dum + the insert's descriptor
  CHECK(historyOf(w.infos()[1]->status) ==
        std::vector<RawWord>{simEncode(InfoStatus::inProgress),
                             simEncode(InfoStatus::committed)});

  // All three flagged nodes point at the descriptor.
  CHECK(head->info.peek() == w.infos()[1]);
  CHECK(eol->info.peek() == w.infos()[1]);
  CHECK(tail->info.peek() == w.infos()[1]);
}

TEST_CASE("an alternating schedule of two same-gap inserts yields one true and one invalidCursor") {
  SimWorld w;
  MiniThread a, b;
  a.attach(w);
  b.attach(w);

  a.launch([&](SimCtx& cx) { return Algo8::createCursor(cx, a.cursor); });
  REQUIRE(drive(w, a) == Response::ackd());
  b.launch([&](SimCtx& cx) { return Algo8::createCursor(cx, b.cursor); });
  REQUIRE(drive(w, b) == Response::ackd());
  REQUIRE(a.cursor.node == b.cursor.node);  // both parked on the EOL node

  a.launch([&](SimCtx& cx) { return Algo8::insertBefore(cx, a.cursor, Value(5)); });
  b.launch([&](SimCtx& cx) { return Algo8::insertBefore(cx, b.cursor, Value(7)); });

  // Strict alternation until both complete.
  int guard = 0;
  while (!a.finished() || !b.finished()) {
    if (!a.finished() && a.runnable()) a.step(w);
    if (!b.finished() && b.runnable()) b.step(w);
    REQUIRE(++guard < 1000);
  }

  bool aWon = (*a.resp == Response::yes());
  bool bWon = (*b.resp == Response::yes());
  CHECK(aWon != bWon);
  CHECK((aWon ? *b.resp : *a.resp) == Response::invalid());

  std::vector<Value> vals = traverse(w);
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == (aWon ? Value(5) : Value(7)));
  CHECK(vals[1].isEol());

  // Ghost hop events: the loser hopped via the winner's copy.
  MiniThread& loser = aWon ? b : a;
  bool sawCopyHop = false;
  for (const GhostEvent& e : loser.core.events)
    if (e.kind == GhostEvent::Kind::hop && e.viaCopy) sawCopyHop = true;
  CHECK(sawCopyHop);
}

TEST_CASE("ghost fields track identities and abstract positions") {
  SimWorld w;
  MiniThread t;
  t.attach(w);
  NodeRecord<B>* eol = w.list.head->nxt.peek();

  t.launch([&](SimCtx& cx) { return Algo8::createCursor(cx, t.cursor); });
  REQUIRE(drive(w, t) == Response::ackd());
  t.launch([&](SimCtx& cx) { return Algo8::insertBefore(cx, t.cursor, Value(5)); });
  REQUIRE(drive(w, t) == Response::yes());

  NodeRecord<B>* inserted = w.list.head->nxt.peek();
  NodeRecord<B>* yCopy = t.cursor.node;
  // New item halfway between head (0) and EOL (1); the copy keeps the
  // original's item identity and position.
  CHECK(inserted->ghost.absVal ==
        DyadicRational(DyadicRational::Int(1), 1));
  CHECK(yCopy->ghost.itemId == eol->ghost.itemId);
  CHECK(yCopy->ghost.absVal == eol->ghost.absVal);
  CHECK(inserted->ghost.itemId != eol->ghost.itemId);
  CHECK(yCopy->ghost.nodeId != eol->ghost.nodeId);
}
