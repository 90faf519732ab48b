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

#ifndef NBDLL_ALGORITHM_HPP_
#define NBDLL_ALGORITHM_HPP_

#include <array>

#include "nbdll/node.hpp"
#include "nbdll/roles.hpp"
#include "nbdll/step.hpp"
#include "nbdll/value.hpp"

namespace nbdll {

// The list algorithm, written once against the cell-access port of backend B.
// Every shared-cell read/write/CAS goes through the context; compound
// conditions are evaluated strictly left to right with short-circuit, one
// shared read per operand. Immutable data (node values, descriptor fields
// other than status) is read as plain memory.
template <class B>
struct Algo {
  using Node = NodeRecord<B>;
  using Info = InfoRecord<B>;
  using Ctx = typename B::Ctx;
  using Snap = UpdateCursorResult<B>;
  using AR = AccessRole;
  using GE = GhostEvent;

  static Step<Snap> updateCursor(Ctx& ctx, CursorState<B>& c) {
    bool invDel = false;
    bool invIns = false;
    for (;;) {
      // while (c.node.state != ordinary and c.node.prv.nxt != c.node)
      NodeState s = co_await ctx.read(c.node->state, {AR::ucGuardState});
      if (s == NodeState::ordinary) break;
      Node* p = co_await ctx.read(c.node->prv, {AR::ucGuardPrv});
      Node* pn = co_await ctx.read(p->nxt, {AR::ucGuardPrvNxt});
      if (pn == c.node) break;
      NodeState s2 = co_await ctx.read(c.node->state, {AR::ucBodyState});
      if (s2 == NodeState::copied) {  // node replaced
        Node* next = co_await ctx.read(c.node->copy, {AR::ucHopCopy});
        c.node = next;
        invIns = true;
        GE e{};
        e.kind = GE::Kind::hop;
        e.viaCopy = true;
        e.cursor = &c;
        e.node = next;
        ctx.ghost(e);
      } else {  // node deleted
        Node* next = co_await ctx.read(c.node->nxt, {AR::ucHopNxt});
        c.node = next;
        invDel = true;
        GE e{};
        e.kind = GE::Kind::hop;
        e.viaCopy = false;
        e.cursor = &c;
        e.node = next;
        ctx.ghost(e);
      }
    }
    Info* info = co_await ctx.read(c.node->info, {AR::ucInfoRead});
    Node* nx = co_await ctx.read(c.node->nxt, {AR::ucSnapNxt});
    Node* pv = co_await ctx.read(c.node->prv, {AR::ucSnapPrv});
    co_return Snap{c.node, info, nx, pv, invDel, invIns};
  }

  static Step<bool> checkInfo(Ctx& ctx, std::array<Node*, 3> nodes,
                              std::array<Info*, 3> oldInfo) {
    for (std::int8_t i = 0; i < 3; ++i) {
      InfoStatus st = co_await ctx.read(oldInfo[i]->status, {AR::ciStatus, i});
      if (st == InfoStatus::inProgress) {  // in progress update on nodes[i]
        failEvent(ctx, GE::FailMode::inProgress, i, oldInfo[i]);
        co_await help(ctx, oldInfo[i]);
        co_return false;
      }
    }
    for (std::int8_t i = 0; i < 3; ++i) {
      NodeState s = co_await ctx.read(nodes[i]->state, {AR::ciState, i});
      if (s != NodeState::ordinary) {  // nodes[i] removed
        failEvent(ctx, GE::FailMode::stateNotOrdinary, i, nullptr);
        co_return false;
      }
    }
    for (std::int8_t i = 1; i < 3; ++i) {
      Info* cur = co_await ctx.read(nodes[i]->info, {AR::ciInfo, i});
      if (cur != oldInfo[i]) {
        failEvent(ctx, GE::FailMode::infoMismatch, i, cur);
        co_return false;
      }
    }
    co_return true;
  }

  static Step<bool> help(Ctx& ctx, Info* I) {
    {
      GE e{};
      e.kind = GE::Kind::helpEnter;
      e.info = I;
      ctx.ghost(e);
    }
    bool doPtrCAS = true;
    std::int8_t i = 0;
    while (i < 3 && doPtrCAS) {
      // flag CAS; its own result is discarded
      co_await ctx.cas(I->nodes[i]->info, I->oldInfo[i], I, {AR::flagCas, i});
      Info* cur = co_await ctx.read(I->nodes[i]->info, {AR::doPtrRead, i});
      doPtrCAS = (cur == I);
      i = static_cast<std::int8_t>(i + 1);
    }
    if (doPtrCAS) {
      if (I->rmv) {
        co_await ctx.write(I->nodes[1]->state, NodeState::marked,
                           {AR::stateWrite});
      } else {
        co_await ctx.write(I->nodes[1]->copy, I->newPrv, {AR::copyWrite});
        co_await ctx.write(I->nodes[1]->state, NodeState::copied,
                           {AR::stateWrite});
      }
      // forward CAS
      co_await ctx.cas(I->nodes[0]->nxt, I->nodes[1], I->newNxt,
                       {AR::forwardCas});
      // backward CAS
      co_await ctx.cas(I->nodes[2]->prv, I->nodes[1], I->newPrv,
                       {AR::backwardCas});
      co_await ctx.write(I->status, InfoStatus::committed, {AR::commitWrite});
    } else {
      InfoStatus st = co_await ctx.read(I->status, {AR::abortRead});
      if (st == InfoStatus::inProgress)
        co_await ctx.write(I->status, InfoStatus::aborted, {AR::abortWrite});
    }
    InfoStatus fin = co_await ctx.read(I->status, {AR::statusReturnRead});
    bool committed = (fin == InfoStatus::committed);
    {
      GE e{};
      e.kind = GE::Kind::helpExit;
      e.helpResult = committed;
      e.info = I;
      ctx.ghost(e);
    }
    co_return committed;
  }

  static Step<Response> insertBefore(Ctx& ctx, CursorState<B>& c, Value v) {
    for (;;) {
      attemptEvent(ctx, &c, OpCode::insertBefore);
      Snap s = co_await updateCursor(ctx, c);
      Node* y = s.node;
      Node* z = s.nxt;
      Node* x = s.prv;
      if (s.invDel || s.invIns) co_return Response::invalid();
      std::array<Node*, 3> nodes{x, y, z};
      Info* xInfo = co_await ctx.read(x->info, {AR::oldInfoX});
      Info* zInfo = co_await ctx.read(z->info, {AR::oldInfoZ});
      std::array<Info*, 3> oldInfo{xInfo, s.info, zInfo};
      if (co_await checkInfo(ctx, nodes, oldInfo)) {
        Node* nu = ctx.newNode(v, nullptr, x, nullptr, ctx.list().dum,
                               NodeState::ordinary);
        Node* yCopy = ctx.newNode(y->val, z, nu, nullptr, ctx.list().dum,
                                  NodeState::ordinary);
        if constexpr (B::ghost) {
          nu->ghost.initInsert(ctx.freshItemId(), x->ghost, y->ghost);
          yCopy->ghost.initCopy(y->ghost);
        }
        ctx.storeLocal(nu->nxt, yCopy, {AR::newNxtLocal});
        Info* I = ctx.newInfo(nodes, oldInfo, nu, yCopy, false,
                              InfoStatus::inProgress);
        if (co_await help(ctx, I)) {
          c.node = yCopy;
          assignEvent(ctx, GE::AssignSite::insCommit, &c, yCopy);
          co_return Response::yes();
        }
      }
    }
  }

  static Step<Response> deleteItem(Ctx& ctx, CursorState<B>& c) {
    for (;;) {
      attemptEvent(ctx, &c, OpCode::deleteItem);
      Snap s = co_await updateCursor(ctx, c);
      Node* y = s.node;
      Node* z = s.nxt;
      Node* x = s.prv;
      if (s.invDel) co_return Response::invalid();
      std::array<Node*, 3> nodes{x, y, z};
      Info* xInfo = co_await ctx.read(x->info, {AR::oldInfoX});
      Info* zInfo = co_await ctx.read(z->info, {AR::oldInfoZ});
      std::array<Info*, 3> oldInfo{xInfo, s.info, zInfo};
      if (co_await checkInfo(ctx, nodes, oldInfo)) {
        if (y->val.isEol()) co_return Response::no();
        Info* I =
            ctx.newInfo(nodes, oldInfo, z, x, true, InfoStatus::inProgress);
        if (co_await help(ctx, I)) {
          c.node = z;
          assignEvent(ctx, GE::AssignSite::delCommit, &c, z);
          co_return Response::yes();
        }
      }
    }
  }

  static Step<Response> moveLeft(Ctx& ctx, CursorState<B>& c) {
    Snap s = co_await updateCursor(ctx, c);
    Node* y = s.node;
    Node* x = s.prv;
    if (s.invDel) co_return Response::invalid();
    if (x == ctx.list().head) co_return Response::no();
    // if (x.state != ordinary and x.prv.nxt != x and x.nxt = y)
    bool test = false;
    NodeState xs = co_await ctx.read(x->state, {AR::mlTestState});
    if (xs != NodeState::ordinary) {
      Node* xp = co_await ctx.read(x->prv, {AR::mlTestPrv});
      Node* xpn = co_await ctx.read(xp->nxt, {AR::mlTestPrvNxt});
      if (xpn != x) {
        Node* xn = co_await ctx.read(x->nxt, {AR::mlTestNxt});
        if (xn == y) test = true;
      }
    }
    if (test) {
      NodeState xs2 = co_await ctx.read(x->state, {AR::mlStateRead});
      if (xs2 == NodeState::copied) {
        Node* xc = co_await ctx.read(x->copy, {AR::mlCopyRead});
        c.node = xc;
        assignEvent(ctx, GE::AssignSite::moveLeftCopy, &c, xc);
      } else {
        Node* w = co_await ctx.read(x->prv, {AR::mlPrvRead});
        if (w == ctx.list().head) co_return Response::no();
        c.node = w;
        assignEvent(ctx, GE::AssignSite::moveLeftPrv, &c, w);
      }
    } else {
      c.node = x;
      assignEvent(ctx, GE::AssignSite::moveLeftPlain, &c, x);
    }
    co_return Response::yes();
  }

  static Step<Response> moveRight(Ctx& ctx, CursorState<B>& c) {
    Snap s = co_await updateCursor(ctx, c);
    if (s.invDel) co_return Response::invalid();
    if (s.node->val.isEol()) co_return Response::no();
    c.node = s.nxt;
    assignEvent(ctx, GE::AssignSite::moveRightStep, &c, s.nxt);
    co_return Response::yes();
  }

  static Step<Response> get(Ctx& ctx, CursorState<B>& c) {
    Snap s = co_await updateCursor(ctx, c);
    if (s.invDel) co_return Response::invalid();
    co_return Response::of(s.node->val);
  }

  static Step<Response> createCursor(Ctx& ctx, CursorState<B>& c) {
    Node* first =
        co_await ctx.read(ctx.list().head->nxt, {AR::headNxtCreate});
    c.node = first;
    assignEvent(ctx, GE::AssignSite::create, &c, first);
    co_return Response::ackd();
  }

  static Step<Response> resetCursor(Ctx& ctx, CursorState<B>& c) {
    Node* first = co_await ctx.read(ctx.list().head->nxt, {AR::headNxtReset});
    c.node = first;
    assignEvent(ctx, GE::AssignSite::reset, &c, first);
    co_return Response::ackd();
  }

  static Step<Response> destroyCursor(Ctx&, CursorState<B>&) {
    // No shared accesses; cursor deregistration is the driver's bookkeeping.
    co_return Response::ackd();
  }

 private:
  static void attemptEvent(Ctx& ctx, const CursorState<B>* c, OpCode op) {
    GE e{};
    e.kind = GE::Kind::attemptBegin;
    e.cursor = c;
    e.op = op;
    ctx.ghost(e);
  }
  static void assignEvent(Ctx& ctx, GE::AssignSite site,
                          const CursorState<B>* c, const Node* n) {
    GE e{};
    e.kind = GE::Kind::cursorAssign;
    e.site = site;
    e.cursor = c;
    e.node = n;
    ctx.ghost(e);
  }
  static void failEvent(Ctx& ctx, GE::FailMode mode, std::int8_t i,
                        const void* info) {
    GE e{};
    e.kind = GE::Kind::checkInfoFail;
    e.fail = mode;
    e.index = i;
    e.info = info;
    ctx.ghost(e);
  }
};

// Builds the initial list head -> eolNode -> tail with the per-list dummy
// descriptor. Runs before any concurrency; cell stores here are
// initialization, not algorithm steps.
template <class B>
void initListCore(ListCore<B>& L) {
  using Node = NodeRecord<B>;
  using Info = InfoRecord<B>;
  L.dum = L.arena.template create<Info>(
      std::array<Node*, 3>{nullptr, nullptr, nullptr},
      std::array<Info*, 3>{nullptr, nullptr, nullptr}, nullptr, nullptr, false,
      InfoStatus::aborted);
  Node* head = L.arena.template create<Node>(detail::ValueFactory::none(),
                                             nullptr, nullptr, nullptr, L.dum,
                                             NodeState::ordinary);
  Node* tail = L.arena.template create<Node>(detail::ValueFactory::none(),
                                             nullptr, nullptr, nullptr, L.dum,
                                             NodeState::ordinary);
  Node* eol = L.arena.template create<Node>(detail::ValueFactory::eol(), tail,
                                            head, nullptr, L.dum,
                                            NodeState::ordinary);
  head->nxt.initStore(eol);
  tail->prv.initStore(eol);
  if constexpr (B::ghost) {
    head->ghost.initRaw(L.nextNodeId.fetch_add(1), 0, 0);
    tail->ghost.initRaw(L.nextNodeId.fetch_add(1), 0, 2);
    eol->ghost.initRaw(L.nextNodeId.fetch_add(1), L.nextItemId.fetch_add(1), 1);
  }
  L.head = head;
  L.tail = tail;
}

}  // namespace nbdll

#endif  // NBDLL_ALGORITHM_HPP_
