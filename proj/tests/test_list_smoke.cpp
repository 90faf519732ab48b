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

#include <vector>

#include "nbdll/list.hpp"

using namespace nbdll;

namespace {

std::vector<Value> keys(std::initializer_list<std::int64_t> ks, bool eol = true) {
  std::vector<Value> out;
  for (auto k : ks) out.emplace_back(k);
  if (eol) out.push_back(detail::ValueFactory::eol());
  return out;
}

}  // namespace

TEST_CASE("a fresh list holds only the EOL item") {
  auto list = newList();
  CHECK(list->traverse() == keys({}));
  auto c = list->createCursor();
  Response g = list->get(c);
  CHECK(g.kind == Response::Kind::value);
  CHECK(g.val.isEol());
  CHECK(list->activeCursors() == 1);
  list->destroyCursor(c);
  CHECK_FALSE(c.live());
  CHECK(list->activeCursors() == 0);
}

TEST_CASE("insert, move and delete behave sequentially") {
  auto list = newList();
  auto c = list->createCursor();

  CHECK(list->insertBefore(c, Value(10)) == Response::yes());
  // insertBefore leaves the cursor at (the copy of) the item it displaced.
  CHECK(list->get(c).val.isEol());
  CHECK(list->moveLeft(c) == Response::yes());
  CHECK(list->get(c).val == Value(10));

  CHECK(list->insertBefore(c, Value(5)) == Response::yes());
  CHECK(list->get(c).val == Value(10));
  CHECK(list->moveLeft(c) == Response::yes());
  CHECK(list->get(c).val == Value(5));
  CHECK(list->moveLeft(c) == Response::no());  // already at the first item
  CHECK(list->get(c).val == Value(5));

  CHECK(list->traverse() == keys({5, 10}));
  CHECK(list->traverseBackward() == keys({5, 10}));

  CHECK(list->moveRight(c) == Response::yes());
  CHECK(list->moveRight(c) == Response::yes());
  CHECK(list->get(c).val.isEol());
  CHECK(list->moveRight(c) == Response::no());  // EOL is the last item
  CHECK(list->deleteItem(c) == Response::no());  // EOL cannot be deleted

  CHECK(list->resetCursor(c) == Response::ackd());
  CHECK(list->get(c).val == Value(5));
  CHECK(list->deleteItem(c) == Response::yes());
  // delete leaves the cursor on the successor item.
  CHECK(list->get(c).val == Value(10));
  CHECK(list->traverse() == keys({10}));
  CHECK(list->traverseBackward() == keys({10}));

  CHECK(list->deleteItem(c) == Response::yes());
  CHECK(list->get(c).val.isEol());
  CHECK(list->traverse() == keys({}));

  list->destroyCursor(c);
}

TEST_CASE("a cursor parked on a deleted node reports invalidCursor once") {
  auto list = newList();
  auto c1 = list->createCursor();
  auto c2 = list->createCursor();
  REQUIRE(list->insertBefore(c1, Value(42)) == Response::yes());

  REQUIRE(list->resetCursor(c1) == Response::ackd());
  REQUIRE(list->resetCursor(c2) == Response::ackd());
  REQUIRE(list->deleteItem(c1) == Response::yes());

  // c2 still points at the removed node; the next operation walks off it and
  // reports the invalidation exactly once.
  CHECK(list->get(c2) == Response::invalid());
  Response g = list->get(c2);
  CHECK(g.kind == Response::Kind::value);
  CHECK(g.val.isEol());

  list->destroyCursor(c2);
  list->destroyCursor(c1);
}

TEST_CASE("an insertion invalidates only other inserts at the same position") {
  auto list = newList();
  auto c1 = list->createCursor();
  auto c2 = list->createCursor();

  // Both cursors at EOL; c1 inserts before it, superseding c2's node by copy.
  REQUIRE(list->insertBefore(c1, Value(7)) == Response::yes());
  // insertBefore is invalidated exactly once, then the retry succeeds.
  CHECK(list->insertBefore(c2, Value(9)) == Response::invalid());
  CHECK(list->insertBefore(c2, Value(9)) == Response::yes());
  CHECK(list->traverse() == keys({7, 9}));

  // get / moveLeft are unaffected by an insertion in front of the cursor:
  // the item under the cursor is still present. New cursors start at the
  // first item (7 here).
  auto c3 = list->createCursor();
  auto c4 = list->createCursor();
  REQUIRE(list->insertBefore(c3, Value(2)) == Response::yes());
  CHECK(list->traverse() == keys({2, 7, 9}));
  CHECK(list->get(c4).val == Value(7));
  CHECK(list->moveLeft(c4) == Response::yes());
  CHECK(list->get(c4).val == Value(2));

  list->destroyCursor(c4);
  list->destroyCursor(c3);
  list->destroyCursor(c2);
  list->destroyCursor(c1);
}

TEST_CASE("solo updates issue exactly three flag, one forward, one backward CAS") {
  auto list = newList();
  auto c = list->createCursor();

  OpStats ins;
  List::setStats(&ins);
  REQUIRE(list->insertBefore(c, Value(1)) == Response::yes());
  List::setStats(nullptr);
  CHECK(ins.attempts == 1);
  CHECK(ins.flagCasIssued == 3);
  CHECK(ins.flagCasSucceeded == 3);
  CHECK(ins.forwardCasIssued == 1);
  CHECK(ins.forwardCasSucceeded == 1);
  CHECK(ins.backwardCasIssued == 1);
  CHECK(ins.backwardCasSucceeded == 1);
  CHECK(ins.casIssued() == 5);
  CHECK(ins.localWrites == 1);

  REQUIRE(list->resetCursor(c) == Response::ackd());
  OpStats del;
  List::setStats(&del);
  REQUIRE(list->deleteItem(c) == Response::yes());
  List::setStats(nullptr);
  CHECK(del.attempts == 1);
  CHECK(del.flagCasIssued == 3);
  CHECK(del.flagCasSucceeded == 3);
  CHECK(del.forwardCasIssued == 1);
  CHECK(del.forwardCasSucceeded == 1);
  CHECK(del.backwardCasIssued == 1);
  CHECK(del.backwardCasSucceeded == 1);
  CHECK(del.casSucceeded() == 5);
  CHECK(del.localWrites == 0);

  list->destroyCursor(c);
}

TEST_CASE("reads-only operations never write shared cells") {
  auto list = newList();
  auto c = list->createCursor();
  REQUIRE(list->insertBefore(c, Value(3)) == Response::yes());
  REQUIRE(list->insertBefore(c, Value(4)) == Response::yes());
  REQUIRE(list->resetCursor(c) == Response::ackd());

  OpStats s;
  List::setStats(&s);
  (void)list->moveRight(c);
  (void)list->moveLeft(c);
  (void)list->get(c);
  (void)list->resetCursor(c);
  auto c2 = list->createCursor();
  list->destroyCursor(c2);
  List::setStats(nullptr);

  CHECK(s.writes == 0);
  CHECK(s.localWrites == 0);
  CHECK(s.casIssued() == 0);
  CHECK(s.reads > 0);

  list->destroyCursor(c);
}

TEST_CASE("cursor handles are movable and auto-destroy") {
  auto list = newList();
  {
    auto c = list->createCursor();
    auto d = std::move(c);
    CHECK_FALSE(c.live());
    CHECK(d.live());
    CHECK(list->activeCursors() == 1);
    CHECK(list->get(d).val.isEol());
  }
  CHECK(list->activeCursors() == 0);
}
