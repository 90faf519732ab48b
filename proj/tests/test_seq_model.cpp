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

#include "nbdll/seq_model.hpp"

using namespace nbdll;

TEST_CASE("the initial state is (<EOL>, {})") {
  SeqModel m;
  REQUIRE(m.items().size() == 1);
  CHECK(m.items()[0].value.isEol());
  CHECK(m.items()[0].absVal == DyadicRational(1));
  CHECK(m.cursors().empty());
  CHECK(m.userItemCount() == 0);
}

TEST_CASE("createCursor parks at the first item; resetCursor always acks") {
  SeqModel m;
  auto c = m.createCursor(7);
  REQUIRE(m.cursors().size() == 1);
  CHECK(m.findCursor(c)->pid == 7);
  CHECK(m.findCursor(c)->itemId == m.items()[0].id);
  CHECK(m.get(c) == Response::of(detail::ValueFactory::eol()));

  CHECK(m.insertBefore(c, Value(4)) == Response::yes());
  CHECK(m.resetCursor(c) == Response::ackd());
  CHECK(m.get(c) == Response::of(Value(4)));
  CHECK(m.destroyCursor(c) == Response::ackd());
  CHECK(m.cursors().empty());
}

TEST_CASE("insertBefore assigns midpoint abstract positions") {
  SeqModel m;
  auto c = m.createCursor();
  // Insert before EOL (absVal 1): first item gets 1/2 (= r.absVal / 2).
  REQUIRE(m.insertBefore(c, Value(10)) == Response::yes());
  CHECK(m.items()[0].absVal == DyadicRational::midpoint(DyadicRational(0),
                                                        DyadicRational(1)));
  // Cursor stays at EOL; insert 20 before EOL: between 1/2 and 1 -> 3/4.
  REQUIRE(m.insertBefore(c, Value(20)) == Response::yes());
  CHECK(m.items()[1].absVal ==
        DyadicRational(DyadicRational::Int(3), 2));
  // Reset to first item (10, absVal 1/2); insert before it -> 1/4.
  REQUIRE(m.resetCursor(c) == Response::ackd());
  REQUIRE(m.insertBefore(c, Value(5)) == Response::yes());
  CHECK(m.items()[0].absVal == DyadicRational(DyadicRational::Int(1), 2));
  CHECK(m.items()[0].value == Value(5));

  // Positions are strictly increasing, and ids pairwise distinct.
  for (std::size_t i = 1; i < m.items().size(); ++i) {
    CHECK(m.items()[i - 1].absVal < m.items()[i].absVal);
    for (std::size_t k = 0; k < i; ++k)
      CHECK(m.items()[k].id != m.items()[i].id);
  }
}

TEST_CASE("delete retargets and invalidates other cursors on the same item") {
  SeqModel m;
  auto a = m.createCursor();
  REQUIRE(m.insertBefore(a, Value(1)) == Response::yes());
  REQUIRE(m.insertBefore(a, Value(2)) == Response::yes());
  REQUIRE(m.resetCursor(a) == Response::ackd());

  auto b = m.createCursor();  // also at first item (1)
  auto d = m.createCursor();
  REQUIRE(m.moveRight(d) == Response::yes());  // d at 2

  CHECK(m.deleteItem(a) == Response::yes());
  // a moved to the successor without invalidation; b moved and invalidated.
  CHECK(m.findCursor(a)->itemId == m.findCursor(b)->itemId);
  CHECK_FALSE(m.findCursor(a)->invDel);
  CHECK(m.findCursor(b)->invDel);
  CHECK_FALSE(m.findCursor(d)->invDel);

  // Every flagged op answers invalidCursor exactly once, then is clean again.
  CHECK(m.get(b) == Response::invalid());
  CHECK(m.get(b) == Response::of(Value(2)));

  CHECK(m.deleteItem(a) == Response::yes());
  CHECK(m.get(d) == Response::invalid());
  CHECK(m.get(a) == Response::of(detail::ValueFactory::eol()));
  CHECK(m.deleteItem(a) == Response::no());  // EOL is never deleted
}

TEST_CASE("insertBefore invalidates exactly co-located inserts") {
  SeqModel m;
  auto a = m.createCursor();
  auto b = m.createCursor();
  auto d = m.createCursor();
  REQUIRE(m.insertBefore(a, Value(5)) == Response::yes());
  REQUIRE(m.moveLeft(d) == Response::yes());  // d onto the new 5

  // b is still parked at EOL where the insert landed: invIns is set.
  CHECK(m.findCursor(b)->invIns);
  CHECK_FALSE(m.findCursor(b)->invDel);
  CHECK_FALSE(m.findCursor(d)->invIns);

  // get/moveRight/moveLeft/delete ignore invIns...
  CHECK(m.get(b) == Response::of(detail::ValueFactory::eol()));
  // ...and any operation clears it: the later insert goes through.
  CHECK(m.insertBefore(b, Value(9)) == Response::yes());

  // A fresh co-located insert invalidates b's next insert exactly once.
  REQUIRE(m.resetCursor(a) == Response::ackd());
  REQUIRE(m.resetCursor(b) == Response::ackd());
  REQUIRE(m.insertBefore(a, Value(1)) == Response::yes());
  CHECK(m.insertBefore(b, Value(2)) == Response::invalid());
  CHECK(m.insertBefore(b, Value(2)) == Response::yes());
}

TEST_CASE("moveRight stops at EOL, moveLeft stops at the first item") {
  SeqModel m;
  auto c = m.createCursor();
  CHECK(m.moveRight(c) == Response::no());
  CHECK(m.moveLeft(c) == Response::no());
  REQUIRE(m.insertBefore(c, Value(8)) == Response::yes());
  CHECK(m.moveLeft(c) == Response::yes());
  CHECK(m.moveLeft(c) == Response::no());
  CHECK(m.moveRight(c) == Response::yes());
  CHECK(m.moveRight(c) == Response::no());
  CHECK(m.get(c) == Response::of(detail::ValueFactory::eol()));
}

TEST_CASE("the model round-trips through JSON") {
  SeqModel m;
  auto a = m.createCursor(3);
  auto b = m.createCursor(4);
  REQUIRE(m.insertBefore(a, Value(11)) == Response::yes());
  REQUIRE(m.insertBefore(a, Value(12)) == Response::yes());
  REQUIRE(m.resetCursor(b) == Response::ackd());
  REQUIRE(m.deleteItem(a) == Response::no());  // at EOL
  REQUIRE(m.resetCursor(a) == Response::ackd());
  REQUIRE(m.deleteItem(b) == Response::yes());  // a gets invDel

  Json j = m.toJson();
  SeqModel r = SeqModel::fromJson(j);
  CHECK(r.toJson() == j);
  CHECK(r.values() == m.values());
  REQUIRE(r.findCursor(a) != nullptr);
  CHECK(r.findCursor(a)->invDel == m.findCursor(a)->invDel);

  // The copy evolves exactly like the original.
  CHECK(m.get(a) == r.get(a));
  CHECK(m.get(a) == r.get(a));
  CHECK(m.insertBefore(b, Value(50)) == r.insertBefore(b, Value(50)));
  CHECK(r.toJson() == m.toJson());
}
