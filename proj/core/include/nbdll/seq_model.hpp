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

#ifndef NBDLL_SEQ_MODEL_HPP_
#define NBDLL_SEQ_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "nbdll/json_util.hpp"
#include "nbdll/roles.hpp"
#include "nbdll/value.hpp"

namespace nbdll {

// One item of the abstract list. Items are distinct (unique ids); the
// abstract position absVal mirrors the implementation's ghost value: a new
// item between p and r gets (p.absVal + r.absVal) / 2, and an item inserted
// before the first item r gets r.absVal / 2.
struct SeqItem {
  std::uint64_t id = 0;
  Value value;
  DyadicRational absVal;
};

// A cursor of the abstract state: its name, the id of the item it is
// associated with, the two invalidation bits and the owning process.
struct SeqCursor {
  std::uint64_t name = 0;
  std::uint64_t itemId = 0;
  bool invDel = false;
  bool invIns = false;
  std::uint64_t pid = 0;
};

// The executable sequential specification (L, S): L is a finite sequence of
// distinct items ending with EOL, S a set of cursors. This is the oracle the
// concurrent implementation is checked against. It is deterministic, purely
// sequential, and serializable to JSON.
//
// Transition summary (from the specification of each operation):
//   - every operation called with a cursor clears both its invalidation bits
//     before returning, whatever else it does;
//   - delete/get/moveRight/moveLeft return invalidCursor when invDel is set;
//     insertBefore returns invalidCursor when either bit is set;
//   - insertBefore(c, v) places v just before c.item and raises invIns on
//     every other cursor parked on c.item;
//   - delete(c) with c.item != EOL removes c.item, moves every cursor parked
//     on it to the successor (raising invDel on the others), and returns
//     true; at EOL it returns false;
//   - moveRight at EOL and moveLeft at the first item return false;
//   - resetCursor/createCursor park at the first item and return ack; neither
//     ever returns invalidCursor.
class SeqModel {
 public:
  SeqModel();

  // Mints a cursor owned by pid, parked at the first item. The returned name
  // identifies the cursor in all later calls; the operation's response is ack.
  std::uint64_t createCursor(std::uint64_t pid = 0);

  Response destroyCursor(std::uint64_t name);
  Response resetCursor(std::uint64_t name);
  Response get(std::uint64_t name);
  Response moveRight(std::uint64_t name);
  Response moveLeft(std::uint64_t name);
  Response insertBefore(std::uint64_t name, Value v);
  Response deleteItem(std::uint64_t name);

  // Uniform dispatch for the seven cursor-bearing operations (createCursor
  // mints a name and cannot be expressed here).
  Response apply(OpCode op, std::uint64_t name, Value arg = Value());

  const std::vector<SeqItem>& items() const { return items_; }
  const std::vector<SeqCursor>& cursors() const { return cursors_; }
  const SeqCursor* findCursor(std::uint64_t name) const;

  // The item values front to back, EOL included: the quiescent traversal of
  // an equivalent concurrent list must equal this.
  std::vector<Value> values() const;

  std::size_t userItemCount() const { return items_.size() - 1; }

  Json toJson() const;
  static SeqModel fromJson(const Json& j);

 private:
  std::size_t indexOfItem(std::uint64_t id) const;
  SeqCursor& cursorRef(std::uint64_t name);

  std::vector<SeqItem> items_;      // EOL is always last
  std::vector<SeqCursor> cursors_;  // creation order
  std::uint64_t nextItemId_ = 1;
  std::uint64_t nextCursorName_ = 1;
};

}  // namespace nbdll

#endif  // NBDLL_SEQ_MODEL_HPP_
