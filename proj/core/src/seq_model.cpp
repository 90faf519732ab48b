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

#include "nbdll/seq_model.hpp"

#include <cassert>
#include <stdexcept>

namespace nbdll {

SeqModel::SeqModel() {
  // Initial state: (<EOL>, {}). EOL sits at abstract position 1, matching
  // the virtual bounds 0 (front) and 2 (back) used for midpoints.
  items_.push_back(SeqItem{0, detail::ValueFactory::eol(), DyadicRational(1)});
}

std::uint64_t SeqModel::createCursor(std::uint64_t pid) {
  SeqCursor c;
  c.name = nextCursorName_++;
  c.itemId = items_.front().id;
  c.pid = pid;
  cursors_.push_back(c);
  return c.name;
}

Response SeqModel::destroyCursor(std::uint64_t name) {
  for (std::size_t i = 0; i < cursors_.size(); ++i) {
    if (cursors_[i].name == name) {
      cursors_.erase(cursors_.begin() + static_cast<std::ptrdiff_t>(i));
      return Response::ackd();
    }
  }
  throw std::invalid_argument("destroyCursor: unknown cursor");
}

Response SeqModel::resetCursor(std::uint64_t name) {
  SeqCursor& c = cursorRef(name);
  c.itemId = items_.front().id;
  c.invDel = false;
  c.invIns = false;
  return Response::ackd();
}

Response SeqModel::get(std::uint64_t name) {
  SeqCursor& c = cursorRef(name);
  bool wasInvalid = c.invDel;
  c.invDel = false;
  c.invIns = false;
  if (wasInvalid) return Response::invalid();
  return Response::of(items_[indexOfItem(c.itemId)].value);
}

Response SeqModel::moveRight(std::uint64_t name) {
  SeqCursor& c = cursorRef(name);
  bool wasInvalid = c.invDel;
  c.invDel = false;
  c.invIns = false;
  if (wasInvalid) return Response::invalid();
  std::size_t idx = indexOfItem(c.itemId);
  if (items_[idx].value.isEol()) return Response::no();
  c.itemId = items_[idx + 1].id;
  return Response::yes();
}

Response SeqModel::moveLeft(std::uint64_t name) {
  SeqCursor& c = cursorRef(name);
  bool wasInvalid = c.invDel;
  c.invDel = false;
  c.invIns = false;
  if (wasInvalid) return Response::invalid();
  std::size_t idx = indexOfItem(c.itemId);
  if (idx == 0) return Response::no();
  c.itemId = items_[idx - 1].id;
  return Response::yes();
}

Response SeqModel::insertBefore(std::uint64_t name, Value v) {
  SeqCursor& c = cursorRef(name);
  bool wasInvalid = c.invDel || c.invIns;
  c.invDel = false;
  c.invIns = false;
  if (wasInvalid) return Response::invalid();
  assert(!v.isEol() && !v.isNone() && "insertBefore requires a user value");

  std::size_t idx = indexOfItem(c.itemId);
  DyadicRational left = (idx == 0) ? DyadicRational(0) : items_[idx - 1].absVal;
  SeqItem item;
  item.id = nextItemId_++;
  item.value = v;
  item.absVal = DyadicRational::midpoint(left, items_[idx].absVal);
  items_.insert(items_.begin() + static_cast<std::ptrdiff_t>(idx), item);

  for (SeqCursor& other : cursors_) {
    if (other.name != name && other.itemId == c.itemId) other.invIns = true;
  }
  return Response::yes();
}

Response SeqModel::deleteItem(std::uint64_t name) {
  SeqCursor& c = cursorRef(name);
  bool wasInvalid = c.invDel;
  c.invDel = false;
  c.invIns = false;
  if (wasInvalid) return Response::invalid();

  std::size_t idx = indexOfItem(c.itemId);
  if (items_[idx].value.isEol()) return Response::no();
  std::uint64_t removed = c.itemId;
  std::uint64_t successor = items_[idx + 1].id;
  items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(idx));

  for (SeqCursor& other : cursors_) {
    if (other.name != name && other.itemId == removed) {
      other.itemId = successor;
      other.invDel = true;
    }
  }
  c.itemId = successor;
  return Response::yes();
}

Response SeqModel::apply(OpCode op, std::uint64_t name, Value arg) {
  switch (op) {
    case OpCode::destroyCursor: return destroyCursor(name);
    case OpCode::resetCursor: return resetCursor(name);
    case OpCode::get: return get(name);
    case OpCode::moveRight: return moveRight(name);
    case OpCode::moveLeft: return moveLeft(name);
    case OpCode::insertBefore: return insertBefore(name, arg);
    case OpCode::deleteItem: return deleteItem(name);
    case OpCode::createCursor: break;
  }
  throw std::invalid_argument("apply: createCursor mints its own name");
}

const SeqCursor* SeqModel::findCursor(std::uint64_t name) const {
  for (const SeqCursor& c : cursors_)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<Value> SeqModel::values() const {
  std::vector<Value> out;
  out.reserve(items_.size());
  for (const SeqItem& it : items_) out.push_back(it.value);
  return out;
}

Json SeqModel::toJson() const {
  Json items = Json::array();
  for (const SeqItem& it : items_) {
    items.push_back(Json{{"id", it.id},
                         {"value", valueToJson(it.value)},
                         {"absVal", dyadicToJson(it.absVal)}});
  }
  Json cursors = Json::array();
  for (const SeqCursor& c : cursors_) {
    cursors.push_back(Json{{"name", c.name},
                           {"item", c.itemId},
                           {"invDel", c.invDel},
                           {"invIns", c.invIns},
                           {"pid", c.pid}});
  }
  return Json{{"items", std::move(items)},
              {"cursors", std::move(cursors)},
              {"nextItemId", nextItemId_},
              {"nextCursorName", nextCursorName_}};
}

SeqModel SeqModel::fromJson(const Json& j) {
  SeqModel m;
  m.items_.clear();
  for (const Json& it : j.at("items")) {
    m.items_.push_back(SeqItem{it.at("id").get<std::uint64_t>(),
                               valueFromJson(it.at("value")),
                               dyadicFromJson(it.at("absVal"))});
  }
  if (m.items_.empty() || !m.items_.back().value.isEol())
    throw std::invalid_argument("SeqModel::fromJson: list must end with EOL");
  for (const Json& cj : j.at("cursors")) {
    SeqCursor c;
    c.name = cj.at("name").get<std::uint64_t>();
    c.itemId = cj.at("item").get<std::uint64_t>();
    c.invDel = cj.at("invDel").get<bool>();
    c.invIns = cj.at("invIns").get<bool>();
    c.pid = cj.at("pid").get<std::uint64_t>();
    m.cursors_.push_back(c);
  }
  m.nextItemId_ = j.at("nextItemId").get<std::uint64_t>();
  m.nextCursorName_ = j.at("nextCursorName").get<std::uint64_t>();
  return m;
}

std::size_t SeqModel::indexOfItem(std::uint64_t id) const {
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i].id == id) return i;
  throw std::logic_error("cursor refers to an item not in L");
}

SeqCursor& SeqModel::cursorRef(std::uint64_t name) {
  for (SeqCursor& c : cursors_)
    if (c.name == name) return c;
  throw std::invalid_argument("unknown cursor name");
}

}  // namespace nbdll
