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

#ifndef NBDLL_VALUE_HPP_
#define NBDLL_VALUE_HPP_

#include <cstdint>
#include <functional>
#include <string>

namespace nbdll {

namespace detail {
struct ValueFactory;
}  // namespace detail

// An item value. Ordinary values wrap a signed 64-bit key. Two further
// variants exist that clients cannot construct: the end-of-list marker (EOL),
// which orders after every ordinary value, and a "no value" placeholder that
// appears only on the head/tail sentinels and is never observable through the
// public API.
class Value {
  enum class Tag : std::uint8_t { user, eol, none };

 public:
  Value() = default;
  explicit Value(std::int64_t key) : key_(key) {}

  bool isEol() const { return tag_ == Tag::eol; }
  bool isNone() const { return tag_ == Tag::none; }

  // The ordinary key. Meaningless (zero) for EOL/none; check isEol() first
  // when the value may be EOL.
  std::int64_t key() const { return key_; }

  friend bool operator==(const Value& a, const Value& b) {
    return a.tag_ == b.tag_ && a.key_ == b.key_;
  }
  friend bool operator<(const Value& a, const Value& b) {
    if (a.tag_ != b.tag_) return a.tag_ < b.tag_;  // user < eol < none
    return a.key_ < b.key_;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<=(const Value& a, const Value& b) { return !(b < a); }
  friend bool operator>(const Value& a, const Value& b) { return b < a; }
  friend bool operator>=(const Value& a, const Value& b) { return !(a < b); }

  std::string toString() const {
    switch (tag_) {
      case Tag::eol: return "EOL";
      case Tag::none: return "none";
      default: return std::to_string(key_);
    }
  }

 private:
  explicit Value(Tag t) : key_(0), tag_(t) {}
  friend struct detail::ValueFactory;

  std::int64_t key_ = 0;
  Tag tag_ = Tag::user;
};

namespace detail {
// Internal factory for the non-user variants; the public API never exposes
// construction of either.
struct ValueFactory {
  static Value eol() { return Value(Value::Tag::eol); }
  static Value none() { return Value(Value::Tag::none); }
};
}  // namespace detail

}  // namespace nbdll

template <>
struct std::hash<nbdll::Value> {
  std::size_t operator()(const nbdll::Value& v) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(v.key());
    if (v.isEol()) return ~h;
    if (v.isNone()) return h ^ 0x9e3779b97f4a7c15ull;
    return h;
  }
};

#endif  // NBDLL_VALUE_HPP_
