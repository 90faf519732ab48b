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

#include "nbdll/json_util.hpp"

#include <stdexcept>

namespace nbdll {

Json valueToJson(const Value& v) {
  if (v.isEol()) return Json("EOL");
  if (v.isNone()) throw std::invalid_argument("cannot serialize 'none' value");
  return Json(v.key());
}

Value valueFromJson(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "EOL") return detail::ValueFactory::eol();
    throw std::invalid_argument("bad value string: " + j.get<std::string>());
  }
  return Value(j.get<std::int64_t>());
}

Json dyadicToJson(const DyadicRational& d) { return Json(d.toString()); }

DyadicRational dyadicFromJson(const Json& j) {
  const std::string s = j.get<std::string>();
  auto sep = s.find("/2^");
  if (sep == std::string::npos) return DyadicRational(DyadicRational::Int(s), 0);
  return DyadicRational(
      DyadicRational::Int(s.substr(0, sep)),
      static_cast<std::uint32_t>(std::stoul(s.substr(sep + 3))));
}

Json responseToJson(const Response& r) {
  switch (r.kind) {
    case Response::Kind::retTrue: return Json("true");
    case Response::Kind::retFalse: return Json("false");
    case Response::Kind::invalidCursor: return Json("invalidCursor");
    case Response::Kind::ack: return Json("ack");
    case Response::Kind::value: return Json{{"value", valueToJson(r.val)}};
  }
  throw std::logic_error("bad response kind");
}

Response responseFromJson(const Json& j) {
  if (j.is_object()) return Response::of(valueFromJson(j.at("value")));
  const std::string s = j.get<std::string>();
  if (s == "true") return Response::yes();
  if (s == "false") return Response::no();
  if (s == "invalidCursor") return Response::invalid();
  if (s == "ack") return Response::ackd();
  throw std::invalid_argument("bad response rendering: " + s);
}

OpCode opCodeFromName(const std::string& name) {
  for (OpCode op :
       {OpCode::createCursor, OpCode::destroyCursor, OpCode::resetCursor,
        OpCode::get, OpCode::moveRight, OpCode::moveLeft, OpCode::insertBefore,
        OpCode::deleteItem}) {
    if (name == toString(op)) return op;
  }
  throw std::invalid_argument("bad operation name: " + name);
}

}  // namespace nbdll
