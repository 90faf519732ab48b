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

#ifndef NBDLL_JSON_UTIL_HPP_
#define NBDLL_JSON_UTIL_HPP_

#include <nlohmann/json.hpp>

#include "nbdll/dyadic.hpp"
#include "nbdll/roles.hpp"
#include "nbdll/value.hpp"

namespace nbdll {

// All JSON emitted by this project uses ordered_json so that output is
// byte-stable across runs given the same inputs.
using Json = nlohmann::ordered_json;

// Values serialize as a plain number (ordinary) or the string "EOL"; the
// internal "none" variant never reaches serialized state.
Json valueToJson(const Value& v);
Value valueFromJson(const Json& j);

// Dyadic rationals serialize as their canonical "n/2^e" rendering.
Json dyadicToJson(const DyadicRational& d);
DyadicRational dyadicFromJson(const Json& j);

// Responses serialize as {"kind": "...", "value": ...} with the value field
// present only for value responses.
Json responseToJson(const Response& r);
Response responseFromJson(const Json& j);

OpCode opCodeFromName(const std::string& name);

}  // namespace nbdll

#endif  // NBDLL_JSON_UTIL_HPP_
