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

#include "nbdll/history.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nbdll {

Json HistoryEvent::toJson() const {
  Json j;
  j["type"] = kind == Kind::invoke ? "invoke" : "respond";
  j["seq"] = seq;
  j["thread"] = thread;
  j["op"] = toString(op);
  if (kind == Kind::invoke) {
    if (op == OpCode::insertBefore) j["arg"] = valueToJson(arg);
  } else {
    j["resp"] = responseToJson(resp);
  }
  return j;
}

HistoryEvent HistoryEvent::fromJson(const Json& j) {
  HistoryEvent e;
  const std::string type = j.at("type").get<std::string>();
  if (type == "invoke") {
    e.kind = Kind::invoke;
  } else if (type == "respond") {
    e.kind = Kind::respond;
  } else {
    throw std::invalid_argument("history event type must be invoke|respond");
  }
  e.seq = j.at("seq").get<std::uint64_t>();
  e.thread = j.at("thread").get<unsigned>();
  e.op = opCodeFromName(j.at("op").get<std::string>());
  if (j.contains("arg")) e.arg = valueFromJson(j.at("arg"));
  if (j.contains("resp")) e.resp = responseFromJson(j.at("resp"));
  return e;
}

Json HistorySetup::toJson() const {
  Json j;
  j["type"] = "setup";
  j["initialItems"] = Json::array();
  for (const Value& v : initialItems)
    j["initialItems"].push_back(valueToJson(v));
  j["threadStart"] = threadStart;
  return j;
}

HistorySetup HistorySetup::fromJson(const Json& j) {
  HistorySetup s;
  if (j.contains("initialItems"))
    for (const Json& v : j.at("initialItems"))
      s.initialItems.push_back(valueFromJson(v));
  if (j.contains("threadStart"))
    s.threadStart = j.at("threadStart").get<std::vector<unsigned>>();
  return s;
}

void HistoryRecorder::invoke(unsigned thread, OpCode op, Value arg) {
  HistoryEvent e;
  e.kind = HistoryEvent::Kind::invoke;
  e.thread = thread;
  e.seq = seq_.fetch_add(1, std::memory_order_relaxed);
  e.op = op;
  e.arg = arg;
  buf_.at(thread).push_back(e);
}

void HistoryRecorder::respond(unsigned thread, const Response& r) {
  auto& b = buf_.at(thread);
  if (b.empty() || b.back().kind != HistoryEvent::Kind::invoke)
    throw std::logic_error("respond without an open invocation");
  HistoryEvent e;
  e.kind = HistoryEvent::Kind::respond;
  e.thread = thread;
  e.seq = seq_.fetch_add(1, std::memory_order_relaxed);
  e.op = b.back().op;
  e.resp = r;
  b.push_back(e);
}

History HistoryRecorder::collect() const {
  History out;
  for (const auto& b : buf_) out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end(),
            [](const HistoryEvent& a, const HistoryEvent& b) {
              return a.seq < b.seq;
            });
  return out;
}

void saveHistoryFile(std::ostream& os, const History& h,
                     const HistorySetup& setup) {
  os << setup.toJson().dump() << '\n';
  for (const HistoryEvent& e : h) os << e.toJson().dump() << '\n';
}

std::pair<History, HistorySetup> loadHistoryFile(std::istream& is) {
  History h;
  HistorySetup setup;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& ex) {
      throw std::invalid_argument("history line " + std::to_string(lineNo) +
                                  ": " + ex.what());
    }
    if (j.contains("type") && j.at("type") == "setup") {
      setup = HistorySetup::fromJson(j);
      continue;
    }
    h.push_back(HistoryEvent::fromJson(j));
  }
  std::sort(h.begin(), h.end(), [](const HistoryEvent& a,
                                   const HistoryEvent& b) {
    return a.seq < b.seq;
  });
  return {std::move(h), std::move(setup)};
}

}  // namespace nbdll
