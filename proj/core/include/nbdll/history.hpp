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

#ifndef NBDLL_HISTORY_HPP_
#define NBDLL_HISTORY_HPP_

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "nbdll/json_util.hpp"
#include "nbdll/roles.hpp"
#include "nbdll/value.hpp"

namespace nbdll {

// One event of a concurrent history: an operation invocation or its
// response. Events carry a globally unique sequence number that fixes the
// real-time order the linearizability checker must respect.
struct HistoryEvent {
  enum class Kind : std::uint8_t { invoke, respond };

  Kind kind = Kind::invoke;
  unsigned thread = 0;
  std::uint64_t seq = 0;
  OpCode op = OpCode::get;  // both kinds, for readability of dumps
  Value arg;                // invoke of insertBefore only
  Response resp;            // respond only

  Json toJson() const;
  static HistoryEvent fromJson(const Json& j);
};

// A history is its events in sequence-number order. Per thread the events
// must alternate invoke/respond; a trailing invoke leaves that operation
// pending.
using History = std::vector<HistoryEvent>;

// The context a history is checked against: the items loaded before any
// recorded event, and per thread the pre-positioned cursor (created and
// moved right startIndex times before recording began). Threads beyond the
// vector's size start without a cursor and must createCursor in-history.
struct HistorySetup {
  std::vector<Value> initialItems;
  std::vector<unsigned> threadStart;

  Json toJson() const;
  static HistorySetup fromJson(const Json& j);
};

// Collects events from concurrently running threads. Sequence numbers come
// from one shared counter; each event is buffered on its own thread so
// recording never blocks another recorder.
class HistoryRecorder {
 public:
  explicit HistoryRecorder(unsigned threads) : buf_(threads) {}

  void invoke(unsigned thread, OpCode op, Value arg = Value());
  void respond(unsigned thread, const Response& r);

  // Merged and sorted by sequence number. Callers must quiesce the recording
  // threads first.
  History collect() const;

 private:
  std::atomic<std::uint64_t> seq_{1};
  std::vector<std::vector<HistoryEvent>> buf_;
};

// Runs body() between a recorded invocation and its recorded response.
template <class F>
Response recordWrap(HistoryRecorder& rec, unsigned thread, OpCode op,
                    Value arg, F&& body) {
  rec.invoke(thread, op, arg);
  Response r = std::forward<F>(body)();
  rec.respond(thread, r);
  return r;
}

// History files are JSON lines: an optional first line
//   {"type":"setup","initialItems":[...],"threadStart":[...]}
// followed by one event object per line.
void saveHistoryFile(std::ostream& os, const History& h,
                     const HistorySetup& setup);
std::pair<History, HistorySetup> loadHistoryFile(std::istream& is);

}  // namespace nbdll

#endif  // NBDLL_HISTORY_HPP_
