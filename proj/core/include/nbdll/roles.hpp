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

#ifndef NBDLL_ROLES_HPP_
#define NBDLL_ROLES_HPP_

#include <cstdint>
#include <string>

#include "nbdll/value.hpp"

namespace nbdll {

enum class NodeState : std::uint8_t { ordinary, copied, marked };
enum class InfoStatus : std::uint8_t { inProgress, committed, aborted };

inline const char* toString(NodeState s) {
  switch (s) {
    case NodeState::ordinary: return "ordinary";
    case NodeState::copied: return "copied";
    case NodeState::marked: return "marked";
  }
  return "?";
}
inline const char* toString(InfoStatus s) {
  switch (s) {
    case InfoStatus::inProgress: return "inProgress";
    case InfoStatus::committed: return "committed";
    case InfoStatus::aborted: return "aborted";
  }
  return "?";
}

// Which statement of the algorithm a shared-cell access implements. The
// verification monitor dispatches its per-step checks on this.
enum class AccessRole : std::uint8_t {
  // updateCursor
  ucGuardState,   // loop guard, c.node.state
  ucGuardPrv,     // loop guard, c.node.prv
  ucGuardPrvNxt,  // loop guard, (c.node.prv).nxt
  ucBodyState,    // body re-read of c.node.state
  ucHopCopy,      // hop read of c.node.copy (cursor advances here)
  ucHopNxt,       // hop read of c.node.nxt (cursor advances here)
  ucInfoRead,     // info snapshot read
  ucSnapNxt,      // returned nxt read
  ucSnapPrv,      // returned prv read
  // update attempt setup
  oldInfoX,  // x.info for oldInfo[0]
  oldInfoZ,  // z.info for oldInfo[2]
  // checkInfo (index = loop position)
  ciStatus,  // oldInfo[i].status
  ciState,   // nodes[i].state
  ciInfo,    // nodes[i].info
  // help (index = loop position for flagCas/doPtrRead)
  flagCas,
  doPtrRead,    // I.nodes[i].info = I ?
  copyWrite,    // I.nodes[1].copy <- I.newPrv
  stateWrite,   // I.nodes[1].state <- marked | copied
  forwardCas,   // I.nodes[0].nxt
  backwardCas,  // I.nodes[2].prv
  commitWrite,  // I.status <- committed
  abortRead,    // I.status = inProgress ?
  abortWrite,   // I.status <- aborted
  statusReturnRead,  // return (I.status = committed)
  // insertBefore private-node initialization (not a scheduling point)
  newNxtLocal,
  // createCursor / resetCursor
  headNxtCreate,
  headNxtReset,
  // moveLeft recovery test and branches
  mlTestState,
  mlTestPrv,
  mlTestPrvNxt,
  mlTestNxt,
  mlStateRead,  // re-read inside the taken branch
  mlCopyRead,   // x.copy
  mlPrvRead,    // w <- x.prv
};

enum class AccessKind : std::uint8_t { read, write, cas };

inline AccessKind kindOf(AccessRole r) {
  switch (r) {
    case AccessRole::flagCas:
    case AccessRole::forwardCas:
    case AccessRole::backwardCas:
      return AccessKind::cas;
    case AccessRole::copyWrite:
    case AccessRole::stateWrite:
    case AccessRole::commitWrite:
    case AccessRole::abortWrite:
    case AccessRole::newNxtLocal:
      return AccessKind::write;
    default:
      return AccessKind::read;
  }
}

inline const char* toString(AccessKind k) {
  switch (k) {
    case AccessKind::read: return "read";
    case AccessKind::write: return "write";
    case AccessKind::cas: return "cas";
  }
  return "?";
}

inline const char* toString(AccessRole r) {
  switch (r) {
    case AccessRole::ucGuardState: return "ucGuardState";
    case AccessRole::ucGuardPrv: return "ucGuardPrv";
    case AccessRole::ucGuardPrvNxt: return "ucGuardPrvNxt";
    case AccessRole::ucBodyState: return "ucBodyState";
    case AccessRole::ucHopCopy: return "ucHopCopy";
    case AccessRole::ucHopNxt: return "ucHopNxt";
    case AccessRole::ucInfoRead: return "ucInfoRead";
    case AccessRole::ucSnapNxt: return "ucSnapNxt";
    case AccessRole::ucSnapPrv: return "ucSnapPrv";
    case AccessRole::oldInfoX: return "oldInfoX";
    case AccessRole::oldInfoZ: return "oldInfoZ";
    case AccessRole::ciStatus: return "ciStatus";
    case AccessRole::ciState: return "ciState";
    case AccessRole::ciInfo: return "ciInfo";
    case AccessRole::flagCas: return "flagCas";
    case AccessRole::doPtrRead: return "doPtrRead";
    case AccessRole::copyWrite: return "copyWrite";
    case AccessRole::stateWrite: return "stateWrite";
    case AccessRole::forwardCas: return "forwardCas";
    case AccessRole::backwardCas: return "backwardCas";
    case AccessRole::commitWrite: return "commitWrite";
    case AccessRole::abortRead: return "abortRead";
    case AccessRole::abortWrite: return "abortWrite";
    case AccessRole::statusReturnRead: return "statusReturnRead";
    case AccessRole::newNxtLocal: return "newNxtLocal";
    case AccessRole::headNxtCreate: return "headNxtCreate";
    case AccessRole::headNxtReset: return "headNxtReset";
    case AccessRole::mlTestState: return "mlTestState";
    case AccessRole::mlTestPrv: return "mlTestPrv";
    case AccessRole::mlTestPrvNxt: return "mlTestPrvNxt";
    case AccessRole::mlTestNxt: return "mlTestNxt";
    case AccessRole::mlStateRead: return "mlStateRead";
    case AccessRole::mlCopyRead: return "mlCopyRead";
    case AccessRole::mlPrvRead: return "mlPrvRead";
  }
  return "?";
}

// Role of one access: the statement plus, where the statement sits in a loop,
// the loop index (checkInfo and the flag loop of help).
struct Role {
  AccessRole role;
  std::int8_t index = -1;
};

// The eight public operations.
enum class OpCode : std::uint8_t {
  createCursor,
  destroyCursor,
  resetCursor,
  get,
  moveRight,
  moveLeft,
  insertBefore,
  deleteItem,
};

inline const char* toString(OpCode op) {
  switch (op) {
    case OpCode::createCursor: return "createCursor";
    case OpCode::destroyCursor: return "destroyCursor";
    case OpCode::resetCursor: return "resetCursor";
    case OpCode::get: return "get";
    case OpCode::moveRight: return "moveRight";
    case OpCode::moveLeft: return "moveLeft";
    case OpCode::insertBefore: return "insertBefore";
    case OpCode::deleteItem: return "deleteItem";
  }
  return "?";
}

inline bool isUpdate(OpCode op) {
  return op == OpCode::insertBefore || op == OpCode::deleteItem;
}
inline bool isMove(OpCode op) {
  return op == OpCode::moveLeft || op == OpCode::moveRight;
}

// Operation response: true/false/invalidCursor for updates and moves, ack for
// cursor management, a value for get.
struct Response {
  enum class Kind : std::uint8_t { retTrue, retFalse, invalidCursor, ack, value };
  Kind kind = Kind::ack;
  Value val;

  static Response yes() { return {Kind::retTrue, Value()}; }
  static Response no() { return {Kind::retFalse, Value()}; }
  static Response invalid() { return {Kind::invalidCursor, Value()}; }
  static Response ackd() { return {Kind::ack, Value()}; }
  static Response of(Value v) { return {Kind::value, v}; }

  friend bool operator==(const Response& a, const Response& b) {
    if (a.kind != b.kind) return false;
    return a.kind != Kind::value || a.val == b.val;
  }
  friend bool operator!=(const Response& a, const Response& b) {
    return !(a == b);
  }

  std::string toString() const {
    switch (kind) {
      case Kind::retTrue: return "true";
      case Kind::retFalse: return "false";
      case Kind::invalidCursor: return "invalidCursor";
      case Kind::ack: return "ack";
      case Kind::value: return val.toString();
    }
    return "?";
  }
};

// Events the algorithm (and the drivers) emit alongside shared accesses so the
// monitor can track ghost state exactly. Events queued between two scheduling
// points are treated as happening atomically with the earlier point.
struct GhostEvent {
  enum class Kind : std::uint8_t {
    opBegin,
    opEnd,
    attemptBegin,
    checkInfoFail,  // failMode + index say why/where
    hop,            // updateCursor advanced the cursor: node = new position
    cursorAssign,   // c.node <- node (site says which statement)
    cursorCreate,
    cursorDestroy,
    helpEnter,
    helpExit,
  };
  enum class FailMode : std::uint8_t { none, inProgress, stateNotOrdinary, infoMismatch, helpFailed };
  enum class AssignSite : std::uint8_t {
    none,
    create,
    reset,
    insCommit,
    delCommit,
    moveRightStep,
    moveLeftPlain,
    moveLeftCopy,
    moveLeftPrv,
  };

  Kind kind;
  FailMode fail = FailMode::none;
  AssignSite site = AssignSite::none;
  std::int8_t index = -1;
  bool viaCopy = false;
  bool helpResult = false;
  const void* cursor = nullptr;
  const void* node = nullptr;
  const void* info = nullptr;
  OpCode op = OpCode::get;
  Response resp;
};

}  // namespace nbdll

#endif  // NBDLL_ROLES_HPP_
