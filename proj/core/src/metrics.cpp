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

#include "nbdll/metrics.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace nbdll {

namespace {

constexpr std::size_t kChainBound = 100000;
constexpr std::size_t kRealNodeHopBound = 4096;

std::string nodeName(const SimNode* n) {
  std::ostringstream os;
  if (n == nullptr) return "null";
#if NBDLL_GHOST
  os << "n" << n->ghost.nodeId;
#else
  os << "node@" << static_cast<const void*>(n);
#endif
  return os.str();
}

}  // namespace

std::vector<const SimNode*> reachableChain(const SimWorld& world) {
  std::vector<const SimNode*> chain;
  const SimNode* n = world.list.head;
  while (n != world.list.tail) {
    chain.push_back(n);
    n = n->nxt.peek();
    if (n == nullptr) throw std::logic_error("reachableChain: null nxt link");
    if (chain.size() > kChainBound)
      throw std::logic_error("reachableChain: walk exceeded bound");
  }
  chain.push_back(n);
  return chain;
}

const SimNode* realNode(const SimNode* u,
                        const std::set<const SimNode*>& reachable) {
  if (u == nullptr) throw std::logic_error("realNode: null node");
  std::size_t hops = 0;
  while (reachable.count(u) == 0) {
    NodeState s = u->state.peek();
    if (s == NodeState::copied) {
      u = u->copy.peek();
    } else if (s == NodeState::marked) {
      u = u->nxt.peek();
    } else {
      break;  // unreachable yet ordinary: terminal (caller asserts loudly)
    }
    if (u == nullptr) throw std::logic_error("realNode: null hop target");
    if (++hops > kRealNodeHopBound)
      throw std::logic_error("realNode: hop bound exceeded");
  }
  return u;
}

std::size_t lengthOf(const SimNode* u,
                     const std::set<const SimNode*>& reachable) {
  if (u == nullptr) throw std::logic_error("lengthOf: null node");
  std::size_t hops = 0;
  while (reachable.count(u) == 0) {
    NodeState s = u->state.peek();
    if (s == NodeState::copied) {
      u = u->copy.peek();
    } else if (s == NodeState::marked) {
      u = u->nxt.peek();
    } else {
      break;
    }
    if (u == nullptr) throw std::logic_error("lengthOf: null hop target");
    if (++hops > kRealNodeHopBound)
      throw std::logic_error("lengthOf: hop bound exceeded");
  }
  return hops;
}

PotentialState computePotential(const Configuration& cfg) {
  if (cfg.world == nullptr) throw std::logic_error("computePotential: no world");
  const std::vector<const SimNode*> chain = reachableChain(*cfg.world);
  std::set<const SimNode*> reach(chain.begin(), chain.end());
  std::map<const SimNode*, std::size_t> pos;
  for (std::size_t k = 0; k < chain.size(); ++k) pos.emplace(chain[k], k);

  PotentialState p;
  for (const SimNode* c : cfg.cursorNodes)
    p.cursorPart += static_cast<std::int64_t>(lengthOf(c, reach));

  // phi_flag suffix sums over the chain (head through tail inclusive).
  std::vector<std::int64_t> suffix(chain.size() + 1, 0);
  for (std::size_t k = chain.size(); k-- > 0;) {
    const SimNode* w = chain[k];
    const SimInfo* inf = w->info.peek();
    if (inf == nullptr) throw std::logic_error("computePotential: null info");
    std::int64_t flag = (inf->status.peek() == InfoStatus::inProgress) ? 1 : 0;
    std::int64_t abort = cfg.abortSet.count(w) ? 1 : 0;
    suffix[k] = suffix[k + 1] + abort - flag;
  }

  const auto uDot = static_cast<std::int64_t>(cfg.updates.size());
  for (const UpdateAux& up : cfg.updates) {
    const SimNode* n1 = realNode(up.cursorNode, reach);
    auto it = pos.find(n1);
    if (it == pos.end())
      throw std::logic_error("computePotential: node_1 not reachable");
    std::size_t k = it->second;
    if (k == 0 || k + 1 >= chain.size())
      throw std::logic_error("computePotential: node_1 at a sentinel");
    // node_0 is the reachable predecessor, node_2 the nxt target; both are
    // the chain neighbours because the chain follows nxt.
    std::int64_t phiFlag = suffix[k - 1] + suffix[k] + suffix[k + 1];
    p.flagPart += 3 * phiFlag;
    p.flagPart += up.lose[0] + up.lose[1] + up.lose[2];
    p.statePart += up.phiState;
  }
  p.flagPart += 27 * uDot * uDot;
  return p;
}

std::vector<std::string> sweepInvariants(const Configuration& cfg) {
  std::vector<std::string> out;
  if (cfg.world == nullptr) {
    out.push_back("config: no world");
    return out;
  }
  const SimWorld& world = *cfg.world;
  const SimNode* head = world.list.head;
  const SimNode* tail = world.list.tail;

  std::vector<const SimNode*> chain;
  try {
    chain = reachableChain(world);
  } catch (const std::logic_error& e) {
    out.push_back(std::string("chain: ") + e.what());
    return out;
  }

  // Invariant 1, cursor clause: cursors never point to head or tail.
  for (const SimNode* c : cfg.cursorNodes) {
    if (c == nullptr)
      out.push_back("cursor-at-sentinel: cursor node is null");
    else if (c == head || c == tail)
      out.push_back("cursor-at-sentinel: cursor at " + nodeName(c));
  }

  // EOL-before-tail along the reachable list.
  if (chain.size() < 3 || !chain[chain.size() - 2]->val.isEol())
    out.push_back("eol-before-tail: last node before tail is not EOL");

  for (const SimNode* u : world.nodes()) {
    const SimNode* nx = u->nxt.peek();
    const SimNode* pv = u->prv.peek();
    // Invariant 1, EOL clause: a node pointing at tail holds EOL.
    if (nx == tail && !u->val.isEol())
      out.push_back("eol-points-tail: " + nodeName(u) +
                    " has nxt = tail but val != EOL");
    // Non-null structure: every node links inward except the sentinels'
    // outward fields.
    if (u != tail && nx == nullptr)
      out.push_back("nonnull: " + nodeName(u) + " has null nxt");
    if (u != head && pv == nullptr)
      out.push_back("nonnull: " + nodeName(u) + " has null prv");
    if (u->info.peek() == nullptr)
      out.push_back("nonnull: " + nodeName(u) + " has null info");
    // A copied node must have its replacement installed.
    if (u->state.peek() == NodeState::copied && u->copy.peek() == nullptr)
      out.push_back("copy-missing: " + nodeName(u) +
                    " is copied with null copy");
  }

#if NBDLL_GHOST
  // absVal strict order along every nxt and prv link; each ordered pair is
  // checked once even when both fields witness it.
  {
    std::set<std::pair<const SimNode*, const SimNode*>> edges;
    for (const SimNode* u : world.nodes()) {
      if (const SimNode* nx = u->nxt.peek(); nx != nullptr)
        edges.emplace(u, nx);
      if (const SimNode* pv = u->prv.peek(); pv != nullptr)
        edges.emplace(pv, u);
    }
    for (const auto& [a, b] : edges) {
      if (!(a->ghost.absVal < b->ghost.absVal))
        out.push_back("absval-order: " + nodeName(a) + " (" +
                      a->ghost.absVal.toString() + ") !< " + nodeName(b) +
                      " (" + b->ghost.absVal.toString() + ")");
    }
  }
#endif

  // Cell-history properties.
  for (const SimWorld::CellRecord& rec : world.cells()) {
    const std::string field = rec.field;
    const std::vector<RawWord>& h = rec.history;
    if (field == "nxt" || field == "prv" || field == "info") {
      std::set<RawWord> seen(h.begin(), h.end());
      if (seen.size() != h.size())
        out.push_back("aba: " + field + " cell of " +
                      nodeName(static_cast<const SimNode*>(rec.owner)) +
                      " stored a value twice");
    } else if (field == "copy") {
      std::set<RawWord> seen(h.begin(), h.end());
      std::size_t nonNull = 0;
      for (RawWord w : seen)
        if (simDecode<const SimNode*>(w) != nullptr) ++nonNull;
      if (seen.size() > 2 || nonNull > 1)
        out.push_back("copy-history: copy cell of " +
                      nodeName(static_cast<const SimNode*>(rec.owner)) +
                      " stored more than one replacement");
    } else if (field == "state") {
      // ordinary* then one frozen non-ordinary value.
      std::size_t firstNonOrd = h.size();
      bool ok = true;
      for (std::size_t k = 0; k < h.size(); ++k) {
        NodeState s = simDecode<NodeState>(h[k]);
        if (firstNonOrd == h.size()) {
          if (s != NodeState::ordinary) firstNonOrd = k;
        } else if (h[k] != h[firstNonOrd]) {
          ok = false;
        }
      }
      if (!ok)
        out.push_back("state-monotone: state cell of " +
                      nodeName(static_cast<const SimNode*>(rec.owner)) +
                      " changed after leaving ordinary");
    } else if (field == "status") {
      std::vector<InfoStatus> collapsed;
      for (RawWord w : h) {
        InfoStatus s = simDecode<InfoStatus>(w);
        if (collapsed.empty() || collapsed.back() != s) collapsed.push_back(s);
      }
      bool ok = collapsed.size() <= 1 ||
                (collapsed.size() == 2 &&
                 collapsed[0] == InfoStatus::inProgress &&
                 collapsed[1] != InfoStatus::inProgress);
      if (!ok) out.push_back("status-monotone: a status cell regressed");
    }
  }

  // The sentinels' outward links are never written.
  if (head->prv.peek() != nullptr || tail->nxt.peek() != nullptr)
    out.push_back("sentinel-outward: head.prv or tail.nxt is set");
  for (const SimWorld::CellRecord& rec : world.cells()) {
    bool outward = (rec.owner == head && std::string(rec.field) == "prv") ||
                   (rec.owner == tail && std::string(rec.field) == "nxt");
    if (outward && rec.history.size() != 1)
      out.push_back("sentinel-outward: history of a sentinel outward link "
                    "has more than its initial value");
  }

  return out;
}

StepBoundReport verifyStepBound(const std::vector<StepBoundRecord>& records,
                                std::uint64_t K) {
  StepBoundReport rep;
  std::uint64_t updates = 0, others = 0, cDotSum = 0;
  for (const StepBoundRecord& r : records) {
    rep.units += r.attempts + r.ucIterations;
    if (isUpdate(r.op)) {
      ++updates;
      cDotSum += r.cDot;
    } else {
      ++others;
    }
  }
  rep.budget = K * (cDotSum + others + updates);
  rep.pass = rep.units <= rep.budget;
  std::ostringstream os;
  os << "units=" << rep.units << " budget=" << rep.budget << " (K=" << K
     << ", updates=" << updates << ", cDotSum=" << cDotSum
     << ", others=" << others << ")";
  rep.detail = os.str();
  return rep;
}

}  // namespace nbdll
