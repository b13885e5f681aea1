#include "fairc/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "fairc/checkers.hpp"
#include "fairc/flow.hpp"
#include "fairc/matching.hpp"
#include "fairc/mms.hpp"

namespace fairc {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::witness:
      return "witness";
    case SolveStatus::none_exists:
      return "none_exists";
    case SolveStatus::not_applicable:
      return "not_applicable";
  }
  return "?";
}

std::string outcome_to_json(const Instance& inst, const SolveOutcome& outcome) {
  nlohmann::ordered_json doc;
  doc["status"] = std::string(to_string(outcome.status));
  doc["algorithm"] = outcome.note;
  if (outcome.witness) {
    doc["allocation"] = nlohmann::ordered_json::parse(serialize_allocation(inst, *outcome.witness));
  } else {
    doc["allocation"] = nullptr;
  }
  return doc.dump();
}

namespace {

void require_class(const Instance& inst, ValuationClass c, const char* who) {
  if (inst.valuation_class() != c) {
    throw InputError(std::string(who) + " requires a " + std::string(to_string(c)) + " instance");
  }
}

// Witnesses leave the solvers only after the checker agrees.
void ensure(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("solver produced an invalid witness: ") + what);
}

GoodId favourite(const Instance& inst, AgentId i, const std::vector<GoodId>& pool) {
  GoodId best = pool.front();
  for (GoodId g : pool) {
    if (inst.value(i, g) > inst.value(i, best)) best = g;
  }
  return best;
}

// Round robin over the agents in `order`, repeated until `pool` is empty.
void round_robin(const Instance& inst, Allocation& a, const std::vector<AgentId>& order,
                 std::vector<GoodId> pool) {
  std::sort(pool.begin(), pool.end());
  while (!pool.empty()) {
    for (AgentId i : order) {
      if (pool.empty()) break;
      const GoodId g = favourite(inst, i, pool);
      a.assign(g, i);
      pool.erase(std::find(pool.begin(), pool.end(), g));
    }
  }
}

AgentId lowest_approver(const Instance& inst, GoodId g) {
  for (AgentId k = 0; k < inst.n_agents(); ++k) {
    if (inst.value(k, g) > 0) return k;
  }
  return kNoAgent;
}

Value ceil_div(const Value& a, const Value& b) { return (a + b - 1) / b; }

}  // namespace

std::vector<AgentId> run_picking_sequence(const Instance& inst, std::span<const AgentId> sequence,
                                          std::span<const GoodId> goods) {
  std::vector<AgentId> picker(static_cast<std::size_t>(inst.n_goods()), kNoAgent);
  std::vector<GoodId> pool(goods.begin(), goods.end());
  std::sort(pool.begin(), pool.end());
  for (AgentId i : sequence) {
    if (pool.empty()) break;
    const GoodId g = favourite(inst, i, pool);
    picker[g] = i;
    pool.erase(std::find(pool.begin(), pool.end(), g));
  }
  return picker;
}

// ---------------------------------------------------------------------------
// Binary valuations

SolveOutcome solve_threshold_binary(const Instance& inst, ThresholdMode mode, bool require_po,
                                    std::string* network_dump) {
  require_class(inst, ValuationClass::binary, "threshold flow solver");
  const std::string name = std::string(mode == ThresholdMode::mms ? "mms" : "prop1") +
                           (require_po ? "+po" : "") + " quota flow";
  if (require_po && !check_po_binary(inst, inst.frozen()).holds) {
    return SolveOutcome::none(name + ": frozen allocation is not PO");
  }

  const int n = inst.n_agents();
  const auto& pending = inst.unallocated();
  std::vector<Value> mu;
  std::vector<std::int64_t> quota(n, 0);
  for (AgentId i = 0; i < n; ++i) {
    const Value own = value_of_bundle(inst, i, inst.frozen().bundle(i));
    Value need;
    if (mode == ThresholdMode::mms) {
      mu.push_back(mms_value_binary(inst, i).mu);
      need = mu.back() - own;
    } else {
      need = ceil_div(total_value(inst, i), Value(n)) - 1 - own;
      bool approved_elsewhere = false;
      for (GoodId g = 0; g < inst.n_goods(); ++g) {
        const AgentId o = inst.frozen_owner(g);
        if (o != kNoAgent && o != i && inst.value(i, g) == 1) approved_elsewhere = true;
      }
      if (!approved_elsewhere) {
        Value approved_pending = 0;
        for (GoodId g : pending) approved_pending += inst.value(i, g);
        need = std::min(need, approved_pending);
      }
    }
    quota[i] = need > 0 ? need.convert_to<std::int64_t>() : 0;
  }

  // source 0, sink 1, goods 2.., agents after the goods.
  const int good_base = 2;
  const int agent_base = good_base + static_cast<int>(pending.size());
  QuotaNetwork net(agent_base + n, 0, 1);
  std::vector<std::pair<int, std::pair<GoodId, AgentId>>> assignment_arcs;
  for (std::size_t k = 0; k < pending.size(); ++k) {
    const GoodId g = pending[k];
    net.add_arc(0, good_base + static_cast<int>(k), 1);
    for (AgentId i = 0; i < n; ++i) {
      if (inst.value(i, g) == 1) {
        const int arc = net.add_arc(good_base + static_cast<int>(k), agent_base + i, 1);
        assignment_arcs.push_back({arc, {g, i}});
      }
    }
  }
  for (AgentId i = 0; i < n; ++i) net.add_arc(agent_base + i, 1, QuotaNetwork::kUnbounded, quota[i]);

  if (network_dump) *network_dump = net.dump();
  const auto flow = feasible_flow_with_quotas(net);
  if (!flow) return SolveOutcome::none(name + ": quotas infeasible");

  Allocation a = inst.frozen();
  for (const auto& [arc, gi] : assignment_arcs) {
    if ((*flow)[arc] > 0) a.assign(gi.first, gi.second);
  }
  for (GoodId g : pending) {
    if (a.owner(g) != kNoAgent) continue;
    const AgentId k = lowest_approver(inst, g);
    a.assign(g, k == kNoAgent ? 0 : k);
  }

  if (mode == ThresholdMode::mms) {
    ensure(check_alpha_mms(inst, a, Ratio{}, mu).holds, "MMS");
  } else {
    ensure(check_prop1(inst, a).holds, "PROP1");
  }
  if (require_po) ensure(check_po_binary(inst, a).holds, "PO");
  return SolveOutcome::found(std::move(a), name);
}

SolveOutcome solve_mms_po_guaranteed_binary(const Instance& inst) {
  require_class(inst, ValuationClass::binary, "guaranteed MMS+PO solver");
  const std::string name = "ascending-mu greedy (mms+po)";
  if (!check_po_binary(inst, inst.frozen()).holds) {
    return SolveOutcome::skipped(name + ": frozen allocation is not PO");
  }
  const int n = inst.n_agents();
  std::vector<Value> mu;
  for (AgentId i = 0; i < n; ++i) mu.push_back(mms_value_binary(inst, i).mu);
  std::vector<AgentId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](AgentId x, AgentId y) { return mu[x] < mu[y]; });

  Allocation a = inst.frozen();
  std::vector<GoodId> pool = inst.unallocated();
  for (AgentId i : order) {
    Value need = mu[i] - value_of_bundle(inst, i, inst.frozen().bundle(i));
    for (auto it = pool.begin(); it != pool.end() && need > 0;) {
      if (inst.value(i, *it) == 1) {
        a.assign(*it, i);
        it = pool.erase(it);
        --need;
      } else {
        ++it;
      }
    }
    ensure(need <= 0, "agent ran out of approved goods");
  }
  for (GoodId g : pool) {
    const AgentId k = lowest_approver(inst, g);
    a.assign(g, k == kNoAgent ? 0 : k);
  }
  ensure(check_alpha_mms(inst, a, Ratio{}, mu).holds, "MMS");
  ensure(check_po_binary(inst, a).holds, "PO");
  return SolveOutcome::found(std::move(a), name);
}

// ---------------------------------------------------------------------------
// Lexicographic valuations

SolveOutcome solve_po_lex(const Instance& inst) {
  require_class(inst, ValuationClass::lexicographic, "PO completion");
  const std::string name = "picking-sequence extension (po)";
  const auto frozen_seq = check_sequencible(inst, inst.frozen());
  if (!frozen_seq.sequencible) {
    return SolveOutcome::none(name + ": frozen allocation is not sequencible");
  }

  std::vector<AgentId> sequence = frozen_seq.sequence;
  std::vector<GoodId> placed;
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    if (inst.frozen_owner(g) != kNoAgent) placed.push_back(g);
  }
  Allocation a = inst.frozen();
  for (GoodId extra : inst.unallocated()) {
    // Replay the sequence with `extra` available and see who takes it.
    std::vector<GoodId> pool = placed;
    pool.push_back(extra);
    std::size_t turn = 0;
    bool taken = false;
    for (; turn < sequence.size(); ++turn) {
      const GoodId g = favourite(inst, sequence[turn], pool);
      if (g == extra) {
        taken = true;
        break;
      }
      pool.erase(std::find(pool.begin(), pool.end(), g));
    }
    if (taken) {
      const AgentId who = sequence[turn];
      sequence.insert(sequence.begin() + static_cast<std::ptrdiff_t>(turn), who);
      a.assign(extra, who);
    } else {
      const AgentId who = sequence.empty() ? 0 : sequence.front();
      sequence.push_back(who);
      a.assign(extra, who);
    }
    placed.push_back(extra);
  }
  ensure(check_sequencible(inst, a).sequencible, "sequencible");
  return SolveOutcome::found(std::move(a), name);
}

SolveOutcome solve_prop1_po_lex(const Instance& inst) {
  auto out = solve_po_lex(inst);
  out.note = "picking-sequence extension (prop1+po)";
  if (out.witness) ensure(check_prop1(inst, *out.witness).holds, "PROP1");
  return out;
}

SolveOutcome solve_prop1_lex(const Instance& inst) {
  require_class(inst, ValuationClass::lexicographic, "PROP1 completion");
  Allocation a = inst.frozen();
  for (GoodId g : inst.unallocated()) a.assign(g, 0);
  ensure(check_prop1(inst, a).holds, "PROP1");
  return SolveOutcome::found(std::move(a), "any completion (prop1, lexicographic)");
}

SolveOutcome solve_mms_lex(const Instance& inst) {
  require_class(inst, ValuationClass::lexicographic, "MMS completion");
  const std::string name = "segment matching (mms)";
  const int n = inst.n_agents();
  const auto& pending = inst.unallocated();

  std::vector<Value> mu;
  std::vector<Value> own;
  std::vector<AgentId> demanding;
  for (AgentId i = 0; i < n; ++i) {
    mu.push_back(mms_value_lex(inst, i).mu);
    own.push_back(value_of_bundle(inst, i, inst.frozen().bundle(i)));
    if (mu[i] > own[i]) demanding.push_back(i);
  }

  // sufficient[i]: unallocated goods that alone lift i to mu_i.
  // segment[i]: bottom segment of i's ranking of U worth exactly mu_i with F_i.
  std::vector<std::vector<GoodId>> sufficient(n), segment(n);
  for (AgentId i : demanding) {
    for (GoodId g : pending) {
      if (own[i] + inst.value(i, g) >= mu[i]) sufficient[i].push_back(g);
    }
    std::vector<GoodId> by_pref = pending;
    std::sort(by_pref.begin(), by_pref.end(),
              [&](GoodId x, GoodId y) { return inst.value(i, x) > inst.value(i, y); });
    Value acc = own[i];
    for (std::size_t t = by_pref.size(); t-- > 0;) {
      acc += inst.value(i, by_pref[t]);
      if (acc == mu[i]) {
        segment[i].assign(by_pref.begin() + static_cast<std::ptrdiff_t>(t), by_pref.end());
        break;
      }
      if (acc > mu[i]) break;
    }
  }

  std::vector<int> slot(static_cast<std::size_t>(inst.n_goods()), -1);
  for (std::size_t k = 0; k < pending.size(); ++k) slot[pending[k]] = static_cast<int>(k);

  // Matches `agents` to distinct sufficient goods outside `blocked`.
  auto try_match = [&](const std::vector<AgentId>& agents,
                       const std::vector<GoodId>& blocked) -> std::optional<Allocation> {
    BipartiteGraph graph(static_cast<int>(agents.size()), static_cast<int>(pending.size()));
    for (std::size_t l = 0; l < agents.size(); ++l) {
      for (GoodId g : sufficient[agents[l]]) {
        if (std::find(blocked.begin(), blocked.end(), g) == blocked.end()) {
          graph.add_edge(static_cast<int>(l), slot[g]);
        }
      }
    }
    auto match = matching_covering_left(graph);
    if (!match) return std::nullopt;
    Allocation a = inst.frozen();
    for (std::size_t l = 0; l < agents.size(); ++l) a.assign(pending[(*match)[l]], agents[l]);
    return a;
  };

  auto finish = [&](Allocation a) {
    for (GoodId g : pending) {
      if (a.owner(g) == kNoAgent) a.assign(g, 0);
    }
    ensure(check_alpha_mms(inst, a, Ratio{}, mu).holds, "MMS");
    return SolveOutcome::found(std::move(a), name);
  };

  if (auto a = try_match(demanding, {})) return finish(std::move(*a));
  for (AgentId i : demanding) {
    if (segment[i].empty()) continue;
    std::vector<AgentId> others;
    for (AgentId j : demanding) {
      if (j != i) others.push_back(j);
    }
    if (auto a = try_match(others, segment[i])) {
      for (GoodId g : segment[i]) a->assign(g, i);
      return finish(std::move(*a));
    }
  }
  return SolveOutcome::none(name + ": no matching covers the demanding agents");
}

// ---------------------------------------------------------------------------
// General additive valuations

SolveOutcome solve_ef1_acyclic(const Instance& inst) {
  const std::string name = "envy-graph round robin (ef1)";
  if (!is_ef1(inst, inst.frozen())) {
    return SolveOutcome::skipped(name + ": frozen allocation is not EF1");
  }
  const auto graph = build_envy_graph(inst, inst.frozen());
  if (!graph.acyclic) return SolveOutcome::skipped(name + ": envy graph has a cycle");
  Allocation a = inst.frozen();
  round_robin(inst, a, graph.order, inst.unallocated());
  ensure(check_ef1(inst, a).holds, "EF1");
  return SolveOutcome::found(std::move(a), name);
}

SolveOutcome solve_two_identical(const Instance& inst, TwoAgentMode mode) {
  const std::string name =
      std::string("two identical agents (") + (mode == TwoAgentMode::ef1 ? "ef1" : "prop1") + ")";
  if (inst.n_agents() != 2) return SolveOutcome::skipped(name + ": needs exactly two agents");
  if (!inst.identical_valuations()) {
    return SolveOutcome::skipped(name + ": valuations are not identical");
  }

  Allocation a = inst.frozen();
  std::vector<GoodId> pool = inst.unallocated();  // ascending index order

  if (mode == TwoAgentMode::ef1) {
    for (AgentId poor : {0, 1}) {
      const AgentId rich = 1 - poor;
      if (!has_ef1_envy(inst, a, poor, rich)) continue;
      while (!pool.empty() && has_ef1_envy(inst, a, poor, rich)) {
        a.assign(pool.front(), poor);
        pool.erase(pool.begin());
      }
      if (has_ef1_envy(inst, a, poor, rich)) {
        return SolveOutcome::none(name + ": unallocated goods cannot remove EF1-envy");
      }
      break;
    }
    const auto graph = build_envy_graph(inst, a);
    ensure(graph.acyclic, "acyclic envy graph");
    round_robin(inst, a, graph.order, pool);
    ensure(check_ef1(inst, a).holds, "EF1");
    return SolveOutcome::found(std::move(a), name);
  }

  // PROP1, judged on the sub-instance of goods allocated so far.
  auto prop1_now = [&](AgentId i) { return prop1_holds_for(inst, a, i, allocated_value(inst, a, i)); };
  for (AgentId poor : {0, 1}) {
    if (prop1_now(poor)) continue;
    while (!pool.empty() && !prop1_now(poor)) {
      a.assign(pool.front(), poor);
      pool.erase(pool.begin());
    }
    if (!prop1_now(poor)) {
      return SolveOutcome::none(name + ": unallocated goods cannot restore PROP1");
    }
    break;
  }
  // The agent the other does not envy picks first.
  const Value v0 = value_of_bundle(inst, 0, a.bundle(0));
  const Value v1 = value_of_bundle(inst, 0, a.bundle(1));
  const std::vector<AgentId> order = v0 <= v1 ? std::vector<AgentId>{0, 1} : std::vector<AgentId>{1, 0};
  round_robin(inst, a, order, pool);
  ensure(check_prop1(inst, a).holds, "PROP1");
  return SolveOutcome::found(std::move(a), name);
}

}  // namespace fairc
