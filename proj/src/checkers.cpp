#include "fairc/checkers.hpp"

#include <algorithm>
#include <queue>

#include <json.hpp>

namespace fairc {

std::string_view to_string(Property p) {
  switch (p) {
    case Property::ef:
      return "ef";
    case Property::ef1:
      return "ef1";
    case Property::prop:
      return "prop";
    case Property::prop1:
      return "prop1";
    case Property::mms:
      return "mms";
    case Property::po:
      return "po";
    case Property::mnw:
      return "mnw";
  }
  return "?";
}

Property parse_property(std::string_view name) {
  for (Property p : {Property::ef, Property::ef1, Property::prop, Property::prop1, Property::mms,
                     Property::po, Property::mnw}) {
    if (to_string(p) == name) return p;
  }
  throw InputError("unknown property '" + std::string(name) + "'");
}

std::string report_to_json(const FairnessReport& report) {
  nlohmann::ordered_json doc;
  doc["property"] = std::string(to_string(report.property));
  doc["holds"] = report.holds;
  auto violations = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json row;
    row["agent"] = v.agent;
    if (v.counterpart == kNoAgent) {
      row["counterpart"] = nullptr;
    } else {
      row["counterpart"] = v.counterpart;
    }
    row["explanation"] = v.explanation;
    violations.push_back(std::move(row));
  }
  doc["violations"] = std::move(violations);
  return doc.dump();
}

namespace {

void require_complete(const Allocation& a, const Instance& inst) {
  if (a.n_agents() != inst.n_agents() || a.n_goods() != inst.n_goods()) {
    throw InputError("allocation does not match the instance");
  }
  if (!a.is_complete()) throw InputError("property requires a complete allocation");
}

void require_shape(const Allocation& a, const Instance& inst) {
  if (a.n_agents() != inst.n_agents() || a.n_goods() != inst.n_goods()) {
    throw InputError("allocation does not match the instance");
  }
}

FairnessReport finish(Property p, std::vector<Violation> v) {
  std::stable_sort(v.begin(), v.end(), [](const Violation& x, const Violation& y) {
    return std::pair(x.agent, x.counterpart) < std::pair(y.agent, y.counterpart);
  });
  FairnessReport r;
  r.property = p;
  r.holds = v.empty();
  r.violations = std::move(v);
  return r;
}

Value max_in_bundle(const Instance& inst, AgentId i, std::span<const GoodId> bundle) {
  Value best = 0;
  for (GoodId g : bundle) best = std::max(best, inst.value(i, g));
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

bool has_ef1_envy(const Instance& inst, const Allocation& a, AgentId i, AgentId j) {
  if (i == j || a.bundle(j).empty()) return false;
  const Value own = value_of_bundle(inst, i, a.bundle(i));
  const Value other = value_of_bundle(inst, i, a.bundle(j));
  return own < other - max_in_bundle(inst, i, a.bundle(j));
}

bool is_ef(const Instance& inst, const Allocation& a) {
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value own = value_of_bundle(inst, i, a.bundle(i));
    for (AgentId j = 0; j < inst.n_agents(); ++j) {
      if (j != i && own < value_of_bundle(inst, i, a.bundle(j))) return false;
    }
  }
  return true;
}

bool is_ef1(const Instance& inst, const Allocation& a) {
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value own = value_of_bundle(inst, i, a.bundle(i));
    for (AgentId j = 0; j < inst.n_agents(); ++j) {
      if (j == i || a.bundle(j).empty()) continue;
      const Value other = value_of_bundle(inst, i, a.bundle(j));
      if (own < other - max_in_bundle(inst, i, a.bundle(j))) return false;
    }
  }
  return true;
}

Value total_value(const Instance& inst, AgentId i) {
  Value total = 0;
  for (const auto& v : inst.values(i)) total += v;
  return total;
}

Value allocated_value(const Instance& inst, const Allocation& a, AgentId i) {
  Value total = 0;
  for (GoodId g = 0; g < a.n_goods(); ++g) {
    if (a.owner(g) != kNoAgent) total += inst.value(i, g);
  }
  return total;
}

bool prop1_holds_for(const Instance& inst, const Allocation& a, AgentId i, const Value& total) {
  const Value own = value_of_bundle(inst, i, a.bundle(i));
  bool outside = false;
  Value best = 0;
  for (GoodId g = 0; g < a.n_goods(); ++g) {
    const AgentId o = a.owner(g);
    if (o == kNoAgent || o == i) continue;
    outside = true;
    best = std::max(best, inst.value(i, g));
  }
  const Value n = inst.n_agents();
  if (!outside) return n * own >= total;
  return n * (own + best) >= total;
}

FairnessReport check_ef(const Instance& inst, const Allocation& a) {
  require_complete(a, inst);
  std::vector<Violation> out;
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value own = value_of_bundle(inst, i, a.bundle(i));
    for (AgentId j = 0; j < inst.n_agents(); ++j) {
      if (j == i) continue;
      const Value other = value_of_bundle(inst, i, a.bundle(j));
      if (own < other) {
        out.push_back({i, j, "envies: own " + own.str() + " < " + other.str()});
      }
    }
  }
  return finish(Property::ef, std::move(out));
}

FairnessReport check_ef1(const Instance& inst, const Allocation& a) {
  require_complete(a, inst);
  std::vector<Violation> out;
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    for (AgentId j = 0; j < inst.n_agents(); ++j) {
      if (has_ef1_envy(inst, a, i, j)) {
        const Value own = value_of_bundle(inst, i, a.bundle(i));
        const Value reduced =
            value_of_bundle(inst, i, a.bundle(j)) - max_in_bundle(inst, i, a.bundle(j));
        out.push_back({i, j,
                       "EF1-envy: own " + own.str() + " < " + reduced.str() +
                           " after removing the best good"});
      }
    }
  }
  return finish(Property::ef1, std::move(out));
}

FairnessReport check_prop(const Instance& inst, const Allocation& a) {
  require_complete(a, inst);
  std::vector<Violation> out;
  const Value n = inst.n_agents();
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value own = value_of_bundle(inst, i, a.bundle(i));
    const Value total = total_value(inst, i);
    if (n * own < total) {
      out.push_back({i, kNoAgent, "n * " + own.str() + " < " + total.str()});
    }
  }
  return finish(Property::prop, std::move(out));
}

FairnessReport check_prop1(const Instance& inst, const Allocation& a) {
  require_complete(a, inst);
  std::vector<Violation> out;
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value total = total_value(inst, i);
    if (!prop1_holds_for(inst, a, i, total)) {
      out.push_back({i, kNoAgent,
                     "below 1/n of " + total.str() + " even with the best outside good"});
    }
  }
  return finish(Property::prop1, std::move(out));
}

FairnessReport check_alpha_mms(const Instance& inst, const Allocation& a, const Ratio& alpha,
                               const std::vector<Value>& mu) {
  require_complete(a, inst);
  if (static_cast<int>(mu.size()) != inst.n_agents()) {
    throw InputError("MMS value vector length does not match the number of agents");
  }
  std::vector<Violation> out;
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value own = value_of_bundle(inst, i, a.bundle(i));
    if (own * alpha.den < alpha.num * mu[i]) {
      out.push_back({i, kNoAgent,
                     "value " + own.str() + " < " + alpha.str() + " * mu " + mu[i].str()});
    }
  }
  return finish(Property::mms, std::move(out));
}

FairnessReport check_po_binary(const Instance& inst, const Allocation& a) {
  if (inst.valuation_class() != ValuationClass::binary) {
    throw InputError("binary PO check requires a binary instance");
  }
  require_shape(a, inst);
  std::vector<Violation> out;
  for (GoodId g = 0; g < a.n_goods(); ++g) {
    const AgentId o = a.owner(g);
    if (o == kNoAgent || inst.value(o, g) == 1) continue;
    for (AgentId k = 0; k < inst.n_agents(); ++k) {
      if (inst.value(k, g) == 1) {
        out.push_back({o, k, "holds '" + inst.good_name(g) + "' which only others approve"});
        break;
      }
    }
  }
  return finish(Property::po, std::move(out));
}

EnvyGraph build_envy_graph(const Instance& inst, const Allocation& a) {
  require_shape(a, inst);
  const int n = inst.n_agents();
  EnvyGraph graph;
  graph.n_agents = n;
  std::vector<std::vector<AgentId>> out(n);
  std::vector<int> indegree(n, 0);
  for (AgentId i = 0; i < n; ++i) {
    const Value own = value_of_bundle(inst, i, a.bundle(i));
    for (AgentId j = 0; j < n; ++j) {
      if (j != i && own < value_of_bundle(inst, i, a.bundle(j))) {
        graph.edges.emplace_back(i, j);
        out[i].push_back(j);
        ++indegree[j];
      }
    }
  }
  std::priority_queue<AgentId, std::vector<AgentId>, std::greater<>> ready;
  for (AgentId i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    AgentId i = ready.top();
    ready.pop();
    graph.order.push_back(i);
    for (AgentId j : out[i]) {
      if (--indegree[j] == 0) ready.push(j);
    }
  }
  graph.acyclic = static_cast<int>(graph.order.size()) == n;
  if (!graph.acyclic) graph.order.clear();
  return graph;
}

SequencibleResult check_sequencible(const Instance& inst, const Allocation& a) {
  require_shape(a, inst);
  SequencibleResult result;
  std::vector<GoodId> remaining;
  for (GoodId g = 0; g < a.n_goods(); ++g) {
    if (a.owner(g) != kNoAgent) remaining.push_back(g);
  }
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    std::vector<Value> vals;
    for (GoodId g : remaining) vals.push_back(inst.value(i, g));
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) {
      result.applicable = false;
      return result;
    }
  }

  auto favourite = [&](AgentId i) {
    GoodId best = remaining.front();
    for (GoodId g : remaining) {
      if (inst.value(i, g) > inst.value(i, best)) best = g;
    }
    return best;
  };

  while (!remaining.empty()) {
    bool picked = false;
    for (AgentId i = 0; i < inst.n_agents() && !picked; ++i) {
      const GoodId g = favourite(i);
      if (a.owner(g) != i) continue;
      result.sequence.push_back(i);
      remaining.erase(std::find(remaining.begin(), remaining.end(), g));
      picked = true;
    }
    if (!picked) {
      result.sequence.clear();
      result.sequencible = false;
      return result;
    }
  }
  result.sequencible = true;
  return result;
}

}  // namespace fairc
