#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairc/instance.hpp"

namespace fairc {

enum class Property { ef, ef1, prop, prop1, mms, po, mnw };

std::string_view to_string(Property p);
Property parse_property(std::string_view name);

struct Violation {
  AgentId agent = kNoAgent;
  AgentId counterpart = kNoAgent;  // kNoAgent when the violation is not pairwise
  std::string explanation;
};

struct FairnessReport {
  Property property = Property::ef1;
  bool holds = true;
  std::vector<Violation> violations;  // sorted by (agent, counterpart)
};

std::string report_to_json(const FairnessReport& report);

// Directed envy graph: edge (i, j) iff v_i(A_i) < v_i(A_j).
struct EnvyGraph {
  int n_agents = 0;
  std::vector<std::pair<AgentId, AgentId>> edges;
  bool acyclic = true;
  // Topological order (enviers before the envied), lowest index first among
  // ready agents. Empty when the graph has a cycle.
  std::vector<AgentId> order;
};

EnvyGraph build_envy_graph(const Instance& inst, const Allocation& a);

// True iff agent i has EF1-envy towards j: A_j is non-empty and removing any
// single good of A_j still leaves v_i(A_i) < v_i(A_j \ {g}).
bool has_ef1_envy(const Instance& inst, const Allocation& a, AgentId i, AgentId j);

// Predicates valid on partial allocations too.
bool is_ef(const Instance& inst, const Allocation& a);
bool is_ef1(const Instance& inst, const Allocation& a);

// PROP1 for one agent against an explicit proportional total (v_i(M) for the
// full instance; v_i of the allocated goods for a sub-instance). When no good
// lies outside A_i the plain bound n * v_i(A_i) >= total is required.
bool prop1_holds_for(const Instance& inst, const Allocation& a, AgentId i, const Value& total);
Value total_value(const Instance& inst, AgentId i);
Value allocated_value(const Instance& inst, const Allocation& a, AgentId i);

// Report-producing checks. The complete-allocation checks throw InputError on
// a partial allocation.
FairnessReport check_ef(const Instance& inst, const Allocation& a);
FairnessReport check_ef1(const Instance& inst, const Allocation& a);
FairnessReport check_prop(const Instance& inst, const Allocation& a);
FairnessReport check_prop1(const Instance& inst, const Allocation& a);
FairnessReport check_alpha_mms(const Instance& inst, const Allocation& a, const Ratio& alpha,
                               const std::vector<Value>& mu);

// Binary PO: every allocated good that somebody approves sits with an
// approver. Works on partial allocations.
FairnessReport check_po_binary(const Instance& inst, const Allocation& a);

struct SequencibleResult {
  bool applicable = true;  // false when some agent has tied item values
  bool sequencible = false;
  std::vector<AgentId> sequence;
};

// Greedy peeling: repeatedly let the lowest-index agent holding its favourite
// remaining good pick it. Only the allocated goods of A take part.
SequencibleResult check_sequencible(const Instance& inst, const Allocation& a);

}  // namespace fairc
