#pragma once

#include <span>
#include <string>
#include <vector>

#include "fairc/instance.hpp"
#include "fairc/outcome.hpp"

namespace fairc {

enum class ThresholdMode { mms, prop1 };
enum class TwoAgentMode { ef1, prop1 };

// Binary valuations: lower-quota flow over good -> approver arcs. In mms mode
// agent i must gain max(0, mu_i - v_i(F_i)) approved goods; in prop1 mode
// max(0, ceil(v_i(M)/n) - 1 - v_i(F_i)), capped at the number of approved
// unallocated goods when none of i's approved goods is frozen elsewhere.
// With require_po the frozen allocation must itself be PO and leftovers go to
// approvers. When network_dump is given it receives a text dump of the flow
// network.
SolveOutcome solve_threshold_binary(const Instance& inst, ThresholdMode mode, bool require_po,
                                    std::string* network_dump = nullptr);

// Binary valuations with a PO frozen allocation: agents in ascending mu order
// take exactly max(0, mu_i - v_i(F_i)) approved unallocated goods; leftovers go
// to approvers. not_applicable when the frozen allocation is not PO.
SolveOutcome solve_mms_po_guaranteed_binary(const Instance& inst);

// Lexicographic PO completion: a picking sequence for the frozen goods is
// extended one unallocated good at a time.
SolveOutcome solve_po_lex(const Instance& inst);
SolveOutcome solve_prop1_po_lex(const Instance& inst);
// Every complete allocation is PROP1 under lexicographic valuations.
SolveOutcome solve_prop1_lex(const Instance& inst);

// Lexicographic MMS completion by bipartite matching: every demanding agent
// gets one sufficient good, or one agent takes a bottom segment of its ranking
// worth exactly mu_i and the others get single goods.
SolveOutcome solve_mms_lex(const Instance& inst);

// Additive valuations whose frozen allocation is EF1 with an acyclic envy
// graph: round robin over U in topological order of the envy graph.
SolveOutcome solve_ef1_acyclic(const Instance& inst);

// Two agents with identical additive valuations; exact for both modes.
SolveOutcome solve_two_identical(const Instance& inst, TwoAgentMode mode);

// Runs a picking sequence over `goods`: each listed agent in turn takes its
// favourite remaining good (lowest index on ties). Returns the picker of each
// good, indexed like the instance's goods (kNoAgent for goods not in `goods`).
std::vector<AgentId> run_picking_sequence(const Instance& inst, std::span<const AgentId> sequence,
                                          std::span<const GoodId> goods);

}  // namespace fairc
