#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fairc/instance.hpp"

namespace fairc {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// MMS value of one agent together with an MMS partition from its point of
// view: a complete allocation extending F whose least bundle is worth mu.
struct AgentMms {
  Value mu;
  Allocation partition;
};

struct MmsResult {
  std::vector<Value> mu;
  std::vector<Allocation> witness_partition;  // one per agent
};

// Greedy for binary valuations: each approved unallocated good is added to a
// bundle of currently minimum value (lowest index on ties).
AgentMms mms_value_binary(const Instance& inst, AgentId agent);

// Recursive peeling for lexicographic valuations: sort bundles ascending and
// unallocated goods descending; if every bundle but the poorest is worth at
// least the best unallocated good, the poorest takes all of U, otherwise it
// takes only that good and drops out.
AgentMms mms_value_lex(const Instance& inst, AgentId agent);

// Exhaustive maximisation over all n^|U| completions. Throws BudgetExceeded
// when n^|U| > budget.
AgentMms mms_value_bruteforce(const Instance& inst, AgentId agent,
                              std::uint64_t budget = kDefaultBudget);

// Per-class dispatch: binary and lexicographic use the polynomial routines,
// general additive falls back to brute force.
MmsResult mms_values(const Instance& inst, std::uint64_t budget = kDefaultBudget);

}  // namespace fairc
