#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "fairc/checkers.hpp"
#include "fairc/instance.hpp"
#include "fairc/mms.hpp"
#include "fairc/outcome.hpp"

namespace fairc {

// Properties requested from the oracle. Property::mms means alpha-MMS.
struct PropertySet {
  std::vector<Property> properties;
  Ratio alpha;

  bool has(Property p) const;
};

// Comma-separated list such as "ef1,po"; "alpha_mms" is accepted for mms.
PropertySet parse_property_set(std::string_view list, const Ratio& alpha = Ratio{});

// Visits every completion once, in lexicographic order of the owner vector
// over U (first unallocated good most significant). The callback returns false
// to stop early. Throws BudgetExceeded when n^|U| > budget.
void for_each_completion(const Instance& inst, std::uint64_t budget,
                         const std::function<bool(const Completion&)>& visit);

// Utility vectors of all Pareto-undominated allocations of M.
class ParetoFrontier {
 public:
  // Enumerates all n^m allocations; throws BudgetExceeded when n^m > budget.
  static ParetoFrontier build(const Instance& inst, std::uint64_t budget = kDefaultBudget);

  // True iff no allocation Pareto-dominates one with utilities u.
  bool undominated(const std::vector<Value>& u) const;

  const std::vector<std::vector<Value>>& points() const { return points_; }

 private:
  std::vector<std::vector<Value>> points_;
};

// Exact PO test by exhaustive comparison with every allocation of M.
bool oracle_po_check(const Instance& inst, const Allocation& a, std::uint64_t budget = kDefaultBudget);

// Independent check of a complete allocation against every property: the
// report checkers, brute-force MMS values, the exhaustive Pareto frontier and
// (mnw) the oracle's best Nash welfare over completions of F. Throws
// BudgetExceeded when a reference computation is over budget.
bool oracle_satisfies(const Instance& inst, const PropertySet& props, const Allocation& a,
                      std::uint64_t budget = kDefaultBudget);

// Exhaustive completion search. Returns the lexicographically least completion
// meeting every property (for mnw: the least maximiser of the number of agents
// with positive utility, then of their product, among completions meeting the
// other properties), or none_exists. A search larger than `budget` nodes, or
// an MMS or PO computation over budget, yields not_applicable.
SolveOutcome oracle_solve(const Instance& inst, const PropertySet& props,
                          std::uint64_t budget = kDefaultBudget);

}  // namespace fairc
