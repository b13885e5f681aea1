#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairc/value.hpp"

namespace fairc {

enum class ValuationClass { binary, lexicographic, additive };

std::string_view to_string(ValuationClass c);

// A (possibly partial) allocation: one bundle of good indices per agent.
// Bundles are kept sorted; owner[g] is the holder of g or kNoAgent.
class Allocation {
 public:
  Allocation() = default;
  Allocation(int n_agents, int n_goods);

  // Throws InputError on overlapping bundles or out-of-range goods.
  static Allocation from_bundles(int n_goods, std::vector<std::vector<GoodId>> bundles);

  int n_agents() const { return static_cast<int>(bundles_.size()); }
  int n_goods() const { return static_cast<int>(owner_.size()); }

  std::span<const GoodId> bundle(AgentId i) const { return bundles_[i]; }
  const std::vector<std::vector<GoodId>>& bundles() const { return bundles_; }
  AgentId owner(GoodId g) const { return owner_[g]; }
  const std::vector<AgentId>& owners() const { return owner_; }

  bool is_complete() const;
  int allocated_count() const;

  void assign(GoodId g, AgentId i);

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<std::vector<GoodId>> bundles_;
  std::vector<AgentId> owner_;
};

// An allocation of exactly the unallocated goods of some instance. It shares
// the representation of Allocation; frozen goods are left unassigned.
struct Completion {
  Allocation goods;
};

// Immutable completion-problem instance: agents, goods, valuations and the
// frozen partial allocation. Lexicographic rankings are also stored in their
// cardinal form v_i(g) = 2^(m - rank_i(g)) so that every class is evaluated
// by the same additive code path.
class Instance {
 public:
  static Instance binary(int n_agents, std::vector<std::string> goods,
                         std::vector<std::vector<Value>> values, std::vector<AgentId> frozen);
  static Instance additive(int n_agents, std::vector<std::string> goods,
                           std::vector<std::vector<Value>> values, std::vector<AgentId> frozen);
  // rankings[i] lists good indices from most to least preferred.
  static Instance lexicographic(int n_agents, std::vector<std::string> goods,
                                std::vector<std::vector<GoodId>> rankings,
                                std::vector<AgentId> frozen);

  int n_agents() const { return n_agents_; }
  int n_goods() const { return static_cast<int>(goods_.size()); }
  ValuationClass valuation_class() const { return class_; }
  const std::vector<std::string>& goods() const { return goods_; }
  const std::string& good_name(GoodId g) const { return goods_[g]; }
  GoodId good_index(std::string_view name) const;  // -1 if unknown

  const Value& value(AgentId i, GoodId g) const { return values_[i][g]; }
  const std::vector<Value>& values(AgentId i) const { return values_[i]; }
  // Empty unless lexicographic.
  const std::vector<std::vector<GoodId>>& rankings() const { return rankings_; }

  AgentId frozen_owner(GoodId g) const { return frozen_[g]; }
  const std::vector<AgentId>& frozen_owners() const { return frozen_; }
  const Allocation& frozen() const { return frozen_alloc_; }
  const std::vector<GoodId>& unallocated() const { return unallocated_; }

  bool identical_valuations() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_agents_ == b.n_agents_ && a.class_ == b.class_ && a.goods_ == b.goods_ &&
           a.values_ == b.values_ && a.rankings_ == b.rankings_ && a.frozen_ == b.frozen_;
  }

 private:
  Instance() = default;
  void finish();

  int n_agents_ = 0;
  ValuationClass class_ = ValuationClass::additive;
  std::vector<std::string> goods_;
  std::vector<std::vector<Value>> values_;
  std::vector<std::vector<GoodId>> rankings_;
  std::vector<AgentId> frozen_;
  Allocation frozen_alloc_;
  std::vector<GoodId> unallocated_;
};

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

// Allocation file: {"bundles": [["a"], ["b", "c"], ...]} with good names.
Allocation parse_allocation(const Instance& inst, std::string_view text);
std::string serialize_allocation(const Instance& inst, const Allocation& a);

Value value_of_bundle(const Instance& inst, AgentId agent, std::span<const GoodId> bundle);

// Converts a lexicographic instance into the general additive instance with
// v_i(g) = 2^(m - rank_i(g)). Bundle comparisons agree with the rankings.
Instance lex_cardinal_realization(const Instance& inst);

// Bundle i of the result is F_i united with C_i. Throws InputError if C
// touches a frozen good or leaves an unallocated good uncovered.
Allocation merge_allocation(const Instance& inst, const Completion& completion);

// Direct lexicographic comparison from a ranking: true iff the agent strictly
// prefers X to Y. Used to cross-check the cardinal realization.
bool lex_prefers(std::span<const GoodId> ranking, std::span<const GoodId> x,
                 std::span<const GoodId> y);

}  // namespace fairc
