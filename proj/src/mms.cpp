#include "fairc/mms.hpp"

#include <algorithm>
#include <numeric>

namespace fairc {

namespace {

std::vector<Value> frozen_bundle_values(const Instance& inst, AgentId agent) {
  std::vector<Value> vals;
  for (AgentId j = 0; j < inst.n_agents(); ++j) {
    vals.push_back(value_of_bundle(inst, agent, inst.frozen().bundle(j)));
  }
  return vals;
}

Value min_of(const std::vector<Value>& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

AgentMms mms_value_binary(const Instance& inst, AgentId agent) {
  if (inst.valuation_class() != ValuationClass::binary) {
    throw InputError("binary MMS routine requires a binary instance");
  }
  auto vals = frozen_bundle_values(inst, agent);
  Allocation partition = inst.frozen();
  for (GoodId g : inst.unallocated()) {
    const auto j = static_cast<AgentId>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    partition.assign(g, j);
    vals[j] += inst.value(agent, g);
  }
  return {min_of(vals), std::move(partition)};
}

AgentMms mms_value_lex(const Instance& inst, AgentId agent) {
  if (inst.valuation_class() != ValuationClass::lexicographic) {
    throw InputError("lexicographic MMS routine requires a lexicographic instance");
  }
  Allocation partition = inst.frozen();
  const auto frozen_vals = frozen_bundle_values(inst, agent);

  std::vector<GoodId> pending = inst.unallocated();
  std::sort(pending.begin(), pending.end(), [&](GoodId a, GoodId b) {
    return inst.value(agent, a) > inst.value(agent, b);
  });
  std::vector<AgentId> active(static_cast<std::size_t>(inst.n_agents()));
  std::iota(active.begin(), active.end(), 0);

  std::size_t next = 0;
  while (next < pending.size()) {
    std::sort(active.begin(), active.end(), [&](AgentId a, AgentId b) {
      if (frozen_vals[a] != frozen_vals[b]) return frozen_vals[a] < frozen_vals[b];
      return a < b;
    });
    const GoodId top = pending[next];
    const bool rest_rich = std::all_of(active.begin() + 1, active.end(), [&](AgentId j) {
      return frozen_vals[j] >= inst.value(agent, top);
    });
    if (rest_rich) {
      for (; next < pending.size(); ++next) partition.assign(pending[next], active.front());
      break;
    }
    partition.assign(top, active.front());
    active.erase(active.begin());
    ++next;
  }

  Value mu = value_of_bundle(inst, agent, partition.bundle(0));
  for (AgentId j = 1; j < inst.n_agents(); ++j) {
    mu = std::min(mu, value_of_bundle(inst, agent, partition.bundle(j)));
  }
  return {std::move(mu), std::move(partition)};
}

AgentMms mms_value_bruteforce(const Instance& inst, AgentId agent, std::uint64_t budget) {
  const auto& pending = inst.unallocated();
  const int n = inst.n_agents();
  const std::uint64_t states = bounded_power(static_cast<std::uint64_t>(n), pending.size(), budget);
  if (states > budget) throw BudgetExceeded("MMS enumeration exceeds the budget");

  auto vals = frozen_bundle_values(inst, agent);
  const std::size_t k = pending.size();
  std::vector<Value> good_vals;
  for (GoodId g : pending) good_vals.push_back(inst.value(agent, g));

  // Odometer over recipients; everything starts in bundle 0.
  std::vector<AgentId> digits(k, 0);
  for (const auto& v : good_vals) vals[0] += v;

  Value best = min_of(vals);
  std::vector<AgentId> best_digits = digits;
  while (true) {
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      vals[digits[pos]] -= good_vals[pos];
      if (digits[pos] + 1 < n) {
        ++digits[pos];
        vals[digits[pos]] += good_vals[pos];
        break;
      }
      digits[pos] = 0;
      vals[0] += good_vals[pos];
      if (pos == 0) {
        pos = k;  // wrapped the most significant digit: done
        break;
      }
    }
    if (pos == k) break;
    Value current = min_of(vals);
    if (current > best) {
      best = std::move(current);
      best_digits = digits;
    }
  }

  Allocation partition = inst.frozen();
  for (std::size_t p = 0; p < k; ++p) partition.assign(pending[p], best_digits[p]);
  return {std::move(best), std::move(partition)};
}

MmsResult mms_values(const Instance& inst, std::uint64_t budget) {
  MmsResult result;
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    AgentMms r;
    switch (inst.valuation_class()) {
      case ValuationClass::binary:
        r = mms_value_binary(inst, i);
        break;
      case ValuationClass::lexicographic:
        r = mms_value_lex(inst, i);
        break;
      case ValuationClass::additive:
        r = mms_value_bruteforce(inst, i, budget);
        break;
    }
    result.mu.push_back(std::move(r.mu));
    result.witness_partition.push_back(std::move(r.partition));
  }
  return result;
}

}  // namespace fairc
