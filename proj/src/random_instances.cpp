#include "fairc/random_instances.hpp"

#include <algorithm>

namespace fairc {

namespace {

std::vector<std::string> good_names(int m) {
  std::vector<std::string> names;
  for (int g = 0; g < m; ++g) names.push_back("g" + std::to_string(g + 1));
  return names;
}

}  // namespace

std::vector<AgentId> random_frozen(Rng& rng, int n_agents, int n_goods) {
  std::vector<AgentId> frozen(static_cast<std::size_t>(n_goods), kNoAgent);
  for (auto& f : frozen) {
    if (rng.between(0, 1) == 1) f = rng.between(0, n_agents - 1);
  }
  return frozen;
}

Instance random_binary(Rng& rng, int n_agents, int n_goods) {
  std::vector<std::vector<Value>> values(n_agents, std::vector<Value>(n_goods));
  for (auto& row : values) {
    for (auto& v : row) v = rng.between(0, 1);
  }
  return Instance::binary(n_agents, good_names(n_goods), std::move(values),
                          random_frozen(rng, n_agents, n_goods));
}

Instance random_lexicographic(Rng& rng, int n_agents, int n_goods) {
  std::vector<std::vector<GoodId>> rankings(n_agents);
  for (auto& r : rankings) {
    r.resize(static_cast<std::size_t>(n_goods));
    for (int g = 0; g < n_goods; ++g) r[g] = g;
    // Fisher-Yates with the modulo draws above.
    for (int k = n_goods - 1; k > 0; --k) std::swap(r[k], r[rng.between(0, k)]);
  }
  return Instance::lexicographic(n_agents, good_names(n_goods), std::move(rankings),
                                 random_frozen(rng, n_agents, n_goods));
}

Instance random_additive(Rng& rng, int n_agents, int n_goods, int max_value) {
  std::vector<std::vector<Value>> values(n_agents, std::vector<Value>(n_goods));
  for (auto& row : values) {
    for (auto& v : row) v = rng.between(0, max_value);
  }
  return Instance::additive(n_agents, good_names(n_goods), std::move(values),
                            random_frozen(rng, n_agents, n_goods));
}

Instance random_identical_pair(Rng& rng, int n_goods, int max_value) {
  std::vector<Value> row(static_cast<std::size_t>(n_goods));
  for (auto& v : row) v = rng.between(0, max_value);
  return Instance::additive(2, good_names(n_goods), {row, row}, random_frozen(rng, 2, n_goods));
}

Instance with_po_frozen_binary(const Instance& inst) {
  if (inst.valuation_class() != ValuationClass::binary) {
    throw InputError("PO repair requires a binary instance");
  }
  std::vector<AgentId> frozen = inst.frozen_owners();
  std::vector<std::vector<Value>> values;
  for (AgentId i = 0; i < inst.n_agents(); ++i) values.push_back(inst.values(i));
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    if (frozen[g] == kNoAgent || values[frozen[g]][g] == 1) continue;
    for (AgentId i = 0; i < inst.n_agents(); ++i) {
      if (values[i][g] == 1) {
        frozen[g] = i;
        break;
      }
    }
  }
  return Instance::binary(inst.n_agents(), inst.goods(), std::move(values), std::move(frozen));
}

Allocation random_completion(Rng& rng, const Instance& inst) {
  Allocation a = inst.frozen();
  for (GoodId g : inst.unallocated()) a.assign(g, rng.between(0, inst.n_agents() - 1));
  return a;
}

}  // namespace fairc
