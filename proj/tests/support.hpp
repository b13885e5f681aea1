#pragma once

// Brute-force reference implementations used only by the tests. They work
// straight from the definitions on small instances and share no code with the
// library beyond the Instance and Allocation containers.

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "fairc/instance.hpp"

namespace testref {

using fairc::AgentId;
using fairc::Allocation;
using fairc::GoodId;
using fairc::Instance;
using fairc::Value;

inline Value bundle_value(const Instance& inst, AgentId i, const std::vector<GoodId>& b) {
  Value v = 0;
  for (GoodId g : b) v += inst.value(i, g);
  return v;
}

inline std::vector<std::vector<GoodId>> bundles_of(const std::vector<AgentId>& owner, int n) {
  std::vector<std::vector<GoodId>> b(static_cast<std::size_t>(n));
  for (GoodId g = 0; g < static_cast<int>(owner.size()); ++g) {
    if (owner[g] >= 0) b[owner[g]].push_back(g);
  }
  return b;
}

// Every owner vector over all goods that agrees with the frozen owners.
inline void each_completion(const Instance& inst, const std::function<void(const std::vector<AgentId>&)>& f) {
  std::vector<AgentId> owner = inst.frozen_owners();
  std::vector<GoodId> free;
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    if (owner[g] < 0) free.push_back(g);
  }
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == free.size()) {
      f(owner);
      return;
    }
    for (AgentId i = 0; i < inst.n_agents(); ++i) {
      owner[free[k]] = i;
      rec(k + 1);
    }
    owner[free[k]] = -1;
  };
  rec(0);
}

// Every owner vector over all goods, ignoring the frozen allocation.
inline void each_allocation(const Instance& inst, const std::function<void(const std::vector<AgentId>&)>& f) {
  std::vector<AgentId> owner(static_cast<std::size_t>(inst.n_goods()), 0);
  std::function<void(int)> rec = [&](int g) {
    if (g == inst.n_goods()) {
      f(owner);
      return;
    }
    for (AgentId i = 0; i < inst.n_agents(); ++i) {
      owner[g] = i;
      rec(g + 1);
    }
  };
  rec(0);
}

inline Allocation to_allocation(const Instance& inst, const std::vector<AgentId>& owner) {
  return Allocation::from_bundles(inst.n_goods(), bundles_of(owner, inst.n_agents()));
}

inline std::vector<Value> utilities(const Instance& inst, const std::vector<AgentId>& owner) {
  std::vector<Value> u(static_cast<std::size_t>(inst.n_agents()), 0);
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    if (owner[g] >= 0) u[owner[g]] += inst.value(owner[g], g);
  }
  return u;
}

inline Value mms(const Instance& inst, AgentId i) {
  Value best = -1;
  each_completion(inst, [&](const std::vector<AgentId>& owner) {
    const auto b = bundles_of(owner, inst.n_agents());
    Value low = bundle_value(inst, i, b[0]);
    for (AgentId j = 1; j < inst.n_agents(); ++j) low = std::min(low, bundle_value(inst, i, b[j]));
    best = std::max(best, low);
  });
  return best;
}

inline bool ef1(const Instance& inst, const std::vector<AgentId>& owner) {
  const auto b = bundles_of(owner, inst.n_agents());
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value own = bundle_value(inst, i, b[i]);
    for (AgentId j = 0; j < inst.n_agents(); ++j) {
      if (i == j || b[j].empty()) continue;
      Value best_drop = -1;
      for (GoodId g : b[j]) best_drop = std::max(best_drop, Value(inst.value(i, g)));
      if (own < bundle_value(inst, i, b[j]) - best_drop) return false;
    }
  }
  return true;
}

inline bool prop1(const Instance& inst, const std::vector<AgentId>& owner) {
  const int n = inst.n_agents();
  for (AgentId i = 0; i < n; ++i) {
    Value total = 0, own = 0, best_other = 0;
    for (GoodId g = 0; g < inst.n_goods(); ++g) {
      total += inst.value(i, g);
      if (owner[g] == i) own += inst.value(i, g);
      else if (owner[g] >= 0) best_other = std::max(best_other, Value(inst.value(i, g)));
    }
    if (n * (own + best_other) < total) return false;
  }
  return true;
}

inline bool dominates(const std::vector<Value>& x, const std::vector<Value>& y) {
  bool strict = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return false;
    if (x[i] > y[i]) strict = true;
  }
  return strict;
}

inline bool pareto_optimal(const Instance& inst, const std::vector<AgentId>& owner) {
  const auto u = utilities(inst, owner);
  bool dominated = false;
  each_allocation(inst, [&](const std::vector<AgentId>& other) {
    if (!dominated && dominates(utilities(inst, other), u)) dominated = true;
  });
  return !dominated;
}

// Complete allocation is the outcome of some picking sequence in which each
// agent takes its favourite remaining good. Full backtracking over orders.
inline bool sequencible(const Instance& inst, const std::vector<AgentId>& owner) {
  std::vector<bool> left(owner.size());
  for (std::size_t g = 0; g < owner.size(); ++g) left[g] = owner[g] >= 0;
  std::function<bool()> rec = [&]() {
    bool any = false;
    for (std::size_t g = 0; g < left.size(); ++g) any = any || left[g];
    if (!any) return true;
    for (AgentId i = 0; i < inst.n_agents(); ++i) {
      for (GoodId g : inst.rankings()[i]) {
        if (!left[g]) continue;
        if (owner[g] != i) break;
        left[g] = false;
        const bool ok = rec();
        left[g] = true;
        if (ok) return true;
        break;
      }
    }
    return false;
  };
  return rec();
}

inline bool exists_completion(const Instance& inst, const std::function<bool(const std::vector<AgentId>&)>& p) {
  bool found = false;
  each_completion(inst, [&](const std::vector<AgentId>& owner) {
    if (!found && p(owner)) found = true;
  });
  return found;
}

inline std::vector<std::string> names(int m) {
  std::vector<std::string> out;
  for (int g = 0; g < m; ++g) out.push_back("g" + std::to_string(g + 1));
  return out;
}

}  // namespace testref
