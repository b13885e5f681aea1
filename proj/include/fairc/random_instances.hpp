#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fairc/instance.hpp"

namespace fairc {

// Seeded source of small integers. Draws are raw mt19937_64 output reduced
// modulo the range, so a seed fixes every generated case on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Integer in [lo, hi].
  int between(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

// Each good is frozen with probability 1/2, to a uniformly drawn agent.
std::vector<AgentId> random_frozen(Rng& rng, int n_agents, int n_goods);

Instance random_binary(Rng& rng, int n_agents, int n_goods);
Instance random_lexicographic(Rng& rng, int n_agents, int n_goods);
Instance random_additive(Rng& rng, int n_agents, int n_goods, int max_value);
// Two agents sharing one valuation vector.
Instance random_identical_pair(Rng& rng, int n_goods, int max_value);

// Same instance with every frozen good that somebody approves moved to its
// lowest-index approver, so the frozen allocation passes the binary PO check.
Instance with_po_frozen_binary(const Instance& inst);

// Uniformly random complete allocation extending the frozen one.
Allocation random_completion(Rng& rng, const Instance& inst);

}  // namespace fairc
