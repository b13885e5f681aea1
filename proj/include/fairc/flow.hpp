#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fairc {

// Flow network whose arcs carry a lower quota and a capacity. Integral data
// only; kUnbounded capacities are replaced by a finite bound that no feasible
// flow can reach (sum of quotas plus all finite capacities).
class QuotaNetwork {
 public:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

  struct Arc {
    int from = 0;
    int to = 0;
    std::int64_t lower = 0;
    std::int64_t capacity = 0;
  };

  QuotaNetwork(int n_nodes, int source, int sink);

  int add_arc(int from, int to, std::int64_t capacity, std::int64_t lower = 0);

  int n_nodes() const { return n_nodes_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::string dump() const;

 private:
  int n_nodes_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
};

// Integral source-to-sink flow meeting every quota and capacity, indexed like
// arcs(); nullopt when no such flow exists. Lower quotas are removed by the
// circulation transformation (return arc sink->source, super source/sink for
// the quota imbalances) followed by a max-flow saturation test.
std::optional<std::vector<std::int64_t>> feasible_flow_with_quotas(const QuotaNetwork& net);

}  // namespace fairc
