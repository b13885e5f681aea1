#include "fairc/flow.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace fairc {

QuotaNetwork::QuotaNetwork(int n_nodes, int source, int sink)
    : n_nodes_(n_nodes), source_(source), sink_(sink) {
  if (n_nodes < 2 || source < 0 || sink < 0 || source >= n_nodes || sink >= n_nodes ||
      source == sink) {
    throw std::invalid_argument("flow network needs distinct source and sink nodes");
  }
}

int QuotaNetwork::add_arc(int from, int to, std::int64_t capacity, std::int64_t lower) {
  if (from < 0 || to < 0 || from >= n_nodes_ || to >= n_nodes_) {
    throw std::invalid_argument("arc endpoint out of range");
  }
  if (lower < 0 || capacity < lower) throw std::invalid_argument("arc needs 0 <= quota <= capacity");
  arcs_.push_back({from, to, lower, capacity});
  return static_cast<int>(arcs_.size()) - 1;
}

std::string QuotaNetwork::dump() const {
  std::ostringstream out;
  out << "nodes " << n_nodes_ << " source " << source_ << " sink " << sink_ << "\n";
  for (const auto& a : arcs_) {
    out << a.from << " -> " << a.to << " [" << a.lower << ", ";
    if (a.capacity == kUnbounded) {
      out << "inf";
    } else {
      out << a.capacity;
    }
    out << "]\n";
  }
  return out.str();
}

namespace {

// Dinic max-flow on a residual graph with paired edges.
class Dinic {
 public:
  explicit Dinic(int n) : graph_(n), level_(n), iter_(n) {}

  int add_edge(int u, int v, std::int64_t cap) {
    graph_[u].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({v, cap});
    graph_[v].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({u, 0});
    return static_cast<int>(edges_.size()) - 2;
  }

  std::int64_t flow_on(int e) const { return edges_[e ^ 1].cap; }

  std::int64_t max_flow(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : graph_[u]) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int u, int t, std::int64_t pushed) {
    if (u == t) return pushed;
    for (auto& i = iter_[u]; i < graph_[u].size(); ++i) {
      const int e = graph_[u][i];
      Edge& edge = edges_[e];
      if (edge.cap <= 0 || level_[edge.to] != level_[u] + 1) continue;
      if (std::int64_t d = dfs(edge.to, t, std::min(pushed, edge.cap))) {
        edge.cap -= d;
        edges_[e ^ 1].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> graph_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace

std::optional<std::vector<std::int64_t>> feasible_flow_with_quotas(const QuotaNetwork& net) {
  std::int64_t bound = 1;
  for (const auto& a : net.arcs()) {
    bound += a.lower;
    if (a.capacity != QuotaNetwork::kUnbounded) bound += a.capacity;
  }

  const int n = net.n_nodes();
  const int super_source = n;
  const int super_sink = n + 1;
  Dinic dinic(n + 2);
  std::vector<std::int64_t> imbalance(n, 0);
  std::vector<int> ids;
  for (const auto& a : net.arcs()) {
    const std::int64_t cap = a.capacity == QuotaNetwork::kUnbounded ? bound : a.capacity;
    ids.push_back(dinic.add_edge(a.from, a.to, cap - a.lower));
    imbalance[a.to] += a.lower;
    imbalance[a.from] -= a.lower;
  }
  dinic.add_edge(net.sink(), net.source(), bound);

  std::int64_t demand = 0;
  for (int v = 0; v < n; ++v) {
    if (imbalance[v] > 0) {
      dinic.add_edge(super_source, v, imbalance[v]);
      demand += imbalance[v];
    } else if (imbalance[v] < 0) {
      dinic.add_edge(v, super_sink, -imbalance[v]);
    }
  }
  if (dinic.max_flow(super_source, super_sink) != demand) return std::nullopt;

  std::vector<std::int64_t> flow;
  for (std::size_t k = 0; k < ids.size(); ++k) flow.push_back(net.arcs()[k].lower + dinic.flow_on(ids[k]));
  return flow;
}

}  // namespace fairc
