#include "fairc/matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace fairc {

BipartiteGraph::BipartiteGraph(int n_left, int n_right)
    : adj_(static_cast<std::size_t>(n_left)), n_right_(n_right) {}

void BipartiteGraph::add_edge(int left, int right) {
  if (left < 0 || left >= n_left() || right < 0 || right >= n_right_) {
    throw std::invalid_argument("bipartite edge out of range");
  }
  adj_[left].push_back(right);
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const BipartiteGraph& g;
  std::vector<int> match_left;
  std::vector<int> match_right;
  std::vector<int> dist;

  explicit HopcroftKarp(const BipartiteGraph& graph)
      : g(graph),
        match_left(graph.n_left(), -1),
        match_right(graph.n_right(), -1),
        dist(graph.n_left(), kInf) {}

  bool bfs() {
    std::queue<int> q;
    for (int l = 0; l < g.n_left(); ++l) {
      if (match_left[l] < 0) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : g.neighbours(l)) {
        const int next = match_right[r];
        if (next < 0) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (int r : g.neighbours(l)) {
      const int next = match_right[r];
      if (next < 0 || (dist[next] == dist[l] + 1 && dfs(next))) {
        match_left[l] = r;
        match_right[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  }

  int run() {
    int size = 0;
    while (bfs()) {
      for (int l = 0; l < g.n_left(); ++l) {
        if (match_left[l] < 0 && dfs(l)) ++size;
      }
    }
    return size;
  }
};

}  // namespace

int maximum_matching(const BipartiteGraph& g, std::vector<int>& match) {
  HopcroftKarp hk(g);
  const int size = hk.run();
  match = std::move(hk.match_left);
  return size;
}

std::optional<std::vector<int>> matching_covering_left(const BipartiteGraph& g) {
  std::vector<int> match;
  if (maximum_matching(g, match) != g.n_left()) return std::nullopt;
  return match;
}

}  // namespace fairc
