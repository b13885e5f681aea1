#pragma once

#include <optional>
#include <vector>

namespace fairc {

class BipartiteGraph {
 public:
  BipartiteGraph(int n_left, int n_right);

  void add_edge(int left, int right);

  int n_left() const { return static_cast<int>(adj_.size()); }
  int n_right() const { return n_right_; }
  const std::vector<int>& neighbours(int left) const { return adj_[left]; }

 private:
  std::vector<std::vector<int>> adj_;
  int n_right_;
};

// Maximum matching size via Hopcroft-Karp; match[l] is the right partner of
// l or -1.
int maximum_matching(const BipartiteGraph& g, std::vector<int>& match);

// The matching when it saturates every left node, otherwise nullopt.
std::optional<std::vector<int>> matching_covering_left(const BipartiteGraph& g);

}  // namespace fairc
