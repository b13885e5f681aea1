#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fairc/checkers.hpp"
#include "fairc/instance.hpp"

namespace fairc {

// ---------------------------------------------------------------------------
// Source problems

struct Graph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

struct Hypergraph {
  int n_vertices = 0;
  std::vector<std::vector<int>> edges;
};

// color[v] in [0, k) for every vertex.
struct Coloring {
  std::vector<int> color;
};

// Item indices forming one side of an even split.
struct WeightSubset {
  std::vector<int> items;
};

using SourceWitness = std::variant<Coloring, WeightSubset>;

// Adds isolated vertices until k divides the vertex count.
Graph pad_graph(const Graph& g, int k);

bool is_equitable_coloring(const Graph& g, int k, const Coloring& c);
bool is_rainbow_coloring(const Hypergraph& h, int k, const Coloring& c);
bool is_even_split(const std::vector<int>& weights, const WeightSubset& s);

// Exhaustive source solvers; the first solution in lexicographic order.
std::optional<Coloring> find_equitable_coloring(const Graph& g, int k);
std::optional<Coloring> find_rainbow_coloring(const Hypergraph& h, int k);
std::optional<WeightSubset> find_even_split(const std::vector<int>& weights);

// ---------------------------------------------------------------------------
// Reductions

enum class PartitionVariant {
  two_agent_ef1,
  two_agent_prop1,
  three_identical,        // EF1, three agents with one valuation
  three_identical_prop1,  // PROP1, three agents with one valuation
  mms_two_agent,
};

std::string_view to_string(PartitionVariant v);
PartitionVariant parse_partition_variant(std::string_view name);

enum class SourceProblem { partition, equitable_coloring, rainbow_coloring };

// A reduced instance together with what is needed to pull a completion back.
struct Reduction {
  explicit Reduction(Instance inst) : instance(std::move(inst)) {}

  Instance instance;
  SourceProblem source = SourceProblem::partition;
  Property target = Property::ef1;  // completion property equivalent to a yes-answer
  PartitionVariant variant = PartitionVariant::two_agent_ef1;

  // partition: item k is good item_goods[k]; coloring: vertex v is good item_goods[v].
  std::vector<GoodId> item_goods;
  // partition: the agent whose completion is the returned side;
  // coloring: color agent of each color.
  std::vector<AgentId> receivers;

  std::vector<int> weights;  // partition only
  Graph graph;               // equitable coloring only, after padding
  Hypergraph hypergraph;     // rainbow coloring only, after singleton padding
  int k = 0;
};

// Throws InputError on an odd sum, non-positive weights, or (two-agent
// variants) a weight above T. In mms_two_agent all weights are doubled and the
// small cross value is 1.
Reduction reduce_partition(const std::vector<int>& weights, PartitionVariant variant);

// Pads G with isolated vertices to k * t vertices. Agents: one per edge, k
// color agents, then the special agent; goods: vertex goods then t + 1 dummies
// frozen to the special agent.
Reduction reduce_equitable_coloring(const Graph& g, int k);

// Appends two singleton hyperedges per vertex. Agents: hyperedge agents,
// color agents, pair agents (hyperedge-major); goods: vertex goods, then the
// frozen hyperedge, color and pair goods in the same order. Throws InputError
// when a hyperedge has more than k vertices.
Reduction reduce_rainbow_coloring(const Hypergraph& h, int k);

// Pulls a complete allocation of the reduced instance back to the source
// problem. Throws InputError when the allocation fails the target property or
// the pulled-back object is not a valid source solution.
SourceWitness extract_witness(const Reduction& r, const Allocation& a);

// Brute-force answer of the source problem behind r.
bool source_answer(const Reduction& r);

// ---------------------------------------------------------------------------
// Counterexample families

enum class CounterexampleFamily { no_mms_lex, no_alpha_mms_additive, no_alpha_mms_binary, mnw_not_ef1 };

std::string_view to_string(CounterexampleFamily f);
CounterexampleFamily parse_family(std::string_view name);

// Recognised parameters:
//   no_alpha_mms_additive: "alpha" (p/q, default 1), "n" and "ell" (optional
//     overrides; n must satisfy alpha * H_n > 2 and ell >= n).
//   no_alpha_mms_binary: "x", "y" (default 1, 1), "n" (default floor(y/x)+1,
//     must exceed y/x).
// Unallocated goods of no_alpha_mms_additive are worth S = lcm(1..n) * (n + 1);
// agent i values f_j at j for j <= i and at S * ell / i otherwise.
Instance gen_counterexample(CounterexampleFamily family,
                            const std::map<std::string, std::string>& params = {});

}  // namespace fairc
