#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fairc/checkers.hpp"
#include "fairc/mms.hpp"
#include "fairc/oracle.hpp"
#include "fairc/reductions.hpp"
#include "support.hpp"

using namespace fairc;

namespace {

bool subset_sum_split(const std::vector<int>& w) {
  int total = 0;
  for (int x : w) total += x;
  if (total % 2) return false;
  for (unsigned s = 0; s < (1u << w.size()); ++s) {
    int sum = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (s >> k & 1) sum += w[k];
    }
    if (2 * sum == total) return true;
  }
  return false;
}

// Test-side predicate for the reduction's target property.
std::function<bool(const std::vector<AgentId>&)> target_pred(const Reduction& r) {
  const Instance& inst = r.instance;
  if (r.target == Property::ef1) return [&inst](const std::vector<AgentId>& o) { return testref::ef1(inst, o); };
  if (r.target == Property::prop1) return [&inst](const std::vector<AgentId>& o) { return testref::prop1(inst, o); };
  std::vector<Value> mu;
  for (AgentId i = 0; i < inst.n_agents(); ++i) mu.push_back(testref::mms(inst, i));
  return [&inst, mu](const std::vector<AgentId>& o) {
    const auto u = testref::utilities(inst, o);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] < mu[i]) return false;
    }
    return true;
  };
}

// Source answer, completion existence and pull-back of every satisfying
// completion agree.
void round_trip(const Reduction& r, bool expect) {
  CHECK(source_answer(r) == expect);
  const auto ok = target_pred(r);
  bool found = false;
  testref::each_completion(r.instance, [&](const std::vector<AgentId>& owner) {
    if (!ok(owner)) return;
    found = true;
    const SourceWitness w = extract_witness(r, testref::to_allocation(r.instance, owner));
    if (const auto* s = std::get_if<WeightSubset>(&w)) {
      REQUIRE(is_even_split(r.weights, *s));
    } else if (r.source == SourceProblem::equitable_coloring) {
      REQUIRE(is_equitable_coloring(r.graph, r.k, std::get<Coloring>(w)));
    } else {
      REQUIRE(is_rainbow_coloring(r.hypergraph, r.k, std::get<Coloring>(w)));
    }
  });
  CHECK(found == expect);
}

}  // namespace

TEST_CASE("partition gadget shapes") {
  const Reduction r = reduce_partition({1, 1, 2}, PartitionVariant::two_agent_ef1);
  const Instance& inst = r.instance;
  CHECK(inst.n_agents() == 2);
  CHECK(inst.n_goods() == 5);
  CHECK(inst.unallocated().size() == 3);
  CHECK(r.item_goods.size() == 3);
  // Each frozen good is worth T = 2 to the agent that does not hold it.
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    const AgentId holder = inst.frozen_owner(g);
    if (holder == kNoAgent) continue;
    CHECK(inst.value(holder, g) == 0);
    CHECK(inst.value(1 - holder, g) == 2);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(inst.value(0, r.item_goods[k]) == std::vector<int>{1, 1, 2}[k]);
  }
  round_trip(r, true);

  const Reduction three = reduce_partition({1, 1}, PartitionVariant::three_identical);
  CHECK(three.instance.n_agents() == 3);
  CHECK(three.instance.identical_valuations());
  CHECK(three.instance.frozen().bundle(0).size() == 2);
  for (GoodId g : three.instance.frozen().bundle(0)) CHECK(three.instance.value(0, g) == 1);
  round_trip(three, true);

  const Reduction mms = reduce_partition({1, 1, 2}, PartitionVariant::mms_two_agent);
  CHECK(mms.target == Property::mms);
  CHECK(mms.instance.value(0, mms.item_goods[2]) == 4);  // weights doubled
  round_trip(mms, true);
}

TEST_CASE("partition preconditions") {
  CHECK_THROWS_AS(reduce_partition({1, 1, 3}, PartitionVariant::two_agent_ef1), InputError);
  CHECK_THROWS_AS(reduce_partition({1, 0, 1}, PartitionVariant::two_agent_ef1), InputError);
  CHECK_THROWS_AS(reduce_partition({1, 5}, PartitionVariant::two_agent_prop1), InputError);  // 5 > T = 3
  CHECK_NOTHROW(reduce_partition({1, 5}, PartitionVariant::three_identical));
  CHECK(parse_partition_variant("two_agent_prop1") == PartitionVariant::two_agent_prop1);
  CHECK(to_string(PartitionVariant::mms_two_agent) == "mms_two_agent");
  CHECK_THROWS_AS(parse_partition_variant("four_agents"), InputError);
}

TEST_CASE("a partition no-instance with small weights yields no completion") {
  // Search for the first no-instance with w <= T among multisets over 1..5.
  std::vector<int> no;
  for (int a = 1; a <= 5 && no.empty(); ++a) {
    for (int b = a; b <= 5 && no.empty(); ++b) {
      for (int c = b; c <= 5 && no.empty(); ++c) {
        for (int d = c; d <= 5 && no.empty(); ++d) {
          const std::vector<int> w{a, b, c, d};
          const int total = a + b + c + d;
          if (total % 2 == 0 && 2 * d <= total && !subset_sum_split(w)) no = w;
        }
      }
    }
  }
  REQUIRE_FALSE(no.empty());
  CHECK_FALSE(find_even_split(no).has_value());
  for (PartitionVariant v : {PartitionVariant::two_agent_ef1, PartitionVariant::two_agent_prop1,
                             PartitionVariant::three_identical, PartitionVariant::three_identical_prop1,
                             PartitionVariant::mms_two_agent}) {
    CAPTURE(to_string(v));
    const Reduction r = reduce_partition(no, v);
    round_trip(r, false);
    const SolveOutcome o = oracle_solve(r.instance, PropertySet{{r.target}, Ratio{}});
    CHECK(o.status == SolveStatus::none_exists);
  }
}

TEST_CASE("partition round trips on small multisets") {
  for (int m = 1; m <= 4; ++m) {
    std::vector<int> w(m, 1);
    while (true) {
      int total = 0, big = 0;
      for (int x : w) total += x, big = std::max(big, x);
      if (total % 2 == 0) {
        const bool yes = subset_sum_split(w);
        CHECK(find_even_split(w).has_value() == yes);
        for (PartitionVariant v : {PartitionVariant::two_agent_ef1, PartitionVariant::two_agent_prop1,
                                   PartitionVariant::three_identical, PartitionVariant::three_identical_prop1,
                                   PartitionVariant::mms_two_agent}) {
          const bool two_agent = v == PartitionVariant::two_agent_ef1 || v == PartitionVariant::two_agent_prop1;
          if (two_agent && 2 * big > total) continue;
          CAPTURE(to_string(v));
          round_trip(reduce_partition(w, v), yes);
        }
      }
      int k = m - 1;
      while (k >= 0 && w[k] == 4) --k;
      if (k < 0) break;
      ++w[k];
      for (int j = k + 1; j < m; ++j) w[j] = w[k];
    }
  }
}

TEST_CASE("equitable coloring gadget") {
  const Graph cycle{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  const Reduction r = reduce_equitable_coloring(cycle, 2);
  const Instance& inst = r.instance;
  CHECK(inst.valuation_class() == ValuationClass::binary);
  CHECK(inst.n_agents() == 4 + 2 + 1);
  CHECK(inst.n_goods() == 4 + 3);  // t = 2, so three dummies
  CHECK(check_po_binary(inst, inst.frozen()).holds);
  round_trip(r, true);

  const Reduction tri = reduce_equitable_coloring(Graph{3, {{0, 1}, {1, 2}, {2, 0}}}, 2);
  CHECK(tri.graph.n_vertices == 4);
  CHECK_FALSE(find_equitable_coloring(tri.graph, 2).has_value());
  round_trip(tri, false);

  round_trip(reduce_equitable_coloring(Graph{3, {}}, 3), true);
  CHECK_THROWS_AS(reduce_equitable_coloring(Graph{2, {{0, 5}}}, 2), InputError);
  CHECK_THROWS_AS(reduce_equitable_coloring(Graph{2, {{0, 1}}}, 0), InputError);
}

TEST_CASE("equitable coloring frozen allocation is Pareto optimal") {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= 3; ++k) {
      std::vector<std::pair<int, int>> edges;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if ((a + b) % 2) edges.emplace_back(a, b);
        }
      }
      const Reduction r = reduce_equitable_coloring(Graph{n, edges}, k);
      CHECK(check_po_binary(r.instance, r.instance.frozen()).holds);
      CHECK(r.graph.n_vertices % k == 0);
    }
  }
}

TEST_CASE("rainbow coloring gadget") {
  const Hypergraph one{2, {{0, 1}}};
  const Reduction r = reduce_rainbow_coloring(one, 2);
  // One hyperedge plus two singletons per vertex: r = 5, q = 2.
  CHECK(r.hypergraph.edges.size() == 5);
  CHECK(r.instance.n_agents() == 5 + 2 + 2 * 5);
  CHECK(r.instance.valuation_class() == ValuationClass::lexicographic);
  CHECK(r.instance.unallocated().size() == 2);
  round_trip(r, true);

  CHECK_THROWS_AS(reduce_rainbow_coloring(one, 1), InputError);
  round_trip(reduce_rainbow_coloring(Hypergraph{1, {{0}, {0}}}, 1), true);

  const Hypergraph clash{3, {{0, 1}, {1, 2}, {0, 2}}};
  CHECK_FALSE(find_rainbow_coloring(clash, 2).has_value());
  CHECK(find_rainbow_coloring(clash, 3).has_value());
}

TEST_CASE("source validators") {
  const Graph path{3, {{0, 1}, {1, 2}}};
  CHECK(is_equitable_coloring(pad_graph(path, 2), 2, Coloring{{0, 1, 0, 1}}));
  CHECK_FALSE(is_equitable_coloring(pad_graph(path, 2), 2, Coloring{{0, 0, 1, 1}}));
  CHECK_FALSE(is_equitable_coloring(pad_graph(path, 2), 2, Coloring{{0, 1, 0, 0}}));
  CHECK(pad_graph(path, 2).n_vertices == 4);
  CHECK(is_rainbow_coloring(Hypergraph{2, {{0, 1}}}, 2, Coloring{{1, 0}}));
  CHECK_FALSE(is_rainbow_coloring(Hypergraph{2, {{0, 1}}}, 2, Coloring{{1, 1}}));
  CHECK(is_even_split({1, 1, 2}, WeightSubset{{2}}));
  CHECK_FALSE(is_even_split({1, 1, 2}, WeightSubset{{0}}));
}

TEST_CASE("extract_witness rejects allocations failing the target") {
  const Reduction r = reduce_partition({1, 1, 2}, PartitionVariant::two_agent_ef1);
  Allocation a = r.instance.frozen();
  for (GoodId g : r.item_goods) a.assign(g, 0);
  CHECK_FALSE(check_ef1(r.instance, a).holds);
  CHECK_THROWS_AS(extract_witness(r, a), InputError);
}

TEST_CASE("counterexample families") {
  const Instance lex = gen_counterexample(CounterexampleFamily::no_mms_lex);
  CHECK(lex.goods() == std::vector<std::string>{"g1", "g2", "f1", "f2"});
  CHECK(lex.rankings()[0] == std::vector<GoodId>{0, 1, 2, 3});
  CHECK(lex.rankings()[1] == std::vector<GoodId>{2, 3, 0, 1});
  CHECK(lex.frozen_owners() == std::vector<AgentId>{kNoAgent, kNoAgent, 0, 1});
  CHECK(check_sequencible(lex, lex.frozen()).sequencible);

  const Instance t3 = gen_counterexample(CounterexampleFamily::mnw_not_ef1);
  CHECK(t3.values(0) == std::vector<Value>{1, 1, 0, 0, 0, 0, 0, 0});
  CHECK(t3.values(1) == std::vector<Value>(8, 1));
  CHECK(t3.values(2) == std::vector<Value>{0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(t3.frozen_owners() == std::vector<AgentId>{kNoAgent, kNoAgent, kNoAgent, kNoAgent, 2, 2, 2, 2});

  // Binary table: x = 1, y = 2 gives n = 3 agents and (n + 1) * y goods.
  const Instance t4 = gen_counterexample(CounterexampleFamily::no_alpha_mms_binary, {{"x", "1"}, {"y", "2"}});
  CHECK(t4.n_agents() == 3);
  CHECK(t4.n_goods() == 8);
  CHECK(mms_values(t4).mu == std::vector<Value>{2, 2, 2});
  CHECK_THROWS_AS(gen_counterexample(CounterexampleFamily::no_alpha_mms_binary, {{"x", "1"}, {"y", "2"}, {"n", "2"}}),
                  InputError);

  // Harmonic family: alpha = 1 picks n = 4 (H_4 > 2) and ell = n.
  const Instance h = gen_counterexample(CounterexampleFamily::no_alpha_mms_additive);
  CHECK(h.n_agents() == 4);
  CHECK(h.n_goods() == 8);
  CHECK(h.unallocated().size() == 4);
  for (AgentId i = 0; i < 4; ++i) {
    // Agent i ranks the frozen bundles in index order and holds f_i.
    for (AgentId j = 0; j + 1 < 4; ++j) CHECK(h.value(i, j) <= h.value(i, j + 1));
    CHECK(h.frozen_owner(i) == i);
  }
  CHECK_THROWS_AS(gen_counterexample(CounterexampleFamily::no_alpha_mms_additive, {{"n", "2"}}), InputError);
  CHECK(parse_family("mnw_not_ef1") == CounterexampleFamily::mnw_not_ef1);
  CHECK_THROWS_AS(parse_family("nope"), InputError);
}

TEST_CASE("harmonic family has no MMS completion for longer tails") {
  for (const char* ell : {"4", "5", "6"}) {
    const Instance h = gen_counterexample(CounterexampleFamily::no_alpha_mms_additive, {{"n", "4"}, {"ell", ell}});
    CHECK(oracle_solve(h, PropertySet{{Property::mms}, Ratio{}}).status == SolveStatus::none_exists);
  }
  // alpha = 1/2 needs H_n > 4, which first holds at n = 31.
  const Instance half = gen_counterexample(CounterexampleFamily::no_alpha_mms_additive, {{"alpha", "1/2"}});
  CHECK(half.n_agents() == 31);
}
