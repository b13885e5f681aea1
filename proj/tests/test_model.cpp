#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fairc/instance.hpp"
#include "fairc/random_instances.hpp"
#include "fairc/value.hpp"
#include "support.hpp"

using namespace fairc;

namespace {

const char* kLexText = R"({
  "agents": 2,
  "goods": ["g1", "g2", "f1", "f2"],
  "class": "lexicographic",
  "rankings": [["g1", "g2", "f1", "f2"], ["f1", "f2", "g1", "g2"]],
  "frozen": {"f1": 0, "f2": 1}
})";

}  // namespace

TEST_CASE("lexicographic instance parses into the power-of-two realization") {
  const Instance inst = parse_instance(kLexText);
  CHECK(inst.n_agents() == 2);
  CHECK(inst.n_goods() == 4);
  CHECK(inst.valuation_class() == ValuationClass::lexicographic);
  // rank r of m = 4 goods is worth 2^(4 - r)
  CHECK(inst.values(0) == std::vector<Value>{8, 4, 2, 1});
  CHECK(inst.values(1) == std::vector<Value>{2, 1, 8, 4});
  CHECK(inst.frozen_owner(2) == 0);
  CHECK(inst.frozen_owner(3) == 1);
  CHECK(inst.unallocated() == std::vector<GoodId>{0, 1});
  CHECK(inst.frozen().allocated_count() == 2);
  CHECK_FALSE(inst.frozen().is_complete());
}

TEST_CASE("values beyond 64 bits survive parsing") {
  const Instance inst = parse_instance(R"({"agents": 1, "goods": ["a"], "class": "additive",
      "valuations": [["123456789012345678901234567890"]], "frozen": {}})");
  CHECK(inst.value(0, 0) == Value("123456789012345678901234567890"));
  CHECK(parse_instance(serialize_instance(inst)) == inst);

  std::vector<std::string> goods = testref::names(70);
  std::vector<GoodId> r(70);
  for (int g = 0; g < 70; ++g) r[g] = g;
  const Instance lex = Instance::lexicographic(1, goods, {r}, std::vector<AgentId>(70, kNoAgent));
  CHECK(lex.value(0, 0) == Value(1) << 69);
}

TEST_CASE("serialize then parse is the identity") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const int n = rng.between(1, 4), m = rng.between(0, 7);
    for (const Instance& inst :
         {random_binary(rng, n, m), random_lexicographic(rng, n, m), random_additive(rng, n, m, 9)}) {
      CHECK(parse_instance(serialize_instance(inst)) == inst);
      const Allocation a = random_completion(rng, inst);
      CHECK(parse_allocation(inst, serialize_allocation(inst, a)) == a);
    }
  }
}

TEST_CASE("malformed instances are rejected with InputError") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"goods": [], "class": "binary", "valuations": []})",
      R"({"agents": 0, "goods": [], "class": "binary", "valuations": []})",
      R"({"agents": 1, "goods": ["a", "a"], "class": "binary", "valuations": [[0, 1]]})",
      R"({"agents": 1, "goods": ["a"], "class": "binary", "valuations": [[2]]})",
      R"({"agents": 1, "goods": ["a"], "class": "additive", "valuations": [[-1]]})",
      R"({"agents": 1, "goods": ["a"], "class": "additive", "valuations": [[1.5]]})",
      R"({"agents": 2, "goods": ["a"], "class": "additive", "valuations": [[1]]})",
      R"({"agents": 1, "goods": ["a"], "class": "additive", "valuations": [[1, 2]]})",
      R"({"agents": 1, "goods": ["a"], "class": "weird", "valuations": [[1]]})",
      R"({"agents": 1, "goods": ["a", "b"], "class": "lexicographic", "rankings": [["a", "a"]]})",
      R"({"agents": 1, "goods": ["a", "b"], "class": "lexicographic", "rankings": [["a"]]})",
      R"({"agents": 1, "goods": ["a"], "class": "additive", "valuations": [[1]], "frozen": {"b": 0}})",
      R"({"agents": 1, "goods": ["a"], "class": "additive", "valuations": [[1]], "frozen": {"a": 1}})",
      R"({"agents": 1, "goods": ["a"], "class": "additive", "valuations": [[1]], "frozen": {"a": "x"}})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_instance(text), InputError);
  }
}

TEST_CASE("malformed allocations are rejected") {
  const Instance inst = parse_instance(kLexText);
  CHECK_THROWS_AS(parse_allocation(inst, R"({"bundles": [["g1"]]})"), InputError);
  CHECK_THROWS_AS(parse_allocation(inst, R"({"bundles": [["g1"], ["g1"]]})"), InputError);
  CHECK_THROWS_AS(parse_allocation(inst, R"({"bundles": [["zz"], []]})"), InputError);
  CHECK_THROWS_AS(parse_allocation(inst, R"({"bundles": 3})"), InputError);
  const Allocation a = parse_allocation(inst, R"({"bundles": [["f1", "g2"], ["g1", "f2"]]})");
  CHECK(a.is_complete());
  CHECK(a.owner(0) == 1);
  CHECK(std::vector<GoodId>(a.bundle(0).begin(), a.bundle(0).end()) == std::vector<GoodId>{1, 2});
}

TEST_CASE("merge_allocation unites frozen and completion bundles") {
  const Instance inst = parse_instance(kLexText);
  Completion c{Allocation(2, 4)};
  c.goods.assign(0, 1);
  CHECK_THROWS_AS(merge_allocation(inst, c), InputError);  // g2 uncovered
  c.goods.assign(1, 0);
  const Allocation a = merge_allocation(inst, c);
  CHECK(a.owners() == std::vector<AgentId>{1, 0, 0, 1});
  Completion touching{Allocation(2, 4)};
  touching.goods.assign(0, 0);
  touching.goods.assign(1, 0);
  touching.goods.assign(2, 1);
  CHECK_THROWS_AS(merge_allocation(inst, touching), InputError);
}

TEST_CASE("bundle values are additive") {
  Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    const Instance inst = random_additive(rng, 2, rng.between(0, 7), 20);
    const Allocation a = random_completion(rng, inst);
    std::vector<GoodId> all;
    for (GoodId g = 0; g < inst.n_goods(); ++g) all.push_back(g);
    for (AgentId i = 0; i < 2; ++i) {
      CHECK(value_of_bundle(inst, i, a.bundle(0)) + value_of_bundle(inst, i, a.bundle(1)) ==
            value_of_bundle(inst, i, all));
    }
  }
}

TEST_CASE("power-of-two realization orders every pair of bundles like the ranking") {
  // All rankings of m <= 6 goods are covered up to relabelling by the identity
  // ranking plus a few shuffled ones; all pairs of bundles are compared.
  Rng rng(9);
  for (int m = 0; m <= 6; ++m) {
    for (int trial = 0; trial < 3; ++trial) {
      const Instance inst = random_lexicographic(rng, 1, m);
      const auto& ranking = inst.rankings()[0];
      for (unsigned x = 0; x < (1u << m); ++x) {
        for (unsigned y = 0; y < (1u << m); ++y) {
          std::vector<GoodId> bx, by;
          for (int g = 0; g < m; ++g) {
            if (x >> g & 1) bx.push_back(g);
            if (y >> g & 1) by.push_back(g);
          }
          const bool cardinal = value_of_bundle(inst, 0, bx) > value_of_bundle(inst, 0, by);
          REQUIRE(cardinal == lex_prefers(ranking, bx, by));
        }
      }
    }
  }
}

TEST_CASE("cardinal realization keeps values and frozen goods") {
  const Instance inst = parse_instance(kLexText);
  const Instance add = lex_cardinal_realization(inst);
  CHECK(add.valuation_class() == ValuationClass::additive);
  CHECK(add.values(0) == inst.values(0));
  CHECK(add.frozen_owners() == inst.frozen_owners());
  CHECK_THROWS_AS(lex_cardinal_realization(add), InputError);
}

TEST_CASE("identical valuations are detected") {
  CHECK(Instance::additive(2, {"a", "b"}, {{1, 2}, {1, 2}}, {kNoAgent, kNoAgent}).identical_valuations());
  CHECK_FALSE(Instance::additive(2, {"a", "b"}, {{1, 2}, {2, 1}}, {kNoAgent, kNoAgent}).identical_valuations());
}

TEST_CASE("ratios parse exactly") {
  CHECK(Ratio::parse("3/4").num == 3);
  CHECK(Ratio::parse("3/4").den == 4);
  CHECK(Ratio::parse("1").den == 1);
  CHECK(Ratio::parse("2/3").str() == "2/3");
  CHECK_THROWS_AS(Ratio::parse("1/0"), InputError);
  CHECK_THROWS_AS(Ratio::parse("a/2"), InputError);
  CHECK_THROWS_AS(Ratio::parse(""), InputError);
}

TEST_CASE("bounded_power saturates") {
  CHECK(bounded_power(3, 4, 1000) == 81);
  CHECK(bounded_power(3, 40, 1000) == 1001);
  CHECK(bounded_power(1, 1000000, 5) == 1);
  CHECK(bounded_power(7, 0, 5) == 1);
}
