#include "fairc/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fairc/mms.hpp"

namespace fairc {

// ---------------------------------------------------------------------------
// Source problems

Graph pad_graph(const Graph& g, int k) {
  if (k < 1) throw InputError("color count must be positive");
  Graph out = g;
  while (out.n_vertices % k != 0) ++out.n_vertices;
  return out;
}

namespace {

void validate_graph(const Graph& g) {
  if (g.n_vertices < 0) throw InputError("malformed graph: negative vertex count");
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n_vertices || v >= g.n_vertices || u == v) {
      throw InputError("malformed graph: bad edge");
    }
  }
}

void validate_hypergraph(const Hypergraph& h) {
  if (h.n_vertices < 0) throw InputError("malformed hypergraph: negative vertex count");
  for (const auto& e : h.edges) {
    if (e.empty()) throw InputError("malformed hypergraph: empty hyperedge");
    std::set<int> seen;
    for (int v : e) {
      if (v < 0 || v >= h.n_vertices || !seen.insert(v).second) {
        throw InputError("malformed hypergraph: bad hyperedge");
      }
    }
  }
}

bool colors_in_range(int n, int k, const Coloring& c) {
  if (static_cast<int>(c.color.size()) != n) return false;
  return std::all_of(c.color.begin(), c.color.end(), [k](int x) { return x >= 0 && x < k; });
}

// Calls visit on every k-coloring of n vertices in lexicographic order until
// visit returns true.
template <typename Visit>
std::optional<Coloring> first_coloring(int n, int k, Visit visit) {
  Coloring c;
  c.color.assign(static_cast<std::size_t>(n), 0);
  if (k < 1) return n == 0 && visit(c) ? std::optional<Coloring>(c) : std::nullopt;
  while (true) {
    if (visit(c)) return c;
    int pos = n - 1;
    while (pos >= 0 && c.color[pos] == k - 1) c.color[pos--] = 0;
    if (pos < 0) return std::nullopt;
    ++c.color[pos];
  }
}

}  // namespace

bool is_equitable_coloring(const Graph& g, int k, const Coloring& c) {
  if (k < 1 || g.n_vertices % k != 0 || !colors_in_range(g.n_vertices, k, c)) return false;
  for (const auto& [u, v] : g.edges) {
    if (c.color[u] == c.color[v]) return false;
  }
  std::vector<int> size(k, 0);
  for (int x : c.color) ++size[x];
  return std::all_of(size.begin(), size.end(), [&](int s) { return s == g.n_vertices / k; });
}

bool is_rainbow_coloring(const Hypergraph& h, int k, const Coloring& c) {
  if (k < 1 || !colors_in_range(h.n_vertices, k, c)) return false;
  for (const auto& e : h.edges) {
    std::set<int> used;
    for (int v : e) {
      if (!used.insert(c.color[v]).second) return false;
    }
  }
  return true;
}

bool is_even_split(const std::vector<int>& weights, const WeightSubset& s) {
  const long long total = std::accumulate(weights.begin(), weights.end(), 0LL);
  std::set<int> seen;
  long long side = 0;
  for (int item : s.items) {
    if (item < 0 || item >= static_cast<int>(weights.size()) || !seen.insert(item).second) return false;
    side += weights[item];
  }
  return 2 * side == total;
}

std::optional<Coloring> find_equitable_coloring(const Graph& g, int k) {
  validate_graph(g);
  return first_coloring(g.n_vertices, k, [&](const Coloring& c) { return is_equitable_coloring(g, k, c); });
}

std::optional<Coloring> find_rainbow_coloring(const Hypergraph& h, int k) {
  validate_hypergraph(h);
  return first_coloring(h.n_vertices, k, [&](const Coloring& c) { return is_rainbow_coloring(h, k, c); });
}

std::optional<WeightSubset> find_even_split(const std::vector<int>& weights) {
  const long long total = std::accumulate(weights.begin(), weights.end(), 0LL);
  if (total % 2 != 0) return std::nullopt;
  const long long half = total / 2;
  // reached[s]: item that first completed sum s, or -1.
  std::vector<int> reached(static_cast<std::size_t>(half + 1), -1);
  std::vector<bool> ok(static_cast<std::size_t>(half + 1), false);
  ok[0] = true;
  for (int k = 0; k < static_cast<int>(weights.size()); ++k) {
    for (long long s = half; s >= weights[k]; --s) {
      if (!ok[s] && ok[s - weights[k]]) {
        ok[s] = true;
        reached[s] = k;
      }
    }
  }
  if (!ok[half]) return std::nullopt;
  WeightSubset out;
  for (long long s = half; s > 0; s -= weights[reached[s]]) out.items.push_back(reached[s]);
  std::sort(out.items.begin(), out.items.end());
  return out;
}

// ---------------------------------------------------------------------------
// Partition

std::string_view to_string(PartitionVariant v) {
  switch (v) {
    case PartitionVariant::two_agent_ef1:
      return "two_agent_ef1";
    case PartitionVariant::two_agent_prop1:
      return "two_agent_prop1";
    case PartitionVariant::three_identical:
      return "three_identical";
    case PartitionVariant::three_identical_prop1:
      return "three_identical_prop1";
    case PartitionVariant::mms_two_agent:
      return "mms_two_agent";
  }
  return "?";
}

PartitionVariant parse_partition_variant(std::string_view name) {
  for (auto v : {PartitionVariant::two_agent_ef1, PartitionVariant::two_agent_prop1,
                 PartitionVariant::three_identical, PartitionVariant::three_identical_prop1,
                 PartitionVariant::mms_two_agent}) {
    if (to_string(v) == name) return v;
  }
  throw InputError("unknown partition variant '" + std::string(name) + "'");
}

Reduction reduce_partition(const std::vector<int>& weights, PartitionVariant variant) {
  long long total = 0;
  for (int w : weights) {
    if (w <= 0) throw InputError("partition weights must be positive");
    total += w;
  }
  if (total % 2 != 0) throw InputError("partition weights must have an even sum");
  const long long T = total / 2;
  const bool two_agent =
      variant == PartitionVariant::two_agent_ef1 || variant == PartitionVariant::two_agent_prop1;
  if (two_agent && std::any_of(weights.begin(), weights.end(), [T](int w) { return w > T; })) {
    throw InputError("partition weight exceeds half the total");
  }

  const int m = static_cast<int>(weights.size());
  std::vector<std::string> goods;
  std::vector<std::vector<Value>> values;
  std::vector<AgentId> frozen;
  std::vector<GoodId> item_goods;
  AgentId receiver = 0;
  Property target = Property::ef1;

  auto add_frozen = [&](const std::string& name, AgentId owner, std::vector<Value> per_agent) {
    goods.push_back(name);
    frozen.push_back(owner);
    for (std::size_t i = 0; i < values.size(); ++i) values[i].push_back(per_agent[i]);
  };
  auto add_items = [&](int scale) {
    for (int k = 0; k < m; ++k) {
      item_goods.push_back(static_cast<GoodId>(goods.size()));
      goods.push_back("w" + std::to_string(k + 1));
      frozen.push_back(kNoAgent);
      for (auto& row : values) row.push_back(Value(weights[k]) * scale);
    }
  };

  int n = 0;
  switch (variant) {
    case PartitionVariant::two_agent_ef1:
      n = 2;
      values.resize(2);
      add_frozen("f1", 0, {0, T});
      add_frozen("f2", 1, {T, 0});
      add_items(1);
      target = Property::ef1;
      break;
    case PartitionVariant::two_agent_prop1:
      n = 2;
      values.resize(2);
      add_frozen("f1", 0, {0, T});
      add_frozen("f2", 0, {0, T});
      add_frozen("f3", 1, {T, 0});
      add_frozen("f4", 1, {T, 0});
      add_items(1);
      target = Property::prop1;
      break;
    case PartitionVariant::three_identical:
      n = 3;
      values.resize(3);
      add_frozen("f1", 0, {T, T, T});
      add_frozen("f2", 0, {T, T, T});
      add_items(1);
      target = Property::ef1;
      receiver = 1;
      break;
    case PartitionVariant::three_identical_prop1: {
      n = 3;
      values.resize(3);
      const Value alpha = weights.empty() ? 1 : *std::max_element(weights.begin(), weights.end());
      add_frozen("f", 1, {alpha, alpha, alpha});
      add_frozen("g", 2, {alpha, alpha, alpha});
      // T + 4 alpha frozen goods of value 1 (at most the least weight).
      const long long ell = T + 4 * alpha.convert_to<long long>();
      for (long long e = 1; e <= ell; ++e) add_frozen("e" + std::to_string(e), 0, {1, 1, 1});
      add_items(1);
      target = Property::prop1;
      receiver = 1;
      break;
    }
    case PartitionVariant::mms_two_agent:
      n = 2;
      values.resize(2);
      add_frozen("f1", 0, {0, 1});
      add_frozen("f2", 1, {1, 0});
      add_items(2);
      target = Property::mms;
      break;
  }
  Reduction r{Instance::additive(n, std::move(goods), std::move(values), std::move(frozen))};
  r.source = SourceProblem::partition;
  r.target = target;
  r.variant = variant;
  r.item_goods = std::move(item_goods);
  r.receivers = {receiver};
  r.weights = weights;
  return r;
}

// ---------------------------------------------------------------------------
// Equitable coloring (binary)

Reduction reduce_equitable_coloring(const Graph& g, int k) {
  validate_graph(g);
  const Graph padded = pad_graph(g, k);
  const int nv = padded.n_vertices;
  const int t = nv / k;
  const int n_edges = static_cast<int>(padded.edges.size());
  const int n = n_edges + k + 1;
  const AgentId special = n_edges + k;

  std::vector<std::string> goods;
  for (int v = 0; v < nv; ++v) goods.push_back("v" + std::to_string(v));
  for (int d = 1; d <= t + 1; ++d) goods.push_back("d" + std::to_string(d));
  const int m = static_cast<int>(goods.size());

  std::vector<std::vector<Value>> values(n, std::vector<Value>(m, 0));
  for (int e = 0; e < n_edges; ++e) {
    values[e][padded.edges[e].first] = 1;
    values[e][padded.edges[e].second] = 1;
  }
  for (int c = 0; c < k; ++c) std::fill(values[n_edges + c].begin(), values[n_edges + c].end(), Value(1));
  for (int d = nv; d < m; ++d) values[special][d] = 1;

  std::vector<AgentId> frozen(m, kNoAgent);
  for (int d = nv; d < m; ++d) frozen[d] = special;

  Reduction r{Instance::binary(n, std::move(goods), std::move(values), std::move(frozen))};
  r.source = SourceProblem::equitable_coloring;
  r.target = Property::ef1;
  r.graph = padded;
  r.k = k;
  for (int v = 0; v < nv; ++v) r.item_goods.push_back(v);
  for (int c = 0; c < k; ++c) r.receivers.push_back(n_edges + c);
  return r;
}

// ---------------------------------------------------------------------------
// Rainbow coloring (lexicographic)

Reduction reduce_rainbow_coloring(const Hypergraph& h, int k) {
  validate_hypergraph(h);
  if (k < 1) throw InputError("color count must be positive");
  for (const auto& e : h.edges) {
    if (static_cast<int>(e.size()) > k) throw InputError("hyperedge has more vertices than colors");
  }
  Hypergraph padded = h;
  for (int v = 0; v < h.n_vertices; ++v) {
    padded.edges.push_back({v});
    padded.edges.push_back({v});
  }
  for (auto& e : padded.edges) std::sort(e.begin(), e.end());

  const int q = padded.n_vertices;
  const int r_edges = static_cast<int>(padded.edges.size());
  const int n = r_edges + k + q * r_edges;
  const int m = q + n;
  auto edge_good = [&](int e) { return q + e; };
  auto color_good = [&](int c) { return q + r_edges + c; };
  auto pair_good = [&](int e, int v) { return q + r_edges + k + e * q + v; };

  std::vector<std::string> goods;
  for (int v = 0; v < q; ++v) goods.push_back("v" + std::to_string(v));
  for (int e = 0; e < r_edges; ++e) goods.push_back("e" + std::to_string(e));
  for (int c = 0; c < k; ++c) goods.push_back("c" + std::to_string(c));
  for (int e = 0; e < r_edges; ++e) {
    for (int v = 0; v < q; ++v) goods.push_back("p" + std::to_string(e) + "_" + std::to_string(v));
  }

  // Listed goods first (in the given order), then every other good by index.
  auto ranking = [m](const std::vector<GoodId>& head) {
    std::vector<GoodId> out = head;
    std::vector<bool> used(m, false);
    for (GoodId g : head) used[g] = true;
    for (GoodId g = 0; g < m; ++g) {
      if (!used[g]) out.push_back(g);
    }
    return out;
  };

  std::vector<std::vector<GoodId>> rankings;
  for (int e = 0; e < r_edges; ++e) {
    std::vector<GoodId> head(padded.edges[e].begin(), padded.edges[e].end());
    for (int f = 0; f < r_edges; ++f) {
      if (f != e) head.push_back(edge_good(f));
    }
    for (int f = 0; f < r_edges; ++f) {
      for (int v = 0; v < q; ++v) head.push_back(pair_good(f, v));
    }
    head.push_back(edge_good(e));
    rankings.push_back(ranking(head));
  }
  for (int c = 0; c < k; ++c) rankings.push_back(ranking({color_good(c)}));
  for (int e = 0; e < r_edges; ++e) {
    for (int v = 0; v < q; ++v) {
      std::vector<GoodId> head{v, edge_good(e)};
      for (int f = 0; f < r_edges; ++f) {
        for (int u = 0; u < q; ++u) {
          if (f != e || u != v) head.push_back(pair_good(f, u));
        }
      }
      head.push_back(pair_good(e, v));
      rankings.push_back(ranking(head));
    }
  }

  std::vector<AgentId> frozen(m, kNoAgent);
  for (AgentId a = 0; a < n; ++a) frozen[q + a] = a;

  Reduction r{Instance::lexicographic(n, std::move(goods), std::move(rankings), std::move(frozen))};
  r.source = SourceProblem::rainbow_coloring;
  r.target = Property::ef1;
  r.hypergraph = padded;
  r.k = k;
  for (int v = 0; v < q; ++v) r.item_goods.push_back(v);
  for (int c = 0; c < k; ++c) r.receivers.push_back(r_edges + c);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

bool passes_target(const Reduction& r, const Allocation& a) {
  switch (r.target) {
    case Property::ef1:
      return check_ef1(r.instance, a).holds;
    case Property::prop1:
      return check_prop1(r.instance, a).holds;
    case Property::mms:
      return check_alpha_mms(r.instance, a, Ratio{}, mms_values(r.instance).mu).holds;
    default:
      throw std::logic_error("reduction with an unsupported target property");
  }
}

}  // namespace

SourceWitness extract_witness(const Reduction& r, const Allocation& a) {
  const Instance& inst = r.instance;
  if (a.n_agents() != inst.n_agents() || a.n_goods() != inst.n_goods() || !a.is_complete()) {
    throw InputError("allocation does not complete the reduced instance");
  }
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    const AgentId o = inst.frozen_owner(g);
    if (o != kNoAgent && a.owner(g) != o) throw InputError("allocation moves a frozen good");
  }
  if (!passes_target(r, a)) {
    throw InputError("allocation fails " + std::string(to_string(r.target)) + " on the reduced instance");
  }

  if (r.source == SourceProblem::partition) {
    WeightSubset s;
    for (std::size_t k = 0; k < r.item_goods.size(); ++k) {
      if (a.owner(r.item_goods[k]) == r.receivers.front()) s.items.push_back(static_cast<int>(k));
    }
    if (!is_even_split(r.weights, s)) throw std::logic_error("pulled-back subset is not an even split");
    return s;
  }

  Coloring c;
  for (GoodId g : r.item_goods) {
    const auto it = std::find(r.receivers.begin(), r.receivers.end(), a.owner(g));
    if (it == r.receivers.end()) throw std::logic_error("a vertex good left the color agents");
    c.color.push_back(static_cast<int>(it - r.receivers.begin()));
  }
  const bool ok = r.source == SourceProblem::equitable_coloring
                      ? is_equitable_coloring(r.graph, r.k, c)
                      : is_rainbow_coloring(r.hypergraph, r.k, c);
  if (!ok) throw std::logic_error("pulled-back coloring is invalid");
  return c;
}

bool source_answer(const Reduction& r) {
  switch (r.source) {
    case SourceProblem::partition:
      return find_even_split(r.weights).has_value();
    case SourceProblem::equitable_coloring:
      return find_equitable_coloring(r.graph, r.k).has_value();
    case SourceProblem::rainbow_coloring:
      return find_rainbow_coloring(r.hypergraph, r.k).has_value();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Counterexample families

std::string_view to_string(CounterexampleFamily f) {
  switch (f) {
    case CounterexampleFamily::no_mms_lex:
      return "no_mms_lex";
    case CounterexampleFamily::no_alpha_mms_additive:
      return "no_alpha_mms_additive";
    case CounterexampleFamily::no_alpha_mms_binary:
      return "no_alpha_mms_binary";
    case CounterexampleFamily::mnw_not_ef1:
      return "mnw_not_ef1";
  }
  return "?";
}

CounterexampleFamily parse_family(std::string_view name) {
  for (auto f : {CounterexampleFamily::no_mms_lex, CounterexampleFamily::no_alpha_mms_additive,
                 CounterexampleFamily::no_alpha_mms_binary, CounterexampleFamily::mnw_not_ef1}) {
    if (to_string(f) == name) return f;
  }
  throw InputError("unknown counterexample family '" + std::string(name) + "'");
}

namespace {

long long int_param(const std::map<std::string, std::string>& params, const std::string& key,
                    long long fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("parameter '" + key + "' must be an integer");
  }
}

constexpr int kMaxHarmonicAgents = 200;

Instance no_alpha_mms_additive(const std::map<std::string, std::string>& params) {
  const auto it = params.find("alpha");
  const Ratio alpha = it == params.end() ? Ratio{} : Ratio::parse(it->second);
  if (alpha.num <= 0 || alpha.num > alpha.den) throw InputError("alpha must lie in (0, 1]");

  // alpha * H_n > 2  <=>  p * sum_j L/j > 2 q L  with L = lcm(1..n).
  auto exceeds = [&](long long n) {
    Value L = 1;
    for (long long j = 1; j <= n; ++j) L = boost::multiprecision::lcm(L, Value(j));
    Value h = 0;
    for (long long j = 1; j <= n; ++j) h += L / j;
    return alpha.num * h > 2 * alpha.den * L;
  };
  long long n = int_param(params, "n", 0);
  if (n == 0) {
    n = 1;
    while (!exceeds(n)) {
      if (++n > kMaxHarmonicAgents) throw InputError("alpha too small for a desk-scale instance");
    }
  } else if (n < 1 || n > kMaxHarmonicAgents || !exceeds(n)) {
    throw InputError("n must satisfy alpha * H_n > 2");
  }
  const long long ell = int_param(params, "ell", n);
  if (ell < n) throw InputError("ell must be at least n");

  Value L = 1;
  for (long long j = 1; j <= n; ++j) L = boost::multiprecision::lcm(L, Value(j));
  const Value S = L * (n + 1);

  std::vector<std::string> goods;
  for (long long j = 1; j <= n; ++j) goods.push_back("f" + std::to_string(j));
  for (long long u = 1; u <= ell; ++u) goods.push_back("u" + std::to_string(u));
  std::vector<std::vector<Value>> values(n);
  for (long long i = 1; i <= n; ++i) {
    auto& row = values[i - 1];
    for (long long j = 1; j <= n; ++j) row.push_back(j <= i ? Value(j) : S * ell / i);
    for (long long u = 0; u < ell; ++u) row.push_back(S);
  }
  std::vector<AgentId> frozen(static_cast<std::size_t>(n + ell), kNoAgent);
  for (long long j = 0; j < n; ++j) frozen[j] = static_cast<AgentId>(j);
  return Instance::additive(static_cast<int>(n), std::move(goods), std::move(values), std::move(frozen));
}

Instance no_alpha_mms_binary(const std::map<std::string, std::string>& params) {
  const long long x = int_param(params, "x", 1);
  const long long y = int_param(params, "y", 1);
  if (x < 1 || y < 1) throw InputError("x and y must be positive");
  const long long n = int_param(params, "n", y / x + 1);
  if (n * x <= y) throw InputError("n must exceed y / x");
  if (n * y > 100000) throw InputError("instance too large");

  const bool compact = n < 10 && y < 10;
  std::vector<std::string> goods;
  for (long long j = 1; j <= y; ++j) goods.push_back("g" + std::to_string(j));
  for (long long i = 1; i <= n; ++i) {
    for (long long j = 1; j <= y; ++j) {
      goods.push_back("g" + std::to_string(i) + (compact ? "" : "_") + std::to_string(j));
    }
  }
  const std::size_t m = goods.size();
  std::vector<std::vector<Value>> values(n, std::vector<Value>(m, 1));
  std::vector<AgentId> frozen(m, kNoAgent);
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < y; ++j) {
      const std::size_t g = static_cast<std::size_t>(y + i * y + j);
      values[i][g] = 0;
      frozen[g] = static_cast<AgentId>(i);
    }
  }
  return Instance::binary(static_cast<int>(n), std::move(goods), std::move(values), std::move(frozen));
}

}  // namespace

Instance gen_counterexample(CounterexampleFamily family, const std::map<std::string, std::string>& params) {
  switch (family) {
    case CounterexampleFamily::no_mms_lex:
      // agent 0: g1 > g2 > f1 > f2; agent 1: f1 > f2 > g1 > g2.
      return Instance::lexicographic(2, {"g1", "g2", "f1", "f2"}, {{0, 1, 2, 3}, {2, 3, 0, 1}},
                                     {kNoAgent, kNoAgent, 0, 1});
    case CounterexampleFamily::no_alpha_mms_additive:
      return no_alpha_mms_additive(params);
    case CounterexampleFamily::no_alpha_mms_binary:
      return no_alpha_mms_binary(params);
    case CounterexampleFamily::mnw_not_ef1: {
      std::vector<std::vector<Value>> v = {
          {1, 1, 0, 0, 0, 0, 0, 0},
          {1, 1, 1, 1, 1, 1, 1, 1},
          {0, 0, 0, 0, 1, 1, 1, 1},
      };
      return Instance::binary(3, {"g1", "g2", "g3", "g4", "f1", "f2", "f3", "f4"}, std::move(v),
                              {kNoAgent, kNoAgent, kNoAgent, kNoAgent, 2, 2, 2, 2});
    }
  }
  throw InputError("unknown counterexample family");
}

}  // namespace fairc
