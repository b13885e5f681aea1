#include "fairc/instance.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include <json.hpp>

namespace fairc {

using json = nlohmann::ordered_json;

std::string_view to_string(ValuationClass c) {
  switch (c) {
    case ValuationClass::binary:
      return "binary";
    case ValuationClass::lexicographic:
      return "lexicographic";
    case ValuationClass::additive:
      return "additive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Allocation

Allocation::Allocation(int n_agents, int n_goods)
    : bundles_(static_cast<std::size_t>(n_agents)), owner_(static_cast<std::size_t>(n_goods), kNoAgent) {}

Allocation Allocation::from_bundles(int n_goods, std::vector<std::vector<GoodId>> bundles) {
  Allocation a(static_cast<int>(bundles.size()), n_goods);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    for (GoodId g : bundles[i]) {
      if (g < 0 || g >= n_goods) throw InputError("good index out of range in bundle");
      if (a.owner_[g] != kNoAgent) throw InputError("good assigned to more than one bundle");
      a.owner_[g] = static_cast<AgentId>(i);
    }
    std::sort(bundles[i].begin(), bundles[i].end());
  }
  a.bundles_ = std::move(bundles);
  return a;
}

bool Allocation::is_complete() const {
  return std::none_of(owner_.begin(), owner_.end(), [](AgentId a) { return a == kNoAgent; });
}

int Allocation::allocated_count() const {
  return static_cast<int>(
      std::count_if(owner_.begin(), owner_.end(), [](AgentId a) { return a != kNoAgent; }));
}

void Allocation::assign(GoodId g, AgentId i) {
  if (owner_[g] != kNoAgent) throw InputError("good assigned to more than one bundle");
  owner_[g] = i;
  auto& b = bundles_[i];
  b.insert(std::upper_bound(b.begin(), b.end(), g), g);
}

// ---------------------------------------------------------------------------
// Instance construction

namespace {

void check_common(int n_agents, const std::vector<std::string>& goods,
                  const std::vector<AgentId>& frozen) {
  if (n_agents < 1) throw InputError("instance needs at least one agent");
  if (frozen.size() != goods.size()) throw InputError("frozen owner vector has wrong length");
  std::set<std::string> seen;
  for (const auto& name : goods) {
    if (!seen.insert(name).second) throw InputError("duplicate good name '" + name + "'");
  }
  for (AgentId a : frozen) {
    if (a != kNoAgent && (a < 0 || a >= n_agents)) {
      throw InputError("frozen good assigned to unknown agent " + std::to_string(a));
    }
  }
}

void check_values(int n_agents, std::size_t m, const std::vector<std::vector<Value>>& values,
                  bool binary) {
  if (values.size() != static_cast<std::size_t>(n_agents)) {
    throw InputError("valuation matrix must have one row per agent");
  }
  for (const auto& row : values) {
    if (row.size() != m) throw InputError("valuation row has wrong length");
    for (const auto& v : row) {
      if (v < 0) throw InputError("value out of class range: negative value");
      if (binary && v > 1) throw InputError("value out of class range: binary value " + v.str());
    }
  }
}

}  // namespace

Instance Instance::binary(int n_agents, std::vector<std::string> goods,
                          std::vector<std::vector<Value>> values, std::vector<AgentId> frozen) {
  check_common(n_agents, goods, frozen);
  check_values(n_agents, goods.size(), values, true);
  Instance inst;
  inst.n_agents_ = n_agents;
  inst.class_ = ValuationClass::binary;
  inst.goods_ = std::move(goods);
  inst.values_ = std::move(values);
  inst.frozen_ = std::move(frozen);
  inst.finish();
  return inst;
}

Instance Instance::additive(int n_agents, std::vector<std::string> goods,
                            std::vector<std::vector<Value>> values, std::vector<AgentId> frozen) {
  check_common(n_agents, goods, frozen);
  check_values(n_agents, goods.size(), values, false);
  Instance inst;
  inst.n_agents_ = n_agents;
  inst.class_ = ValuationClass::additive;
  inst.goods_ = std::move(goods);
  inst.values_ = std::move(values);
  inst.frozen_ = std::move(frozen);
  inst.finish();
  return inst;
}

Instance Instance::lexicographic(int n_agents, std::vector<std::string> goods,
                                 std::vector<std::vector<GoodId>> rankings,
                                 std::vector<AgentId> frozen) {
  check_common(n_agents, goods, frozen);
  if (rankings.size() != static_cast<std::size_t>(n_agents)) {
    throw InputError("need one ranking per agent");
  }
  const int m = static_cast<int>(goods.size());
  std::vector<std::vector<Value>> values(static_cast<std::size_t>(n_agents),
                                         std::vector<Value>(goods.size()));
  for (int i = 0; i < n_agents; ++i) {
    const auto& r = rankings[i];
    std::vector<char> seen(goods.size(), 0);
    if (static_cast<int>(r.size()) != m) throw InputError("ranking not a permutation of the goods");
    for (int pos = 0; pos < m; ++pos) {
      GoodId g = r[pos];
      if (g < 0 || g >= m || seen[g]) throw InputError("ranking not a permutation of the goods");
      seen[g] = 1;
      // rank is pos + 1, so the value is 2^(m - pos - 1)
      values[i][g] = Value(1) << (m - pos - 1);
    }
  }
  Instance inst;
  inst.n_agents_ = n_agents;
  inst.class_ = ValuationClass::lexicographic;
  inst.goods_ = std::move(goods);
  inst.values_ = std::move(values);
  inst.rankings_ = std::move(rankings);
  inst.frozen_ = std::move(frozen);
  inst.finish();
  return inst;
}

void Instance::finish() {
  frozen_alloc_ = Allocation(n_agents_, n_goods());
  unallocated_.clear();
  for (GoodId g = 0; g < n_goods(); ++g) {
    if (frozen_[g] == kNoAgent) {
      unallocated_.push_back(g);
    } else {
      frozen_alloc_.assign(g, frozen_[g]);
    }
  }
}

GoodId Instance::good_index(std::string_view name) const {
  auto it = std::find(goods_.begin(), goods_.end(), name);
  return it == goods_.end() ? -1 : static_cast<GoodId>(it - goods_.begin());
}

bool Instance::identical_valuations() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](const std::vector<Value>& row) { return row == values_.front(); });
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Value json_to_value(const json& j) {
  if (j.is_number_unsigned()) return Value(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0) throw InputError("value out of class range: negative value");
    return Value(v);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InputError("malformed value '" + s + "'");
    }
    return Value(s);
  }
  throw InputError("values must be non-negative integers");
}

json value_to_json(const Value& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return json(v.convert_to<std::uint64_t>());
  return json(v.str());
}

std::unordered_map<std::string, GoodId> index_goods(const std::vector<std::string>& goods) {
  std::unordered_map<std::string, GoodId> idx;
  for (std::size_t g = 0; g < goods.size(); ++g) idx.emplace(goods[g], static_cast<GoodId>(g));
  return idx;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("instance must be a JSON object");

  try {
    if (!doc.contains("agents") || !doc["agents"].is_number_integer()) {
      throw InputError("missing integer field 'agents'");
    }
    const int n = doc["agents"].get<int>();
    if (n < 1) throw InputError("instance needs at least one agent");

    std::vector<std::string> goods;
    if (doc.contains("goods")) {
      if (!doc["goods"].is_array()) throw InputError("'goods' must be an array of strings");
      for (const auto& g : doc["goods"]) {
        if (!g.is_string()) throw InputError("'goods' must be an array of strings");
        goods.push_back(g.get<std::string>());
      }
    }
    auto idx = index_goods(goods);
    if (idx.size() != goods.size()) throw InputError("duplicate good names");

    std::vector<AgentId> frozen(goods.size(), kNoAgent);
    if (doc.contains("frozen")) {
      const auto& fz = doc["frozen"];
      if (!fz.is_object()) throw InputError("'frozen' must be an object");
      for (const auto& [name, owner] : fz.items()) {
        auto it = idx.find(name);
        if (it == idx.end()) throw InputError("frozen good '" + name + "' is not a listed good");
        if (!owner.is_number_integer()) throw InputError("frozen owner must be an agent index");
        const int a = owner.get<int>();
        if (a < 0 || a >= n) throw InputError("frozen owner out of range for good '" + name + "'");
        if (frozen[it->second] != kNoAgent) {
          throw InputError("duplicate frozen assignment for good '" + name + "'");
        }
        frozen[it->second] = a;
      }
    }

    if (!doc.contains("class") || !doc["class"].is_string()) {
      throw InputError("missing string field 'class'");
    }
    const auto cls = doc["class"].get<std::string>();
    if (cls == "binary" || cls == "additive") {
      if (!doc.contains("valuations") || !doc["valuations"].is_array()) {
        throw InputError("missing 'valuations' matrix");
      }
      std::vector<std::vector<Value>> values;
      for (const auto& row : doc["valuations"]) {
        if (!row.is_array()) throw InputError("valuation rows must be arrays");
        std::vector<Value> r;
        for (const auto& v : row) r.push_back(json_to_value(v));
        values.push_back(std::move(r));
      }
      return cls == "binary" ? Instance::binary(n, goods, values, frozen)
                             : Instance::additive(n, goods, values, frozen);
    }
    if (cls == "lexicographic") {
      if (!doc.contains("rankings") || !doc["rankings"].is_array()) {
        throw InputError("missing 'rankings'");
      }
      std::vector<std::vector<GoodId>> rankings;
      for (const auto& row : doc["rankings"]) {
        if (!row.is_array()) throw InputError("rankings must be arrays of good names");
        std::vector<GoodId> r;
        for (const auto& name : row) {
          if (!name.is_string()) throw InputError("rankings must be arrays of good names");
          auto it = idx.find(name.get<std::string>());
          if (it == idx.end()) throw InputError("ranking not a permutation of the goods");
          r.push_back(it->second);
        }
        rankings.push_back(std::move(r));
      }
      return Instance::lexicographic(n, goods, rankings, frozen);
    }
    throw InputError("unknown valuation class '" + cls + "'");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["agents"] = inst.n_agents();
  doc["goods"] = inst.goods();
  doc["class"] = std::string(to_string(inst.valuation_class()));
  if (inst.valuation_class() == ValuationClass::lexicographic) {
    json rankings = json::array();
    for (const auto& r : inst.rankings()) {
      json row = json::array();
      for (GoodId g : r) row.push_back(inst.good_name(g));
      rankings.push_back(std::move(row));
    }
    doc["rankings"] = std::move(rankings);
  } else {
    json vals = json::array();
    for (AgentId i = 0; i < inst.n_agents(); ++i) {
      json row = json::array();
      for (const auto& v : inst.values(i)) row.push_back(value_to_json(v));
      vals.push_back(std::move(row));
    }
    doc["valuations"] = std::move(vals);
  }
  json fz = json::object();
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    if (inst.frozen_owner(g) != kNoAgent) fz[inst.good_name(g)] = inst.frozen_owner(g);
  }
  doc["frozen"] = std::move(fz);
  return doc.dump(2);
}

Allocation parse_allocation(const Instance& inst, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("bundles") || !doc["bundles"].is_array()) {
    throw InputError("allocation must be an object with a 'bundles' array");
  }
  const auto& bundles = doc["bundles"];
  if (static_cast<int>(bundles.size()) != inst.n_agents()) {
    throw InputError("allocation must list one bundle per agent");
  }
  std::vector<std::vector<GoodId>> out;
  for (const auto& b : bundles) {
    if (!b.is_array()) throw InputError("each bundle must be an array of good names");
    std::vector<GoodId> bundle;
    for (const auto& name : b) {
      if (!name.is_string()) throw InputError("each bundle must be an array of good names");
      GoodId g = inst.good_index(name.get<std::string>());
      if (g < 0) throw InputError("unknown good '" + name.get<std::string>() + "' in allocation");
      bundle.push_back(g);
    }
    out.push_back(std::move(bundle));
  }
  return Allocation::from_bundles(inst.n_goods(), std::move(out));
}

std::string serialize_allocation(const Instance& inst, const Allocation& a) {
  json doc;
  json bundles = json::array();
  for (AgentId i = 0; i < a.n_agents(); ++i) {
    json b = json::array();
    for (GoodId g : a.bundle(i)) b.push_back(inst.good_name(g));
    bundles.push_back(std::move(b));
  }
  doc["bundles"] = std::move(bundles);
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Evaluation

Value value_of_bundle(const Instance& inst, AgentId agent, std::span<const GoodId> bundle) {
  Value total = 0;
  const auto& row = inst.values(agent);
  for (GoodId g : bundle) total += row[g];
  return total;
}

Instance lex_cardinal_realization(const Instance& inst) {
  if (inst.valuation_class() != ValuationClass::lexicographic) {
    throw InputError("cardinal realization requires a lexicographic instance");
  }
  std::vector<std::vector<Value>> values;
  for (AgentId i = 0; i < inst.n_agents(); ++i) values.push_back(inst.values(i));
  return Instance::additive(inst.n_agents(), inst.goods(), std::move(values), inst.frozen_owners());
}

Allocation merge_allocation(const Instance& inst, const Completion& completion) {
  const Allocation& c = completion.goods;
  if (c.n_agents() != inst.n_agents() || c.n_goods() != inst.n_goods()) {
    throw InputError("completion does not match the instance shape");
  }
  Allocation merged = inst.frozen();
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    const AgentId to = c.owner(g);
    if (inst.frozen_owner(g) != kNoAgent) {
      if (to != kNoAgent) throw InputError("completion assigns frozen good '" + inst.good_name(g) + "'");
      continue;
    }
    if (to == kNoAgent) throw InputError("completion leaves good '" + inst.good_name(g) + "' uncovered");
    merged.assign(g, to);
  }
  return merged;
}

bool lex_prefers(std::span<const GoodId> ranking, std::span<const GoodId> x,
                 std::span<const GoodId> y) {
  auto contains = [](std::span<const GoodId> s, GoodId g) {
    return std::find(s.begin(), s.end(), g) != s.end();
  };
  std::vector<int> pos(ranking.size());
  for (std::size_t p = 0; p < ranking.size(); ++p) pos[ranking[p]] = static_cast<int>(p);
  // X is preferred iff some g in X\Y has every better good of Y inside X.
  for (GoodId g : x) {
    if (contains(y, g)) continue;
    bool ok = true;
    for (GoodId h : y) {
      if (pos[h] < pos[g] && !contains(x, h)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace fairc
