#include "fairc/oracle.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace fairc {

bool PropertySet::has(Property p) const {
  return std::find(properties.begin(), properties.end(), p) != properties.end();
}

PropertySet parse_property_set(std::string_view list, const Ratio& alpha) {
  PropertySet set;
  set.alpha = alpha;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    std::string_view item = list.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw InputError("empty property in list");
    const Property p = item == "alpha_mms" ? Property::mms : parse_property(item);
    if (!set.has(p)) set.properties.push_back(p);
    start = comma + 1;
  }
  return set;
}

// ---------------------------------------------------------------------------

void for_each_completion(const Instance& inst, std::uint64_t budget,
                         const std::function<bool(const Completion&)>& visit) {
  const auto& pending = inst.unallocated();
  const int n = inst.n_agents();
  if (bounded_power(static_cast<std::uint64_t>(n), pending.size(), budget) > budget) {
    throw BudgetExceeded("completion enumeration exceeds the budget");
  }
  std::vector<AgentId> owner(pending.size(), 0);
  while (true) {
    Completion c{Allocation(n, inst.n_goods())};
    for (std::size_t k = 0; k < pending.size(); ++k) c.goods.assign(pending[k], owner[k]);
    if (!visit(c)) return;
    std::size_t pos = pending.size();
    while (pos > 0 && owner[pos - 1] == n - 1) owner[--pos] = 0;
    if (pos == 0) return;
    ++owner[pos - 1];
  }
}

// ---------------------------------------------------------------------------

namespace {

bool dominates(const std::vector<Value>& q, const std::vector<Value>& p) {
  bool strict = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] < p[i]) return false;
    if (q[i] > p[i]) strict = true;
  }
  return strict;
}

}  // namespace

ParetoFrontier ParetoFrontier::build(const Instance& inst, std::uint64_t budget) {
  const int n = inst.n_agents();
  const int m = inst.n_goods();
  if (bounded_power(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m), budget) > budget) {
    throw BudgetExceeded("Pareto frontier enumeration exceeds the budget");
  }
  std::set<std::vector<Value>> seen;
  std::vector<Value> u(static_cast<std::size_t>(n), 0);
  // Depth-first over goods; u holds the utilities of the current prefix.
  auto rec = [&](auto&& self, int g) -> void {
    if (g == m) {
      seen.insert(u);
      return;
    }
    for (AgentId i = 0; i < n; ++i) {
      u[i] += inst.value(i, g);
      self(self, g + 1);
      u[i] -= inst.value(i, g);
    }
  };
  rec(rec, 0);

  ParetoFrontier f;
  const std::vector<std::vector<Value>> all(seen.begin(), seen.end());
  for (const auto& p : all) {
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const auto& q) { return dominates(q, p); });
    if (!dominated) f.points_.push_back(p);
  }
  return f;
}

bool ParetoFrontier::undominated(const std::vector<Value>& u) const {
  return std::none_of(points_.begin(), points_.end(), [&](const auto& q) { return dominates(q, u); });
}

bool oracle_po_check(const Instance& inst, const Allocation& a, std::uint64_t budget) {
  if (a.n_agents() != inst.n_agents() || a.n_goods() != inst.n_goods() || !a.is_complete()) {
    throw InputError("PO check requires a complete allocation of the instance");
  }
  std::vector<Value> u;
  for (AgentId i = 0; i < inst.n_agents(); ++i) u.push_back(value_of_bundle(inst, i, a.bundle(i)));
  return ParetoFrontier::build(inst, budget).undominated(u);
}

// ---------------------------------------------------------------------------

namespace {

Value ceil_div(const Value& a, const Value& b) {
  if (a <= 0) return 0;
  return (a + b - 1) / b;
}

// Depth-first search over owners of U in index order with sound pruning.
// Invariant: val[i][j] = v_i(A_j), mx[i][j] = max value of a good in A_j for
// i, gap_ef1[i] = max_{j != i} (val[i][j] - mx[i][j]) and gap_ef[i] =
// max_{j != i} val[i][j]; both gaps never decrease as goods are added, so
// "gap - own" lower-bounds the value i must still receive.
class Search {
 public:
  Search(const Instance& inst, const PropertySet& props, std::uint64_t budget)
      : inst_(inst), props_(props), budget_(budget), n_(inst.n_agents()), pending_(inst.unallocated()) {
    const std::size_t u = pending_.size();
    val_.assign(n_, std::vector<Value>(n_, 0));
    mx_.assign(n_, std::vector<Value>(n_, 0));
    count_.assign(n_, 0);
    suffix_sum_.assign(n_, std::vector<Value>(u + 1, 0));
    suffix_max_.assign(n_, std::vector<Value>(u + 1, 0));
    for (AgentId i = 0; i < n_; ++i) {
      for (std::size_t d = u; d-- > 0;) {
        const Value& v = inst.value(i, pending_[d]);
        suffix_sum_[i][d] = suffix_sum_[i][d + 1] + v;
        suffix_max_[i][d] = std::max(suffix_max_[i][d + 1], v);
      }
    }
    for (GoodId g = 0; g < inst.n_goods(); ++g) {
      const AgentId o = inst.frozen_owner(g);
      if (o == kNoAgent) continue;
      ++count_[o];
      for (AgentId i = 0; i < n_; ++i) {
        val_[i][o] += inst.value(i, g);
        mx_[i][o] = std::max(mx_[i][o], inst.value(i, g));
      }
    }
    gap_ef1_.assign(n_, 0);
    gap_ef_.assign(n_, 0);
    for (AgentId i = 0; i < n_; ++i) {
      for (AgentId j = 0; j < n_; ++j) {
        if (j == i) continue;
        gap_ef1_[i] = std::max(gap_ef1_[i], Value(val_[i][j] - mx_[i][j]));
        gap_ef_[i] = std::max(gap_ef_[i], val_[i][j]);
      }
    }

    want_ef_ = props.has(Property::ef);
    want_ef1_ = props.has(Property::ef1);
    want_prop_ = props.has(Property::prop);
    want_prop1_ = props.has(Property::prop1);
    want_mms_ = props.has(Property::mms);
    want_mnw_ = props.has(Property::mnw);
    if (want_prop_ || want_prop1_) {
      for (AgentId i = 0; i < n_; ++i) {
        prop_share_.push_back(ceil_div(total_value(inst, i), n_));
        Value top = 0;
        for (const auto& v : inst.values(i)) top = std::max(top, v);
        max_good_.push_back(top);
        total_.push_back(total_value(inst, i));
      }
    }
    if (want_mms_) {
      for (AgentId i = 0; i < n_; ++i) {
        const Value mu = mms_value_bruteforce(inst, i, budget).mu;
        mms_share_.push_back(ceil_div(props.alpha.num * mu, props.alpha.den));
      }
    }
    if (props.has(Property::po)) frontier_ = ParetoFrontier::build(inst, budget);
    owner_.assign(u, kNoAgent);
  }

  // Returns the chosen owner vector over U, if any.
  std::optional<std::vector<AgentId>> run() {
    descend(0);
    return best_;
  }

 private:
  Value need(AgentId i) const {
    const Value& own = val_[i][i];
    Value need = 0;
    if (want_ef_) need = std::max(need, Value(gap_ef_[i] - own));
    if (want_ef1_) need = std::max(need, Value(gap_ef1_[i] - own));
    if (want_prop_) need = std::max(need, Value(prop_share_[i] - own));
    if (want_prop1_) need = std::max(need, Value(prop_share_[i] - max_good_[i] - own));
    if (want_mms_) need = std::max(need, Value(mms_share_[i] - own));
    return need;
  }

  bool hopeless(std::size_t depth) const {
    const Value remaining_goods = static_cast<long long>(pending_.size() - depth);
    Value goods_needed = 0;
    for (AgentId i = 0; i < n_; ++i) {
      const Value k = need(i);
      if (k <= 0) continue;
      if (k > suffix_sum_[i][depth]) return true;
      goods_needed += ceil_div(k, suffix_max_[i][depth]);
    }
    return goods_needed > remaining_goods;
  }

  bool prop1_at_leaf(AgentId i) const {
    bool outside = false;
    Value best = 0;
    for (AgentId j = 0; j < n_; ++j) {
      if (j == i || count_[j] == 0) continue;
      outside = true;
      best = std::max(best, mx_[i][j]);
    }
    const Value n = n_;
    return n * (val_[i][i] + (outside ? best : Value(0))) >= total_[i];
  }

  void leaf() {
    std::vector<Value> u(static_cast<std::size_t>(n_));
    for (AgentId i = 0; i < n_; ++i) {
      if (need(i) > 0) return;
      if (want_prop1_ && !prop1_at_leaf(i)) return;
      u[i] = val_[i][i];
    }
    if (frontier_ && !frontier_->undominated(u)) return;
    if (!want_mnw_) {
      best_ = owner_;
      done_ = true;
      return;
    }
    int positive = 0;
    Value product = 1;
    for (const auto& x : u) {
      if (x > 0) {
        ++positive;
        product *= x;
      }
    }
    if (!best_ || positive > best_positive_ || (positive == best_positive_ && product > best_product_)) {
      best_ = owner_;
      best_positive_ = positive;
      best_product_ = product;
    }
  }

  void descend(std::size_t depth) {
    if (depth == pending_.size()) {
      leaf();
      return;
    }
    const GoodId g = pending_[depth];
    for (AgentId a = 0; a < n_ && !done_; ++a) {
      if (++nodes_ > budget_) throw BudgetExceeded("oracle search exceeds the budget");
      // Apply, remembering what to restore.
      std::vector<Value> old_mx(n_), old_ef1(n_), old_ef(n_);
      for (AgentId i = 0; i < n_; ++i) {
        const Value& v = inst_.value(i, g);
        old_mx[i] = mx_[i][a];
        old_ef1[i] = gap_ef1_[i];
        old_ef[i] = gap_ef_[i];
        val_[i][a] += v;
        if (v > mx_[i][a]) mx_[i][a] = v;
        if (i != a) {
          gap_ef1_[i] = std::max(gap_ef1_[i], Value(val_[i][a] - mx_[i][a]));
          gap_ef_[i] = std::max(gap_ef_[i], val_[i][a]);
        }
      }
      ++count_[a];
      owner_[depth] = a;

      if (!hopeless(depth + 1)) descend(depth + 1);

      owner_[depth] = kNoAgent;
      --count_[a];
      for (AgentId i = 0; i < n_; ++i) {
        val_[i][a] -= inst_.value(i, g);
        mx_[i][a] = old_mx[i];
        gap_ef1_[i] = old_ef1[i];
        gap_ef_[i] = old_ef[i];
      }
    }
  }

 public:
  bool hopeless_at_root() const { return hopeless(0); }

 private:
  const Instance& inst_;
  const PropertySet& props_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  int n_;
  std::vector<GoodId> pending_;

  std::vector<std::vector<Value>> val_, mx_;
  std::vector<int> count_;
  std::vector<Value> gap_ef1_, gap_ef_;
  std::vector<std::vector<Value>> suffix_sum_, suffix_max_;

  bool want_ef_ = false, want_ef1_ = false, want_prop_ = false, want_prop1_ = false;
  bool want_mms_ = false, want_mnw_ = false;
  std::vector<Value> prop_share_, max_good_, total_, mms_share_;
  std::optional<ParetoFrontier> frontier_;

  std::vector<AgentId> owner_;
  std::optional<std::vector<AgentId>> best_;
  int best_positive_ = -1;
  Value best_product_ = 0;
  bool done_ = false;
};

std::string describe(const PropertySet& props) {
  std::string out;
  for (Property p : props.properties) {
    if (!out.empty()) out += "+";
    out += p == Property::mms && (props.alpha.num != props.alpha.den) ? props.alpha.str() + "-mms"
                                                                      : std::string(to_string(p));
  }
  return out.empty() ? "any" : out;
}

// Re-checks a witness with the standalone checkers.
void confirm(const Instance& inst, const PropertySet& props, const Allocation& a) {
  auto ensure = [](bool ok, Property p) {
    if (!ok) throw std::logic_error("oracle witness fails " + std::string(to_string(p)));
  };
  for (Property p : props.properties) {
    switch (p) {
      case Property::ef:
        ensure(check_ef(inst, a).holds, p);
        break;
      case Property::ef1:
        ensure(check_ef1(inst, a).holds, p);
        break;
      case Property::prop:
        ensure(check_prop(inst, a).holds, p);
        break;
      case Property::prop1:
        ensure(check_prop1(inst, a).holds, p);
        break;
      case Property::mms:
      case Property::po:
      case Property::mnw:
        break;  // judged against exhaustive references inside the search
    }
  }
}

std::pair<int, Value> nash_key(const Instance& inst, const Allocation& a) {
  int positive = 0;
  Value product = 1;
  for (AgentId i = 0; i < inst.n_agents(); ++i) {
    const Value u = value_of_bundle(inst, i, a.bundle(i));
    if (u > 0) {
      ++positive;
      product *= u;
    }
  }
  return {positive, product};
}

}  // namespace

bool oracle_satisfies(const Instance& inst, const PropertySet& props, const Allocation& a,
                      std::uint64_t budget) {
  if (a.n_agents() != inst.n_agents() || a.n_goods() != inst.n_goods() || !a.is_complete()) {
    throw InputError("property check requires a complete allocation of the instance");
  }
  for (GoodId g = 0; g < inst.n_goods(); ++g) {
    const AgentId o = inst.frozen_owner(g);
    if (o != kNoAgent && a.owner(g) != o) return false;
  }
  for (Property p : props.properties) {
    bool ok = true;
    switch (p) {
      case Property::ef:
        ok = check_ef(inst, a).holds;
        break;
      case Property::ef1:
        ok = check_ef1(inst, a).holds;
        break;
      case Property::prop:
        ok = check_prop(inst, a).holds;
        break;
      case Property::prop1:
        ok = check_prop1(inst, a).holds;
        break;
      case Property::mms: {
        std::vector<Value> mu;
        for (AgentId i = 0; i < inst.n_agents(); ++i) mu.push_back(mms_value_bruteforce(inst, i, budget).mu);
        ok = check_alpha_mms(inst, a, props.alpha, mu).holds;
        break;
      }
      case Property::po:
        ok = oracle_po_check(inst, a, budget);
        break;
      case Property::mnw: {
        PropertySet others;
        others.alpha = props.alpha;
        for (Property q : props.properties) {
          if (q != Property::mnw) others.properties.push_back(q);
        }
        if (!oracle_satisfies(inst, others, a, budget)) return false;
        others.properties.push_back(Property::mnw);
        const auto best = oracle_solve(inst, others, budget);
        if (best.status == SolveStatus::not_applicable) throw BudgetExceeded(best.note);
        ok = best.witness && nash_key(inst, *best.witness) == nash_key(inst, a);
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

SolveOutcome oracle_solve(const Instance& inst, const PropertySet& props, std::uint64_t budget) {
  const std::string name = "exhaustive oracle (" + describe(props) + ")";
  try {
    Search search(inst, props, budget);
    std::optional<std::vector<AgentId>> owners;
    if (!search.hopeless_at_root()) owners = search.run();
    if (!owners) return SolveOutcome::none(name);
    Allocation a = inst.frozen();
    const auto& pending = inst.unallocated();
    for (std::size_t k = 0; k < pending.size(); ++k) a.assign(pending[k], (*owners)[k]);
    confirm(inst, props, a);
    return SolveOutcome::found(std::move(a), name);
  } catch (const BudgetExceeded& e) {
    return SolveOutcome::skipped(name + ": " + e.what());
  }
}

}  // namespace fairc
