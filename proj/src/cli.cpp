#include "fairc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairc/checkers.hpp"
#include "fairc/mms.hpp"
#include "fairc/oracle.hpp"
#include "fairc/reductions.hpp"
#include "fairc/solvers.hpp"
#include "fairc/verify.hpp"

namespace fairc {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string instance;
  std::string allocation;
  std::string property;
  std::string properties;
  std::string alpha = "1";
  std::uint64_t budget = kDefaultBudget;
  bool po = false;
  bool json = false;
  bool force_oracle = false;
  bool dump_network = false;
  std::string output;

  // generate
  std::string family;
  std::string variant;
  std::string weights;
  std::string edges;
  std::string hyperedges;
  int vertices = 0;
  int k = 0;
  std::map<std::string, std::string> params;
  std::string n_param, ell_param, x_param, y_param;

  // verify
  std::string solver;
  int cases = 100;
  std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text << '\n';
}

std::vector<int> parse_int_list(const std::string& text, char sep) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "'");
    }
  }
  return out;
}

// "0-1,1-2" -> {(0,1), (1,2)}.
std::vector<std::pair<int, int>> parse_edge_list(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto ends = parse_int_list(item, '-');
    if (ends.size() != 2) throw InputError("bad edge '" + item + "'");
    out.emplace_back(ends[0], ends[1]);
  }
  return out;
}

void print_bundles(std::ostream& out, const Instance& inst, const Allocation& a) {
  for (AgentId i = 0; i < a.n_agents(); ++i) {
    out << "agent " << i << ":";
    for (GoodId g : a.bundle(i)) out << ' ' << inst.good_name(g);
    out << '\n';
  }
}

int exit_for(const SolveOutcome& o) {
  switch (o.status) {
    case SolveStatus::witness:
      return kExitHolds;
    case SolveStatus::none_exists:
      return kExitFails;
    case SolveStatus::not_applicable:
      return kExitSkipped;
  }
  return kExitSkipped;
}

int report_outcome(const Options& opt, const Instance& inst, const SolveOutcome& o, std::ostream& out) {
  if (opt.json) {
    out << outcome_to_json(inst, o) << '\n';
  } else {
    out << to_string(o.status) << " (" << o.note << ")\n";
    if (o.witness) print_bundles(out, inst, *o.witness);
  }
  if (o.witness && !opt.output.empty()) write_file(opt.output, serialize_allocation(inst, *o.witness));
  return exit_for(o);
}

// ---------------------------------------------------------------------------

int cmd_check(const Options& opt, std::ostream& out) {
  const Instance inst = parse_instance(read_file(opt.instance));
  const Allocation a = parse_allocation(inst, read_file(opt.allocation));
  const Property p = parse_property(opt.property);
  const Ratio alpha = Ratio::parse(opt.alpha);

  FairnessReport report;
  report.property = p;
  switch (p) {
    case Property::ef:
      report = check_ef(inst, a);
      break;
    case Property::ef1:
      report = check_ef1(inst, a);
      break;
    case Property::prop:
      report = check_prop(inst, a);
      break;
    case Property::prop1:
      report = check_prop1(inst, a);
      break;
    case Property::mms:
      report = check_alpha_mms(inst, a, alpha, mms_values(inst, opt.budget).mu);
      break;
    case Property::po:
      if (inst.valuation_class() == ValuationClass::binary) {
        report = check_po_binary(inst, a);
      } else {
        if (!a.is_complete()) throw InputError("property requires a complete allocation");
        const bool po = inst.valuation_class() == ValuationClass::lexicographic
                            ? check_sequencible(inst, a).sequencible
                            : oracle_po_check(inst, a, opt.budget);
        report.holds = po;
        if (!po) report.violations.push_back({kNoAgent, kNoAgent, "a Pareto improvement exists"});
      }
      break;
    case Property::mnw: {
      PropertySet set;
      set.properties = {Property::mnw};
      report.holds = oracle_satisfies(inst, set, a, opt.budget);
      if (!report.holds) {
        report.violations.push_back({kNoAgent, kNoAgent, "another completion has higher Nash welfare"});
      }
      break;
    }
  }

  if (opt.json) {
    out << report_to_json(report) << '\n';
  } else {
    out << to_string(p) << ": " << (report.holds ? "holds" : "fails") << '\n';
    for (const auto& v : report.violations) {
      out << "  agent " << v.agent;
      if (v.counterpart != kNoAgent) out << " -> " << v.counterpart;
      out << ": " << v.explanation << '\n';
    }
  }
  return report.holds ? kExitHolds : kExitFails;
}

// Class-specific polynomial algorithm for the request, or nullopt when the
// oracle has to decide.
std::optional<SolveOutcome> dispatch(const Instance& inst, Property p, bool po, const Ratio& alpha,
                                     std::string* dump) {
  const bool unit_alpha = alpha.num == alpha.den;
  switch (inst.valuation_class()) {
    case ValuationClass::binary:
      if (p == Property::mms && unit_alpha) return solve_threshold_binary(inst, ThresholdMode::mms, po, dump);
      if (p == Property::prop1) return solve_threshold_binary(inst, ThresholdMode::prop1, po, dump);
      return std::nullopt;
    case ValuationClass::lexicographic:
      if (p == Property::po) return solve_po_lex(inst);
      if (p == Property::prop1) return po ? solve_prop1_po_lex(inst) : solve_prop1_lex(inst);
      if (p == Property::mms && unit_alpha && !po) return solve_mms_lex(inst);
      return std::nullopt;
    case ValuationClass::additive:
      if (po) return std::nullopt;
      if (inst.n_agents() == 2 && inst.identical_valuations()) {
        if (p == Property::ef1) return solve_two_identical(inst, TwoAgentMode::ef1);
        if (p == Property::prop1) return solve_two_identical(inst, TwoAgentMode::prop1);
      }
      if (p == Property::ef1) {
        auto o = solve_ef1_acyclic(inst);
        if (o.status == SolveStatus::witness) return o;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  const Instance inst = parse_instance(read_file(opt.instance));
  const Property p = parse_property(opt.property);
  const Ratio alpha = Ratio::parse(opt.alpha);

  std::optional<SolveOutcome> outcome;
  if (!opt.force_oracle) {
    std::string dump;
    outcome = dispatch(inst, p, opt.po, alpha, opt.dump_network ? &dump : nullptr);
    if (!dump.empty()) err << dump;
  }
  if (!outcome) {
    PropertySet set;
    set.alpha = alpha;
    set.properties.push_back(p);
    if (opt.po && p != Property::po) set.properties.push_back(Property::po);
    outcome = oracle_solve(inst, set, opt.budget);
  }
  return report_outcome(opt, inst, *outcome, out);
}

int cmd_oracle(const Options& opt, std::ostream& out) {
  const Instance inst = parse_instance(read_file(opt.instance));
  std::string list = !opt.properties.empty() ? opt.properties : opt.property;
  if (opt.po) list += list.empty() ? "po" : ",po";
  const PropertySet set = list.empty() ? PropertySet{} : parse_property_set(list, Ratio::parse(opt.alpha));
  return report_outcome(opt, inst, oracle_solve(inst, set, opt.budget), out);
}

int cmd_mms_value(const Options& opt, std::ostream& out) {
  const Instance inst = parse_instance(read_file(opt.instance));
  MmsResult r;
  try {
    r = mms_values(inst, opt.budget);
  } catch (const BudgetExceeded& e) {
    if (opt.json) {
      Json doc;
      doc["status"] = "not_applicable";
      doc["note"] = e.what();
      out << doc.dump() << '\n';
    } else {
      out << "not_applicable (" << e.what() << ")\n";
    }
    return kExitSkipped;
  }
  if (opt.json) {
    Json doc;
    doc["class"] = std::string(to_string(inst.valuation_class()));
    Json agents = Json::array();
    for (AgentId i = 0; i < inst.n_agents(); ++i) {
      Json row;
      row["agent"] = i;
      const Value& mu = r.mu[i];
      if (mu <= std::numeric_limits<std::uint64_t>::max()) {
        row["mu"] = mu.convert_to<std::uint64_t>();
      } else {
        row["mu"] = mu.str();
      }
      row["partition"] = Json::parse(serialize_allocation(inst, r.witness_partition[i]))["bundles"];
      agents.push_back(std::move(row));
    }
    doc["agents"] = std::move(agents);
    out << doc.dump() << '\n';
  } else {
    for (AgentId i = 0; i < inst.n_agents(); ++i) {
      out << "agent " << i << ": mu = " << r.mu[i] << '\n';
      std::ostringstream bundles;
      print_bundles(bundles, inst, r.witness_partition[i]);
      std::istringstream lines(bundles.str());
      for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
    }
  }
  return kExitHolds;
}

int cmd_generate(Options opt, std::ostream& out) {
  std::optional<Instance> inst;
  if (!opt.n_param.empty()) opt.params["n"] = opt.n_param;
  if (!opt.ell_param.empty()) opt.params["ell"] = opt.ell_param;
  if (!opt.x_param.empty()) opt.params["x"] = opt.x_param;
  if (!opt.y_param.empty()) opt.params["y"] = opt.y_param;
  if (opt.alpha != "1") opt.params["alpha"] = opt.alpha;

  if (opt.family == "partition") {
    if (opt.variant.empty()) throw InputError("partition needs --variant");
    inst = reduce_partition(parse_int_list(opt.weights, ','), parse_partition_variant(opt.variant)).instance;
  } else if (opt.family == "equitable_coloring") {
    Graph g;
    g.n_vertices = opt.vertices;
    g.edges = parse_edge_list(opt.edges);
    inst = reduce_equitable_coloring(g, opt.k).instance;
  } else if (opt.family == "rainbow_coloring") {
    Hypergraph h;
    h.n_vertices = opt.vertices;
    std::stringstream in(opt.hyperedges);
    for (std::string part; std::getline(in, part, ';');) h.edges.push_back(parse_int_list(part, ','));
    inst = reduce_rainbow_coloring(h, opt.k).instance;
  } else {
    inst = gen_counterexample(parse_family(opt.family), opt.params);
  }

  const std::string text = serialize_instance(*inst);
  if (opt.output.empty()) {
    out << text << '\n';
  } else {
    write_file(opt.output, text);
  }
  return kExitHolds;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  if (opt.cases < 0) throw InputError("--cases must be non-negative");
  const VerifyReport r = verify_solver(opt.solver, opt.cases, opt.seed, opt.budget);
  if (opt.json) {
    Json doc;
    doc["solver"] = r.solver;
    doc["cases"] = r.cases;
    doc["agreed"] = r.agreed;
    doc["witnesses"] = r.witnesses;
    doc["none_exists"] = r.none_exists;
    doc["mismatches"] = r.mismatches;
    out << doc.dump() << '\n';
  } else {
    out << r.solver << ": " << r.agreed << "/" << r.cases << " cases agree with the oracle (" << r.witnesses
        << " witness, " << r.none_exists << " none_exists)\n";
    for (const auto& m : r.mismatches) out << "  " << m << '\n';
  }
  return r.ok() ? kExitHolds : kExitFails;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair completion of partially frozen allocations of indivisible goods", "fairc"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget", opt.budget, "Search budget for exhaustive routines");
    sub->add_flag("--json", opt.json, "Print JSON");
  };

  auto* check = app.add_subcommand("check", "Evaluate a property on an allocation");
  check->add_option("--instance", opt.instance, "Instance file")->required();
  check->add_option("--allocation", opt.allocation, "Allocation file")->required();
  check->add_option("--property", opt.property, "ef|ef1|prop|prop1|mms|po|mnw")->required();
  check->add_option("--alpha", opt.alpha, "alpha for alpha-MMS, as p/q");
  add_common(check);

  auto* solve = app.add_subcommand("solve", "Find a completion with a property");
  solve->add_option("--instance", opt.instance, "Instance file")->required();
  solve->add_option("--property", opt.property, "ef|ef1|prop|prop1|mms|po|mnw")->required();
  solve->add_flag("--po", opt.po, "Also require Pareto optimality");
  solve->add_option("--alpha", opt.alpha, "alpha for alpha-MMS, as p/q");
  solve->add_flag("--force-oracle", opt.force_oracle, "Use exhaustive search");
  solve->add_flag("--dump-network", opt.dump_network, "Print the flow network to stderr");
  solve->add_option("-o", opt.output, "Write the witness allocation here");
  add_common(solve);

  auto* mms = app.add_subcommand("mms-value", "Maximin share of every agent");
  mms->add_option("--instance", opt.instance, "Instance file")->required();
  add_common(mms);

  auto* gen = app.add_subcommand("generate", "Emit a reduction or counterexample instance");
  gen->add_option("--family", opt.family,
                  "no_mms_lex|no_alpha_mms_additive|no_alpha_mms_binary|mnw_not_ef1|"
                  "partition|equitable_coloring|rainbow_coloring")
      ->required();
  gen->add_option("--alpha", opt.alpha, "alpha, as p/q");
  gen->add_option("--n", opt.n_param, "Number of agents");
  gen->add_option("--ell", opt.ell_param, "Number of unallocated goods");
  gen->add_option("--x", opt.x_param, "x with x/y <= alpha");
  gen->add_option("--y", opt.y_param, "y with x/y <= alpha");
  gen->add_option("--weights", opt.weights, "Partition weights, comma separated");
  gen->add_option("--variant", opt.variant, "Partition variant");
  gen->add_option("--vertices", opt.vertices, "Vertex count");
  gen->add_option("--edges", opt.edges, "Edges as u-v pairs, comma separated");
  gen->add_option("--hyperedges", opt.hyperedges, "Hyperedges as comma lists separated by ';'");
  gen->add_option("--k", opt.k, "Number of colors");
  gen->add_option("-o", opt.output, "Output file");

  auto* orc = app.add_subcommand("oracle", "Exhaustive completion search");
  orc->add_option("--instance", opt.instance, "Instance file")->required();
  orc->add_option("--properties", opt.properties, "Comma-separated properties");
  orc->add_option("--property", opt.property, "Single property");
  orc->add_flag("--po", opt.po, "Also require Pareto optimality");
  orc->add_option("--alpha", opt.alpha, "alpha for alpha-MMS, as p/q");
  orc->add_option("-o", opt.output, "Write the witness allocation here");
  add_common(orc);

  auto* ver = app.add_subcommand("verify", "Cross-check a solver against the oracle");
  ver->add_option("--solver", opt.solver, "Solver name")->required();
  ver->add_option("--cases", opt.cases, "Number of random cases");
  ver->add_option("--seed", opt.seed, "Random seed");
  add_common(ver);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  try {
    if (check->parsed()) return cmd_check(opt, out);
    if (solve->parsed()) return cmd_solve(opt, out, err);
    if (mms->parsed()) return cmd_mms_value(opt, out);
    if (gen->parsed()) return cmd_generate(opt, out);
    if (orc->parsed()) return cmd_oracle(opt, out);
    if (ver->parsed()) return cmd_verify(opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitSkipped;
  }
  err << app.help();
  return kExitInputError;
}

}  // namespace fairc
