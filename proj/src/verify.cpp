#include "fairc/verify.hpp"

#include <algorithm>

#include "fairc/checkers.hpp"
#include "fairc/solvers.hpp"

namespace fairc {

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {
      "threshold_mms",   "threshold_mms_po", "threshold_prop1", "threshold_prop1_po",
      "mms_po_guaranteed", "po_lex",         "prop1_po_lex",    "prop1_lex",
      "mms_lex",         "ef1_acyclic",      "two_identical_ef1", "two_identical_prop1",
  };
  return names;
}

namespace {

void require_known(std::string_view solver) {
  const auto& names = solver_names();
  if (std::find(names.begin(), names.end(), solver) == names.end()) {
    throw InputError("unknown solver '" + std::string(solver) + "'");
  }
}

}  // namespace

SolveOutcome run_solver(std::string_view solver, const Instance& inst) {
  require_known(solver);
  if (solver == "threshold_mms") return solve_threshold_binary(inst, ThresholdMode::mms, false);
  if (solver == "threshold_mms_po") return solve_threshold_binary(inst, ThresholdMode::mms, true);
  if (solver == "threshold_prop1") return solve_threshold_binary(inst, ThresholdMode::prop1, false);
  if (solver == "threshold_prop1_po") return solve_threshold_binary(inst, ThresholdMode::prop1, true);
  if (solver == "mms_po_guaranteed") return solve_mms_po_guaranteed_binary(inst);
  if (solver == "po_lex") return solve_po_lex(inst);
  if (solver == "prop1_po_lex") return solve_prop1_po_lex(inst);
  if (solver == "prop1_lex") return solve_prop1_lex(inst);
  if (solver == "mms_lex") return solve_mms_lex(inst);
  if (solver == "ef1_acyclic") return solve_ef1_acyclic(inst);
  if (solver == "two_identical_ef1") return solve_two_identical(inst, TwoAgentMode::ef1);
  return solve_two_identical(inst, TwoAgentMode::prop1);
}

PropertySet solver_properties(std::string_view solver) {
  require_known(solver);
  // The properties are the underscore-separated name tokens.
  PropertySet p;
  std::size_t start = 0;
  while (start <= solver.size()) {
    const std::size_t end = std::min(solver.find('_', start), solver.size());
    const std::string_view token = solver.substr(start, end - start);
    for (Property q : {Property::mms, Property::prop1, Property::ef1, Property::po}) {
      if (token == to_string(q)) p.properties.push_back(q);
    }
    start = end + 1;
  }
  return p;
}

Instance sample_for_solver(std::string_view solver, Rng& rng) {
  require_known(solver);
  if (solver.starts_with("threshold")) return random_binary(rng, rng.between(1, 3), rng.between(0, 5));
  if (solver == "mms_po_guaranteed") {
    return with_po_frozen_binary(random_binary(rng, rng.between(1, 3), rng.between(0, 5)));
  }
  if (solver.ends_with("lex")) return random_lexicographic(rng, rng.between(1, 3), rng.between(0, 6));
  if (solver == "ef1_acyclic") {
    while (true) {
      Instance inst = random_additive(rng, rng.between(1, 3), rng.between(0, 6), 5);
      if (is_ef1(inst, inst.frozen()) && build_envy_graph(inst, inst.frozen()).acyclic) return inst;
    }
  }
  return random_identical_pair(rng, rng.between(0, 5), 3);
}

CaseResult compare_with_oracle(std::string_view solver, const Instance& inst, std::uint64_t budget) {
  CaseResult r;
  r.solver = run_solver(solver, inst);
  const PropertySet props = solver_properties(solver);
  r.oracle = oracle_solve(inst, props, budget);

  auto fail = [&](std::string why) {
    r.agree = false;
    r.detail = std::move(why);
  };
  if (r.oracle.status == SolveStatus::not_applicable) {
    fail("oracle over budget");
  } else if (r.solver.status == SolveStatus::not_applicable) {
    fail("solver not applicable: " + r.solver.note);
  } else if (r.solver.status != r.oracle.status) {
    fail("solver " + std::string(to_string(r.solver.status)) + ", oracle " +
         std::string(to_string(r.oracle.status)));
  } else if (r.solver.witness && !oracle_satisfies(inst, props, *r.solver.witness, budget)) {
    fail("solver witness fails the oracle's property check");
  }
  return r;
}

VerifyReport verify_solver(std::string_view solver, int cases, std::uint64_t seed, std::uint64_t budget) {
  require_known(solver);
  VerifyReport report;
  report.solver = std::string(solver);
  Rng rng(seed);
  for (int k = 0; k < cases; ++k) {
    const Instance inst = sample_for_solver(solver, rng);
    const CaseResult r = compare_with_oracle(solver, inst, budget);
    ++report.cases;
    if (!r.agree) {
      report.mismatches.push_back("case " + std::to_string(k) + ": " + r.detail + " " +
                                  serialize_instance(inst));
      continue;
    }
    ++report.agreed;
    if (r.solver.status == SolveStatus::witness) ++report.witnesses;
    if (r.solver.status == SolveStatus::none_exists) ++report.none_exists;
  }
  return report;
}

}  // namespace fairc
