#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fairc/instance.hpp"
#include "fairc/oracle.hpp"
#include "fairc/outcome.hpp"
#include "fairc/random_instances.hpp"

namespace fairc {

// Solvers exposed to sweeps, by name:
//   threshold_mms, threshold_mms_po, threshold_prop1, threshold_prop1_po,
//   mms_po_guaranteed, po_lex, prop1_po_lex, prop1_lex, mms_lex, ef1_acyclic,
//   two_identical_ef1, two_identical_prop1.
const std::vector<std::string>& solver_names();

// Throws InputError for an unknown name.
SolveOutcome run_solver(std::string_view solver, const Instance& inst);
PropertySet solver_properties(std::string_view solver);

// Draws one instance from the solver's declared input class: binary n <= 3,
// m <= 5; lexicographic n <= 3, m <= 6; additive n <= 3, m <= 6, values <= 5;
// two identical agents m <= 5, values <= 3. Instances for mms_po_guaranteed
// have a PO frozen allocation; ef1_acyclic instances have an EF1 frozen
// allocation with an acyclic envy graph.
Instance sample_for_solver(std::string_view solver, Rng& rng);

// Solver status and oracle status agree, and every solver witness passes the
// oracle's independent property check. The exact solvers must never be
// not_applicable on their own sampled class.
struct CaseResult {
  bool agree = true;
  SolveOutcome solver;
  SolveOutcome oracle;
  std::string detail;  // why the case disagrees
};

CaseResult compare_with_oracle(std::string_view solver, const Instance& inst,
                               std::uint64_t budget = kDefaultBudget);

struct VerifyReport {
  std::string solver;
  int cases = 0;
  int agreed = 0;
  int witnesses = 0;
  int none_exists = 0;
  std::vector<std::string> mismatches;  // "case <k>: <detail> <instance json>"

  bool ok() const { return mismatches.empty(); }
};

VerifyReport verify_solver(std::string_view solver, int cases, std::uint64_t seed,
                           std::uint64_t budget = kDefaultBudget);

}  // namespace fairc
