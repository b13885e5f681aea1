#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fairc/instance.hpp"

namespace fairc {

enum class SolveStatus { witness, none_exists, not_applicable };

std::string_view to_string(SolveStatus s);

// Result of a completion solver. A witness is always a complete allocation
// extending the frozen allocation that has passed the matching checker;
// none_exists is only reported by exact procedures.
struct SolveOutcome {
  SolveStatus status = SolveStatus::not_applicable;
  std::optional<Allocation> witness;
  std::string note;  // names the algorithm, or why it did not apply

  static SolveOutcome found(Allocation a, std::string note) {
    return {SolveStatus::witness, std::move(a), std::move(note)};
  }
  static SolveOutcome none(std::string note) { return {SolveStatus::none_exists, std::nullopt, std::move(note)}; }
  static SolveOutcome skipped(std::string note) {
    return {SolveStatus::not_applicable, std::nullopt, std::move(note)};
  }
};

std::string outcome_to_json(const Instance& inst, const SolveOutcome& outcome);

}  // namespace fairc
