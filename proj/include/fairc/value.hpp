#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fairc {

// Bundle values are exact. Lexicographic instances realize the good of rank r
// as 2^(m-r), so values outgrow 64 bits once m > 63.
using Value = boost::multiprecision::cpp_int;

using AgentId = int;
using GoodId = int;

inline constexpr AgentId kNoAgent = -1;

// Malformed input: bad JSON, broken invariants, wrong valuation class.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive routine was asked to enumerate more states than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-negative exact ratio p/q with q > 0, used for alpha in alpha-MMS.
struct Ratio {
  Value num{1};
  Value den{1};

  static Ratio parse(const std::string& text);
  std::string str() const;
};

// base^exp saturating at limit + 1; used for budget pre-checks.
std::uint64_t bounded_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit);

}  // namespace fairc
