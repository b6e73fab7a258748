#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "revc/term.hpp"

namespace revc {

// Which rule fired.
enum class StepKind : std::uint8_t {
  Beta,
  Proj,
  LetUnit,
  Split,
  Match,
  Fix,
  FF,
  TT,
  Not,
  And,
  Xor,
  If,
};

std::string to_string(StepKind kind);

struct StepOutcome {
  enum Status { Stepped, AlreadyValue, StuckOnErr, Stuck } status;
  TermPtr term;        // the successor, or the value itself
  StepKind kind{};     // valid when Stepped
  std::string reason;  // valid when Stuck
};

// One call-by-value step at the leftmost-innermost redex. Inside `if`, the
// condition is evaluated first, then both branches, and only then is a branch
// selected.
StepOutcome step(const TermPtr& t);

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;

struct EvalResult {
  enum Status { Value, ErrHalt, OutOfFuel, Stuck } status;
  TermPtr term;  // the value, or the last term reached
  std::uint64_t steps = 0;
  std::string reason;
};

using StepObserver = std::function<void(const TermPtr& before, const StepOutcome& outcome)>;

EvalResult eval(const TermPtr& t, std::uint64_t fuel = kDefaultFuel,
                const StepObserver& observer = nullptr);

std::string to_string(EvalResult::Status status);

}  // namespace revc
