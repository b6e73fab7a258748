#pragma once

#include <string>
#include <vector>

#include "revc/circuit.hpp"
#include "revc/eval.hpp"
#include "revc/machine.hpp"
#include "revc/pipeline.hpp"
#include "revc/pretty.hpp"
#include "revc/typecheck.hpp"

namespace revc::testing {

struct TraceReport {
  std::size_t steps = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Replays a machine run and, at every step and for every input vector,
// relates the residual terms before and after: a tt/ff elimination leaves the
// residual unchanged, any other step is exactly one evaluator step.
inline TraceReport check_residual_trace(const CompiledProgram& prog,
                                        const std::vector<std::vector<bool>>& inputs,
                                        std::uint64_t fuel = kDefaultFuel) {
  TraceReport rep;
  auto n = static_cast<std::uint32_t>(prog.interface.arity);
  TermPtr t = apply_inputs(prog.entry, prog.interface,
                           [](std::size_t i) { return wire_ref(static_cast<WireId>(i)); });
  MachineState s = empty_machine(t, n);
  std::vector<TermPtr> before;
  for (const auto& u : inputs) before.push_back(residual_term(s, u));
  for (; rep.steps < fuel; ++rep.steps) {
    MachineOutcome out = advance(s);
    if (out.status != MachineOutcome::Stepped) {
      if (out.status == MachineOutcome::Stuck) rep.violations.push_back("machine stuck: " + out.reason);
      break;
    }
    bool eliminates = out.kind == StepKind::TT || out.kind == StepKind::FF;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      TermPtr after = residual_term(s, inputs[k]);
      ++rep.checks;
      bool ok;
      if (eliminates) {
        ok = alpha_equal_untyped(before[k], after);
      } else {
        StepOutcome e = step(before[k]);
        ok = e.status == StepOutcome::Stepped && alpha_equal_untyped(e.term, after);
      }
      if (!ok && rep.violations.size() < 5)
        rep.violations.push_back("step " + std::to_string(rep.steps) + " (" + to_string(out.kind) +
                                 ") on input " + bits_to_string(inputs[k]) + ": " + pretty(before[k]) +
                                 "  vs  " + pretty(after));
      before[k] = std::move(after);
    }
  }
  return rep;
}

struct SafetyReport {
  std::size_t steps = 0;
  bool finished = false;     // a value or a first-order machine result
  bool halted_on_err = false;
  bool out_of_fuel = false;
  std::string violation;     // empty when progress and preservation held
};

inline bool checks_at(const TermPtr& t, const TypePtr& type, std::string* why) {
  try {
    check({}, t, type);
    return true;
  } catch (const TypeError& e) {
    *why = e.what();
    return false;
  }
}

// Type preservation at every evaluator step and progress at the end.
inline SafetyReport eval_safety(const TermPtr& t, const TypePtr& type, std::uint64_t fuel) {
  SafetyReport rep;
  std::string why;
  if (!checks_at(t, type, &why)) {
    rep.violation = "initial term ill-typed: " + why;
    return rep;
  }
  TermPtr cur = t;
  for (; rep.steps < fuel; ++rep.steps) {
    StepOutcome out = step(cur);
    if (out.status == StepOutcome::AlreadyValue) {
      rep.finished = true;
      return rep;
    }
    if (out.status == StepOutcome::StuckOnErr) {
      rep.halted_on_err = true;
      return rep;
    }
    if (out.status == StepOutcome::Stuck) {
      rep.violation = "stuck: " + out.reason + " in " + pretty(cur);
      return rep;
    }
    cur = out.term;
    if (!checks_at(cur, type, &why)) {
      rep.violation = "step " + std::to_string(rep.steps) + " broke typing: " + why + " in " + pretty(cur);
      return rep;
    }
  }
  rep.out_of_fuel = true;
  return rep;
}

// Machine typing at every step, linking injective and stable inputs, and
// progress at the end.
inline SafetyReport machine_safety(const TermPtr& t, std::uint32_t n, const TypePtr& type,
                                   std::uint64_t fuel) {
  SafetyReport rep;
  MachineState s = empty_machine(t, n);
  std::vector<WireId> inputs = s.inputs;
  std::string why;
  for (; rep.steps < fuel; ++rep.steps) {
    WireId fresh_before = s.next_fresh;
    MachineOutcome out = advance(s);
    if (out.status == MachineOutcome::Finished) {
      rep.finished = true;
      return rep;
    }
    if (out.status == MachineOutcome::ErrHalt) {
      rep.halted_on_err = true;
      return rep;
    }
    if (out.status == MachineOutcome::Stuck) {
      rep.violation = "machine stuck: " + out.reason + " in " + pretty(s.term);
      return rep;
    }
    if (!checks_at(s.term, type, &why)) {
      rep.violation = "machine step broke typing: " + why + " in " + pretty(s.term);
      return rep;
    }
    if (s.inputs != inputs) {
      rep.violation = "machine inputs changed";
      return rep;
    }
    if (!s.linking.injective()) {
      rep.violation = "linking function is not injective";
      return rep;
    }
    // an if over leafless branches (nil, nil) allocates nothing
    bool allocates = out.kind == StepKind::TT || out.kind == StepKind::FF ||
                     out.kind == StepKind::Not || out.kind == StepKind::And ||
                     out.kind == StepKind::Xor;
    bool moved = s.next_fresh > fresh_before;
    if (out.kind != StepKind::If && moved != allocates) {
      rep.violation = "fresh counter moved on a " + to_string(out.kind) + " step";
      return rep;
    }
  }
  rep.out_of_fuel = true;
  return rep;
}

}  // namespace revc::testing
