#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revc/circuit.hpp"
#include "revc/eval.hpp"
#include "revc/pipeline.hpp"
#include "revc/term.hpp"

namespace revc {

// Injective map from the wire variables of the machine term to circuit wires.
class LinkingFunction {
 public:
  void link(WireId variable, WireId wire);
  std::optional<WireId> lookup(WireId variable) const;
  std::size_t size() const { return map_.size(); }
  std::vector<WireId> domain() const;
  std::vector<WireId> range() const;
  bool injective() const;

  friend bool operator==(const LinkingFunction&, const LinkingFunction&) = default;

 private:
  std::map<WireId, WireId> map_;
};

struct MachineState {
  TermPtr term;
  std::vector<WireId> inputs;
  RawCircuit circuit;
  LinkingFunction linking;
  WireId next_fresh = 0;
};

// Inputs 0..n-1, each linked to the wire variable of the same number.
MachineState empty_machine(const TermPtr& m, std::uint32_t n);

struct MachineOutcome {
  enum Status { Stepped, Finished, ErrHalt, Stuck } status;
  StepKind kind{};     // when Stepped
  std::string reason;  // when ErrHalt or Stuck
};

// One call-by-value machine step, in place.
MachineOutcome advance(MachineState& s);

// One step on a copy.
std::pair<MachineOutcome, MachineState> step_cbv(const MachineState& s);

// Wire variables combined by pairs and list literals.
bool is_first_order_extension(const TermPtr& t);
bool same_shape(const TermPtr& v, const TermPtr& w);

struct RunResult {
  enum Status { Finished, ErrHalt, OutOfFuel, Stuck } status;
  Circuit circuit;  // when Finished
  MachineState state;
  std::uint64_t steps = 0;
  std::string reason;
};

std::string to_string(RunResult::Status status);

// Called after every step with the state before, the outcome, and the state
// after. `emitted` is the number of gates the step added.
using MachineObserver = std::function<void(const TermPtr& before, const MachineOutcome& outcome,
                                           const MachineState& after, std::size_t emitted)>;

// Steps to a first-order value and reads the circuit off the final state.
// Outputs are the value's wires, depth-first left to right; a wire that
// occurs a second time is copied onto a fresh wire.
RunResult run(MachineState s, std::uint64_t fuel = kDefaultFuel,
              const MachineObserver& observer = nullptr);

// The output wires of a finished value, with repeated wires copied out.
Circuit read_circuit(const MachineState& s, const TermPtr& value);

// The machine term with every wire variable replaced by the bit the partial
// circuit computes on it for this input.
TermPtr residual_term(const MachineState& s, const std::vector<bool>& input);
// Same, with a valuation of all wires already computed.
TermPtr residual_term(const TermPtr& term, const Valuation& v);

// The entry applied to wire variables 0..n-1 and run.
RunResult synth(const CompiledProgram& prog, std::uint64_t fuel = kDefaultFuel,
                const MachineObserver& observer = nullptr);

struct VerifyReport {
  std::size_t checked = 0;
  std::size_t matched = 0;
  bool exhaustive = true;
  std::optional<std::vector<bool>> first_mismatch;
  std::string detail;
  bool ok() const { return checked == matched; }
};

// Compares the circuit against plain evaluation of the program.
VerifyReport verify(const CompiledProgram& prog, const Circuit& c, unsigned max_bits = 10,
                    std::uint64_t fuel = kDefaultFuel);

}  // namespace revc
