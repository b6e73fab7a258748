#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revc/term.hpp"

namespace revc {

struct Control {
  WireId wire;
  bool positive;
  friend bool operator==(const Control&, const Control&) = default;
};

// Flips `target` when every control matches its polarity. No controls: NOT.
struct Gate {
  WireId target = 0;
  std::vector<Control> controls;

  Gate() = default;
  Gate(WireId t, std::vector<Control> cs = {}) : target(t), controls(std::move(cs)) {}

  bool uses(WireId w) const;               // as target or control
  bool controlled_by(WireId w) const;
  WireId max_wire() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

Gate not_gate(WireId target);
Gate cnot(WireId target, WireId control, bool positive = true);
Gate toffoli(WireId target, WireId c1, WireId c2);

std::string to_string(const Gate& g);

// Gate sequence. The abstract machine prepends each new gate, so the
// conceptual representation is newest-first; gates are kept here in
// chronological (execution) order and the newest-first view is derived.
class RawCircuit {
 public:
  RawCircuit() = default;
  explicit RawCircuit(std::vector<Gate> chronological) : gates_(std::move(chronological)) {}
  static RawCircuit from_newest_first(std::vector<Gate> gates);

  void emit(Gate g) { gates_.push_back(std::move(g)); }

  const std::vector<Gate>& chronological() const { return gates_; }
  std::vector<Gate>& chronological() { return gates_; }
  std::vector<Gate> newest_first() const;

  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  friend bool operator==(const RawCircuit&, const RawCircuit&) = default;

 private:
  std::vector<Gate> gates_;
};

struct Circuit {
  std::vector<WireId> inputs;
  RawCircuit gates;
  std::vector<WireId> outputs;
  std::uint32_t num_wires = 0;

  std::size_t gate_count() const { return gates.size(); }

  // Wires touched by some gate.
  std::vector<WireId> gate_wires() const;
  std::vector<WireId> auxiliary_wires() const;  // gate wires that are not inputs
  std::vector<WireId> garbage_wires() const;    // gate wires that are not outputs

  // Throws std::invalid_argument when an invariant fails.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

using Valuation = std::vector<std::uint8_t>;  // indexed by wire, 0 or 1

void apply_gate(const Gate& g, Valuation& v);
// Chronological order.
void apply_gates(const RawCircuit& gates, Valuation& v);

// Input bits on the input wires, every other wire false; returns the output bits.
std::vector<bool> execute(const Circuit& c, const std::vector<bool>& input);
// Same, returning every wire.
Valuation execute_full(const Circuit& c, const std::vector<bool>& input);

// A circuit reading `outputs` in order; a wire listed a second time is first
// copied onto a fresh wire so that outputs stay distinct.
Circuit assemble_circuit(std::vector<WireId> inputs, RawCircuit gates, std::uint32_t num_wires,
                         const std::vector<WireId>& outputs);

Circuit identity_circuit(std::uint32_t n);
Circuit invert(const Circuit& c);

// h after g. h's inputs are renamed to g's outputs and its other wires to
// fresh wires; `renaming`, when given, receives the map from h's wires.
Circuit compose(const Circuit& g, const Circuit& h, std::vector<WireId>* renaming = nullptr);

// (x, y) -> (x, y xor f(x)) with every auxiliary wire of `tf` restored to false.
Circuit bennett(const Circuit& tf);

// Duplicate controls collapsed; gates with contradictory controls dropped.
Circuit normalize(const Circuit& c);

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_json(const Circuit& c);
Circuit from_json(std::string_view text);

// One row per wire: `*` positive control, `o` negative control, `X` target,
// `|` a gate passing over the wire, `-` idle.
std::string render_ascii(const Circuit& c);

// Every vector of n bits when n <= max_bits, else 2^max_bits vectors drawn
// from a fixed-seed generator. Bit i of the vector feeds input i.
std::vector<std::vector<bool>> input_vectors(std::size_t n, unsigned max_bits);

std::string bits_to_string(const std::vector<bool>& bits);
std::vector<bool> bits_from_string(std::string_view text);  // 0/1 characters

}  // namespace revc
