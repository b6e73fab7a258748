#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revc/circuit.hpp"

namespace revc {

struct WireFact {
  enum Kind : std::uint8_t { Unknown, ConstFalse, ConstTrue, CopyOf } kind = Unknown;
  WireId source = 0;  // CopyOf

  static WireFact unknown() { return {}; }
  static WireFact constant(bool b) { return {b ? ConstTrue : ConstFalse, 0}; }
  static WireFact copy_of(WireId w) { return {CopyOf, w}; }

  friend bool operator==(const WireFact&, const WireFact&) = default;
};

std::string to_string(const WireFact& f);

// facts[k][w]: what is known about wire w just before chronological gate k;
// facts[gate_count] describes the final state. Non-input wires start false.
using WireFacts = std::vector<std::vector<WireFact>>;
WireFacts analyze(const Circuit& c);

// For each wire, the chronological positions of the gates that use it.
class UsageIndex {
 public:
  explicit UsageIndex(const Circuit& c);

  bool used_after(WireId w, std::size_t pos) const;  // by a gate strictly after pos
  bool controlled_after(WireId w, std::size_t pos) const;
  bool targeted_between(WireId w, std::size_t from, std::size_t to) const;  // exclusive
  bool is_output(WireId w) const { return w < output_.size() && output_[w]; }

 private:
  const Circuit& c_;
  std::vector<std::vector<std::size_t>> uses_;
  std::vector<bool> output_;
};

Circuit remove_constant_gates(const Circuit& c);
Circuit remove_dead_gates(const Circuit& c);
Circuit eliminate_copies(const Circuit& c);
Circuit fuse_xor(const Circuit& c);
Circuit shuffle_right(const Circuit& c);

// Wires that appear nowhere dropped, the rest renumbered 0..k-1 in their
// original order.
Circuit compact_wires(const Circuit& c);

enum class Pass { Constant, Dead, Copy, Xor, Shuffle };

std::string to_string(Pass p);
std::optional<Pass> parse_pass(std::string_view name);
// Comma-separated names; throws std::invalid_argument on an unknown one.
std::vector<Pass> parse_passes(std::string_view list);
const std::vector<Pass>& default_passes();

Circuit apply_pass(Pass p, const Circuit& c);

struct OptimizeResult {
  Circuit circuit;
  unsigned iterations = 0;
  bool converged = true;  // false when the iteration bound stopped the loop
};

inline constexpr unsigned kMaxOptimizeIterations = 100;

OptimizeResult optimize_with(const Circuit& c, const std::vector<Pass>& passes,
                             unsigned max_iterations = kMaxOptimizeIterations);
Circuit optimize(const Circuit& c);

struct EquivalenceReport {
  std::size_t checked = 0;
  bool exhaustive = true;
  std::optional<std::vector<bool>> counterexample;
  bool ok() const { return !counterexample; }
};

// Same number of inputs and outputs, and the same outputs on every checked
// input vector.
EquivalenceReport check_equivalent(const Circuit& a, const Circuit& b, unsigned max_bits = 10);

}  // namespace revc
