#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "revc/eval.hpp"
#include "revc/syntax.hpp"
#include "revc/typecheck.hpp"

namespace revc {

// Raised when an entry point's type cannot be driven by bit inputs.
class InterfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A1 -> ... -> Ak -> R where every Ai is bit or a product of bits and R is
// first-order. The inputs are the leaves of the Ai, left to right.
struct EntryInterface {
  std::vector<TypePtr> params;
  TypePtr result;
  std::size_t arity = 0;
};

EntryInterface entry_interface(const TypePtr& type);

struct CompiledProgram {
  SourceProgram source;
  SourceProgram elaborated;
  TermPtr entry;  // closed and elaborated
  TypePtr entry_type;
  EntryInterface interface;
};

// Typechecks, elaborates and resolves the entry definition.
CompiledProgram compile(const SourceProgram& prog);
CompiledProgram compile_source(std::string_view text);

// The entry applied to one leaf term per input bit.
TermPtr apply_inputs(const TermPtr& entry, const EntryInterface& iface,
                     const std::function<TermPtr(std::size_t)>& leaf);

// A term of the given bit / product-of-bits type with `leaf(next++)` at the leaves.
TermPtr input_tree(const TypePtr& type, std::size_t& next,
                   const std::function<TermPtr(std::size_t)>& leaf);

struct BitsResult {
  EvalResult eval;
  std::vector<bool> bits;  // leaves of the value when it reached one
};

// The entry applied to literal bits and evaluated.
BitsResult eval_on_bits(const CompiledProgram& prog, const std::vector<bool>& input,
                        std::uint64_t fuel = kDefaultFuel);

// Bits at the leaves of a first-order value built from tt/ff; nullopt otherwise.
std::optional<std::vector<bool>> value_bits(const TermPtr& value);

}  // namespace revc
