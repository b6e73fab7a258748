#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "revc/circuit.hpp"
#include "revc/eval.hpp"
#include "revc/pipeline.hpp"
#include "revc/syntax.hpp"
#include "revc/typecheck.hpp"

namespace revc {

class LiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// wire = [unit]   gate = wire * [wire * bit]   state = [gate] * wire
TypePtr wire_type();
TypePtr gate_type();
TypePtr state_type();
TypePtr circ_type(const TypePtr& a);  // state -> state * a

TypePtr lift_type(const TypePtr& t);

// Source of the circuit monad: mff, mtt, mnot, mand, mxor and the type
// aliases above.
const std::string& prelude_source();
const SourceProgram& prelude();
// Types of the prelude definitions, for checking lifted terms.
TypingContext prelude_context();

// return : A -> circ A
TermPtr make_return(const TypePtr& a);
// app : circ A -> (A -> circ B) -> circ B
TermPtr make_app(const TypePtr& a, const TypePtr& b);
// For a first-order source type A: wire -> circ(lift A) -> circ(lift A) -> circ(lift A).
// Runs both branches, then emits the two mux gates per leaf.
TermPtr make_mif(const TypePtr& a);

struct LiftedTerm {
  TermPtr term;     // of type circ(lift type)
  TypePtr type;     // source type
};

// `t` must be elaborated and typed under `ctx`; the result refers to the
// prelude definitions by name and to each free variable x at type lift(ctx(x)).
LiftedTerm lift_term(const TypingContext& ctx, const TermPtr& t);
// For a value V (lambda, fixpoint of a lambda, or other value), a term V'
// with lift V = return V'. Empty when `t` is not a value.
std::optional<LiftedTerm> lift_value(const TypingContext& ctx, const TermPtr& t);

// Prelude followed by one lifted definition per source definition. A
// definition whose body is a value keeps the name at type lift(T); any other
// is inlined into later definitions and emitted at type circ(lift T).
SourceProgram lift_program(const SourceProgram& elaborated);
// Concrete syntax for a lifted program, prelude text first.
std::string lifted_source(const SourceProgram& lifted);

// Prelude definitions substituted into a lifted term.
TermPtr close_over_prelude(const TermPtr& lifted);

TermPtr unary(std::size_t n);
std::optional<std::size_t> from_unary(const TermPtr& t);

struct LiftedRun {
  enum Status { Finished, ErrHalt, OutOfFuel, Stuck } status;
  Circuit circuit;  // when Finished
  EvalResult eval;
  std::string reason;
};

// The lifted entry applied to wires 0..n-1 and the state <nil, n>, evaluated,
// and the final state decoded into a circuit.
LiftedRun lifted_run(const CompiledProgram& prog, std::uint64_t fuel = kDefaultFuel);

}  // namespace revc
