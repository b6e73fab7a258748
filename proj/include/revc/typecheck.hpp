#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "revc/syntax.hpp"
#include "revc/term.hpp"
#include "revc/type.hpp"

namespace revc {

enum class TypeErrorKind {
  Mismatch,
  Unbound,
  NotFirstOrder,
  NotAFunction,
  CannotInfer,
  NotAProduct,
  NotASum,
  FixNotFunction,
};

std::string to_string(TypeErrorKind kind);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, SourceLoc loc, TypePtr expected, TypePtr actual,
            const std::string& detail);
  TypeErrorKind kind;
  SourceLoc loc;
  TypePtr expected;
  TypePtr actual;
};

// Variable typings; later bindings shadow earlier ones. WireRefs are always
// typed `bit` and need no entry.
class TypingContext {
 public:
  TypingContext() = default;
  void bind(Name x, TypePtr t) { entries_.emplace_back(x, std::move(t)); }
  void pop() { entries_.pop_back(); }
  TypePtr lookup(Name x) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<Name, TypePtr>> entries_;
};

void check(const TypingContext& ctx, const TermPtr& t, const TypePtr& expected);
TypePtr infer(const TypingContext& ctx, const TermPtr& t);

// Checks `t` against `expected` and returns an annotated copy in which every
// subterm can be inferred: lambdas and match binders carry their types, and
// injections, `err`, `split` and `if` are ascribed. An `if` at a function type
// whose final result is first-order is eta-expanded so that the `if` itself
// sits at first-order type.
TermPtr elaborate(const TypingContext& ctx, const TermPtr& t, const TypePtr& expected);

// Each definition checked against its signature, in a context holding the
// earlier definitions.
void check_program(const SourceProgram& prog);
SourceProgram elaborate_program(const SourceProgram& prog);

}  // namespace revc
