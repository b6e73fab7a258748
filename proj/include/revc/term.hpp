#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "revc/name.hpp"
#include "revc/type.hpp"

namespace revc {

using WireId = std::uint32_t;

enum class Tag : std::uint8_t {
  Var,
  Lam,
  App,
  Pair,
  Proj1,
  Proj2,
  Skip,
  LetUnit,
  TT,
  FF,
  If,
  And,
  Xor,
  Not,
  Inj1,
  Inj2,
  Match,
  Split,
  Fix,
  Err,
  WireRef,  // a machine-linked wire variable p_i; never produced by the parser
};

struct SourceLoc {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable AST node. Children by position:
//   Lam: a = body                 App: a = function, b = argument
//   Pair: a, b                    Proj1/Proj2/Inj1/Inj2/Fix: a
//   LetUnit: a = unit, b = body   If: a = condition, b = then, c = else
//   Match: a = scrutinee, b = body binding `name`, c = body binding `name2`
class Term {
 public:
  Tag tag;
  Name name;           // Var, Lam parameter, Match left binder
  Name name2;          // Match right binder
  TypePtr annot;       // Lam parameter type, Match left binder type
  TypePtr annot2;      // Match right binder type
  TypePtr ascription;  // `(M : T)`
  TermPtr a, b, c;
  WireId wire = 0;
  SourceLoc loc;

  Term(Tag tag, Name name, Name name2, TypePtr annot, TypePtr annot2, TypePtr ascription,
       TermPtr a, TermPtr b, TermPtr c, WireId wire, SourceLoc loc);

  // Sorted by Name id.
  const std::vector<Name>& free_vars() const { return free_; }
  bool has_free(Name x) const;
  bool closed() const { return free_.empty(); }

  // Def. of values for plain evaluation: lambdas, constants, primitives,
  // and pairs/injections of values.
  bool is_value() const { return eval_value_; }
  // Machine values: as above, except tt/ff are redexes and wire refs are values.
  bool is_machine_value() const { return machine_value_; }

  bool has_wire_refs() const { return has_wire_refs_; }
  bool has_err() const { return has_err_; }
  std::size_t size() const { return size_; }

 private:
  std::vector<Name> free_;
  std::size_t size_ = 1;
  bool eval_value_ = false;
  bool machine_value_ = false;
  bool has_wire_refs_ = false;
  bool has_err_ = false;
};

// Constructors.
TermPtr var(Name x, SourceLoc loc = {});
TermPtr var(std::string_view x);
TermPtr lam(Name x, TypePtr annot, TermPtr body, SourceLoc loc = {});
TermPtr lam(Name x, TermPtr body);
TermPtr app(TermPtr f, TermPtr arg, SourceLoc loc = {});
TermPtr pair(TermPtr a, TermPtr b, SourceLoc loc = {});
TermPtr proj1(TermPtr t, SourceLoc loc = {});
TermPtr proj2(TermPtr t, SourceLoc loc = {});
TermPtr skip(SourceLoc loc = {});
TermPtr let_unit(TermPtr unit, TermPtr body, SourceLoc loc = {});
TermPtr tt(SourceLoc loc = {});
TermPtr ff(SourceLoc loc = {});
TermPtr bit_literal(bool b);
TermPtr ite(TermPtr cond, TermPtr then_t, TermPtr else_t, SourceLoc loc = {});
TermPtr and_prim(SourceLoc loc = {});
TermPtr xor_prim(SourceLoc loc = {});
TermPtr not_prim(SourceLoc loc = {});
TermPtr inj1(TermPtr t, SourceLoc loc = {});
TermPtr inj2(TermPtr t, SourceLoc loc = {});
TermPtr match(TermPtr scrutinee, Name x, TypePtr x_type, TermPtr left, Name y, TypePtr y_type,
              TermPtr right, SourceLoc loc = {});
TermPtr match(TermPtr scrutinee, Name x, TermPtr left, Name y, TermPtr right);
TermPtr split_prim(SourceLoc loc = {});
TermPtr fix(TermPtr t, SourceLoc loc = {});
TermPtr err_term(SourceLoc loc = {});
TermPtr wire_ref(WireId w);

// Sugar that has no node of its own.
TermPtr nil();
TermPtr cons(TermPtr head, TermPtr tail);
TermPtr make_list(const std::vector<TermPtr>& items);
TermPtr and_of(TermPtr x, TermPtr y);  // App(And, <x, y>)
TermPtr xor_of(TermPtr x, TermPtr y);
TermPtr let_in(Name x, TermPtr bound, TermPtr body);  // (\x. body) bound

// Same node with different children / ascription.
TermPtr with_children(const TermPtr& t, TermPtr a, TermPtr b, TermPtr c);
TermPtr with_ascription(const TermPtr& t, TypePtr ascription);

// Capture-avoiding substitution t[n/x].
TermPtr subst(const TermPtr& t, Name x, const TermPtr& n);

// Alpha-equivalence, including type annotations and ascriptions.
bool alpha_equal(const TermPtr& a, const TermPtr& b);
// Same, ignoring annotations and ascriptions.
bool alpha_equal_untyped(const TermPtr& a, const TermPtr& b);

// The elements of a proper list literal (nil / cons chain), if `t` is one.
std::optional<std::vector<TermPtr>> as_list(const TermPtr& t);

// Wire refs / bits at the leaves of a first-order value, left to right.
std::vector<TermPtr> value_leaves(const TermPtr& t);

}  // namespace revc
