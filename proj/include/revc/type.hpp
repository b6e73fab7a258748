#pragma once

#include <memory>
#include <string>

namespace revc {

enum class TypeKind { Bit, Unit, Sum, Prod, Arrow, List };

class TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

// Immutable type tree. Sum/Prod/Arrow use both children; List uses `left`
// for the element type.
class TypeExpr {
 public:
  TypeKind kind;
  TypePtr left;
  TypePtr right;

  TypeExpr(TypeKind k, TypePtr l, TypePtr r)
      : kind(k), left(std::move(l)), right(std::move(r)) {}

  const TypePtr& dom() const { return left; }
  const TypePtr& cod() const { return right; }
  const TypePtr& elem() const { return left; }
};

TypePtr bit_type();
TypePtr unit_type();
TypePtr sum_type(TypePtr a, TypePtr b);
TypePtr prod_type(TypePtr a, TypePtr b);
TypePtr arrow_type(TypePtr a, TypePtr b);
TypePtr list_type(TypePtr a);

// Structural equality.
bool operator==(const TypeExpr& a, const TypeExpr& b);
bool same_type(const TypePtr& a, const TypePtr& b);

// Equality modulo the list coercion List A = Unit + (A * List A), applied at
// any depth.
bool types_equivalent(const TypePtr& a, const TypePtr& b);

// Unit + (A * List A)
TypePtr unfold_list(const TypePtr& list);

// Bit | first-order * first-order | List first-order
bool first_order(const TypePtr& t);

std::string to_string(const TypePtr& t);

}  // namespace revc
