#include "revc/type.hpp"

namespace revc {

TypePtr bit_type() {
  static const TypePtr t = std::make_shared<TypeExpr>(TypeKind::Bit, nullptr, nullptr);
  return t;
}

TypePtr unit_type() {
  static const TypePtr t = std::make_shared<TypeExpr>(TypeKind::Unit, nullptr, nullptr);
  return t;
}

TypePtr sum_type(TypePtr a, TypePtr b) {
  return std::make_shared<TypeExpr>(TypeKind::Sum, std::move(a), std::move(b));
}

TypePtr prod_type(TypePtr a, TypePtr b) {
  return std::make_shared<TypeExpr>(TypeKind::Prod, std::move(a), std::move(b));
}

TypePtr arrow_type(TypePtr a, TypePtr b) {
  return std::make_shared<TypeExpr>(TypeKind::Arrow, std::move(a), std::move(b));
}

TypePtr list_type(TypePtr a) {
  return std::make_shared<TypeExpr>(TypeKind::List, std::move(a), nullptr);
}

bool operator==(const TypeExpr& a, const TypeExpr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TypeKind::Bit:
    case TypeKind::Unit:
      return true;
    case TypeKind::List:
      return *a.left == *b.left;
    default:
      return *a.left == *b.left && *a.right == *b.right;
  }
}

bool same_type(const TypePtr& a, const TypePtr& b) {
  if (!a || !b) return a == b;
  return *a == *b;
}

TypePtr unfold_list(const TypePtr& list) {
  return sum_type(unit_type(), prod_type(list->elem(), list));
}

bool types_equivalent(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind == TypeKind::List && b->kind == TypeKind::Sum)
    return types_equivalent(unfold_list(a), b);
  if (a->kind == TypeKind::Sum && b->kind == TypeKind::List)
    return types_equivalent(a, unfold_list(b));
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Bit:
    case TypeKind::Unit:
      return true;
    case TypeKind::List:
      return types_equivalent(a->left, b->left);
    default:
      return types_equivalent(a->left, b->left) && types_equivalent(a->right, b->right);
  }
}

bool first_order(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Bit:
      return true;
    case TypeKind::Prod:
      return first_order(t->left) && first_order(t->right);
    case TypeKind::List:
      return first_order(t->elem());
    default:
      return false;
  }
}

namespace {

// 0: arrow, 1: sum, 2: product, 3: atom
int level(TypeKind k) {
  switch (k) {
    case TypeKind::Arrow: return 0;
    case TypeKind::Sum: return 1;
    case TypeKind::Prod: return 2;
    default: return 3;
  }
}

std::string print(const TypePtr& t, int context) {
  std::string out;
  switch (t->kind) {
    case TypeKind::Bit: return "bit";
    case TypeKind::Unit: return "unit";
    case TypeKind::List: return "[" + print(t->elem(), 0) + "]";
    case TypeKind::Arrow:
      out = print(t->left, 1) + " -> " + print(t->right, 0);
      break;
    case TypeKind::Sum:
      out = print(t->left, 2) + " + " + print(t->right, 1);
      break;
    case TypeKind::Prod:
      out = print(t->left, 3) + " * " + print(t->right, 2);
      break;
  }
  return level(t->kind) < context ? "(" + out + ")" : out;
}

}  // namespace

std::string to_string(const TypePtr& t) {
  if (!t) return "<none>";
  return print(t, 0);
}

}  // namespace revc
