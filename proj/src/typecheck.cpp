#include "revc/typecheck.hpp"

namespace revc {

std::string to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::Mismatch: return "mismatch";
    case TypeErrorKind::Unbound: return "unbound";
    case TypeErrorKind::NotFirstOrder: return "not-first-order";
    case TypeErrorKind::NotAFunction: return "not-a-function";
    case TypeErrorKind::CannotInfer: return "cannot-infer";
    case TypeErrorKind::NotAProduct: return "not-a-product";
    case TypeErrorKind::NotASum: return "not-a-sum";
    case TypeErrorKind::FixNotFunction: return "fix-not-function";
  }
  return "unknown";
}

namespace {

std::string describe(TypeErrorKind kind, SourceLoc loc, const TypePtr& expected,
                     const TypePtr& actual, const std::string& detail) {
  std::string msg;
  if (loc.known()) msg += std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
  msg += "type error (" + to_string(kind) + "): " + detail;
  if (expected) msg += "; expected " + to_string(expected);
  if (actual) msg += (expected ? ", got " : "; got ") + to_string(actual);
  return msg;
}

}  // namespace

TypeError::TypeError(TypeErrorKind k, SourceLoc l, TypePtr e, TypePtr a, const std::string& detail)
    : std::runtime_error(describe(k, l, e, a, detail)),
      kind(k),
      loc(l),
      expected(std::move(e)),
      actual(std::move(a)) {}

TypePtr TypingContext::lookup(Name x) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->first == x) return it->second;
  return nullptr;
}

namespace {

TypePtr bit_pair_to_bit() {
  static const TypePtr t = arrow_type(prod_type(bit_type(), bit_type()), bit_type());
  return t;
}

TypePtr bit_to_bit() {
  static const TypePtr t = arrow_type(bit_type(), bit_type());
  return t;
}

// A for a type equivalent to List A, else null.
TypePtr list_elem(const TypePtr& t) {
  if (t->kind == TypeKind::List) return t->elem();
  if (t->kind == TypeKind::Sum && t->left->kind == TypeKind::Unit &&
      t->right->kind == TypeKind::Prod) {
    const TypePtr& a = t->right->left;
    if (types_equivalent(t->right->right, list_type(a))) return a;
  }
  return nullptr;
}

TypePtr as_sum(const TypePtr& t) {
  if (t->kind == TypeKind::List) return unfold_list(t);
  if (t->kind == TypeKind::Sum) return t;
  return nullptr;
}

// Result type after peeling every arrow.
TypePtr final_codomain(TypePtr t) {
  while (t->kind == TypeKind::Arrow) t = t->cod();
  return t;
}

class Checker {
 public:
  Checker(const TypingContext& ctx, bool elaborating) : ctx_(ctx), elab_(elaborating) {}

  TermPtr check(const TermPtr& t, const TypePtr& expected) {
    if (t->ascription) {
      if (!types_equivalent(t->ascription, expected))
        fail(TypeErrorKind::Mismatch, t, expected, t->ascription, "ascription disagrees");
      return keep(t, check_core(t, t->ascription));
    }
    return check_core(t, expected);
  }

  std::pair<TermPtr, TypePtr> infer(const TermPtr& t) {
    if (t->ascription) return {keep(t, check_core(t, t->ascription)), t->ascription};
    return infer_core(t);
  }

 private:
  TypingContext ctx_;
  bool elab_;

  [[noreturn]] static void fail(TypeErrorKind kind, const TermPtr& t, const TypePtr& expected,
                                const TypePtr& actual, const std::string& detail) {
    throw TypeError(kind, t->loc, expected, actual, detail);
  }

  // Reattaches the original ascription to an elaborated node.
  TermPtr keep(const TermPtr& original, const TermPtr& built) const {
    if (!elab_ || !original->ascription || built->ascription == original->ascription) return built;
    return with_ascription(built, original->ascription);
  }

  TermPtr ascribe(const TermPtr& t, const TypePtr& type) const {
    return elab_ ? with_ascription(t, type) : t;
  }

  struct Bound {
    Checker& c;
    Bound(Checker& checker, Name x, TypePtr t) : c(checker) { c.ctx_.bind(x, std::move(t)); }
    ~Bound() { c.ctx_.pop(); }
  };

  static bool is_let_redex(const TermPtr& t) {
    return t->tag == Tag::App && t->a->tag == Tag::Lam && !t->a->annot && !t->a->ascription;
  }

  TermPtr check_core(const TermPtr& t, const TypePtr& expected) {
    switch (t->tag) {
      case Tag::Lam: {
        if (expected->kind != TypeKind::Arrow)
          fail(TypeErrorKind::Mismatch, t, expected, nullptr, "a function where none is expected");
        if (t->annot && !types_equivalent(t->annot, expected->dom()))
          fail(TypeErrorKind::Mismatch, t, expected->dom(), t->annot,
               "parameter '" + t->name.str() + "' annotated with the wrong type");
        TypePtr param = t->annot ? t->annot : expected->dom();
        TermPtr body;
        {
          Bound b(*this, t->name, param);
          body = check(t->a, expected->cod());
        }
        if (!elab_) return t;
        return lam(t->name, param, body, t->loc);
      }
      case Tag::Pair: {
        if (expected->kind != TypeKind::Prod)
          fail(TypeErrorKind::Mismatch, t, expected, nullptr, "a pair where none is expected");
        TermPtr a = check(t->a, expected->left);
        TermPtr b = check(t->b, expected->right);
        return elab_ ? with_children(t, a, b, nullptr) : t;
      }
      case Tag::Inj1:
      case Tag::Inj2: {
        TypePtr sum = as_sum(expected);
        if (!sum)
          fail(TypeErrorKind::Mismatch, t, expected, nullptr, "an injection where none is expected");
        TermPtr a = check(t->a, t->tag == Tag::Inj1 ? sum->left : sum->right);
        return elab_ ? ascribe(with_children(t, a, nullptr, nullptr), expected) : t;
      }
      case Tag::If: {
        if (!first_order(expected)) {
          if (elab_ && expected->kind == TypeKind::Arrow && first_order(final_codomain(expected)))
            return check_core(eta_expand_if(t, expected), expected);
          fail(TypeErrorKind::NotFirstOrder, t, nullptr, expected,
               "'if' branches must have a first-order type");
        }
        TermPtr c = check(t->a, bit_type());
        TermPtr a = check(t->b, expected);
        TermPtr b = check(t->c, expected);
        return elab_ ? ascribe(with_children(t, c, a, b), expected) : t;
      }
      case Tag::Err:
        return ascribe(t, expected);
      case Tag::Match: {
        auto [scrutinee, sum] = match_scrutinee(t);
        TypePtr lt = binder_type(t, t->annot, sum->left);
        TypePtr rt = binder_type(t, t->annot2, sum->right);
        TermPtr left, right;
        {
          Bound b(*this, t->name, lt);
          left = check(t->b, expected);
        }
        {
          Bound b(*this, t->name2, rt);
          right = check(t->c, expected);
        }
        if (!elab_) return t;
        return match(scrutinee, t->name, lt, left, t->name2, rt, right, t->loc);
      }
      case Tag::LetUnit: {
        TermPtr u = check(t->a, unit_type());
        TermPtr body = check(t->b, expected);
        return elab_ ? with_children(t, u, body, nullptr) : t;
      }
      case Tag::App: {
        if (!is_let_redex(t)) break;
        auto [bound, bt] = infer(t->b);
        const TermPtr& fn = t->a;
        TermPtr body;
        {
          Bound b(*this, fn->name, bt);
          body = check(fn->a, expected);
        }
        if (!elab_) return t;
        return app(lam(fn->name, bt, body, fn->loc), bound, t->loc);
      }
      case Tag::Fix: {
        if (expected->kind != TypeKind::Arrow)
          fail(TypeErrorKind::FixNotFunction, t, nullptr, expected,
               "fixpoints must define functions");
        TermPtr a = check(t->a, arrow_type(expected, expected));
        return elab_ ? with_children(t, a, nullptr, nullptr) : t;
      }
      case Tag::Split: {
        TypePtr elem = expected->kind == TypeKind::Arrow ? list_elem(expected->dom()) : nullptr;
        if (!elem || !types_equivalent(expected->cod(), unfold_list(list_type(elem))))
          fail(TypeErrorKind::Mismatch, t, expected, nullptr,
               "split has type [A] -> unit + (A * [A])");
        return ascribe(t, expected);
      }
      default:
        break;
    }
    auto [built, actual] = infer_core(t);
    if (!types_equivalent(actual, expected))
      fail(TypeErrorKind::Mismatch, t, expected, actual, "unexpected type");
    return built;
  }

  std::pair<TermPtr, TypePtr> infer_core(const TermPtr& t) {
    switch (t->tag) {
      case Tag::Var: {
        TypePtr ty = ctx_.lookup(t->name);
        if (!ty) fail(TypeErrorKind::Unbound, t, nullptr, nullptr, "unbound variable '" + t->name.str() + "'");
        return {t, ty};
      }
      case Tag::WireRef:
      case Tag::TT:
      case Tag::FF:
        return {t, bit_type()};
      case Tag::Skip:
        return {t, unit_type()};
      case Tag::And:
      case Tag::Xor:
        return {t, bit_pair_to_bit()};
      case Tag::Not:
        return {t, bit_to_bit()};
      case Tag::Lam: {
        if (!t->annot)
          fail(TypeErrorKind::CannotInfer, t, nullptr, nullptr,
               "cannot infer the type of unannotated parameter '" + t->name.str() + "'");
        std::pair<TermPtr, TypePtr> body;
        {
          Bound b(*this, t->name, t->annot);
          body = infer(t->a);
        }
        TermPtr built = elab_ ? lam(t->name, t->annot, body.first, t->loc) : t;
        return {built, arrow_type(t->annot, body.second)};
      }
      case Tag::App: {
        if (is_let_redex(t)) {
          auto [bound, bt] = infer(t->b);
          const TermPtr& fn = t->a;
          std::pair<TermPtr, TypePtr> body;
          {
            Bound b(*this, fn->name, bt);
            body = infer(fn->a);
          }
          TermPtr built = elab_ ? app(lam(fn->name, bt, body.first, fn->loc), bound, t->loc) : t;
          return {built, body.second};
        }
        if (t->a->tag == Tag::Split && !t->a->ascription) {
          auto [arg, at] = infer(t->b);
          TypePtr elem = list_elem(at);
          if (!elem) fail(TypeErrorKind::Mismatch, t->b, nullptr, at, "split expects a list");
          TypePtr result = unfold_list(list_type(elem));
          TermPtr built = elab_ ? app(with_ascription(t->a, arrow_type(at, result)), arg, t->loc) : t;
          return {built, result};
        }
        auto [fn, ft] = infer(t->a);
        if (ft->kind != TypeKind::Arrow)
          fail(TypeErrorKind::NotAFunction, t->a, nullptr, ft, "applying a non-function");
        TermPtr arg = check(t->b, ft->dom());
        return {elab_ ? with_children(t, fn, arg, nullptr) : t, ft->cod()};
      }
      case Tag::Pair: {
        auto [a, at] = infer(t->a);
        auto [b, bt] = infer(t->b);
        return {elab_ ? with_children(t, a, b, nullptr) : t, prod_type(at, bt)};
      }
      case Tag::Proj1:
      case Tag::Proj2: {
        auto [a, at] = infer(t->a);
        if (at->kind != TypeKind::Prod)
          fail(TypeErrorKind::NotAProduct, t->a, nullptr, at, "projection from a non-pair");
        return {elab_ ? with_children(t, a, nullptr, nullptr) : t,
                t->tag == Tag::Proj1 ? at->left : at->right};
      }
      case Tag::LetUnit: {
        TermPtr u = check(t->a, unit_type());
        auto [body, bt] = infer(t->b);
        return {elab_ ? with_children(t, u, body, nullptr) : t, bt};
      }
      case Tag::If: {
        TermPtr c = check(t->a, bit_type());
        TermPtr a, b;
        TypePtr ty;
        try {
          std::tie(a, ty) = infer(t->b);
        } catch (const TypeError& e) {
          if (e.kind != TypeErrorKind::CannotInfer) throw;
          std::tie(b, ty) = infer(t->c);
        }
        if (!first_order(ty)) return {check_core(t, ty), ty};
        if (!a) a = check(t->b, ty);
        if (!b) b = check(t->c, ty);
        return {elab_ ? ascribe(with_children(t, c, a, b), ty) : t, ty};
      }
      case Tag::Match: {
        auto [scrutinee, sum] = match_scrutinee(t);
        TypePtr lt = binder_type(t, t->annot, sum->left);
        TypePtr rt = binder_type(t, t->annot2, sum->right);
        TermPtr left, right;
        TypePtr ty;
        try {
          Bound b(*this, t->name, lt);
          std::tie(left, ty) = infer(t->b);
        } catch (const TypeError& e) {
          if (e.kind != TypeErrorKind::CannotInfer) throw;
          Bound b(*this, t->name2, rt);
          std::tie(right, ty) = infer(t->c);
        }
        if (!left) {
          Bound b(*this, t->name, lt);
          left = check(t->b, ty);
        }
        if (!right) {
          Bound b(*this, t->name2, rt);
          right = check(t->c, ty);
        }
        if (!elab_) return {t, ty};
        return {match(scrutinee, t->name, lt, left, t->name2, rt, right, t->loc), ty};
      }
      case Tag::Fix: {
        auto [a, at] = infer(t->a);
        if (at->kind != TypeKind::Arrow || !types_equivalent(at->dom(), at->cod()))
          fail(TypeErrorKind::Mismatch, t->a, nullptr, at, "Y expects a term of type A -> A");
        if (at->dom()->kind != TypeKind::Arrow)
          fail(TypeErrorKind::FixNotFunction, t, nullptr, at->dom(),
               "fixpoints must define functions");
        return {elab_ ? with_children(t, a, nullptr, nullptr) : t, at->dom()};
      }
      case Tag::Inj1:
      case Tag::Inj2:
        fail(TypeErrorKind::CannotInfer, t, nullptr, nullptr,
             "cannot infer the type of an injection; add an ascription");
      case Tag::Err:
        fail(TypeErrorKind::CannotInfer, t, nullptr, nullptr,
             "cannot infer the type of 'err'; add an ascription");
      case Tag::Split:
        fail(TypeErrorKind::CannotInfer, t, nullptr, nullptr,
             "cannot infer the type of a bare 'split'");
    }
    fail(TypeErrorKind::CannotInfer, t, nullptr, nullptr, "cannot infer");
  }

  std::pair<TermPtr, TypePtr> match_scrutinee(const TermPtr& t) {
    auto [scrutinee, st] = infer(t->a);
    TypePtr sum = as_sum(st);
    if (!sum) fail(TypeErrorKind::NotASum, t->a, nullptr, st, "match on a non-sum");
    return {scrutinee, sum};
  }

  TypePtr binder_type(const TermPtr& t, const TypePtr& annot, const TypePtr& actual) {
    if (annot && !types_equivalent(annot, actual))
      fail(TypeErrorKind::Mismatch, t, actual, annot, "match binder annotated with the wrong type");
    return annot ? annot : actual;
  }

  // if c then M else N  at  A1 -> ... -> Ak -> C  becomes
  // \x1 ... xk. if c then M x1 ... xk else N x1 ... xk
  static TermPtr eta_expand_if(const TermPtr& t, TypePtr type) {
    std::vector<std::pair<Name, TypePtr>> params;
    while (type->kind == TypeKind::Arrow) {
      params.emplace_back(Name::fresh("e"), type->dom());
      type = type->cod();
    }
    TermPtr then_t = t->b, else_t = t->c;
    for (const auto& [x, _] : params) {
      then_t = app(then_t, var(x), t->loc);
      else_t = app(else_t, var(x), t->loc);
    }
    TermPtr body = ite(t->a, then_t, else_t, t->loc);
    for (auto it = params.rbegin(); it != params.rend(); ++it)
      body = lam(it->first, it->second, body, t->loc);
    return body;
  }
};

}  // namespace

void check(const TypingContext& ctx, const TermPtr& t, const TypePtr& expected) {
  Checker(ctx, false).check(t, expected);
}

TypePtr infer(const TypingContext& ctx, const TermPtr& t) { return Checker(ctx, false).infer(t).second; }

TermPtr elaborate(const TypingContext& ctx, const TermPtr& t, const TypePtr& expected) {
  return Checker(ctx, true).check(t, expected);
}

void check_program(const SourceProgram& prog) {
  TypingContext ctx;
  for (const auto& d : prog.definitions) {
    check(ctx, d.body, d.type);
    ctx.bind(d.name, d.type);
  }
}

SourceProgram elaborate_program(const SourceProgram& prog) {
  SourceProgram out = prog;
  TypingContext ctx;
  for (auto& d : out.definitions) {
    d.body = elaborate(ctx, d.body, d.type);
    ctx.bind(d.name, d.type);
  }
  return out;
}

}  // namespace revc
