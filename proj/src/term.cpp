#include "revc/term.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace revc {
namespace {

// out := out ∪ (in \ {bound})
void merge_into(std::vector<Name>& out, const std::vector<Name>& in, Name bound = {}) {
  if (in.empty()) return;
  std::vector<Name> merged;
  merged.reserve(out.size() + in.size());
  auto keep = [&](Name n) { return bound.empty() || n != bound; };
  std::size_t i = 0, j = 0;
  while (i < out.size() || j < in.size()) {
    if (j == in.size() || (i < out.size() && out[i] < in[j])) {
      merged.push_back(out[i++]);
    } else if (i == out.size() || in[j] < out[i]) {
      if (keep(in[j])) merged.push_back(in[j]);
      ++j;
    } else {
      merged.push_back(out[i++]);
      ++j;
    }
  }
  out = std::move(merged);
}

bool is_constant(Tag t) {
  switch (t) {
    case Tag::Skip:
    case Tag::And:
    case Tag::Xor:
    case Tag::Not:
    case Tag::Split:
    case Tag::Lam:
      return true;
    default:
      return false;
  }
}

}  // namespace

Term::Term(Tag tag_, Name name_, Name name2_, TypePtr annot_, TypePtr annot2_,
           TypePtr ascription_, TermPtr a_, TermPtr b_, TermPtr c_, WireId wire_,
           SourceLoc loc_)
    : tag(tag_),
      name(name_),
      name2(name2_),
      annot(std::move(annot_)),
      annot2(std::move(annot2_)),
      ascription(std::move(ascription_)),
      a(std::move(a_)),
      b(std::move(b_)),
      c(std::move(c_)),
      wire(wire_),
      loc(loc_) {
  for (const TermPtr* k : {&a, &b, &c}) {
    if (*k) {
      size_ += (*k)->size_;
      has_wire_refs_ = has_wire_refs_ || (*k)->has_wire_refs_;
      has_err_ = has_err_ || (*k)->has_err_;
    }
  }
  switch (tag) {
    case Tag::Var:
      free_.push_back(name);
      break;
    case Tag::Lam:
      merge_into(free_, a->free_, name);
      break;
    case Tag::Match:
      free_ = a->free_;
      merge_into(free_, b->free_, name);
      merge_into(free_, c->free_, name2);
      break;
    default:
      for (const TermPtr* k : {&a, &b, &c})
        if (*k) merge_into(free_, (*k)->free_);
      break;
  }
  if (tag == Tag::WireRef) has_wire_refs_ = true;
  if (tag == Tag::Err) has_err_ = true;

  if (is_constant(tag)) {
    eval_value_ = machine_value_ = true;
  } else if (tag == Tag::TT || tag == Tag::FF) {
    eval_value_ = true;
  } else if (tag == Tag::WireRef) {
    machine_value_ = true;
  } else if (tag == Tag::Pair) {
    eval_value_ = a->eval_value_ && b->eval_value_;
    machine_value_ = a->machine_value_ && b->machine_value_;
  } else if (tag == Tag::Inj1 || tag == Tag::Inj2) {
    eval_value_ = a->eval_value_;
    machine_value_ = a->machine_value_;
  }
}

bool Term::has_free(Name x) const {
  return std::binary_search(free_.begin(), free_.end(), x);
}

namespace {

TermPtr node(Tag tag, SourceLoc loc, TermPtr a = nullptr, TermPtr b = nullptr,
             TermPtr c = nullptr) {
  return std::make_shared<Term>(tag, Name{}, Name{}, nullptr, nullptr, nullptr, std::move(a),
                                std::move(b), std::move(c), 0, loc);
}

TermPtr constant(Tag tag, SourceLoc loc) {
  if (loc.known()) return node(tag, loc);
  // Location-free constants are shared.
  static const TermPtr cache[] = {
      node(Tag::Skip, {}), node(Tag::TT, {}),    node(Tag::FF, {}),    node(Tag::And, {}),
      node(Tag::Xor, {}),  node(Tag::Not, {}),   node(Tag::Split, {}), node(Tag::Err, {}),
  };
  switch (tag) {
    case Tag::Skip: return cache[0];
    case Tag::TT: return cache[1];
    case Tag::FF: return cache[2];
    case Tag::And: return cache[3];
    case Tag::Xor: return cache[4];
    case Tag::Not: return cache[5];
    case Tag::Split: return cache[6];
    case Tag::Err: return cache[7];
    default: throw std::logic_error("not a constant");
  }
}

}  // namespace

TermPtr var(Name x, SourceLoc loc) {
  return std::make_shared<Term>(Tag::Var, x, Name{}, nullptr, nullptr, nullptr, nullptr,
                                nullptr, nullptr, 0, loc);
}
TermPtr var(std::string_view x) { return var(Name(x)); }

TermPtr lam(Name x, TypePtr annot, TermPtr body, SourceLoc loc) {
  return std::make_shared<Term>(Tag::Lam, x, Name{}, std::move(annot), nullptr, nullptr,
                                std::move(body), nullptr, nullptr, 0, loc);
}
TermPtr lam(Name x, TermPtr body) { return lam(x, nullptr, std::move(body)); }

TermPtr app(TermPtr f, TermPtr arg, SourceLoc loc) {
  return node(Tag::App, loc, std::move(f), std::move(arg));
}
TermPtr pair(TermPtr a, TermPtr b, SourceLoc loc) {
  return node(Tag::Pair, loc, std::move(a), std::move(b));
}
TermPtr proj1(TermPtr t, SourceLoc loc) { return node(Tag::Proj1, loc, std::move(t)); }
TermPtr proj2(TermPtr t, SourceLoc loc) { return node(Tag::Proj2, loc, std::move(t)); }
TermPtr skip(SourceLoc loc) { return constant(Tag::Skip, loc); }
TermPtr let_unit(TermPtr unit, TermPtr body, SourceLoc loc) {
  return node(Tag::LetUnit, loc, std::move(unit), std::move(body));
}
TermPtr tt(SourceLoc loc) { return constant(Tag::TT, loc); }
TermPtr ff(SourceLoc loc) { return constant(Tag::FF, loc); }
TermPtr bit_literal(bool b) { return b ? tt() : ff(); }
TermPtr ite(TermPtr cond, TermPtr then_t, TermPtr else_t, SourceLoc loc) {
  return node(Tag::If, loc, std::move(cond), std::move(then_t), std::move(else_t));
}
TermPtr and_prim(SourceLoc loc) { return constant(Tag::And, loc); }
TermPtr xor_prim(SourceLoc loc) { return constant(Tag::Xor, loc); }
TermPtr not_prim(SourceLoc loc) { return constant(Tag::Not, loc); }
TermPtr inj1(TermPtr t, SourceLoc loc) { return node(Tag::Inj1, loc, std::move(t)); }
TermPtr inj2(TermPtr t, SourceLoc loc) { return node(Tag::Inj2, loc, std::move(t)); }

TermPtr match(TermPtr scrutinee, Name x, TypePtr x_type, TermPtr left, Name y, TypePtr y_type,
              TermPtr right, SourceLoc loc) {
  return std::make_shared<Term>(Tag::Match, x, y, std::move(x_type), std::move(y_type), nullptr,
                                std::move(scrutinee), std::move(left), std::move(right), 0, loc);
}
TermPtr match(TermPtr scrutinee, Name x, TermPtr left, Name y, TermPtr right) {
  return match(std::move(scrutinee), x, nullptr, std::move(left), y, nullptr, std::move(right));
}

TermPtr split_prim(SourceLoc loc) { return constant(Tag::Split, loc); }
TermPtr fix(TermPtr t, SourceLoc loc) { return node(Tag::Fix, loc, std::move(t)); }
TermPtr err_term(SourceLoc loc) { return constant(Tag::Err, loc); }

TermPtr wire_ref(WireId w) {
  return std::make_shared<Term>(Tag::WireRef, Name{}, Name{}, nullptr, nullptr, nullptr, nullptr,
                                nullptr, nullptr, w, SourceLoc{});
}

TermPtr nil() {
  static const TermPtr n = inj1(skip());
  return n;
}
TermPtr cons(TermPtr head, TermPtr tail) { return inj2(pair(std::move(head), std::move(tail))); }

TermPtr make_list(const std::vector<TermPtr>& items) {
  TermPtr out = nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}

TermPtr and_of(TermPtr x, TermPtr y) { return app(and_prim(), pair(std::move(x), std::move(y))); }
TermPtr xor_of(TermPtr x, TermPtr y) { return app(xor_prim(), pair(std::move(x), std::move(y))); }
TermPtr let_in(Name x, TermPtr bound, TermPtr body) {
  return app(lam(x, std::move(body)), std::move(bound));
}

TermPtr with_children(const TermPtr& t, TermPtr a, TermPtr b, TermPtr c) {
  if (a == t->a && b == t->b && c == t->c) return t;
  return std::make_shared<Term>(t->tag, t->name, t->name2, t->annot, t->annot2, t->ascription,
                                std::move(a), std::move(b), std::move(c), t->wire, t->loc);
}

TermPtr with_ascription(const TermPtr& t, TypePtr ascription) {
  return std::make_shared<Term>(t->tag, t->name, t->name2, t->annot, t->annot2,
                                std::move(ascription), t->a, t->b, t->c, t->wire, t->loc);
}

namespace {

TermPtr rename_binder(const TermPtr& body, Name from, Name to) {
  return subst(body, from, var(to));
}

TermPtr with_binders(const TermPtr& t, Name n1, Name n2, TermPtr a, TermPtr b, TermPtr c) {
  return std::make_shared<Term>(t->tag, n1, n2, t->annot, t->annot2, t->ascription, std::move(a),
                                std::move(b), std::move(c), t->wire, t->loc);
}

}  // namespace

TermPtr subst(const TermPtr& t, Name x, const TermPtr& n) {
  if (!t->has_free(x)) return t;
  switch (t->tag) {
    case Tag::Var:
      return t->ascription ? with_ascription(n, t->ascription) : n;
    case Tag::Lam: {
      Name y = t->name;
      TermPtr body = t->a;
      if (n->has_free(y)) {
        Name fresh = Name::fresh(y.str());
        body = rename_binder(body, y, fresh);
        y = fresh;
      }
      return with_binders(t, y, Name{}, subst(body, x, n), nullptr, nullptr);
    }
    case Tag::Match: {
      Name y1 = t->name, y2 = t->name2;
      TermPtr left = t->b, right = t->c;
      if (y1 != x) {
        if (n->has_free(y1)) {
          Name fresh = Name::fresh(y1.str());
          left = rename_binder(left, y1, fresh);
          y1 = fresh;
        }
        left = subst(left, x, n);
      }
      if (y2 != x) {
        if (n->has_free(y2)) {
          Name fresh = Name::fresh(y2.str());
          right = rename_binder(right, y2, fresh);
          y2 = fresh;
        }
        right = subst(right, x, n);
      }
      return with_binders(t, y1, y2, subst(t->a, x, n), left, right);
    }
    default:
      return with_children(t, t->a ? subst(t->a, x, n) : nullptr,
                           t->b ? subst(t->b, x, n) : nullptr,
                           t->c ? subst(t->c, x, n) : nullptr);
  }
}

namespace {

using Env = std::vector<std::pair<Name, Name>>;

bool bound_equal(const Env& env, Name x, Name y) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == x || it->second == y) return it->first == x && it->second == y;
  }
  return x == y;
}

bool alpha(const TermPtr& p, const TermPtr& q, Env& env, bool types) {
  if (p->tag != q->tag) return false;
  if (types && !same_type(p->ascription, q->ascription)) return false;
  switch (p->tag) {
    case Tag::Var:
      return bound_equal(env, p->name, q->name);
    case Tag::WireRef:
      return p->wire == q->wire;
    case Tag::Lam: {
      if (types && !same_type(p->annot, q->annot)) return false;
      env.emplace_back(p->name, q->name);
      bool ok = alpha(p->a, q->a, env, types);
      env.pop_back();
      return ok;
    }
    case Tag::Match: {
      if (types && (!same_type(p->annot, q->annot) || !same_type(p->annot2, q->annot2)))
        return false;
      if (!alpha(p->a, q->a, env, types)) return false;
      env.emplace_back(p->name, q->name);
      bool ok = alpha(p->b, q->b, env, types);
      env.pop_back();
      if (!ok) return false;
      env.emplace_back(p->name2, q->name2);
      ok = alpha(p->c, q->c, env, types);
      env.pop_back();
      return ok;
    }
    default:
      for (auto [x, y] : {std::pair{&p->a, &q->a}, {&p->b, &q->b}, {&p->c, &q->c}}) {
        if (bool(*x) != bool(*y)) return false;
        if (*x && !alpha(*x, *y, env, types)) return false;
      }
      return true;
  }
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  Env env;
  return alpha(a, b, env, true);
}

bool alpha_equal_untyped(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  Env env;
  return alpha(a, b, env, false);
}

std::optional<std::vector<TermPtr>> as_list(const TermPtr& t) {
  std::vector<TermPtr> items;
  const Term* cur = t.get();
  while (true) {
    if (cur->ascription) return std::nullopt;
    if (cur->tag == Tag::Inj1 && cur->a->tag == Tag::Skip && !cur->a->ascription) return items;
    if (cur->tag != Tag::Inj2 || cur->a->tag != Tag::Pair || cur->a->ascription)
      return std::nullopt;
    items.push_back(cur->a->a);
    cur = cur->a->b.get();
  }
}

std::vector<TermPtr> value_leaves(const TermPtr& t) {
  std::vector<TermPtr> out;
  std::vector<const TermPtr*> stack{&t};
  while (!stack.empty()) {
    const TermPtr& cur = *stack.back();
    stack.pop_back();
    switch (cur->tag) {
      case Tag::Pair:
        stack.push_back(&cur->b);
        stack.push_back(&cur->a);
        break;
      case Tag::Inj1:
      case Tag::Inj2:
        stack.push_back(&cur->a);
        break;
      case Tag::Skip:
        break;
      default:
        out.push_back(cur);
        break;
    }
  }
  return out;
}

}  // namespace revc
