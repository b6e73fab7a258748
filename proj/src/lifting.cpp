#include "revc/lifting.hpp"

#include "revc/machine.hpp"
#include "revc/pretty.hpp"

namespace revc {

TypePtr wire_type() {
  static const TypePtr t = list_type(unit_type());
  return t;
}

TypePtr gate_type() {
  static const TypePtr t = prod_type(wire_type(), list_type(prod_type(wire_type(), bit_type())));
  return t;
}

TypePtr state_type() {
  static const TypePtr t = prod_type(list_type(gate_type()), wire_type());
  return t;
}

TypePtr circ_type(const TypePtr& a) { return arrow_type(state_type(), prod_type(state_type(), a)); }

TypePtr lift_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Bit: return wire_type();
    case TypeKind::Unit: return t;
    case TypeKind::Arrow: return arrow_type(lift_type(t->dom()), circ_type(lift_type(t->cod())));
    case TypeKind::Sum: return sum_type(lift_type(t->left), lift_type(t->right));
    case TypeKind::Prod: return prod_type(lift_type(t->left), lift_type(t->right));
    case TypeKind::List: return list_type(lift_type(t->elem()));
  }
  return t;
}

const std::string& prelude_source() {
  static const std::string text = R"(-- circuit monad: a computation threads the gate list (newest first) and
-- the next fresh wire
type wire = [unit]
type gate = wire * [wire * bit]
type state = [gate] * wire

def mff : state -> state * wire
def mff s = let <c, w> = s in <<c, skip :: w>, w>

def mtt : state -> state * wire
def mtt s = let <c, w> = s in <<<w, nil> :: c, skip :: w>, w>

def mnot : state -> state * (wire -> state -> state * wire)
def mnot s = <s, \(i : wire) (s' : state).
  let <c, w> = s' in <<<w, [<i, ff>]> :: c, skip :: w>, w>>

def mand : state -> state * (wire * wire -> state -> state * wire)
def mand s = <s, \(p : wire * wire) (s' : state).
  let <c, w> = s' in <<<w, [<pi1 p, tt>, <pi2 p, tt>]> :: c, skip :: w>, w>>

def mxor : state -> state * (wire * wire -> state -> state * wire)
def mxor s = <s, \(p : wire * wire) (s' : state).
  let <c, w> = s' in <<<w, [<pi1 p, tt>]> :: <w, [<pi2 p, tt>]> :: c, skip :: w>, w>>
)";
  return text;
}

const SourceProgram& prelude() {
  static const SourceProgram prog = [] {
    SourceProgram p = parse_program(prelude_source());
    return elaborate_program(p);
  }();
  return prog;
}

TypingContext prelude_context() {
  TypingContext ctx;
  for (const auto& d : prelude().definitions) ctx.bind(d.name, d.type);
  return ctx;
}

namespace {

TermPtr apps(TermPtr f, std::initializer_list<TermPtr> args) {
  for (const auto& a : args) f = app(f, a);
  return f;
}

}  // namespace

TermPtr make_return(const TypePtr& a) {
  Name x = Name::fresh("x"), s = Name::fresh("s");
  return lam(x, a, lam(s, state_type(), pair(var(s), var(x))));
}

TermPtr make_app(const TypePtr& a, const TypePtr& b) {
  Name m = Name::fresh("m"), f = Name::fresh("f"), s = Name::fresh("s"), p = Name::fresh("p");
  TermPtr body = app(lam(p, prod_type(state_type(), a),
                         apps(var(f), {proj2(var(p)), proj1(var(p))})),
                     app(var(m), var(s)));
  return lam(m, circ_type(a),
             lam(f, arrow_type(a, circ_type(b)), lam(s, state_type(), body)));
}

namespace {

TermPtr ret(const TypePtr& a, TermPtr v) { return app(make_return(a), std::move(v)); }

// app_{A,B} m (\x:A. k(x))
template <class K>
TermPtr then(const TypePtr& a, const TypePtr& b, TermPtr m, const char* base, K k) {
  Name x = Name::fresh(base);
  return apps(make_app(a, b), {std::move(m), lam(x, a, k(var(x)))});
}

TermPtr control(const TermPtr& w, bool positive) { return pair(w, bit_literal(positive)); }

// zip : wire -> LA -> LA -> circ LA, emitting the mux gates leaf by leaf.
TermPtr make_zip(const TypePtr& a) {
  TypePtr la = lift_type(a);
  Name c = Name::fresh("c"), v = Name::fresh("v"), w = Name::fresh("w");
  auto wrap = [&](TermPtr body) {
    return lam(c, wire_type(), lam(v, la, lam(w, la, std::move(body))));
  };
  switch (a->kind) {
    case TypeKind::Bit: {
      Name s = Name::fresh("s");
      TermPtr gates = proj1(var(s)), u = proj2(var(s));
      TypePtr controls = list_type(prod_type(wire_type(), bit_type()));
      TermPtr pos = pair(u, with_ascription(make_list({control(var(c), true), control(var(v), true)}), controls));
      TermPtr neg = pair(u, with_ascription(make_list({control(var(c), false), control(var(w), true)}), controls));
      TermPtr next = pair(with_ascription(cons(neg, cons(pos, gates)), list_type(gate_type())),
                          with_ascription(cons(skip(), u), wire_type()));
      return wrap(lam(s, state_type(), pair(next, u)));
    }
    case TypeKind::Prod: {
      TypePtr l1 = lift_type(a->left), l2 = lift_type(a->right);
      TermPtr body = then(l1, la, apps(make_zip(a->left), {var(c), proj1(var(v)), proj1(var(w))}), "a",
                          [&](TermPtr x) {
                            return then(l2, la,
                                        apps(make_zip(a->right), {var(c), proj2(var(v)), proj2(var(w))}),
                                        "b", [&](TermPtr y) { return ret(la, pair(x, y)); });
                          });
      return wrap(body);
    }
    case TypeKind::List: {
      TypePtr le = lift_type(a->elem());
      TypePtr zt = arrow_type(wire_type(), arrow_type(la, arrow_type(la, circ_type(la))));
      Name z = Name::fresh("zip"), p = Name::fresh("p"), q = Name::fresh("q");
      TypePtr split_t = arrow_type(la, unfold_list(la));
      auto split_of = [&](Name x) { return app(with_ascription(split_prim(), split_t), var(x)); };
      TermPtr fail = with_ascription(err_term(), circ_type(la));
      TermPtr both = then(le, la, apps(make_zip(a->elem()), {var(c), proj1(var(p)), proj1(var(q))}), "h",
                          [&](TermPtr h) {
                            return then(la, la, apps(var(z), {var(c), proj2(var(p)), proj2(var(q))}), "r",
                                        [&](TermPtr r) { return ret(la, with_ascription(cons(h, r), la)); });
                          });
      TermPtr empty = ret(la, with_ascription(nil(), la));
      TermPtr on_nil = match(split_of(w), Name::fresh("_"), empty, Name::fresh("_"), fail);
      TermPtr on_cons = match(split_of(w), Name::fresh("_"), fail, q, both);
      TermPtr body = match(split_of(v), Name::fresh("_"), on_nil, p, on_cons);
      return fix(lam(z, zt, wrap(body)));
    }
    default:
      throw LiftError("mif at non-first-order type " + to_string(a));
  }
}

}  // namespace

TermPtr make_mif(const TypePtr& a) {
  if (!first_order(a)) throw LiftError("mif at non-first-order type " + to_string(a));
  TypePtr la = lift_type(a);
  TypePtr ca = circ_type(la);
  Name c = Name::fresh("c"), m = Name::fresh("m"), n = Name::fresh("n"), s = Name::fresh("s");
  Name p = Name::fresh("p"), q = Name::fresh("q");
  TypePtr result = prod_type(state_type(), la);
  TermPtr zip = apps(make_zip(a), {var(c), proj2(var(p)), proj2(var(q)), proj1(var(q))});
  TermPtr body = app(lam(p, result, app(lam(q, result, zip), app(var(n), proj1(var(p))))),
                     app(var(m), var(s)));
  return lam(c, wire_type(), lam(m, ca, lam(n, ca, lam(s, state_type(), body))));
}

namespace {

// Body of `return v` when `lifted` has that form.
std::optional<TermPtr> returned_value(const TermPtr& lifted) {
  if (lifted->tag != Tag::App || lifted->a->tag != Tag::Lam) return std::nullopt;
  const TermPtr& fn = lifted->a;
  if (fn->a->tag != Tag::Lam || fn->a->a->tag != Tag::Pair) return std::nullopt;
  const TermPtr& pr = fn->a->a;
  if (pr->b->tag != Tag::Var || pr->b->name != fn->name) return std::nullopt;
  return lifted->b;
}

}  // namespace

namespace {

class Lifter {
 public:
  explicit Lifter(const TypingContext& ctx) : ctx_(ctx) {}

  LiftedTerm lift(const TermPtr& t) {
    LiftedTerm r = lift_core(t);
    if (t->ascription) r.type = t->ascription;
    return r;
  }

  // For a source value V, a term V' with Lift V = return V'.
  std::optional<LiftedTerm> lift_value(const TermPtr& t) {
    std::optional<LiftedTerm> r;
    if (t->tag == Tag::Lam && t->annot) {
      Bound b(*this, t->name, t->annot);
      LiftedTerm body = lift(t->a);
      r = LiftedTerm{lam(t->name, lift_type(t->annot), body.term), arrow_type(t->annot, body.type)};
    } else if (t->tag == Tag::Fix) {
      auto m = lift_value(t->a);
      if (!m || m->type->kind != TypeKind::Arrow || m->type->dom()->kind != TypeKind::Arrow)
        return std::nullopt;
      TypePtr a = m->type->dom();
      r = LiftedTerm{fixpoint(a, m->term), a};
    } else if (t->is_value()) {
      LiftedTerm l = lift(t);
      auto v = returned_value(l.term);
      if (!v) return std::nullopt;
      r = LiftedTerm{*v, l.type};
    } else {
      return std::nullopt;
    }
    if (t->ascription) r->type = t->ascription;
    return r;
  }

 private:
  TypingContext ctx_;

  struct Bound {
    Lifter& l;
    Bound(Lifter& lifter, Name x, TypePtr t) : l(lifter) { l.ctx_.bind(x, std::move(t)); }
    ~Bound() { l.ctx_.pop(); }
  };

  // Y(\g. \x. app (f g) (\h. h x)) for f : lift(A -> A), A = A1 -> A2
  static TermPtr fixpoint(const TypePtr& a, const TermPtr& f) {
    TypePtr la = lift_type(a), la1 = lift_type(a->dom()), la2 = lift_type(a->cod());
    Name g = Name::fresh("g"), x = Name::fresh("x"), h = Name::fresh("h");
    TermPtr inner = apps(make_app(la, la2), {app(f, var(g)), lam(h, la, app(var(h), var(x)))});
    return fix(lam(g, la, lam(x, la1, inner)));
  }

  static TypePtr sum_of(const TypePtr& t) { return t->kind == TypeKind::List ? unfold_list(t) : t; }

  static TypePtr require_type(const TermPtr& t) {
    if (!t->ascription) throw LiftError("term is not elaborated: missing ascription");
    return t->ascription;
  }

  LiftedTerm lift_core(const TermPtr& t) {
    switch (t->tag) {
      case Tag::Var: {
        TypePtr ty = ctx_.lookup(t->name);
        if (!ty) throw LiftError("unbound variable '" + t->name.str() + "'");
        return {ret(lift_type(ty), var(t->name)), ty};
      }
      case Tag::Lam: {
        if (!t->annot) throw LiftError("term is not elaborated: unannotated parameter");
        LiftedTerm body;
        {
          Bound b(*this, t->name, t->annot);
          body = lift(t->a);
        }
        TypePtr ty = arrow_type(t->annot, body.type);
        return {ret(lift_type(ty), lam(t->name, lift_type(t->annot), body.term)), ty};
      }
      case Tag::App: {
        LiftedTerm f = lift(t->a);
        if (f.type->kind != TypeKind::Arrow) throw LiftError("application of a non-function");
        LiftedTerm x = lift(t->b);
        TypePtr lf = lift_type(f.type), la = lift_type(f.type->dom()), lb = lift_type(f.type->cod());
        TermPtr term = then(lf, lb, f.term, "f", [&](TermPtr fv) {
          return then(la, lb, x.term, "a", [&](TermPtr av) { return app(fv, av); });
        });
        return {term, f.type->cod()};
      }
      case Tag::Pair: {
        LiftedTerm a = lift(t->a);
        LiftedTerm b = lift(t->b);
        TypePtr ty = prod_type(a.type, b.type);
        TypePtr lt = lift_type(ty);
        TermPtr term = then(lift_type(a.type), lt, a.term, "a", [&](TermPtr av) {
          return then(lift_type(b.type), lt, b.term, "b",
                      [&](TermPtr bv) { return ret(lt, pair(av, bv)); });
        });
        return {term, ty};
      }
      case Tag::Proj1:
      case Tag::Proj2: {
        LiftedTerm p = lift(t->a);
        if (p.type->kind != TypeKind::Prod) throw LiftError("projection from a non-pair");
        TypePtr ty = t->tag == Tag::Proj1 ? p.type->left : p.type->right;
        TermPtr term = then(lift_type(p.type), lift_type(ty), p.term, "p", [&](TermPtr pv) {
          return ret(lift_type(ty), t->tag == Tag::Proj1 ? proj1(pv) : proj2(pv));
        });
        return {term, ty};
      }
      case Tag::Skip:
        return {ret(unit_type(), skip()), unit_type()};
      case Tag::LetUnit: {
        LiftedTerm u = lift(t->a);
        LiftedTerm body = lift(t->b);
        TermPtr term = then(unit_type(), lift_type(body.type), u.term, "u",
                            [&](TermPtr uv) { return let_unit(uv, body.term); });
        return {term, body.type};
      }
      case Tag::TT: return {var("mtt"), bit_type()};
      case Tag::FF: return {var("mff"), bit_type()};
      case Tag::Not: return {var("mnot"), arrow_type(bit_type(), bit_type())};
      case Tag::And: return {var("mand"), arrow_type(prod_type(bit_type(), bit_type()), bit_type())};
      case Tag::Xor: return {var("mxor"), arrow_type(prod_type(bit_type(), bit_type()), bit_type())};
      case Tag::Inj1:
      case Tag::Inj2: {
        TypePtr ty = require_type(t);
        LiftedTerm a = lift(t->a);
        TypePtr lt = lift_type(ty);
        TermPtr term = then(lift_type(a.type), lt, a.term, "a", [&](TermPtr av) {
          TermPtr inj = t->tag == Tag::Inj1 ? inj1(av) : inj2(av);
          return ret(lt, with_ascription(inj, lt));
        });
        return {term, ty};
      }
      case Tag::Match: {
        LiftedTerm s = lift(t->a);
        TypePtr sum = sum_of(s.type);
        if (sum->kind != TypeKind::Sum) throw LiftError("match on a non-sum");
        TypePtr lt = t->annot ? t->annot : sum->left;
        TypePtr rt = t->annot2 ? t->annot2 : sum->right;
        LiftedTerm left, right;
        {
          Bound b(*this, t->name, lt);
          left = lift(t->b);
        }
        {
          Bound b(*this, t->name2, rt);
          right = lift(t->c);
        }
        TermPtr term = then(lift_type(s.type), lift_type(left.type), s.term, "z", [&](TermPtr zv) {
          return match(zv, t->name, lift_type(lt), left.term, t->name2, lift_type(rt), right.term);
        });
        return {term, left.type};
      }
      case Tag::Split: {
        TypePtr ty = require_type(t);
        TypePtr ld = lift_type(ty->dom()), lr = lift_type(ty->cod());
        Name l = Name::fresh("l");
        TermPtr fn = lam(l, ld, ret(lr, app(with_ascription(split_prim(), arrow_type(ld, lr)), var(l))));
        return {ret(lift_type(ty), fn), ty};
      }
      case Tag::If: {
        TypePtr ty = require_type(t);
        LiftedTerm c = lift(t->a);
        LiftedTerm m = lift(t->b);
        LiftedTerm n = lift(t->c);
        TermPtr mif = make_mif(ty);
        TermPtr term = then(wire_type(), lift_type(ty), c.term, "x",
                            [&](TermPtr xv) { return apps(mif, {xv, m.term, n.term}); });
        return {term, ty};
      }
      case Tag::Fix: {
        LiftedTerm m = lift(t->a);
        if (m.type->kind != TypeKind::Arrow || m.type->dom()->kind != TypeKind::Arrow)
          throw LiftError("fixpoint of a non-function");
        TypePtr a = m.type->dom();
        TermPtr term = then(lift_type(m.type), lift_type(a), m.term, "f",
                            [&](TermPtr fv) { return ret(lift_type(a), fixpoint(a, fv)); });
        return {term, a};
      }
      case Tag::Err:
        throw LiftError("cannot lift 'err'");
      case Tag::WireRef:
        throw LiftError("cannot lift a wire variable");
    }
    throw LiftError("unknown term");
  }
};

}  // namespace

LiftedTerm lift_term(const TypingContext& ctx, const TermPtr& t) { return Lifter(ctx).lift(t); }

std::optional<LiftedTerm> lift_value(const TypingContext& ctx, const TermPtr& t) {
  return Lifter(ctx).lift_value(t);
}


SourceProgram lift_program(const SourceProgram& elaborated) {
  SourceProgram out = prelude();
  TypingContext ctx;
  std::vector<std::pair<Name, TermPtr>> inlined;
  for (const auto& d : elaborated.definitions) {
    TermPtr body = d.body;
    for (auto it = inlined.rbegin(); it != inlined.rend(); ++it) body = subst(body, it->first, it->second);
    if (auto v = lift_value(ctx, body)) {
      out.definitions.push_back({d.name, lift_type(d.type), v->term, d.loc});
      ctx.bind(d.name, d.type);
    } else {
      out.definitions.push_back({d.name, circ_type(lift_type(d.type)), lift_term(ctx, body).term, d.loc});
      inlined.emplace_back(d.name, body);
    }
  }
  out.entry = elaborated.entry;
  return out;
}

std::string lifted_source(const SourceProgram& lifted) {
  SourceProgram rest = lifted;
  std::size_t k = prelude().definitions.size();
  rest.definitions.erase(rest.definitions.begin(), rest.definitions.begin() + static_cast<long>(k));
  return prelude_source() + "\n" + pretty(rest);
}

TermPtr close_over_prelude(const TermPtr& lifted) {
  TermPtr t = lifted;
  const auto& defs = prelude().definitions;
  for (auto it = defs.rbegin(); it != defs.rend(); ++it) t = subst(t, it->name, it->body);
  return t;
}

TermPtr unary(std::size_t n) {
  TermPtr t = nil();
  for (std::size_t i = 0; i < n; ++i) t = cons(skip(), t);
  return t;
}

std::optional<std::size_t> from_unary(const TermPtr& t) {
  std::size_t n = 0;
  const Term* cur = t.get();
  while (cur->tag == Tag::Inj2) {
    if (cur->a->tag != Tag::Pair || cur->a->a->tag != Tag::Skip) return std::nullopt;
    ++n;
    cur = cur->a->b.get();
  }
  if (cur->tag != Tag::Inj1 || cur->a->tag != Tag::Skip) return std::nullopt;
  return n;
}

namespace {

std::optional<std::vector<TermPtr>> list_items(const TermPtr& t) {
  std::vector<TermPtr> items;
  const Term* cur = t.get();
  while (cur->tag == Tag::Inj2) {
    if (cur->a->tag != Tag::Pair) return std::nullopt;
    items.push_back(cur->a->a);
    cur = cur->a->b.get();
  }
  if (cur->tag != Tag::Inj1) return std::nullopt;
  return items;
}

WireId decode_wire(const TermPtr& t) {
  auto n = from_unary(t);
  if (!n) throw LiftError("malformed wire in lifted result");
  return static_cast<WireId>(*n);
}

void decode_outputs(const TypePtr& type, const TermPtr& v, std::vector<WireId>& out) {
  switch (type->kind) {
    case TypeKind::Bit:
      out.push_back(decode_wire(v));
      return;
    case TypeKind::Prod:
      if (v->tag != Tag::Pair) throw LiftError("malformed pair in lifted result");
      decode_outputs(type->left, v->a, out);
      decode_outputs(type->right, v->b, out);
      return;
    case TypeKind::List: {
      auto items = list_items(v);
      if (!items) throw LiftError("malformed list in lifted result");
      for (const auto& item : *items) decode_outputs(type->elem(), item, out);
      return;
    }
    default:
      throw LiftError("lifted result is not first-order");
  }
}

Gate decode_gate(const TermPtr& g) {
  if (g->tag != Tag::Pair) throw LiftError("malformed gate");
  Gate gate(decode_wire(g->a));
  auto controls = list_items(g->b);
  if (!controls) throw LiftError("malformed gate controls");
  for (const auto& c : *controls) {
    if (c->tag != Tag::Pair || (c->b->tag != Tag::TT && c->b->tag != Tag::FF))
      throw LiftError("malformed control");
    gate.controls.push_back({decode_wire(c->a), c->b->tag == Tag::TT});
  }
  return gate;
}

}  // namespace

LiftedRun lifted_run(const CompiledProgram& prog, std::uint64_t fuel) {
  std::size_t n = prog.interface.arity;
  std::vector<Name> xs;
  TypingContext ctx;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(Name::fresh("in"));
    ctx.bind(xs.back(), bit_type());
  }
  TermPtr applied = apply_inputs(prog.entry, prog.interface, [&](std::size_t i) { return var(xs[i]); });
  LiftedTerm lifted = lift_term(ctx, applied);
  TermPtr t = close_over_prelude(lifted.term);
  for (std::size_t i = 0; i < n; ++i) t = subst(t, xs[i], unary(i));
  TermPtr init = pair(with_ascription(nil(), list_type(gate_type())), unary(n));
  LiftedRun r{LiftedRun::Stuck, {}, eval(app(t, init), fuel), {}};
  switch (r.eval.status) {
    case EvalResult::ErrHalt:
      r.status = LiftedRun::ErrHalt;
      return r;
    case EvalResult::OutOfFuel:
      r.status = LiftedRun::OutOfFuel;
      return r;
    case EvalResult::Stuck:
      r.reason = r.eval.reason;
      return r;
    case EvalResult::Value:
      break;
  }
  const TermPtr& v = r.eval.term;
  if (v->tag != Tag::Pair || v->a->tag != Tag::Pair) throw LiftError("malformed lifted result");
  auto gates = list_items(v->a->a);
  if (!gates) throw LiftError("malformed gate list");
  std::vector<Gate> newest_first;
  for (const auto& g : *gates) newest_first.push_back(decode_gate(g));
  WireId next = decode_wire(v->a->b);
  std::vector<WireId> outputs;
  decode_outputs(lifted.type, v->b, outputs);
  std::vector<WireId> inputs;
  for (std::size_t i = 0; i < n; ++i) inputs.push_back(static_cast<WireId>(i));
  r.circuit = assemble_circuit(inputs, RawCircuit::from_newest_first(std::move(newest_first)), next, outputs);
  r.status = LiftedRun::Finished;
  return r;
}

}  // namespace revc
