#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "revc/eval.hpp"
#include "revc/lifting.hpp"
#include "revc/pretty.hpp"

namespace revc::testing {

// Closed instances of the circuit monad at type circ(wire), over wires 0..2 of
// the state <nil, 3>.
namespace monad {

inline TermPtr w(std::size_t k) { return unary(k); }

inline TermPtr lam_w(const char* base, const std::function<TermPtr(TermPtr)>& body) {
  Name x = Name::fresh(base);
  return lam(x, wire_type(), body(var(x)));
}

inline TermPtr then(const TermPtr& m, const TermPtr& f) {
  return app(app(make_app(wire_type(), wire_type()), m), f);
}

inline TermPtr ret(const TermPtr& v) { return app(make_return(wire_type()), v); }

// Runs a lifted primitive (a computation returning the lifted function) on `arg`.
inline TermPtr call(const char* prim, const TermPtr& arg, const TypePtr& dom = wire_type()) {
  TypePtr fn = arrow_type(dom, circ_type(wire_type()));
  Name g = Name::fresh("g");
  return app(app(make_app(fn, wire_type()), var(prim)), lam(g, fn, app(var(g), arg)));
}

inline TermPtr call2(const char* prim, const TermPtr& a, const TermPtr& b) {
  return call(prim, pair(a, b), prod_type(wire_type(), wire_type()));
}

inline std::vector<TermPtr> computations() {
  return {
      var("mtt"),
      var("mff"),
      call("mnot", w(0)),
      call2("mand", w(0), w(1)),
      call2("mxor", w(2), w(0)),
      ret(w(1)),
      then(var("mtt"), lam_w("a", [](TermPtr a) { return call("mnot", a); })),
      then(call("mnot", w(2)), lam_w("a", [](TermPtr a) { return call2("mand", a, w(0)); })),
      then(var("mff"), lam_w("a", [](TermPtr a) { return call2("mxor", a, a); })),
      call2("mand", w(1), w(1)),
  };
}

inline std::vector<TermPtr> continuations() {
  return {
      lam_w("x", [](TermPtr x) { return call("mnot", x); }),
      lam_w("x", [](TermPtr x) { return call2("mand", x, x); }),
      lam_w("x", [](TermPtr x) { return call2("mxor", x, w(0)); }),
      lam_w("x", [](TermPtr x) { return ret(x); }),
      lam_w("x", [](TermPtr) { return var("mtt"); }),
      lam_w("x", [](TermPtr x) {
        return then(call("mnot", x), lam_w("y", [](TermPtr y) { return call("mnot", y); }));
      }),
      lam_w("x", [](TermPtr x) { return call2("mand", w(2), x); }),
      lam_w("x", [](TermPtr) { return var("mff"); }),
      lam_w("x", [](TermPtr x) { return call2("mxor", x, x); }),
      lam_w("x", [](TermPtr x) {
        return then(var("mtt"), lam_w("y", [&](TermPtr y) { return call2("mand", x, y); }));
      }),
  };
}

}  // namespace monad

struct LawInstance {
  std::string law;
  TermPtr lhs, rhs;
};

inline std::vector<LawInstance> monad_law_instances() {
  using namespace monad;
  std::vector<LawInstance> out;
  auto ms = computations();
  auto fs = continuations();
  auto gs = continuations();
  std::rotate(gs.begin(), gs.begin() + 3, gs.end());
  for (std::size_t i = 0; i < 10; ++i) {
    TermPtr v = w(i % 3);
    out.push_back({"left identity", then(ret(v), fs[i]), app(fs[i], v)});
  }
  for (const auto& m : ms)
    out.push_back({"right identity", then(m, lam_w("x", [](TermPtr x) { return ret(x); })), m});
  for (std::size_t i = 0; i < 10; ++i) {
    const TermPtr& f = fs[i];
    const TermPtr& g = gs[i];
    TermPtr rhs = then(ms[i], lam_w("x", [&](TermPtr x) { return then(app(f, x), g); }));
    out.push_back({"associativity", then(then(ms[i], f), g), rhs});
  }
  return out;
}

// Empty when both sides typecheck at circ(wire) and evaluate from the same
// state to the same (state, value) pair.
inline std::string check_law(const LawInstance& inst) {
  TypingContext ctx = prelude_context();
  TypePtr cw = circ_type(wire_type());
  for (const TermPtr& side : {inst.lhs, inst.rhs}) {
    try {
      check(ctx, side, cw);
    } catch (const TypeError& e) {
      return inst.law + ": ill-typed instance: " + e.what();
    }
  }
  TermPtr s = pair(nil(), unary(3));
  EvalResult a = eval(app(close_over_prelude(inst.lhs), s));
  EvalResult b = eval(app(close_over_prelude(inst.rhs), s));
  if (a.status != EvalResult::Value || b.status != EvalResult::Value)
    return inst.law + ": evaluation did not reach a value: " + a.reason + b.reason;
  if (!alpha_equal_untyped(a.term, b.term))
    return inst.law + ": " + pretty(a.term) + "  vs  " + pretty(b.term);
  return {};
}

}  // namespace revc::testing
