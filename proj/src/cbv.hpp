#pragma once

// Call-by-value stepping shared by the evaluator and the abstract machine.
// They differ only in what counts as a value and in the boolean rules, which
// the Rules policy supplies:
//   bool value(const TermPtr&)
//   StepOutcome literal(const TermPtr& t)                 tt / ff in redex position
//   StepOutcome boolean(Tag prim, const TermPtr& arg)     not / and / xor on a value
//   StepOutcome select(const TermPtr& t)                  if V then V1 else V2

#include "revc/eval.hpp"

namespace revc::detail {

inline StepOutcome stepped(TermPtr t, StepKind kind) {
  return {StepOutcome::Stepped, std::move(t), kind, {}};
}

inline StepOutcome stuck(const TermPtr& t, std::string reason) {
  return {StepOutcome::Stuck, t, {}, std::move(reason)};
}

template <class Rules>
class CbvEngine {
 public:
  explicit CbvEngine(Rules& rules) : rules_(rules) {}

  StepOutcome step(const TermPtr& t) {
    if (rules_.value(t)) return {StepOutcome::AlreadyValue, t, {}, {}};
    switch (t->tag) {
      case Tag::Var:
        return stuck(t, "free variable '" + t->name.str() + "'");
      case Tag::Err:
        return {StepOutcome::StuckOnErr, t, {}, {}};
      case Tag::TT:
      case Tag::FF:
        return rules_.literal(t);
      case Tag::App:
        if (!rules_.value(t->a)) return inside(t, 0);
        if (!rules_.value(t->b)) return inside(t, 1);
        return apply(t);
      case Tag::Pair:
        if (!rules_.value(t->a)) return inside(t, 0);
        return inside(t, 1);
      case Tag::Inj1:
      case Tag::Inj2:
        return inside(t, 0);
      case Tag::Proj1:
      case Tag::Proj2: {
        if (!rules_.value(t->a)) return inside(t, 0);
        const TermPtr& p = t->a;
        if (p->tag != Tag::Pair) return stuck(t, "projection from a non-pair");
        return stepped(t->tag == Tag::Proj1 ? p->a : p->b, StepKind::Proj);
      }
      case Tag::LetUnit:
        if (!rules_.value(t->a)) return inside(t, 0);
        if (t->a->tag != Tag::Skip) return stuck(t, "let * on a non-unit");
        return stepped(t->b, StepKind::LetUnit);
      case Tag::Match: {
        if (!rules_.value(t->a)) return inside(t, 0);
        const TermPtr& v = t->a;
        if (v->tag == Tag::Inj1) return stepped(subst(t->b, t->name, v->a), StepKind::Match);
        if (v->tag == Tag::Inj2) return stepped(subst(t->c, t->name2, v->a), StepKind::Match);
        return stuck(t, "match on a non-injection");
      }
      case Tag::Fix: {
        if (!rules_.value(t->a)) return inside(t, 0);
        const TermPtr& f = t->a;
        if (f->tag != Tag::Lam) return stuck(t, "Y applied to a non-abstraction");
        return stepped(subst(f->a, f->name, t), StepKind::Fix);
      }
      case Tag::If:
        if (!rules_.value(t->a)) return inside(t, 0);
        if (!rules_.value(t->b)) return inside(t, 1);
        if (!rules_.value(t->c)) return inside(t, 2);
        return rules_.select(t);
      default:
        return stuck(t, "no rule applies");
    }
  }

 private:
  Rules& rules_;

  StepOutcome inside(const TermPtr& t, int which) {
    const TermPtr& child = which == 0 ? t->a : which == 1 ? t->b : t->c;
    StepOutcome sub = step(child);
    if (sub.status != StepOutcome::Stepped) return sub;
    TermPtr a = t->a, b = t->b, c = t->c;
    (which == 0 ? a : which == 1 ? b : c) = std::move(sub.term);
    sub.term = with_children(t, std::move(a), std::move(b), std::move(c));
    return sub;
  }

  StepOutcome apply(const TermPtr& t) {
    const TermPtr& f = t->a;
    const TermPtr& v = t->b;
    switch (f->tag) {
      case Tag::Lam:
        return stepped(subst(f->a, f->name, v), StepKind::Beta);
      case Tag::Split:
        return stepped(v, StepKind::Split);
      case Tag::Not:
      case Tag::And:
      case Tag::Xor:
        return rules_.boolean(f->tag, v);
      default:
        return stuck(t, "applying a non-function");
    }
  }
};

}  // namespace revc::detail
