#include "revc/eval.hpp"

#include "cbv.hpp"

namespace revc {

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Beta: return "beta";
    case StepKind::Proj: return "proj";
    case StepKind::LetUnit: return "let-unit";
    case StepKind::Split: return "split";
    case StepKind::Match: return "match";
    case StepKind::Fix: return "fix";
    case StepKind::FF: return "ff";
    case StepKind::TT: return "tt";
    case StepKind::Not: return "not";
    case StepKind::And: return "and";
    case StepKind::Xor: return "xor";
    case StepKind::If: return "if";
  }
  return "?";
}

std::string to_string(EvalResult::Status status) {
  switch (status) {
    case EvalResult::Value: return "value";
    case EvalResult::ErrHalt: return "err";
    case EvalResult::OutOfFuel: return "out of fuel";
    case EvalResult::Stuck: return "stuck";
  }
  return "?";
}

namespace {

std::optional<bool> literal_bit(const TermPtr& t) {
  if (t->tag == Tag::TT) return true;
  if (t->tag == Tag::FF) return false;
  return std::nullopt;
}

struct EvalRules {
  bool value(const TermPtr& t) const { return t->is_value(); }

  StepOutcome literal(const TermPtr& t) const { return detail::stuck(t, "literal in redex position"); }

  StepOutcome boolean(Tag prim, const TermPtr& arg) const {
    if (prim == Tag::Not) {
      auto b = literal_bit(arg);
      if (!b) return detail::stuck(arg, "not applied to a non-bit");
      return detail::stepped(bit_literal(!*b), StepKind::Not);
    }
    if (arg->tag != Tag::Pair) return detail::stuck(arg, "boolean operator applied to a non-pair");
    auto x = literal_bit(arg->a), y = literal_bit(arg->b);
    if (!x || !y) return detail::stuck(arg, "boolean operator applied to non-bits");
    if (prim == Tag::And) return detail::stepped(bit_literal(*x && *y), StepKind::And);
    return detail::stepped(bit_literal(*x != *y), StepKind::Xor);
  }

  StepOutcome select(const TermPtr& t) const {
    auto c = literal_bit(t->a);
    if (!c) return detail::stuck(t, "if on a non-bit");
    return detail::stepped(*c ? t->b : t->c, StepKind::If);
  }
};

}  // namespace

StepOutcome step(const TermPtr& t) {
  EvalRules rules;
  return detail::CbvEngine<EvalRules>(rules).step(t);
}

EvalResult eval(const TermPtr& t, std::uint64_t fuel, const StepObserver& observer) {
  EvalRules rules;
  detail::CbvEngine<EvalRules> engine(rules);
  TermPtr cur = t;
  for (std::uint64_t n = 0;; ++n) {
    StepOutcome out = engine.step(cur);
    switch (out.status) {
      case StepOutcome::AlreadyValue:
        return {EvalResult::Value, cur, n, {}};
      case StepOutcome::StuckOnErr:
        return {EvalResult::ErrHalt, cur, n, {}};
      case StepOutcome::Stuck:
        return {EvalResult::Stuck, cur, n, out.reason};
      case StepOutcome::Stepped:
        break;
    }
    if (n == fuel) return {EvalResult::OutOfFuel, cur, n, {}};
    if (observer) observer(cur, out);
    cur = std::move(out.term);
  }
}

}  // namespace revc
