#include "revc/machine.hpp"

#include <set>

#include "cbv.hpp"

namespace revc {

void LinkingFunction::link(WireId variable, WireId wire) {
  if (!map_.emplace(variable, wire).second)
    throw std::logic_error("wire variable #" + std::to_string(variable) + " linked twice");
}

std::optional<WireId> LinkingFunction::lookup(WireId variable) const {
  auto it = map_.find(variable);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::vector<WireId> LinkingFunction::domain() const {
  std::vector<WireId> out;
  for (const auto& [k, _] : map_) out.push_back(k);
  return out;
}

std::vector<WireId> LinkingFunction::range() const {
  std::vector<WireId> out;
  for (const auto& [_, v] : map_) out.push_back(v);
  return out;
}

bool LinkingFunction::injective() const {
  std::set<WireId> seen;
  for (const auto& [_, v] : map_)
    if (!seen.insert(v).second) return false;
  return true;
}

MachineState empty_machine(const TermPtr& m, std::uint32_t n) {
  MachineState s;
  s.term = m;
  for (WireId w = 0; w < n; ++w) {
    s.inputs.push_back(w);
    s.linking.link(w, w);
  }
  s.next_fresh = n;
  return s;
}

bool is_first_order_extension(const TermPtr& t) {
  switch (t->tag) {
    case Tag::WireRef:
      return true;
    case Tag::Pair:
      return is_first_order_extension(t->a) && is_first_order_extension(t->b);
    case Tag::Inj1:
      return t->a->tag == Tag::Skip;
    case Tag::Inj2:
      return t->a->tag == Tag::Pair && is_first_order_extension(t->a->a) &&
             is_first_order_extension(t->a->b) &&
             (t->a->b->tag == Tag::Inj1 || t->a->b->tag == Tag::Inj2);
    default:
      return false;
  }
}

bool same_shape(const TermPtr& v, const TermPtr& w) {
  if (v->tag != w->tag) return false;
  switch (v->tag) {
    case Tag::WireRef:
      return true;
    case Tag::Pair:
      return same_shape(v->a, w->a) && same_shape(v->b, w->b);
    case Tag::Inj1:
      return v->a->tag == Tag::Skip && w->a->tag == Tag::Skip;
    case Tag::Inj2:
      return same_shape(v->a, w->a);
    default:
      return false;
  }
}

namespace {

class MachineRules {
 public:
  explicit MachineRules(MachineState& s) : s_(s) {}

  bool value(const TermPtr& t) const { return t->is_machine_value(); }

  StepOutcome literal(const TermPtr& t) {
    WireId w = fresh();
    if (t->tag == Tag::TT) {
      s_.circuit.emit(not_gate(w));
      return detail::stepped(wire_ref(w), StepKind::TT);
    }
    return detail::stepped(wire_ref(w), StepKind::FF);
  }

  StepOutcome boolean(Tag prim, const TermPtr& arg) {
    if (prim == Tag::Not) {
      auto i = wire_of(arg);
      if (!i) return detail::stuck(arg, "not applied to a non-wire");
      WireId w = fresh();
      s_.circuit.emit(cnot(w, *i, false));
      return detail::stepped(wire_ref(w), StepKind::Not);
    }
    if (arg->tag != Tag::Pair) return detail::stuck(arg, "boolean operator applied to a non-pair");
    auto i = wire_of(arg->a), j = wire_of(arg->b);
    if (!i || !j) return detail::stuck(arg, "boolean operator applied to non-wires");
    WireId w = fresh();
    if (prim == Tag::And) {
      s_.circuit.emit(toffoli(w, *i, *j));
      return detail::stepped(wire_ref(w), StepKind::And);
    }
    // newest first: Gate(w; +i) :: Gate(w; +j) :: C
    s_.circuit.emit(cnot(w, *j));
    s_.circuit.emit(cnot(w, *i));
    return detail::stepped(wire_ref(w), StepKind::Xor);
  }

  StepOutcome select(const TermPtr& t) {
    auto c = wire_of(t->a);
    if (!c) return detail::stuck(t, "if on a non-wire");
    if (!is_first_order_extension(t->b) || !is_first_order_extension(t->c))
      return detail::stuck(t, "if branches are not first-order");
    if (!same_shape(t->b, t->c)) {
      err_ = true;
      return {StepOutcome::StuckOnErr, t, {}, "if branches have different shapes"};
    }
    return detail::stepped(mux(*c, t->b, t->c), StepKind::If);
  }

  bool shape_error() const { return err_; }

 private:
  MachineState& s_;
  bool err_ = false;

  WireId fresh() {
    WireId w = s_.next_fresh++;
    s_.linking.link(w, w);
    return w;
  }

  std::optional<WireId> wire_of(const TermPtr& t) const {
    if (t->tag != Tag::WireRef) return std::nullopt;
    return s_.linking.lookup(t->wire);
  }

  // Same shape as v, one fresh wire per leaf, left to right.
  TermPtr mux(WireId c, const TermPtr& v, const TermPtr& w) {
    switch (v->tag) {
      case Tag::WireRef: {
        WireId u = fresh();
        s_.circuit.emit(Gate(u, {{c, true}, {*wire_of(v), true}}));
        s_.circuit.emit(Gate(u, {{c, false}, {*wire_of(w), true}}));
        return wire_ref(u);
      }
      case Tag::Pair: {
        TermPtr a = mux(c, v->a, w->a);
        TermPtr b = mux(c, v->b, w->b);
        return with_children(v, a, b, nullptr);
      }
      case Tag::Inj2:
        return with_children(v, mux(c, v->a, w->a), nullptr, nullptr);
      default:
        return v;
    }
  }
};

}  // namespace

MachineOutcome advance(MachineState& s) {
  MachineRules rules(s);
  StepOutcome out = detail::CbvEngine<MachineRules>(rules).step(s.term);
  switch (out.status) {
    case StepOutcome::Stepped:
      s.term = std::move(out.term);
      return {MachineOutcome::Stepped, out.kind, {}};
    case StepOutcome::AlreadyValue:
      if (!is_first_order_extension(s.term))
        return {MachineOutcome::Stuck, {}, "final value is not first-order"};
      return {MachineOutcome::Finished, {}, {}};
    case StepOutcome::StuckOnErr:
      return {MachineOutcome::ErrHalt, {},
              rules.shape_error() ? out.reason : std::string("reached err")};
    case StepOutcome::Stuck:
      break;
  }
  return {MachineOutcome::Stuck, {}, out.reason};
}

std::pair<MachineOutcome, MachineState> step_cbv(const MachineState& s) {
  MachineState next = s;
  MachineOutcome out = advance(next);
  return {out, std::move(next)};
}

std::string to_string(RunResult::Status status) {
  switch (status) {
    case RunResult::Finished: return "finished";
    case RunResult::ErrHalt: return "err";
    case RunResult::OutOfFuel: return "out of fuel";
    case RunResult::Stuck: return "stuck";
  }
  return "?";
}

Circuit read_circuit(const MachineState& s, const TermPtr& value) {
  std::vector<WireId> outputs;
  for (const auto& leaf : value_leaves(value)) outputs.push_back(*s.linking.lookup(leaf->wire));
  return assemble_circuit(s.inputs, s.circuit, s.next_fresh, outputs);
}

RunResult run(MachineState s, std::uint64_t fuel, const MachineObserver& observer) {
  for (std::uint64_t n = 0;; ++n) {
    TermPtr before = s.term;
    std::size_t gates_before = s.circuit.size();
    if (n == fuel) {
      // one more step decides between a finished state and running out
      MachineState probe = s;
      MachineOutcome out = advance(probe);
      if (out.status == MachineOutcome::Stepped) return {RunResult::OutOfFuel, {}, std::move(s), n, {}};
    }
    MachineOutcome out = advance(s);
    switch (out.status) {
      case MachineOutcome::Finished: {
        Circuit c = read_circuit(s, s.term);
        return {RunResult::Finished, std::move(c), std::move(s), n, {}};
      }
      case MachineOutcome::ErrHalt:
        return {RunResult::ErrHalt, {}, std::move(s), n, out.reason};
      case MachineOutcome::Stuck:
        return {RunResult::Stuck, {}, std::move(s), n, out.reason};
      case MachineOutcome::Stepped:
        break;
    }
    if (observer) observer(before, out, s, s.circuit.size() - gates_before);
  }
}

TermPtr residual_term(const TermPtr& term, const Valuation& v) {
  if (!term->has_wire_refs()) return term;
  if (term->tag == Tag::WireRef) {
    TermPtr bit = bit_literal(v.at(term->wire) != 0);
    return term->ascription ? with_ascription(bit, term->ascription) : bit;
  }
  TermPtr a = term->a ? residual_term(term->a, v) : nullptr;
  TermPtr b = term->b ? residual_term(term->b, v) : nullptr;
  TermPtr c = term->c ? residual_term(term->c, v) : nullptr;
  return with_children(term, a, b, c);
}

TermPtr residual_term(const MachineState& s, const std::vector<bool>& input) {
  Circuit c;
  c.inputs = s.inputs;
  c.gates = s.circuit;
  c.num_wires = s.next_fresh;
  Valuation wires = execute_full(c, input);
  // wire variables read through the linking function
  Valuation byvar(s.next_fresh, 0);
  for (WireId x : s.linking.domain()) byvar.at(x) = wires.at(*s.linking.lookup(x));
  return residual_term(s.term, byvar);
}

RunResult synth(const CompiledProgram& prog, std::uint64_t fuel, const MachineObserver& observer) {
  auto n = static_cast<std::uint32_t>(prog.interface.arity);
  TermPtr t = apply_inputs(prog.entry, prog.interface,
                           [](std::size_t i) { return wire_ref(static_cast<WireId>(i)); });
  return run(empty_machine(t, n), fuel, observer);
}

VerifyReport verify(const CompiledProgram& prog, const Circuit& c, unsigned max_bits,
                    std::uint64_t fuel) {
  VerifyReport report;
  std::size_t n = prog.interface.arity;
  report.exhaustive = n <= max_bits;
  for (const auto& input : input_vectors(n, max_bits)) {
    ++report.checked;
    BitsResult expected = eval_on_bits(prog, input, fuel);
    std::vector<bool> got = execute(c, input);
    bool ok = expected.eval.status == EvalResult::Value && expected.bits == got;
    if (ok) {
      ++report.matched;
    } else if (!report.first_mismatch) {
      report.first_mismatch = input;
      report.detail = "input " + bits_to_string(input) + ": circuit gives " + bits_to_string(got) +
                      ", evaluation gives " +
                      (expected.eval.status == EvalResult::Value ? bits_to_string(expected.bits)
                                                                 : to_string(expected.eval.status));
    }
  }
  return report;
}

}  // namespace revc
