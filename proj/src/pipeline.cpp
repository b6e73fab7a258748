#include "revc/pipeline.hpp"

namespace revc {

namespace {

bool bit_tree(const TypePtr& t) {
  if (t->kind == TypeKind::Bit) return true;
  return t->kind == TypeKind::Prod && bit_tree(t->left) && bit_tree(t->right);
}

std::size_t leaves(const TypePtr& t) {
  return t->kind == TypeKind::Prod ? leaves(t->left) + leaves(t->right) : 1;
}

}  // namespace

EntryInterface entry_interface(const TypePtr& type) {
  EntryInterface iface;
  TypePtr t = type;
  while (t->kind == TypeKind::Arrow) {
    if (!bit_tree(t->dom()))
      throw InterfaceError("entry parameter of type " + to_string(t->dom()) +
                           " is not bit or a product of bits");
    iface.params.push_back(t->dom());
    iface.arity += leaves(t->dom());
    t = t->cod();
  }
  if (!first_order(t))
    throw InterfaceError("entry result type " + to_string(t) + " is not first-order");
  iface.result = t;
  return iface;
}

CompiledProgram compile(const SourceProgram& prog) {
  CompiledProgram out;
  out.source = prog;
  out.elaborated = elaborate_program(prog);
  out.entry = out.elaborated.resolve_entry();
  out.entry_type = out.elaborated.entry_definition().type;
  out.interface = entry_interface(out.entry_type);
  return out;
}

CompiledProgram compile_source(std::string_view text) { return compile(parse_program(text)); }

TermPtr input_tree(const TypePtr& type, std::size_t& next,
                   const std::function<TermPtr(std::size_t)>& leaf) {
  if (type->kind == TypeKind::Prod) {
    TermPtr a = input_tree(type->left, next, leaf);
    TermPtr b = input_tree(type->right, next, leaf);
    return pair(a, b);
  }
  return leaf(next++);
}

TermPtr apply_inputs(const TermPtr& entry, const EntryInterface& iface,
                     const std::function<TermPtr(std::size_t)>& leaf) {
  TermPtr t = entry;
  std::size_t next = 0;
  for (const auto& p : iface.params) t = app(t, input_tree(p, next, leaf));
  return t;
}

std::optional<std::vector<bool>> value_bits(const TermPtr& value) {
  std::vector<bool> out;
  for (const auto& leaf : value_leaves(value)) {
    if (leaf->tag == Tag::TT)
      out.push_back(true);
    else if (leaf->tag == Tag::FF)
      out.push_back(false);
    else
      return std::nullopt;
  }
  return out;
}

BitsResult eval_on_bits(const CompiledProgram& prog, const std::vector<bool>& input,
                        std::uint64_t fuel) {
  if (input.size() != prog.interface.arity)
    throw std::invalid_argument("expected " + std::to_string(prog.interface.arity) +
                                " input bits, got " + std::to_string(input.size()));
  TermPtr t = apply_inputs(prog.entry, prog.interface,
                           [&](std::size_t i) { return bit_literal(input[i]); });
  BitsResult r{eval(t, fuel), {}};
  if (r.eval.status == EvalResult::Value) {
    auto bits = value_bits(r.eval.term);
    if (!bits) {
      r.eval.status = EvalResult::Stuck;
      r.eval.reason = "result is not a first-order value";
    } else {
      r.bits = std::move(*bits);
    }
  }
  return r;
}

}  // namespace revc
