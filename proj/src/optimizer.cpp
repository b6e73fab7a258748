#include "revc/optimizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace revc {

std::string to_string(const WireFact& f) {
  switch (f.kind) {
    case WireFact::Unknown: return "?";
    case WireFact::ConstFalse: return "0";
    case WireFact::ConstTrue: return "1";
    case WireFact::CopyOf: return "=" + std::to_string(f.source);
  }
  return "?";
}

namespace {

enum class Firing { Never, Always, Maybe };

// How the gate behaves under `facts`, and the controls that still matter.
Firing classify(const Gate& g, const std::vector<WireFact>& facts, std::vector<Control>* remaining) {
  bool maybe = false;
  for (const auto& c : g.controls) {
    WireFact f = facts[c.wire];
    if (f.kind == WireFact::ConstTrue || f.kind == WireFact::ConstFalse) {
      if ((f.kind == WireFact::ConstTrue) != c.positive) return Firing::Never;
      continue;
    }
    maybe = true;
    if (remaining) remaining->push_back(c);
  }
  return maybe ? Firing::Maybe : Firing::Always;
}

bool is_cnot(const Gate& g) { return g.controls.size() == 1; }

bool single_positive(const Gate& g) { return is_cnot(g) && g.controls[0].positive; }

Gate rename(Gate g, WireId from, WireId to) {
  if (g.target == from) g.target = to;
  for (auto& c : g.controls)
    if (c.wire == from) c.wire = to;
  return g;
}

Circuit with_gates(const Circuit& c, std::vector<Gate> gates) {
  Circuit out = c;
  out.gates = RawCircuit(std::move(gates));
  return out;
}

}  // namespace

WireFacts analyze(const Circuit& c) {
  std::vector<WireFact> cur(c.num_wires, WireFact::constant(false));
  for (WireId w : c.inputs) cur[w] = WireFact::unknown();
  WireFacts out;
  out.reserve(c.gate_count() + 1);
  out.push_back(cur);
  for (const auto& g : c.gates.chronological()) {
    std::vector<Control> remaining;
    Firing firing = classify(g, cur, &remaining);
    if (firing != Firing::Never) {
      WireId t = g.target;
      for (auto& f : cur)
        if (f.kind == WireFact::CopyOf && f.source == t) f = WireFact::unknown();
      WireFact before = cur[t];
      if (firing == Firing::Always) {
        if (before.kind == WireFact::ConstFalse || before.kind == WireFact::ConstTrue)
          cur[t] = WireFact::constant(before.kind == WireFact::ConstFalse);
        else
          cur[t] = WireFact::unknown();
      } else if (before.kind == WireFact::ConstFalse && remaining.size() == 1 && remaining[0].positive) {
        WireId s = remaining[0].wire;
        cur[t] = cur[s].kind == WireFact::CopyOf ? WireFact::copy_of(cur[s].source) : WireFact::copy_of(s);
      } else {
        cur[t] = WireFact::unknown();
      }
    }
    out.push_back(cur);
  }
  return out;
}

UsageIndex::UsageIndex(const Circuit& c) : c_(c), uses_(c.num_wires), output_(c.num_wires, false) {
  const auto& gates = c.gates.chronological();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    uses_[gates[k].target].push_back(k);
    for (const auto& ctl : gates[k].controls)
      if (uses_[ctl.wire].empty() || uses_[ctl.wire].back() != k) uses_[ctl.wire].push_back(k);
  }
  for (WireId w : c.outputs) output_[w] = true;
}

bool UsageIndex::used_after(WireId w, std::size_t pos) const {
  const auto& u = uses_[w];
  return std::upper_bound(u.begin(), u.end(), pos) != u.end();
}

bool UsageIndex::controlled_after(WireId w, std::size_t pos) const {
  const auto& u = uses_[w];
  for (auto it = std::upper_bound(u.begin(), u.end(), pos); it != u.end(); ++it)
    if (c_.gates.chronological()[*it].controlled_by(w)) return true;
  return false;
}

bool UsageIndex::targeted_between(WireId w, std::size_t from, std::size_t to) const {
  const auto& u = uses_[w];
  for (auto it = std::upper_bound(u.begin(), u.end(), from); it != u.end() && *it < to; ++it)
    if (c_.gates.chronological()[*it].target == w) return true;
  return false;
}

Circuit remove_constant_gates(const Circuit& c) {
  WireFacts facts = analyze(c);
  std::vector<Gate> out;
  const auto& gates = c.gates.chronological();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    std::vector<Control> remaining;
    if (classify(gates[k], facts[k], &remaining) == Firing::Never) continue;
    out.emplace_back(gates[k].target, std::move(remaining));
  }
  return with_gates(c, std::move(out));
}

Circuit remove_dead_gates(const Circuit& c) {
  std::vector<bool> live(c.num_wires, false);
  for (WireId w : c.outputs) live[w] = true;
  const auto& gates = c.gates.chronological();
  std::vector<Gate> kept;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    if (!live[it->target]) continue;
    for (const auto& ctl : it->controls) live[ctl.wire] = true;
    kept.push_back(*it);
  }
  std::reverse(kept.begin(), kept.end());
  return with_gates(c, std::move(kept));
}

Circuit eliminate_copies(const Circuit& c) {
  Circuit cur = c;
  for (bool changed = true; changed;) {
    changed = false;
    WireFacts facts = analyze(cur);
    UsageIndex usage(cur);
    const auto& gates = cur.gates.chronological();
    for (std::size_t k = 0; k < gates.size(); ++k) {
      const Gate& g = gates[k];
      if (!single_positive(g)) continue;
      WireId u = g.target, a = g.controls[0].wire;
      if (facts[k][u].kind != WireFact::ConstFalse) continue;
      if (usage.used_after(a, k) || usage.is_output(a) || usage.is_output(u)) continue;
      std::vector<Gate> out(gates.begin(), gates.begin() + static_cast<long>(k));
      for (std::size_t j = k + 1; j < gates.size(); ++j) out.push_back(rename(gates[j], u, a));
      cur = with_gates(cur, std::move(out));
      changed = true;
      break;
    }
  }
  return cur;
}

Circuit fuse_xor(const Circuit& c) {
  Circuit cur = c;
  for (bool changed = true; changed;) {
    changed = false;
    WireFacts facts = analyze(cur);
    UsageIndex usage(cur);
    const auto& gates = cur.gates.chronological();
    for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
      if (!single_positive(gates[i])) continue;
      WireId cw = gates[i].target, a = gates[i].controls[0].wire;
      if (facts[i][cw].kind != WireFact::ConstFalse || usage.is_output(cw)) continue;
      std::size_t j = i + 1;
      while (j < gates.size() && !gates[j].uses(cw)) ++j;
      if (j == gates.size() || !single_positive(gates[j]) || gates[j].target != cw) continue;
      WireId b = gates[j].controls[0].wire;
      if (b == a || usage.targeted_between(a, i, j)) continue;
      // the wire that absorbs the xor must be free afterwards
      for (auto [keep, other] : {std::pair{b, a}, std::pair{a, b}}) {
        if (usage.used_after(keep, j) || usage.is_output(keep)) continue;
        std::vector<Gate> out;
        for (std::size_t k = 0; k < gates.size(); ++k) {
          if (k == i) continue;
          if (k == j)
            out.push_back(cnot(keep, other));
          else
            out.push_back(k > j ? rename(gates[k], cw, keep) : gates[k]);
        }
        cur = with_gates(cur, std::move(out));
        changed = true;
        break;
      }
    }
  }
  return cur;
}

Circuit shuffle_right(const Circuit& c) {
  std::vector<Gate> gates = c.gates.chronological();
  auto commute = [](const Gate& g, const Gate& h) { return !h.uses(g.target) && !g.uses(h.target); };
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < gates.size(); ++k) {
      if (is_cnot(gates[k]) && !is_cnot(gates[k + 1]) && commute(gates[k], gates[k + 1])) {
        std::swap(gates[k], gates[k + 1]);
        swapped = true;
      }
    }
  }
  return with_gates(c, std::move(gates));
}

Circuit compact_wires(const Circuit& c) {
  std::vector<bool> seen(c.num_wires, false);
  for (WireId w : c.inputs) seen[w] = true;
  for (WireId w : c.outputs) seen[w] = true;
  for (const auto& g : c.gates.chronological()) {
    seen[g.target] = true;
    for (const auto& ctl : g.controls) seen[ctl.wire] = true;
  }
  std::vector<WireId> map(c.num_wires, 0);
  WireId next = 0;
  for (WireId w = 0; w < c.num_wires; ++w)
    if (seen[w]) map[w] = next++;
  Circuit out;
  out.num_wires = next;
  for (WireId w : c.inputs) out.inputs.push_back(map[w]);
  for (WireId w : c.outputs) out.outputs.push_back(map[w]);
  for (Gate g : c.gates.chronological()) {
    g.target = map[g.target];
    for (auto& ctl : g.controls) ctl.wire = map[ctl.wire];
    out.gates.emit(std::move(g));
  }
  return out;
}

std::string to_string(Pass p) {
  switch (p) {
    case Pass::Constant: return "constant";
    case Pass::Dead: return "dead";
    case Pass::Copy: return "copy";
    case Pass::Xor: return "xor";
    case Pass::Shuffle: return "shuffle";
  }
  return "?";
}

std::optional<Pass> parse_pass(std::string_view name) {
  for (Pass p : default_passes())
    if (to_string(p) == name) return p;
  return std::nullopt;
}

std::vector<Pass> parse_passes(std::string_view list) {
  std::vector<Pass> out;
  while (!list.empty()) {
    std::size_t comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    auto p = parse_pass(item);
    if (!p) throw std::invalid_argument("unknown pass '" + std::string(item) + "'");
    out.push_back(*p);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

const std::vector<Pass>& default_passes() {
  static const std::vector<Pass> passes = {Pass::Constant, Pass::Dead, Pass::Copy, Pass::Xor,
                                           Pass::Shuffle};
  return passes;
}

Circuit apply_pass(Pass p, const Circuit& c) {
  switch (p) {
    case Pass::Constant: return remove_constant_gates(c);
    case Pass::Dead: return remove_dead_gates(c);
    case Pass::Copy: return eliminate_copies(c);
    case Pass::Xor: return fuse_xor(c);
    case Pass::Shuffle: return shuffle_right(c);
  }
  return c;
}

OptimizeResult optimize_with(const Circuit& c, const std::vector<Pass>& passes,
                             unsigned max_iterations) {
  OptimizeResult r{c, 0, false};
  while (r.iterations < max_iterations) {
    Circuit next = r.circuit;
    for (Pass p : passes) next = apply_pass(p, next);
    ++r.iterations;
    if (next == r.circuit) {
      r.converged = true;
      break;
    }
    r.circuit = std::move(next);
  }
  r.circuit = compact_wires(r.circuit);
  return r;
}

Circuit optimize(const Circuit& c) { return optimize_with(c, default_passes()).circuit; }

EquivalenceReport check_equivalent(const Circuit& a, const Circuit& b, unsigned max_bits) {
  if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size())
    throw std::invalid_argument("circuits have different interfaces");
  EquivalenceReport r;
  r.exhaustive = a.inputs.size() <= max_bits;
  for (const auto& input : input_vectors(a.inputs.size(), max_bits)) {
    ++r.checked;
    if (execute(a, input) != execute(b, input)) {
      r.counterexample = input;
      break;
    }
  }
  return r;
}

}  // namespace revc
