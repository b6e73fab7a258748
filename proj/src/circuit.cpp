#include "revc/circuit.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

namespace revc {

bool Gate::uses(WireId w) const { return target == w || controlled_by(w); }

bool Gate::controlled_by(WireId w) const {
  return std::any_of(controls.begin(), controls.end(), [w](const Control& c) { return c.wire == w; });
}

WireId Gate::max_wire() const {
  WireId m = target;
  for (const auto& c : controls) m = std::max(m, c.wire);
  return m;
}

Gate not_gate(WireId target) { return Gate(target); }
Gate cnot(WireId target, WireId control, bool positive) {
  return Gate(target, {{control, positive}});
}
Gate toffoli(WireId target, WireId c1, WireId c2) {
  return Gate(target, {{c1, true}, {c2, true}});
}

std::string to_string(const Gate& g) {
  std::string out = "Gate(" + std::to_string(g.target);
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    out += i ? ", " : "; ";
    out += (g.controls[i].positive ? "+" : "-") + std::to_string(g.controls[i].wire);
  }
  return out + ")";
}

RawCircuit RawCircuit::from_newest_first(std::vector<Gate> gates) {
  std::reverse(gates.begin(), gates.end());
  return RawCircuit(std::move(gates));
}

std::vector<Gate> RawCircuit::newest_first() const { return {gates_.rbegin(), gates_.rend()}; }

std::vector<WireId> Circuit::gate_wires() const {
  std::set<WireId> ws;
  for (const auto& g : gates.chronological()) {
    ws.insert(g.target);
    for (const auto& c : g.controls) ws.insert(c.wire);
  }
  return {ws.begin(), ws.end()};
}

namespace {

std::vector<WireId> minus(const std::vector<WireId>& all, const std::vector<WireId>& drop) {
  std::set<WireId> d(drop.begin(), drop.end());
  std::vector<WireId> out;
  for (WireId w : all)
    if (!d.contains(w)) out.push_back(w);
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<WireId> Circuit::auxiliary_wires() const { return minus(gate_wires(), inputs); }
std::vector<WireId> Circuit::garbage_wires() const { return minus(gate_wires(), outputs); }

void Circuit::validate() const {
  auto distinct = [](const std::vector<WireId>& ws) {
    return std::set<WireId>(ws.begin(), ws.end()).size() == ws.size();
  };
  require(distinct(inputs), "circuit inputs are not distinct");
  require(distinct(outputs), "circuit outputs are not distinct");
  for (WireId w : inputs) require(w < num_wires, "input wire out of range");
  for (WireId w : outputs) require(w < num_wires, "output wire out of range");
  for (const auto& g : gates.chronological()) {
    require(g.max_wire() < num_wires, "gate wire out of range in " + to_string(g));
    require(!g.controlled_by(g.target), "gate controlled by its own target: " + to_string(g));
  }
}

void apply_gate(const Gate& g, Valuation& v) {
  for (const auto& c : g.controls)
    if ((v[c.wire] != 0) != c.positive) return;
  v[g.target] ^= 1;
}

void apply_gates(const RawCircuit& gates, Valuation& v) {
  for (const auto& g : gates.chronological()) apply_gate(g, v);
}

Valuation execute_full(const Circuit& c, const std::vector<bool>& input) {
  if (input.size() != c.inputs.size())
    throw std::invalid_argument("expected " + std::to_string(c.inputs.size()) + " input bits, got " +
                                std::to_string(input.size()));
  Valuation v(c.num_wires, 0);
  for (std::size_t i = 0; i < input.size(); ++i) v[c.inputs[i]] = input[i];
  apply_gates(c.gates, v);
  return v;
}

std::vector<bool> execute(const Circuit& c, const std::vector<bool>& input) {
  Valuation v = execute_full(c, input);
  std::vector<bool> out;
  out.reserve(c.outputs.size());
  for (WireId w : c.outputs) out.push_back(v[w] != 0);
  return out;
}

Circuit assemble_circuit(std::vector<WireId> inputs, RawCircuit gates, std::uint32_t num_wires,
                         const std::vector<WireId>& outputs) {
  Circuit c;
  c.inputs = std::move(inputs);
  c.gates = std::move(gates);
  c.num_wires = num_wires;
  std::set<WireId> used;
  for (WireId w : outputs) {
    if (!used.insert(w).second) {
      WireId copy = c.num_wires++;
      c.gates.emit(cnot(copy, w));
      w = copy;
    }
    c.outputs.push_back(w);
  }
  return c;
}

Circuit identity_circuit(std::uint32_t n) {
  Circuit c;
  c.num_wires = n;
  for (WireId w = 0; w < n; ++w) c.inputs.push_back(w);
  c.outputs = c.inputs;
  return c;
}

Circuit invert(const Circuit& c) {
  Circuit r;
  r.inputs = c.outputs;
  r.outputs = c.inputs;
  r.num_wires = c.num_wires;
  r.gates = RawCircuit(c.gates.newest_first());
  return r;
}

Circuit compose(const Circuit& g, const Circuit& h, std::vector<WireId>* renaming) {
  if (g.outputs.size() != h.inputs.size())
    throw std::invalid_argument("compose: " + std::to_string(g.outputs.size()) +
                                " outputs feed " + std::to_string(h.inputs.size()) + " inputs");
  constexpr WireId kUnset = ~WireId{0};
  std::vector<WireId> map(h.num_wires, kUnset);
  for (std::size_t k = 0; k < h.inputs.size(); ++k) map[h.inputs[k]] = g.outputs[k];
  WireId next = g.num_wires;
  for (WireId w = 0; w < h.num_wires; ++w)
    if (map[w] == kUnset) map[w] = next++;

  Circuit out;
  out.inputs = g.inputs;
  out.num_wires = next;
  out.gates = g.gates;
  for (const auto& gate : h.gates.chronological()) {
    Gate r(map[gate.target]);
    for (const auto& c : gate.controls) r.controls.push_back({map[c.wire], c.positive});
    out.gates.emit(std::move(r));
  }
  for (WireId w : h.outputs) out.outputs.push_back(map[w]);
  if (renaming) *renaming = std::move(map);
  return out;
}

Circuit bennett(const Circuit& tf) {
  Circuit out;
  out.inputs = tf.inputs;
  out.num_wires = tf.num_wires + static_cast<std::uint32_t>(tf.outputs.size());
  out.gates = tf.gates;
  for (std::size_t k = 0; k < tf.outputs.size(); ++k) {
    WireId y = tf.num_wires + static_cast<WireId>(k);
    out.inputs.push_back(y);
    out.gates.emit(cnot(y, tf.outputs[k]));
  }
  for (const auto& g : tf.gates.newest_first()) out.gates.emit(g);
  out.outputs = out.inputs;
  return out;
}

Circuit normalize(const Circuit& c) {
  Circuit out = c;
  std::vector<Gate> gates;
  for (const auto& g : c.gates.chronological()) {
    Gate n(g.target);
    bool contradictory = false;
    for (const auto& ctl : g.controls) {
      auto it = std::find_if(n.controls.begin(), n.controls.end(),
                             [&](const Control& x) { return x.wire == ctl.wire; });
      if (it == n.controls.end())
        n.controls.push_back(ctl);
      else if (it->positive != ctl.positive)
        contradictory = true;
    }
    if (!contradictory) gates.push_back(std::move(n));
  }
  out.gates = RawCircuit(std::move(gates));
  return out;
}

std::string to_json(const Circuit& c) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["num_wires"] = c.num_wires;
  j["inputs"] = c.inputs;
  j["outputs"] = c.outputs;
  ordered_json gates = ordered_json::array();
  for (const auto& g : c.gates.chronological()) {
    ordered_json controls = ordered_json::array();
    for (const auto& ctl : g.controls) controls.push_back({{"wire", ctl.wire}, {"positive", ctl.positive}});
    gates.push_back({{"target", g.target}, {"controls", std::move(controls)}});
  }
  j["gates"] = std::move(gates);
  return j.dump();
}

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

WireId wire_value(const nlohmann::json& j, const char* what) {
  if (!j.is_number_unsigned()) throw FormatError(std::string(what) + " must be a non-negative integer");
  auto v = j.get<std::uint64_t>();
  if (v > 0xFFFFFFF0u) throw FormatError(std::string(what) + " is too large");
  return static_cast<WireId>(v);
}

std::vector<WireId> wire_list(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<WireId> out;
  for (const auto& w : j) out.push_back(wire_value(w, what));
  return out;
}

}  // namespace

Circuit from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("circuit must be a JSON object");
  Circuit c;
  c.num_wires = wire_value(field(j, "num_wires"), "num_wires");
  c.inputs = wire_list(field(j, "inputs"), "inputs");
  c.outputs = wire_list(field(j, "outputs"), "outputs");
  const auto& gates = field(j, "gates");
  if (!gates.is_array()) throw FormatError("gates must be an array");
  for (const auto& g : gates) {
    if (!g.is_object()) throw FormatError("each gate must be an object");
    Gate gate(wire_value(field(g, "target"), "target"));
    const auto& controls = field(g, "controls");
    if (!controls.is_array()) throw FormatError("controls must be an array");
    for (const auto& ctl : controls) {
      if (!ctl.is_object()) throw FormatError("each control must be an object");
      const auto& pos = field(ctl, "positive");
      if (!pos.is_boolean()) throw FormatError("positive must be a boolean");
      gate.controls.push_back({wire_value(field(ctl, "wire"), "wire"), pos.get<bool>()});
    }
    c.gates.emit(std::move(gate));
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return c;
}

std::string render_ascii(const Circuit& c) {
  std::size_t width = std::to_string(c.num_wires ? c.num_wires - 1 : 0).size();
  std::vector<std::string> rows(c.num_wires);
  for (WireId w = 0; w < c.num_wires; ++w) {
    std::string label = std::to_string(w);
    rows[w] = std::string(width - label.size(), ' ') + label + " -";
  }
  for (const auto& g : c.gates.chronological()) {
    WireId lo = g.target, hi = g.target;
    for (const auto& ctl : g.controls) {
      lo = std::min(lo, ctl.wire);
      hi = std::max(hi, ctl.wire);
    }
    for (WireId w = 0; w < c.num_wires; ++w) {
      char ch = (w > lo && w < hi) ? '|' : '-';
      for (const auto& ctl : g.controls)
        if (ctl.wire == w) ch = ctl.positive ? '*' : 'o';
      if (w == g.target) ch = 'X';
      rows[w] += ch;
      rows[w] += '-';
    }
  }
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

std::vector<std::vector<bool>> input_vectors(std::size_t n, unsigned max_bits) {
  std::vector<std::vector<bool>> out;
  if (n <= max_bits) {
    std::uint64_t count = std::uint64_t{1} << n;
    out.reserve(count);
    for (std::uint64_t x = 0; x < count; ++x) {
      std::vector<bool> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (x >> i) & 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  std::mt19937_64 rng(0x5eed);
  std::uint64_t count = std::uint64_t{1} << max_bits;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng() & 1;
    out.push_back(std::move(v));
  }
  return out;
}

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

std::vector<bool> bits_from_string(std::string_view text) {
  std::vector<bool> out;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("input must consist of 0 and 1 characters");
    out.push_back(ch == '1');
  }
  return out;
}

}  // namespace revc
