// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "revc/circuit.hpp"
#include "revc/lifting.hpp"
#include "revc/machine.hpp"
#include "revc/optimizer.hpp"
#include "revc/syntax.hpp"
#include "revc/typecheck.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"
#include "support/monad_laws.hpp"
#include "support/oracles.hpp"

using namespace revc;
using testing::bits_of;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::string> small_corpus() {
  std::vector<std::string> out;
  for (const auto& name : testing::circuit_corpus())
    if (testing::load(name).interface.arity <= 10) out.push_back(name);
  return out;
}

Circuit synthesized(const std::string& name) {
  RunResult r = synth(testing::load(name));
  if (r.status != RunResult::Finished) throw std::runtime_error(name + ": synthesis " + to_string(r.status));
  return r.circuit;
}

Outcome simulation_sweep() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t programs = 0, vectors = 0;
  for (const auto& name : small_corpus()) {
    CompiledProgram p = testing::load(name);
    RunResult r = synth(p);
    o.require(r.status == RunResult::Finished, name + ": synthesis failed");
    if (r.status != RunResult::Finished) continue;
    std::size_t n = p.interface.arity;
    for (unsigned x = 0; x < (1u << n); ++x) {
      auto u = bits_of(x, static_cast<unsigned>(n));
      BitsResult e = eval_on_bits(p, u);
      bool ok = e.eval.status == EvalResult::Value && execute(r.circuit, u) == e.bits;
      o.require(ok, name + ": mismatch on input " + bits_to_string(u));
      ++vectors;
    }
    ++programs;
  }
  double s = seconds_since(t0);
  o.require(s < 60.0, "sweep took too long");
  o.detail << (o.detail.tellp() ? "; " : "") << programs << " programs, " << vectors << " inputs, "
           << s << " s";
  return o;
}

Outcome residual_trace() {
  Outcome o;
  std::size_t checks = 0;
  for (const char* name : {"bit_adder", "adder2"}) {
    CompiledProgram p = testing::load(name);
    auto inputs = input_vectors(p.interface.arity, 10);
    testing::TraceReport rep = testing::check_residual_trace(p, inputs);
    o.require(rep.ok(), std::string(name) + ": " + (rep.ok() ? "" : rep.violations.front()));
    o.require(rep.steps > 0, std::string(name) + ": empty trace");
    checks += rep.checks;
  }
  o.detail << (o.detail.tellp() ? "; " : "") << checks << " step/input checks";
  return o;
}

Outcome cbv_example() {
  Outcome o;
  TypingContext ctx;
  ctx.bind(Name("x"), bit_type());
  TermPtr t = elaborate(ctx, parse_term("(\\y. and y y) (not x)"), bit_type());
  t = subst(t, Name("x"), wire_ref(0));
  RunResult r = run(empty_machine(t, 1));
  o.require(r.status == RunResult::Finished, "synthesis did not finish");
  const Circuit& c = r.circuit;
  o.require(c.num_wires == 3, "expected 3 wires");
  o.require(c.gates.chronological() == std::vector<Gate>{cnot(1, 0, false), toffoli(2, 1, 1)},
            "gates differ from Gate(1;-0), Gate(2;+1,+1)");
  o.require(execute(c, {false}) == std::vector<bool>{true} && execute(c, {true}) == std::vector<bool>{false},
            "does not compute NOT x");
  o.detail << (o.detail.tellp() ? "; " : "") << c.num_wires << " wires:";
  for (const auto& g : c.gates.chronological()) o.detail << " " << to_string(g);
  return o;
}

Outcome shape_error() {
  Outcome o;
  TypingContext ctx;
  ctx.bind(Name("x"), bit_type());
  TermPtr t;
  try {
    t = elaborate(ctx, parse_term("if x then nil else [tt]"), list_type(bit_type()));
  } catch (const TypeError& e) {
    o.require(false, std::string("rejected by the typechecker: ") + e.what());
    return o;
  }
  RunResult r = run(empty_machine(subst(t, Name("x"), wire_ref(0)), 1));
  o.require(r.status == RunResult::ErrHalt, "machine did not halt on Err: " + to_string(r.status));
  o.detail << (o.detail.tellp() ? "; " : "") << "typechecks; machine " << to_string(r.status);
  return o;
}

Outcome lifted_equivalence() {
  Outcome o;
  for (const char* name : {"not", "and", "mux", "bit_adder", "adder2"}) {
    CompiledProgram p = testing::load(name);
    RunResult s = synth(p);
    LiftedRun l = lifted_run(p);
    o.require(s.status == RunResult::Finished && l.status == LiftedRun::Finished,
              std::string(name) + ": a run did not finish");
    o.require(l.circuit.gates == s.circuit.gates, std::string(name) + ": gate lists differ");
    o.require(l.circuit == s.circuit, std::string(name) + ": circuits differ");
  }
  std::size_t laws = 0;
  for (const auto& inst : testing::monad_law_instances()) {
    std::string why = testing::check_law(inst);
    o.require(why.empty(), why);
    ++laws;
  }
  o.detail << (o.detail.tellp() ? "; " : "") << "5 programs, " << laws << " monad-law instances";
  return o;
}

Outcome bennett_embedding() {
  Outcome o;
  Circuit tf = synthesized("adder2");
  Circuit e = bennett(tf);
  std::size_t n = tf.inputs.size(), m = tf.outputs.size();
  o.require(n + m <= 10, "too many input bits");
  auto aux = tf.auxiliary_wires();
  for (unsigned x = 0; x < (1u << (n + m)); ++x) {
    auto in = bits_of(x, static_cast<unsigned>(n + m));
    Valuation full = execute_full(e, in);
    std::vector<bool> xs(in.begin(), in.begin() + static_cast<long>(n));
    std::vector<bool> f = execute(tf, xs);
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) ok = ok && bool(full[e.inputs[k]]) == in[k];
    for (std::size_t k = 0; k < m; ++k) ok = ok && bool(full[e.inputs[n + k]]) == (in[n + k] != f[k]);
    o.require(ok, "wrong output on " + bits_to_string(in));
    for (WireId w : aux) o.require(full[w] == 0, "auxiliary wire not restored on " + bits_to_string(in));
  }
  o.detail << (o.detail.tellp() ? "; " : "") << (1u << (n + m)) << " inputs, " << aux.size()
           << " auxiliary wires restored";
  return o;
}

Outcome optimizer() {
  Outcome o;
  std::size_t raw_gates = 0, opt_gates = 0;
  for (const auto& name : small_corpus()) {
    Circuit c = synthesized(name);
    Circuit r = optimize(c);
    o.require(r.gate_count() <= c.gate_count(), name + ": gate count increased");
    o.require(r.num_wires <= c.num_wires, name + ": wire count increased");
    o.require(r.inputs.size() == c.inputs.size() && r.outputs.size() == c.outputs.size(),
              name + ": interface changed");
    std::size_t n = c.inputs.size();
    for (unsigned x = 0; x < (1u << n); ++x) {
      auto u = bits_of(x, static_cast<unsigned>(n));
      o.require(execute(c, u) == execute(r, u), name + ": function changed on " + bits_to_string(u));
    }
    raw_gates += c.gate_count();
    opt_gates += r.gate_count();
  }
  Circuit adder = synthesized("adder4");
  Circuit small = optimize(adder);
  o.require(small.gate_count() < adder.gate_count(), "adder4 not reduced");
  double ratio = static_cast<double>(adder.gate_count()) / static_cast<double>(small.gate_count());
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "adder4 %zu -> %zu gates, %u -> %u wires, ratio %.2fx (stretch target 10x: %s); corpus %zu -> %zu",
                adder.gate_count(), small.gate_count(), adder.num_wires, small.num_wires, ratio,
                ratio >= 10.0 ? "met" : "not met", raw_gates, opt_gates);
  o.detail << (o.detail.tellp() ? "; " : "") << buf;
  return o;
}

Circuit random_circuit(std::mt19937_64& rng, std::uint32_t wires, std::size_t gates) {
  Circuit c = identity_circuit(wires);
  std::uniform_int_distribution<WireId> pick(0, wires - 1);
  for (std::size_t k = 0; k < gates; ++k) {
    Gate g(pick(rng));
    unsigned ncontrols = static_cast<unsigned>(rng() % 4);
    for (unsigned j = 0; j < ncontrols; ++j) {
      WireId w = pick(rng);
      if (w != g.target) g.controls.push_back({w, rng() % 2 == 0});
    }
    c.gates.emit(std::move(g));
  }
  return c;
}

Outcome circuit_model() {
  Outcome o;
  std::mt19937_64 rng(2718);
  std::vector<Circuit> cs;
  for (const auto& name : testing::circuit_corpus()) {
    Circuit c = synthesized(name);
    if (c.num_wires <= 10) cs.push_back(c);
  }
  for (std::uint32_t n = 1; n <= 10; ++n)
    for (int i = 0; i < 5; ++i) cs.push_back(random_circuit(rng, n, rng() % 20));
  std::size_t valuations = 0;
  for (const Circuit& c : cs) {
    Circuit inv = invert(c);
    for (unsigned x = 0; x < (1u << c.num_wires); ++x) {
      Valuation v(c.num_wires);
      for (std::uint32_t k = 0; k < c.num_wires; ++k) v[k] = (x >> k) & 1u;
      Valuation w = v;
      apply_gates(c.gates, w);
      apply_gates(inv.gates, w);
      o.require(v == w, "inverse does not undo a circuit");
      ++valuations;
    }
  }
  std::size_t compositions = 0;
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (int i = 0; i < 20; ++i) {
      Circuit g = random_circuit(rng, n, rng() % 10);
      Circuit h = random_circuit(rng, n, rng() % 10);
      Circuit gh = compose(g, h);
      for (unsigned x = 0; x < (1u << n); ++x) {
        auto u = bits_of(x, n);
        o.require(execute(gh, u) == execute(h, execute(g, u)), "composition mismatch");
      }
      ++compositions;
    }
  }
  // corpus embeddings composed with a NOT on every output
  for (const char* name : {"and", "bit_adder", "adder2"}) {
    Circuit g = synthesized(name);
    Circuit h = identity_circuit(static_cast<std::uint32_t>(g.outputs.size()));
    for (WireId w = 0; w < h.num_wires; ++w) h.gates.emit(not_gate(w));
    Circuit gh = compose(g, h);
    for (const auto& u : input_vectors(g.inputs.size(), 10))
      o.require(execute(gh, u) == execute(h, execute(g, u)), std::string(name) + ": composition mismatch");
    ++compositions;
  }
  o.detail << (o.detail.tellp() ? "; " : "") << valuations << " full valuations, " << compositions
           << " compositions";
  return o;
}

Outcome safety() {
  Outcome o;
  constexpr std::uint64_t fuel = 20'000;
  testing::TermGen closed(2024);
  std::size_t values = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = closed.closed(30);
    o.require(s.term->size() <= 30, "generated term too large");
    testing::SafetyReport r = testing::eval_safety(s.term, s.type, fuel);
    o.require(r.violation.empty(), "eval: " + r.violation);
    values += r.finished;
  }
  testing::TermGen open(7);
  std::vector<Name> inputs = {Name("x0"), Name("x1"), Name("x2")};
  std::size_t finished = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = open.open_first_order(inputs, 30);
    TermPtr t = s.term;
    for (std::size_t k = 0; k < inputs.size(); ++k) t = subst(t, inputs[k], wire_ref(static_cast<WireId>(k)));
    testing::SafetyReport r = testing::machine_safety(t, 3, s.type, fuel);
    o.require(r.violation.empty(), "machine: " + r.violation);
    finished += r.finished;
  }
  o.detail << (o.detail.tellp() ? "; " : "") << "eval: 1000 terms, " << values << " values; machine: 1000 terms, "
           << finished << " finished";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"simulation sweep", simulation_sweep},
      {"residual trace invariant", residual_trace},
      {"call-by-value example", cbv_example},
      {"shape error", shape_error},
      {"lifted run equivalence and monad laws", lifted_equivalence},
      {"bennett embedding", bennett_embedding},
      {"optimizer soundness and progress", optimizer},
      {"circuit model", circuit_model},
      {"safety suites", safety},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].name << ": "
              << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
