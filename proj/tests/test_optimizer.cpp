#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "revc/machine.hpp"
#include "revc/optimizer.hpp"
#include "support/corpus.hpp"

using namespace revc;
using testing::bits_of;

namespace {

Circuit make(std::uint32_t wires, std::vector<WireId> inputs, std::vector<Gate> gates,
             std::vector<WireId> outputs) {
  Circuit c;
  c.num_wires = wires;
  c.inputs = std::move(inputs);
  c.gates = RawCircuit(std::move(gates));
  c.outputs = std::move(outputs);
  return c;
}

// Outputs agree on every input vector, computed by direct simulation.
void check_same_function(const Circuit& a, const Circuit& b) {
  REQUIRE(a.inputs.size() == b.inputs.size());
  REQUIRE(a.outputs.size() == b.outputs.size());
  std::size_t n = a.inputs.size();
  REQUIRE(n <= 12);
  for (unsigned x = 0; x < (1u << n); ++x) {
    auto in = bits_of(x, static_cast<unsigned>(n));
    CAPTURE(x);
    CHECK(execute(a, in) == execute(b, in));
  }
}

// Circuits shaped like synthesized ones: a few inputs, auxiliary wires starting
// false, some fan-outs onto fresh targets.
Circuit random_circuit(std::mt19937_64& rng) {
  std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 4);
  std::uint32_t wires = n + 1 + static_cast<std::uint32_t>(rng() % 6);
  Circuit c;
  c.num_wires = wires;
  for (WireId w = 0; w < n; ++w) c.inputs.push_back(w);
  std::size_t gates = rng() % 14;
  std::uniform_int_distribution<WireId> pick(0, wires - 1);
  for (std::size_t k = 0; k < gates; ++k) {
    Gate g(pick(rng));
    unsigned ncontrols = static_cast<unsigned>(rng() % 3);
    for (unsigned j = 0; j < ncontrols; ++j) {
      WireId w = pick(rng);
      if (w != g.target) g.controls.push_back({w, rng() % 3 != 0});
    }
    c.gates.emit(std::move(g));
  }
  for (WireId w = 0; w < wires; ++w)
    if (rng() % 3 == 0) c.outputs.push_back(w);
  if (c.outputs.empty()) c.outputs.push_back(wires - 1);
  return c;
}

std::vector<Circuit> corpus_circuits() {
  std::vector<Circuit> out;
  for (const auto& name : testing::circuit_corpus()) {
    CompiledProgram p = testing::load(name);
    if (p.interface.arity > 10) continue;
    RunResult r = synth(p);
    REQUIRE(r.status == RunResult::Finished);
    out.push_back(r.circuit);
  }
  return out;
}

}  // namespace

TEST_CASE("constant wires") {
  SUBCASE("positive control on a wire that stays false") {
    Circuit c = make(3, {0}, {cnot(2, 1)}, {0, 2});
    Circuit r = remove_constant_gates(c);
    CHECK(r.gate_count() == 0);
    check_same_function(c, r);
  }
  SUBCASE("negative control on a wire that stays false") {
    Circuit c = make(3, {0}, {cnot(2, 1, false)}, {0, 2});
    Circuit r = remove_constant_gates(c);
    REQUIRE(r.gate_count() == 1);
    CHECK(r.gates.chronological()[0] == not_gate(2));
    check_same_function(c, r);
  }
  SUBCASE("xor of two constants") {
    CompiledProgram p = compile_source("def main : bit -> bit\ndef main x = xor ff ff\n");
    Circuit c = synth(p).circuit;
    CHECK(c.gate_count() == 2);
    Circuit r = remove_constant_gates(c);
    CHECK(r.gate_count() == 0);
    check_same_function(c, r);
  }
  SUBCASE("inputs are not constant") {
    Circuit c = make(2, {0}, {cnot(1, 0)}, {1});
    CHECK(remove_constant_gates(c) == c);
  }
}

TEST_CASE("copy elimination") {
  SUBCASE("fan-out whose source dies") {
    Circuit c = make(4, {0, 1}, {cnot(2, 0), toffoli(3, 2, 1)}, {3});
    Circuit r = compact_wires(eliminate_copies(c));
    CHECK(r.gate_count() == c.gate_count() - 1);
    CHECK(r.num_wires == c.num_wires - 1);
    check_same_function(c, r);
  }
  SUBCASE("copy is an output") {
    Circuit c = make(2, {0}, {cnot(1, 0)}, {1});
    CHECK(eliminate_copies(c) == c);
  }
  SUBCASE("source still controlled later") {
    Circuit c = synth(testing::load("cbv_demo")).circuit;
    CHECK(eliminate_copies(c) == c);
  }
  SUBCASE("later reads are renamed to the source") {
    Circuit c = make(4, {0, 1}, {cnot(2, 0), toffoli(3, 2, 1)}, {3});
    Circuit r = eliminate_copies(c);
    REQUIRE(r.gate_count() == 1);
    CHECK(r.gates.chronological()[0] == toffoli(3, 0, 1));
  }
  SUBCASE("source is an output") {
    Circuit c = make(2, {0}, {cnot(1, 0)}, {0, 1});
    CHECK(eliminate_copies(c) == c);
  }
  SUBCASE("no constant targets") {
    Circuit c = make(2, {0, 1}, {cnot(1, 0)}, {0, 1});
    CHECK(eliminate_copies(c) == c);
  }
}

TEST_CASE("xor fusion") {
  SUBCASE("c = a xor b") {
    Circuit c = make(4, {0, 1}, {cnot(2, 0), cnot(2, 1), cnot(3, 2)}, {3});
    Circuit r = fuse_xor(c);
    REQUIRE(r.gate_count() == 2);
    CHECK(r.gates.chronological()[0] == cnot(1, 0));
    CHECK(r.gates.chronological()[1] == cnot(3, 1));
    check_same_function(c, r);
  }
  SUBCASE("blocked when the xor is an output") {
    Circuit c = make(3, {0, 1}, {cnot(2, 0), cnot(2, 1)}, {2});
    CHECK(fuse_xor(c) == c);
  }
  SUBCASE("blocked when b is controlled later") {
    Circuit c = make(4, {0, 1}, {cnot(2, 0), cnot(2, 1), cnot(3, 1)}, {2, 3});
    CHECK(fuse_xor(c) == c);
  }
  SUBCASE("sound on random circuits") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      Circuit c = random_circuit(rng);
      check_same_function(c, fuse_xor(c));
    }
  }
}

TEST_CASE("dead gates") {
  Circuit garbage = make(2, {0}, {not_gate(1)}, {0});
  CHECK(remove_dead_gates(garbage).gate_count() == 0);

  Circuit live = make(2, {0, 1}, {cnot(1, 0), not_gate(0)}, {0, 1});
  CHECK(remove_dead_gates(live) == live);

  Circuit chain = make(4, {0}, {cnot(1, 0), cnot(2, 1), cnot(3, 0)}, {3});
  Circuit r = remove_dead_gates(chain);
  CHECK(r.gate_count() == 1);
  check_same_function(chain, r);

  Circuit adder = synth(testing::load("adder4")).circuit;
  Circuit a = remove_dead_gates(adder);
  CHECK(a.gate_count() < adder.gate_count());
  check_same_function(adder, a);
}

TEST_CASE("shuffling") {
  Circuit c = make(3, {0, 1, 2}, {cnot(1, 0), not_gate(2)}, {0, 1, 2});
  Circuit r = shuffle_right(c);
  CHECK(r.gates.chronological() == std::vector<Gate>{not_gate(2), cnot(1, 0)});
  CHECK(shuffle_right(r) == r);

  Circuit blocked = make(2, {0, 1}, {cnot(1, 0), not_gate(0)}, {0, 1});
  CHECK(shuffle_right(blocked) == blocked);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    Circuit x = random_circuit(rng);
    Circuit s = shuffle_right(x);
    CHECK(s.gate_count() == x.gate_count());
    CHECK(shuffle_right(s) == s);
    check_same_function(x, s);
  }
}

TEST_CASE("shuffling exposes a copy") {
  Circuit raw = synth(testing::load("shuffle_copy")).circuit;
  Circuit without = compact_wires(eliminate_copies(raw));
  Circuit with = compact_wires(eliminate_copies(shuffle_right(raw)));
  CHECK(with.num_wires == raw.num_wires - 1);
  CHECK(with.num_wires < without.num_wires);
  check_same_function(raw, with);

  Circuit best = optimize(raw);
  CHECK(best.num_wires <= raw.num_wires - 1);
  check_same_function(raw, best);
}

TEST_CASE("facts are sound") {
  std::mt19937_64 rng(41);
  std::vector<Circuit> cs = corpus_circuits();
  for (int i = 0; i < 300; ++i) cs.push_back(random_circuit(rng));
  for (const Circuit& c : cs) {
    WireFacts f = analyze(c);
    REQUIRE(f.size() == c.gate_count() + 1);
    std::size_t n = c.inputs.size();
    for (const auto& in : input_vectors(n, 8)) {
      Valuation v(c.num_wires, 0);
      for (std::size_t k = 0; k < n; ++k) v[c.inputs[k]] = in[k];
      for (std::size_t k = 0; k <= c.gate_count(); ++k) {
        for (WireId w = 0; w < c.num_wires; ++w) {
          const WireFact& fact = f[k][w];
          if (fact.kind == WireFact::ConstFalse) CHECK(v[w] == 0);
          if (fact.kind == WireFact::ConstTrue) CHECK(v[w] == 1);
          if (fact.kind == WireFact::CopyOf) CHECK(v[w] == v[fact.source]);
        }
        if (k < c.gate_count()) apply_gate(c.gates.chronological()[k], v);
      }
    }
  }
}

TEST_CASE("every pass is sound on the corpus") {
  for (const Circuit& c : corpus_circuits()) {
    for (Pass p : default_passes()) {
      CAPTURE(to_string(p));
      Circuit r = apply_pass(p, c);
      CHECK_NOTHROW(r.validate());
      CHECK(r.gate_count() <= c.gate_count());
      check_same_function(c, r);
    }
  }
}

TEST_CASE("every pass is sound on random circuits") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 300; ++i) {
    Circuit c = random_circuit(rng);
    for (Pass p : default_passes()) check_same_function(c, apply_pass(p, c));
    Circuit o = optimize(c);
    check_same_function(c, o);
  }
}

TEST_CASE("optimize") {
  for (const Circuit& c : corpus_circuits()) {
    Circuit o = optimize(c);
    CHECK(o.gate_count() <= c.gate_count());
    CHECK(o.num_wires <= c.num_wires);
    CHECK_NOTHROW(o.validate());
    check_same_function(c, o);
    CHECK(optimize(o) == o);
    CHECK(check_equivalent(c, o).ok());
  }

  Circuit adder = synth(testing::load("adder4")).circuit;
  Circuit small = optimize(adder);
  CHECK(small.gate_count() < adder.gate_count());

  Circuit one = make(2, {0, 1}, {cnot(1, 0)}, {0, 1});
  CHECK(optimize(one) == one);

  OptimizeResult r = optimize_with(adder, default_passes());
  CHECK(r.converged);
  CHECK(r.iterations < kMaxOptimizeIterations);
}

TEST_CASE("compaction") {
  Circuit c = make(5, {0, 3}, {cnot(3, 0)}, {3});
  Circuit r = compact_wires(c);
  CHECK(r.num_wires == 2);
  CHECK(r.inputs == std::vector<WireId>{0, 1});
  CHECK(r.outputs == std::vector<WireId>{1});
  check_same_function(c, r);
}

TEST_CASE("pass selection") {
  CHECK(parse_passes("constant,dead,copy,xor,shuffle") == default_passes());
  CHECK(parse_passes("xor") == std::vector<Pass>{Pass::Xor});
  CHECK_FALSE(parse_pass("bogus"));
  CHECK_THROWS_AS(parse_passes("dead,bogus"), std::invalid_argument);
  for (Pass p : default_passes()) CHECK(parse_pass(to_string(p)) == p);
}

TEST_CASE("equivalence checker") {
  Circuit a = make(2, {0, 1}, {cnot(1, 0)}, {1});
  Circuit b = make(2, {0, 1}, {cnot(1, 0), not_gate(1)}, {1});
  EquivalenceReport r = check_equivalent(a, b);
  CHECK_FALSE(r.ok());
  REQUIRE(r.counterexample);
  CHECK(execute(a, *r.counterexample) != execute(b, *r.counterexample));
  CHECK(check_equivalent(a, a).ok());
  CHECK(check_equivalent(a, a).checked == 4);
  CHECK_THROWS(check_equivalent(a, identity_circuit(3)));
}
