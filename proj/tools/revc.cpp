// revc: command-line driver for the compiler and circuit tools.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "revc/circuit.hpp"
#include "revc/eval.hpp"
#include "revc/lifting.hpp"
#include "revc/machine.hpp"
#include "revc/optimizer.hpp"
#include "revc/pipeline.hpp"
#include "revc/pretty.hpp"
#include "revc/syntax.hpp"
#include "revc/typecheck.hpp"

namespace {

using namespace revc;

enum Exit { kOk = 0, kUser = 1, kSemantic = 2, kResource = 3 };

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string entry;
  std::uint64_t fuel = kDefaultFuel;
  unsigned max_bits = 10;
  std::string passes;
  std::string trace;
  std::string bits;
  std::vector<std::string> args;
  int opt_verify = -1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Options& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw UserError("cannot write '" + o.output + "'");
  out << text;
}

SourceProgram load_program(const Options& o) {
  SourceProgram p = parse_program(read_file(o.input));
  if (!o.entry.empty()) {
    Name e(o.entry);
    if (!p.find(e)) throw UserError("no definition named '" + o.entry + "'");
    p.entry = e;
  }
  return p;
}

CompiledProgram load_compiled(const Options& o) { return compile(load_program(o)); }

Circuit load_circuit(const std::string& path) { return from_json(read_file(path)); }

bool is_json(const std::string& path) { return path.size() >= 5 && path.substr(path.size() - 5) == ".json"; }

int report_eval_failure(EvalResult::Status s, const std::string& reason) {
  switch (s) {
    case EvalResult::ErrHalt:
      std::cerr << "error: evaluation reached err\n";
      return kSemantic;
    case EvalResult::OutOfFuel:
      std::cerr << "error: out of fuel\n";
      return kResource;
    case EvalResult::Stuck:
      std::cerr << "error: evaluation is stuck: " << reason << "\n";
      return kSemantic;
    case EvalResult::Value:
      break;
  }
  return kOk;
}

int report_run_failure(const RunResult& r) {
  switch (r.status) {
    case RunResult::ErrHalt:
      std::cerr << "error: machine halted on Err: " << r.reason << "\n";
      return kSemantic;
    case RunResult::OutOfFuel:
      std::cerr << "error: out of fuel after " << r.steps << " steps\n";
      return kResource;
    case RunResult::Stuck:
      std::cerr << "error: machine is stuck: " << r.reason << "\n";
      return kSemantic;
    case RunResult::Finished:
      break;
  }
  return kOk;
}

int cmd_check(const Options& o) {
  SourceProgram p = load_program(o);
  SourceProgram e = elaborate_program(p);
  const Definition& d = e.entry_definition();
  std::cout << d.name.str() << " : " << to_string(d.type) << "\n";
  return kOk;
}

int cmd_run(const Options& o) {
  SourceProgram e = elaborate_program(load_program(o));
  TermPtr t = e.resolve_entry();
  TypePtr ty = e.entry_definition().type;
  for (const auto& text : o.args) {
    if (ty->kind != TypeKind::Arrow) throw UserError("too many arguments");
    TermPtr arg;
    try {
      arg = elaborate({}, parse_term(text), ty->dom());
    } catch (const ParseError& err) {
      throw UserError("--arg '" + text + "': " + err.what());
    } catch (const TypeError& err) {
      throw UserError("--arg '" + text + "': " + err.what());
    }
    t = app(t, arg);
    ty = ty->cod();
  }
  EvalResult r = eval(t, o.fuel);
  if (r.status != EvalResult::Value) return report_eval_failure(r.status, r.reason);
  std::cout << pretty(r.term) << "\n";
  return kOk;
}

int cmd_synth(const Options& o) {
  CompiledProgram prog = load_compiled(o);
  std::ofstream trace;
  MachineObserver observer;
  std::uint64_t step = 0;
  if (!o.trace.empty()) {
    trace.open(o.trace);
    if (!trace) throw UserError("cannot write '" + o.trace + "'");
    observer = [&](const TermPtr&, const MachineOutcome& out, const MachineState& s, std::size_t) {
      nlohmann::ordered_json line;
      line["step"] = ++step;
      line["rule"] = to_string(out.kind);
      line["term"] = pretty(s.term);
      line["gates"] = s.circuit.size();
      line["next_fresh"] = s.next_fresh;
      trace << line.dump() << "\n";
    };
  }
  RunResult r = synth(prog, o.fuel, observer);
  if (r.status != RunResult::Finished) return report_run_failure(r);
  write_output(o, to_json(r.circuit) + "\n");
  return kOk;
}

int cmd_sim(const Options& o) {
  Circuit c = load_circuit(o.input);
  for (char ch : o.bits)
    if (ch != '0' && ch != '1') throw UserError("--input must be a string of 0 and 1");
  std::vector<bool> in = bits_from_string(o.bits);
  if (in.size() != c.inputs.size())
    throw UserError("circuit has " + std::to_string(c.inputs.size()) + " inputs, got " +
                    std::to_string(in.size()) + " bits");
  std::cout << bits_to_string(execute(c, in)) << "\n";
  return kOk;
}

int cmd_verify(const Options& o) {
  CompiledProgram prog = load_compiled(o);
  RunResult r = synth(prog, o.fuel);
  if (r.status != RunResult::Finished) return report_run_failure(r);
  VerifyReport rep = verify(prog, r.circuit, o.max_bits, o.fuel);
  std::cout << rep.matched << "/" << rep.checked << " inputs match"
            << (rep.exhaustive ? "" : " (sampled)") << "\n";
  if (!rep.ok()) {
    std::cerr << "mismatch: " << rep.detail << "\n";
    return kSemantic;
  }
  return kOk;
}

int cmd_opt(const Options& o) {
  Circuit c = load_circuit(o.input);
  std::vector<Pass> passes;
  try {
    passes = o.passes.empty() ? default_passes() : parse_passes(o.passes);
  } catch (const std::invalid_argument& e) {
    throw UserError(e.what());
  }
  OptimizeResult r = optimize_with(c, passes);
  std::cerr << "gates " << c.gate_count() << " -> " << r.circuit.gate_count() << ", wires "
            << c.num_wires << " -> " << r.circuit.num_wires << "\n";
  write_output(o, to_json(r.circuit) + "\n");
  if (o.opt_verify >= 0) {
    EquivalenceReport eq = check_equivalent(c, r.circuit, static_cast<unsigned>(o.opt_verify));
    if (!eq.ok()) {
      std::cerr << "error: optimized circuit differs on input " << bits_to_string(*eq.counterexample)
                << "\n";
      return kSemantic;
    }
    std::cerr << eq.checked << "/" << eq.checked << " inputs match\n";
  }
  if (!r.converged) {
    std::cerr << "warning: no fixpoint after " << r.iterations << " iterations\n";
    return kResource;
  }
  return kOk;
}

int cmd_lift(const Options& o) {
  SourceProgram e = elaborate_program(load_program(o));
  write_output(o, lifted_source(lift_program(e)));
  return kOk;
}

int cmd_lifted_run(const Options& o) {
  CompiledProgram prog = load_compiled(o);
  LiftedRun r = lifted_run(prog, o.fuel);
  if (r.status != LiftedRun::Finished) {
    EvalResult::Status s = r.status == LiftedRun::ErrHalt     ? EvalResult::ErrHalt
                           : r.status == LiftedRun::OutOfFuel ? EvalResult::OutOfFuel
                                                              : EvalResult::Stuck;
    return report_eval_failure(s, r.reason);
  }
  write_output(o, to_json(r.circuit) + "\n");
  return kOk;
}

int cmd_render(const Options& o) {
  Circuit c;
  if (is_json(o.input)) {
    c = load_circuit(o.input);
  } else {
    RunResult r = synth(load_compiled(o), o.fuel);
    if (r.status != RunResult::Finished) return report_run_failure(r);
    c = r.circuit;
  }
  write_output(o, render_ascii(c));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revc: reversible circuits from PCF programs"};
  app.require_subcommand(1);
  Options o;

  auto add_fuel = [&](CLI::App* sub) {
    sub->add_option("--fuel", o.fuel, "evaluation step limit")->check(CLI::PositiveNumber);
  };
  auto add_entry = [&](CLI::App* sub) { sub->add_option("--entry", o.entry, "entry definition"); };
  auto add_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", o.input, what)->required();
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "output file"); };

  auto* check = app.add_subcommand("check", "typecheck a program");
  add_input(check, "program");
  add_entry(check);

  auto* run = app.add_subcommand("run", "evaluate the entry applied to arguments");
  add_input(run, "program");
  add_entry(run);
  add_fuel(run);
  run->add_option("--arg", o.args, "argument term");

  auto* synth_cmd = app.add_subcommand("synth", "synthesize a circuit with the abstract machine");
  add_input(synth_cmd, "program");
  add_entry(synth_cmd);
  add_fuel(synth_cmd);
  add_output(synth_cmd);
  synth_cmd->add_option("--trace", o.trace, "write one JSON line per machine step");

  auto* sim = app.add_subcommand("sim", "simulate a circuit");
  add_input(sim, "circuit JSON");
  sim->add_option("--input", o.bits, "input bits, one character per input wire")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check the synthesized circuit against evaluation");
  add_input(verify_cmd, "program");
  add_entry(verify_cmd);
  add_fuel(verify_cmd);
  verify_cmd->add_option("--max-bits", o.max_bits, "exhaustive up to this many inputs")
      ->check(CLI::Range(0u, 24u));

  auto* opt = app.add_subcommand("opt", "optimize a circuit");
  add_input(opt, "circuit JSON");
  add_output(opt);
  opt->add_option("--passes", o.passes, "comma-separated: constant,dead,copy,xor,shuffle");
  opt->add_option("--verify", o.opt_verify, "check equivalence up to this many input bits")
      ->check(CLI::Range(0, 24));

  auto* lift = app.add_subcommand("lift", "print the monadic lifting of a program");
  add_input(lift, "program");
  add_output(lift);

  auto* lifted = app.add_subcommand("lifted-run", "synthesize a circuit through the lifting");
  add_input(lifted, "program");
  add_entry(lifted);
  add_fuel(lifted);
  add_output(lifted);

  auto* render = app.add_subcommand("render", "draw a circuit as ASCII art");
  add_input(render, "circuit JSON or program");
  add_entry(render);
  add_fuel(render);
  add_output(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUser;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    if (name == "check") return cmd_check(o);
    if (name == "run") return cmd_run(o);
    if (name == "synth") return cmd_synth(o);
    if (name == "sim") return cmd_sim(o);
    if (name == "verify") return cmd_verify(o);
    if (name == "opt") return cmd_opt(o);
    if (name == "lift") return cmd_lift(o);
    if (name == "lifted-run") return cmd_lifted_run(o);
    if (name == "render") return cmd_render(o);
  } catch (const ParseError& e) {
    std::cerr << o.input << ":" << e.what() << "\n";
    return kUser;
  } catch (const TypeError& e) {
    std::cerr << o.input << ":" << e.what() << "\n";
    return kUser;
  } catch (const InterfaceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUser;
  } catch (const FormatError& e) {
    std::cerr << "error: " << o.input << ": " << e.what() << "\n";
    return kUser;
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUser;
  } catch (const LiftError& e) {
    std::cerr << "error: lifting failed: " << e.what() << "\n";
    return kSemantic;
  }
  return kUser;
}
