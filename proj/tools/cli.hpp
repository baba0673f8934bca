#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fomc/fomc.hpp"

namespace fomc::cli {

enum ExitCode : int { kTrue = 0, kFalse = 1, kError = 2 };

namespace detail {

// Thrown for problems that are the user's fault but carry no span.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Source {
  std::string name;
  std::string text;
};

inline Source read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return {path, buf.str()};
}

// A formula argument names a file when one exists, otherwise it is the text.
inline Source formula_source(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return {"<expr>", arg};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

// Rethrows parse errors with the input's name in front of line:col.
template <class F>
auto with_source(const Source& src, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw UsageError(src.name + ":" + e.what());
  }
}

inline Structure load_structure(const std::string& path) {
  Source src = read_file(path);
  return with_source(src, [&] { return parse_structure(src.text); });
}

inline Digraph load_digraph(const std::string& path) {
  Source src = read_file(path);
  return with_source(src, [&] { return parse_digraph(src.text); });
}

inline Formula load_formula(const std::string& arg, const Vocabulary& v) {
  Source src = formula_source(arg);
  return with_source(src, [&] { return parse_formula(src.text, v); });
}

/// "x=0,y=2". Positions in diagnostics are 1-based columns of the spec.
inline Assignment parse_assignment(const std::string& spec) {
  Assignment a;
  std::size_t i = 0;
  while (i < spec.size()) {
    std::size_t end = spec.find(',', i);
    if (end == std::string::npos) end = spec.size();
    std::string item = spec.substr(i, end - i);
    std::size_t eq = item.find('=');
    SourceSpan span{1, i + 1};
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw UsageError("assign:" + std::to_string(span.line) + ":" + std::to_string(span.column) +
                       ": expected var=value");
    }
    std::string var = item.substr(0, eq);
    std::string num = item.substr(eq + 1);
    Element value = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || p != num.data() + num.size()) {
      throw UsageError("assign:1:" + std::to_string(i + eq + 2) + ": bad element '" + num + "'");
    }
    a.bind(var, value);
    i = end + 1;
  }
  return a;
}

inline std::vector<std::size_t> parse_k_list(const std::string& spec) {
  std::vector<std::size_t> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoul(item));
      } else {
        std::size_t lo = std::stoul(item.substr(0, dash));
        std::size_t hi = std::stoul(item.substr(dash + 1));
        for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad k list '" + spec + "'");
    }
  }
  if (out.empty()) throw UsageError("empty k list");
  return out;
}

inline std::vector<Engine> parse_engines(const std::string& spec) {
  std::vector<Engine> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_engine(item));
  if (out.empty()) throw UsageError("no engines given");
  return out;
}

inline int verdict(bool answer) { return answer ? kTrue : kFalse; }

struct Options {
  bool json = false;
  std::uint64_t seed = 0;

  // eval
  std::string structure;
  std::string formula;
  std::string engine = "auto";
  std::string assign;
  std::string mode = "direct";
  std::size_t cutoff = 24;

  // reduce
  std::string kind;
  std::vector<std::string> inputs;
  std::string out_prefix;
  std::size_t s = 0, t = 0, k = 0;
  bool full_translation = false;

  // reach
  std::string graph;
  std::string algo = "bfs";
  std::optional<std::size_t> bound;
  std::size_t kary = 2;
  std::size_t unit_scale = 16;

  // gen
  std::size_t n = 4;
  double density = 0.5;
  bool functions = false;
  bool allow_singleton = false;
  std::size_t vars = 2;
  std::size_t level = 1;
  bool pi = false;
  std::size_t norm = 20;
  std::optional<std::size_t> want_width;
  double edge_prob = 0.3;

  // bench
  std::string family = "chain";
  std::string ks = "4,8,16,32";
  std::string engines = "brute,dnc";
  std::size_t bench_n = 2;
  std::string csv;
  bool no_timing = false;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int eval() {
    Structure a = load_structure(o_.structure);
    Formula phi = load_formula(o_.formula, a.vocabulary());
    Assignment alpha = parse_assignment(o_.assign);
    DncOptions opts;
    opts.cutoff = o_.cutoff;
    if (o_.mode == "faithful") {
      opts.mode = DncMode::Faithful;
    } else if (o_.mode != "direct") {
      throw UsageError("unknown mode '" + o_.mode + "'");
    }
    EvalReport r = evaluate(phi, a, parse_engine(o_.engine), alpha, opts);
    if (o_.json) {
      out_ << report_json(r, classify(phi)).dump(2) << '\n';
    } else {
      out_ << (r.answer ? "true" : "false") << '\n';
    }
    return verdict(r.answer);
  }

  int classify_cmd() {
    Source src = formula_source(o_.formula);
    auto parsed = with_source(src, [&] { return parse_formula_infer(src.text); });
    out_ << classification_json(classify(parsed.first)).dump(o_.json ? 2 : -1) << '\n';
    return kTrue;
  }

  int reduce() {
    if (o_.out_prefix.empty()) throw UsageError("reduce needs --out");
    nlohmann::ordered_json j;
    j["kind"] = o_.kind;
    if (o_.kind == "stcon2mc") {
      need_inputs(1);
      Digraph g = load_digraph(o_.inputs[0]);
      auto [a, phi] = stcon_to_mc({g, o_.s, o_.t, o_.k});
      write_file(o_.out_prefix + ".fos", print_structure(a));
      write_file(o_.out_prefix + ".fo", print_formula(phi) + "\n");
      j["structure"] = o_.out_prefix + ".fos";
      j["formula"] = o_.out_prefix + ".fo";
      j["norm"] = subformula_count(phi);
    } else if (o_.kind == "mc2stcon") {
      need_inputs(2);
      Structure a = load_structure(o_.inputs[0]);
      Formula phi = load_formula(o_.inputs[1], a.vocabulary());
      McStcon r = mc_to_stcon(a, phi);
      write_file(o_.out_prefix + ".dg", print_digraph(r.instance.graph));
      j["graph"] = o_.out_prefix + ".dg";
      j["vertices"] = r.instance.graph.vertex_count();
      j["source"] = r.instance.source;
      j["target"] = r.instance.target;
      j["bound"] = r.instance.bound;
    } else if (o_.kind == "elimfun") {
      need_inputs(2);
      Structure a = load_structure(o_.inputs[0]);
      Formula phi = load_formula(o_.inputs[1], a.vocabulary());
      EliminationOptions opts;
      opts.keep_variable_atoms = !o_.full_translation;
      EliminationResult r = eliminate_functions(a, phi, opts);
      write_file(o_.out_prefix + ".fos", print_structure(r.extended.structure));
      write_file(o_.out_prefix + ".fo", print_formula(r.trans) + "\n");
      j["structure"] = o_.out_prefix + ".fos";
      j["formula"] = o_.out_prefix + ".fo";
      j["universe"] = r.extended.structure.universe_size();
      j["vars"] = num_variables(r.trans);
      j["normalized"] = classification_json(r.normalized_class);
    } else {
      throw UsageError("unknown reduction '" + o_.kind + "'");
    }
    if (o_.json) {
      out_ << j.dump(2) << '\n';
    } else {
      for (const auto& [key, value] : j.items()) {
        if (key == "kind" || value.is_object()) continue;
        out_ << key << ' ' << (value.is_string() ? value.get<std::string>() : value.dump())
             << '\n';
      }
    }
    return kTrue;
  }

  int reach() {
    Digraph g = load_digraph(o_.graph);
    g.check(o_.s);
    g.check(o_.t);
    ReachReport r;
    if (o_.algo == "bfs") {
      r.answer = bfs_reach(g, o_.s, o_.t, o_.bound);
    } else if (o_.algo == "savitch") {
      if (!o_.bound) throw UsageError("savitch needs --k");
      r = savitch_reach(g, o_.s, o_.t, *o_.bound);
    } else if (o_.algo == "ck") {
      r = ck_reach(g, o_.s, o_.t, o_.kary);
    } else if (o_.algo == "diag") {
      DiagOptions opts;
      opts.unit_scale = o_.unit_scale;
      r = diag_reach(g, o_.s, o_.t, opts);
    } else {
      throw UsageError("unknown algorithm '" + o_.algo + "'");
    }
    if (o_.json) {
      out_ << reach_json(r, o_.algo).dump(2) << '\n';
    } else {
      out_ << (r.answer ? "true" : "false") << '\n';
    }
    return verdict(r.answer);
  }

  int gen() {
    Rng rng(o_.seed);
    if (o_.kind == "structure") {
      check_universe(o_.n);
      if (o_.density < 0 || o_.density > 1) throw UsageError("density must lie in [0,1]");
      emit(".fos", print_structure(
                       random_structure(standard_vocabulary(o_.functions), o_.n, o_.density, rng)));
    } else if (o_.kind == "formula") {
      if (o_.want_width && *o_.want_width > o_.vars) {
        throw UsageError("width " + std::to_string(*o_.want_width) + " exceeds s = " +
                         std::to_string(o_.vars));
      }
      FormulaGenParams p;
      p.vocab = standard_vocabulary(o_.functions);
      p.vars = o_.vars;
      p.level = o_.level;
      p.pi = o_.pi;
      p.norm = std::max(jitter_norm(o_.norm, rng), o_.level + 1);
      emit(".fo", print_formula(random_formula(p, rng)) + "\n");
    } else if (o_.kind == "chain") {
      check_universe(o_.n);
      Digraph g = random_digraph(o_.n, o_.edge_prob, rng);
      Vertex s = rng.below(o_.n);
      Vertex t = rng.below(o_.n);
      Formula phi = chain_sentence(o_.k);
      if (o_.out_prefix.empty()) {
        out_ << print_formula(phi) << '\n';
      } else {
        write_file(o_.out_prefix + ".fo", print_formula(phi) + "\n");
        write_file(o_.out_prefix + ".fos", print_structure(chain_structure(g, s, t)));
        write_file(o_.out_prefix + ".dg", print_digraph(g));
      }
    } else {
      throw UsageError("unknown generator '" + o_.kind + "'");
    }
    return kTrue;
  }

  int bench() {
    BenchConfig cfg;
    cfg.family = o_.family;
    cfg.ks = parse_k_list(o_.ks);
    cfg.engines = parse_engines(o_.engines);
    cfg.n = o_.bench_n;
    cfg.seed = o_.seed;
    cfg.timing = !o_.no_timing;
    auto rows = run_bench(cfg);
    if (o_.csv.empty()) {
      write_bench_csv(out_, rows);
    } else {
      std::ostringstream buf;
      write_bench_csv(buf, rows);
      write_file(o_.csv, buf.str());
    }
    return kTrue;
  }

 private:
  void need_inputs(std::size_t count) const {
    if (o_.inputs.size() != count) {
      throw UsageError(o_.kind + " takes " + std::to_string(count) + " input file(s)");
    }
  }

  void check_universe(std::size_t n) const {
    if (n == 0 || (n == 1 && !o_.allow_singleton)) {
      throw UsageError("universe size must be at least 2 (see --allow-singleton)");
    }
  }

  void emit(const std::string& ext, const std::string& text) {
    if (o_.out_prefix.empty()) {
      out_ << text;
    } else {
      write_file(o_.out_prefix + ext, text);
    }
  }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace detail

/// Runs one command line; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"First-order model checking over finite structures", "fomc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print JSON reports");
  app.add_option("--seed", o.seed, "Generator seed");

  auto* eval = app.add_subcommand("eval", "Decide A |= phi[alpha]");
  eval->add_option("structure", o.structure, "Structure file (.fos)")->required();
  eval->add_option("formula", o.formula, "Formula file or expression")->required();
  eval->add_option("--engine", o.engine, "brute | bottomup | dnc | auto");
  eval->add_option("--assign", o.assign, "Assignment such as x=0,y=2");
  eval->add_option("--mode", o.mode, "direct | faithful (dnc only)");
  eval->add_option("--cutoff", o.cutoff, "Leaf cutoff constant of the dnc engine");

  auto* classify_cmd = app.add_subcommand("classify", "Print formula metrics as JSON");
  classify_cmd->add_option("formula", o.formula, "Formula file or expression")->required();

  auto* reduce = app.add_subcommand("reduce", "Run a reduction");
  reduce->add_option("kind", o.kind, "stcon2mc | mc2stcon | elimfun")->required();
  reduce->add_option("inputs", o.inputs, "Input files")->required();
  reduce->add_option("--out", o.out_prefix, "Output path prefix");
  reduce->add_option("--s", o.s, "Source vertex");
  reduce->add_option("--t", o.t, "Target vertex");
  reduce->add_option("--k", o.k, "Path length bound");
  reduce->add_flag("--full", o.full_translation, "Translate variable atoms as well");

  auto* reach = app.add_subcommand("reach", "Directed reachability");
  reach->add_option("graph", o.graph, "Digraph file (.dg)")->required();
  reach->add_option("--s", o.s, "Source vertex");
  reach->add_option("--t", o.t, "Target vertex");
  reach->add_option("--algo", o.algo, "bfs | savitch | ck | diag");
  reach->add_option("--k", o.bound, "Path length bound");
  reach->add_option("--kary", o.kary, "Arity of the ck recursion");
  reach->add_option("--unit-scale", o.unit_scale, "Budget units per step of diag");

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->add_option("kind", o.kind, "structure | formula | chain")->required();
  gen->add_option("--out", o.out_prefix, "Output path prefix (stdout if absent)");
  gen->add_option("--n", o.n, "Universe or vertex count");
  gen->add_option("--density", o.density, "Tuple density");
  gen->add_flag("--functions", o.functions, "Include function symbols f/1 and g/2");
  gen->add_flag("--allow-singleton", o.allow_singleton, "Permit a one-element universe");
  gen->add_option("--s", o.vars, "Variable pool size");
  gen->add_option("--t", o.level, "Alternation level");
  gen->add_flag("--pi", o.pi, "Generate Pi_t instead of Sigma_t");
  gen->add_option("--norm", o.norm, "Target node count");
  gen->add_option("--width", o.want_width, "Width bound (must not exceed --s)");
  gen->add_option("--k", o.k, "Chain length");
  gen->add_option("--p", o.edge_prob, "Edge probability for chain graphs");

  auto* bench = app.add_subcommand("bench", "Benchmark engines, CSV output");
  bench->add_option("--family", o.family, "chain | random");
  bench->add_option("--k", o.ks, "k values: list and ranges, e.g. 1-4,8");
  bench->add_option("--engines", o.engines, "Comma-separated engines");
  bench->add_option("--n", o.bench_n, "Path length (chain) or universe size (random)");
  bench->add_option("--csv", o.csv, "Output file (stdout if absent)");
  bench->add_flag("--no-timing", o.no_timing, "Write 0 for wallMs");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kTrue;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }

  detail::Runner runner(o, out);
  try {
    if (eval->parsed()) return runner.eval();
    if (classify_cmd->parsed()) return runner.classify_cmd();
    if (reduce->parsed()) return runner.reduce();
    if (reach->parsed()) return runner.reach();
    if (gen->parsed()) return runner.gen();
    if (bench->parsed()) return runner.bench();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace fomc::cli
