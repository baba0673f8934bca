// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fomc/fomc.hpp"
#include "oracles.hpp"

using namespace fomc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

std::size_t depth_bound(std::size_t norm) {
  return static_cast<std::size_t>(std::ceil(std::log(double(norm)) / std::log(4.0 / 3.0))) + 1;
}

std::size_t lg(std::size_t n) { return oracle::ceil_log2(n); }

struct Instance {
  Formula phi;
  Structure a = Structure(Vocabulary{}, 1);
};

// The shared random suite of criteria 1-3.
std::vector<Instance> random_suite() {
  Rng rng(2024);
  std::vector<Instance> out;
  for (int i = 0; i < 2000; ++i) {
    FormulaGenParams p;
    p.vars = 1 + rng.below(3);
    p.level = rng.below(4);
    p.norm = rng.between(p.level + 1, 60);
    Formula phi = random_formula(p, rng);
    Structure a = random_structure(p.vocab, rng.between(2, 5), rng.unit(), rng);
    out.push_back({phi, a});
  }
  return out;
}

// Criteria 2 and 3 for one Sigma_t evaluation: every inner dnc run.
void check_dnc_runs(const EvalReport& r, const std::string& tag, Outcome& depth, Outcome* bits,
                    std::size_t& runs) {
  for (const DncRun& run : r.runs) {
    ++runs;
    if (run.peak_depth > depth_bound(run.norm)) {
      depth.fail(tag + ": depth " + std::to_string(run.peak_depth) + " > bound " +
                 std::to_string(depth_bound(run.norm)));
    }
    if (!bits) continue;
    std::size_t l = lg(run.universe);
    std::size_t cap = run.peak_depth * (run.width * l + 2) + 24 * (run.width + 1) * (l + 1);
    if (run.peak_bits > cap) {
      bits->fail(tag + ": dnc bits " + std::to_string(run.peak_bits) + " > " +
                 std::to_string(cap));
    }
  }
}

void criteria_1_to_3(Outcome& c1, Outcome& c2, Outcome& c3) {
  auto suite = random_suite();
  std::size_t mismatches = 0;
  std::size_t runs = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& [phi, a] = suite[i];
    std::string tag = "instance " + std::to_string(i);
    EvalReport brute = eval_brute(phi, a);
    EvalReport bottom = eval_bottom_up(phi, a).report;
    EvalReport dnc = eval_sigma_t(phi, a);
    if (brute.answer != bottom.answer || brute.answer != dnc.answer) {
      ++mismatches;
      c1.fail(tag + ": " + print_formula(phi));
    }
    std::size_t norm = subformula_count(phi);
    std::size_t n = a.universe_size();
    if (brute.peak_bits > norm * (lg(n) + 1)) c3.fail(tag + ": brute bits over cap");
    if (bottom.counters.assignments_enumerated > norm * checked_power(n, num_variables(phi))) {
      c3.fail(tag + ": bottom-up enumeration over cap");
    }
    check_dnc_runs(dnc, tag, c2, &c3, runs);
  }

  // Chain family, on the directed path with S at one end and T at the other.
  std::size_t chain_runs = 0;
  std::size_t deepest = 0;
  for (std::size_t k = 1; k <= 64; ++k) {
    Digraph g(3);
    g.add_edge(0, 1).add_edge(1, 2);
    Structure a = chain_structure(g, 0, 2);
    Formula phi = chain_sentence(k);
    EvalReport r = eval_sigma_t(phi, a);
    std::string tag = "chain k=" + std::to_string(k);
    if (r.answer != (k >= 2)) c1.fail(tag + ": wrong answer");
    check_dnc_runs(r, tag, c2, &c3, chain_runs);
    deepest = std::max(deepest, r.peak_depth);
    EvalReport b = eval_brute(phi, a);
    if (b.peak_bits > subformula_count(phi) * (lg(3) + 1)) c3.fail(tag + ": brute bits over cap");
  }

  c1.detail = std::to_string(suite.size()) + " sentences, " + std::to_string(mismatches) +
              " mismatches";
  c2.detail = std::to_string(runs + chain_runs) + " dnc runs; chain k=1..64 peak depth " +
              std::to_string(deepest) + " (bound at k=64: " + std::to_string(depth_bound(516)) +
              ")";
  c3.detail = "brute, dnc and bottom-up caps over the same runs";
}

void criterion_4(Outcome& c) {
  std::size_t count = 0;
  for (unsigned mask = 0; mask < 512; ++mask) {
    Digraph g(3);
    for (unsigned bit = 0; bit < 9; ++bit) {
      if (mask >> bit & 1u) g.add_edge(bit / 3, bit % 3);
    }
    for (Vertex s = 0; s < 3; ++s) {
      for (Vertex t = 0; t < 3; ++t) {
        for (std::size_t k = 0; k <= 3; ++k) {
          auto [a, phi] = stcon_to_mc({g, s, t, k});
          ++count;
          if (evaluate(phi, a, Engine::Auto).answer != bfs_reach(g, s, t, k)) {
            c.fail("mask " + std::to_string(mask) + " s=" + std::to_string(s) +
                   " t=" + std::to_string(t) + " k=" + std::to_string(k));
          }
          auto cl = classify(phi);
          // k = 0 has no second variable at all.
          std::size_t want_vars = k == 0 ? 1 : 2;
          if (cl.subformula_count != 8 * k + 4 || cl.sigma_level != 1u ||
              (k > 0 && cl.num_variables != want_vars)) {
            c.fail("shape of output for k=" + std::to_string(k));
          }
        }
      }
    }
  }
  c.detail = std::to_string(count) + " instances (numVariables is 1 at k=0, 2 for k>=1)";
}

void criterion_5(Outcome& c) {
  Rng rng(505);
  std::size_t truths = 0;
  std::size_t longest = 0;
  for (int i = 0; i < 500; ++i) {
    FormulaGenParams p;
    p.vars = 1 + rng.below(2);
    p.level = 1;
    p.norm = rng.between(2, 14);
    Formula phi = nnf(random_formula(p, rng));
    Structure a = random_structure(p.vocab, rng.between(1, 4), rng.unit(), rng);
    McStcon r = mc_to_stcon(a, phi);
    const auto& inst = r.instance;
    std::size_t norm = subformula_count(phi);
    SavitchOptions so;
    so.memoize = true;
    bool via_reach = savitch_reach(inst.graph, inst.source, inst.target, inst.bound, so).answer;
    bool truth = eval_brute(phi, a).answer;
    if (via_reach != truth) c.fail("instance " + std::to_string(i) + ": " + print_formula(phi));
    if (truth) {
      ++truths;
      auto d = bfs_distance(inst.graph, inst.source, inst.target);
      if (!d || *d > 2 * norm - 1) c.fail("instance " + std::to_string(i) + ": witness too long");
      if (d) longest = std::max(longest, *d);
    }
  }
  c.detail = "500 sentences, " + std::to_string(truths) + " true, longest witness " +
             std::to_string(longest);
}

void criterion_6(Outcome& c) {
  Rng rng(606);
  std::size_t max_extra = 0;
  for (int i = 0; i < 300; ++i) {
    FormulaGenParams p;
    p.vocab = standard_vocabulary(true);
    p.vars = 1 + rng.below(2);
    p.level = 1 + rng.below(2);
    p.pi = rng.chance(0.3);
    p.norm = rng.between(p.level + 1, 20);
    Formula phi = random_formula(p, rng);
    Structure a = random_structure(p.vocab, rng.between(2, 4), rng.unit(), rng);
    EliminationResult r = eliminate_functions(a, phi);
    std::string tag = "instance " + std::to_string(i);
    if (eval_brute(r.trans, r.extended.structure).answer != eval_brute(phi, a).answer) {
      c.fail(tag + ": " + print_formula(phi));
    }
    std::size_t vars = num_variables(r.trans);
    if (vars > p.vars + 3) c.fail(tag + ": too many variables");
    max_extra = std::max(max_extra, vars - std::min(vars, num_variables(phi)));
    std::size_t size = structure_size(a);
    if (r.extended.structure.universe_size() > size * size) c.fail(tag + ": universe too large");
  }
  c.detail = "300 instances, at most " + std::to_string(max_extra) + " extra variables";
}

void criterion_7(Outcome& c) {
  Digraph line(65);
  for (Vertex v = 0; v + 1 < 65; ++v) line.add_edge(v, v + 1);
  for (std::size_t k = 1; k <= 64; ++k) {
    SavitchOptions so;
    so.memoize = true;
    ReachReport r = savitch_reach(line, 0, k, k, so);
    if (r.peak_depth != lg(k) || !r.answer) c.fail("savitch depth at k=" + std::to_string(k));
  }
  Rng rng(707);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = rng.between(1, 24);
    Digraph g = random_digraph(n, rng.unit() * 0.2, rng);
    Vertex s = rng.below(n), t = rng.below(n);
    bool want = bfs_reach(g, s, t);
    SavitchOptions so;
    so.memoize = true;
    ReachReport sv = savitch_reach(g, s, t, n == 1 ? 1 : n - 1, so);
    ReachReport ck = ck_reach(g, s, t, 2 + rng.below(3));
    ReachReport dg = diag_reach(g, s, t);
    if (sv.answer != want || ck.answer != want || dg.answer != want || dg.aborted) {
      c.fail("graph " + std::to_string(i));
    }
    if (sv.peak_depth != lg(n == 1 ? 1 : n - 1)) c.fail("savitch depth on graph " + std::to_string(i));
  }
  c.detail = "k=1..64 depths exact; 200 graphs agree; diag terminated on all";
}

void criterion_8(Outcome& c) {
  Rng rng(808);
  std::size_t recursed = 0;
  for (int i = 0; i < 200; ++i) {
    FormulaGenParams p;
    p.vars = 1 + rng.below(2);
    p.level = 1;
    p.norm = rng.between(30, 160);
    Formula phi = nnf(random_formula(p, rng));
    Structure a = random_structure(p.vocab, 2, rng.unit(), rng);
    DncOptions direct;
    direct.record_history = true;
    direct.cutoff = 24;
    DncOptions faithful = direct;
    faithful.mode = DncMode::Faithful;
    std::size_t w = width(phi);
    DncResult x = eval_dnc_sigma1(phi, w, a, {}, direct);
    DncResult y = eval_dnc_sigma1(phi, w, a, {}, faithful);
    if (x.report.answer != y.report.answer || x.history != y.history) {
      c.fail("instance " + std::to_string(i));
    }
    if (x.report.answer != eval_brute(phi, a).answer) c.fail("instance " + std::to_string(i));
    recursed += x.report.peak_depth > 0;
  }
  c.detail = "200 instances, " + std::to_string(recursed) + " with recursion below the root";
}

void criterion_9(Outcome& c) {
  Rng rng(909);
  int n = 0;
  for (int i = 0; i < 200; ++i, ++n) {
    Structure a = random_structure(standard_vocabulary(rng.chance(0.5)), rng.between(1, 5),
                                   rng.unit(), rng);
    if (!(parse_structure(print_structure(a)) == a)) c.fail("structure " + std::to_string(i));
  }
  for (int i = 0; i < 200; ++i, ++n) {
    FormulaGenParams p;
    p.vocab = standard_vocabulary(rng.chance(0.5));
    p.vars = 1 + rng.below(3);
    p.level = rng.below(4);
    p.pi = rng.chance(0.5);
    p.norm = rng.between(p.level + 1, 60);
    Formula f = random_formula(p, rng);
    if (!(parse_formula(print_formula(f), p.vocab) == f)) c.fail("formula " + std::to_string(i));
  }
  for (int i = 0; i < 200; ++i, ++n) {
    Digraph g = random_digraph(rng.between(1, 16), rng.unit(), rng);
    if (!(parse_digraph(print_digraph(g)) == g)) c.fail("digraph " + std::to_string(i));
  }
  std::ostringstream csv;
  write_bench_csv(csv, {});
  if (csv.str() !=
      "family,k,norm,width,universe,engine,answer,peakAccountedBits,peakDepth,wallMs\n") {
    c.fail("bench header");
  }
  c.detail = std::to_string(n) + " round-trips; bench header byte-exact";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome outcome;
  };
  std::vector<Criterion> cs = {
      {1, "cross-engine equivalence", {}},  {2, "dnc depth bound", {}},
      {3, "accounted-space caps", {}},      {4, "stcon -> mc soundness", {}},
      {5, "mc -> stcon soundness", {}},     {6, "function elimination", {}},
      {7, "reachability suite", {}},        {8, "faithful-mode equivalence", {}},
      {9, "format round-trips", {}},
  };
  auto run_guarded = [](Outcome& o, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
  };
  auto start = std::chrono::steady_clock::now();
  run_guarded(cs[0].outcome, [&] { criteria_1_to_3(cs[0].outcome, cs[1].outcome, cs[2].outcome); });
  run_guarded(cs[3].outcome, [&] { criterion_4(cs[3].outcome); });
  run_guarded(cs[4].outcome, [&] { criterion_5(cs[4].outcome); });
  run_guarded(cs[5].outcome, [&] { criterion_6(cs[5].outcome); });
  run_guarded(cs[6].outcome, [&] { criterion_7(cs[6].outcome); });
  run_guarded(cs[7].outcome, [&] { criterion_8(cs[7].outcome); });
  run_guarded(cs[8].outcome, [&] { criterion_9(cs[8].outcome); });

  bool all = true;
  for (const auto& c : cs) {
    all = all && c.outcome.pass;
    std::printf("%s [%d] %s: %s%s%s\n", c.outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                c.outcome.detail.c_str(), c.outcome.pass ? "" : "; first failure: ",
                c.outcome.first_failure.c_str());
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s (%.1f s)\n", all ? "all criteria passed" : "some criteria failed", secs);
  return all ? 0 : 1;
}
