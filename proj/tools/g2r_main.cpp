#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "g2r/g2r.h"

namespace {

constexpr size_t kDefaultBudget = 1'000'000;

// Thrown after a failed C call; carries the exit code.
struct Failure {
  int code;
};

void check(g2r_status s) {
  if (s == G2R_OK) return;
  if (s == G2R_ERR_BUDGET) {
    std::cerr << "g2r: refused (predicted " << g2r_last_predicted() << "): " << g2r_last_error() << "\n";
    throw Failure{2};
  }
  std::cerr << "g2r: " << g2r_last_error() << "\n";
  throw Failure{1};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GrammarPtr = std::unique_ptr<g2r_grammar, Deleter<g2r_grammar, g2r_grammar_free>>;
using DomainsPtr = std::unique_ptr<g2r_domains, Deleter<g2r_domains, g2r_domains_free>>;
using AutomatonPtr = std::unique_ptr<g2r_automaton, Deleter<g2r_automaton, g2r_automaton_free>>;
using DfaPtr = std::unique_ptr<g2r_dfa, Deleter<g2r_dfa, g2r_dfa_free>>;

// Takes ownership of a returned C string, prints it and optionally saves it.
void deliver(char* text, const std::string& dir, const char* file) {
  std::string s = text ? text : "";
  g2r_string_free(text);
  std::cout << s;
  if (!dir.empty() && file) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / file, std::ios::binary);
    if (!out) {
      std::cerr << "g2r: cannot write " << (std::filesystem::path(dir) / file).string() << "\n";
      throw Failure{1};
    }
    out << s;
  }
}

struct ConstraintArgs {
  std::string grammar;
  int shift = 0;
  bool toy = false;
  int n = 0;
  std::string domains;
  std::string open;

  void add_to(CLI::App* app) {
    app->add_option("-g,--grammar", grammar, "grammar file");
    app->add_option("--shift", shift, "use the built-in shift-scheduling grammar with this many activities");
    app->add_flag("--toy", toy, "reduced span limits for --shift");
    app->add_option("-n,--length", n, "number of variables (ignored with --domains)");
    app->add_option("-d,--domains", domains, "domain file");
    app->add_option("--open", open, "open hours: synthetic, @file, or slot list like 8-17");
  }

  GrammarPtr load_grammar() const {
    g2r_grammar* g = nullptr;
    if (!grammar.empty())
      check(g2r_grammar_load(grammar.c_str(), &g));
    else if (shift > 0)
      check(g2r_grammar_shift(shift, toy ? 1 : 0, &g));
    else
      throw CLI::ValidationError("--grammar or --shift is required");
    return GrammarPtr(g);
  }

  DomainsPtr load_domains(const g2r_grammar* g) const {
    g2r_domains* d = nullptr;
    if (!domains.empty())
      check(g2r_domains_load(g, domains.c_str(), &d));
    else if (n > 0)
      check(g2r_domains_full(g, n, &d));
    else
      throw CLI::ValidationError("--length or --domains is required");
    return DomainsPtr(d);
  }
};

AutomatonPtr load_automaton(const std::string& path) {
  g2r_automaton* a = nullptr;
  check(g2r_automaton_load(path.c_str(), &a));
  return AutomatonPtr(a);
}

void save(const AutomatonPtr& a, const std::string& dir, const char* name) {
  std::filesystem::create_directories(dir);
  auto path = (std::filesystem::path(dir) / name).string();
  check(g2r_automaton_save(a.get(), path.c_str()));
  int n = 0;
  size_t states = 0, transitions = 0;
  check(g2r_automaton_size(a.get(), &n, &states, &transitions));
  std::cout << "n\t" << n << "\nstates\t" << states << "\ntransitions\t" << transitions << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"g2r: compile fixed-length grammar constraints into layered automata"};
  app.require_subcommand(1);
  std::string out;
  size_t budget = kDefaultBudget;

  ConstraintArgs pipe_args;
  auto* pipeline = app.add_subcommand("pipeline", "run the full reformulation chain and write every stage");
  pipe_args.add_to(pipeline);
  pipeline->add_option("-o,--out", out, "output directory")->required();
  pipeline->add_option("--budget", budget, "refuse when the predicted automaton exceeds this many states");

  ConstraintArgs count_args;
  auto* count = app.add_subcommand("count", "predict automaton sizes without building them");
  count_args.add_to(count);
  count->add_option("-o,--out", out, "output directory (writes sizes.tsv)");

  std::string model = "grammar", instance;
  unsigned long long nodes = 10'000'000ULL;
  auto* solve = app.add_subcommand("solve", "backtracking search on an instance file");
  solve->add_option("--model", model, "grammar or regular")->check(CLI::IsMember({"grammar", "regular"}));
  solve->add_option("--instance", instance, "instance file")->required();
  solve->add_option("--node-budget", nodes, "search node cap");
  solve->add_option("--budget", budget, "state cap when reformulating");
  solve->add_option("-o,--out", out, "output directory (writes solution.tsv)");

  ConstraintArgs enc_args;
  std::string target = "grammar", strength = "strong", demand;
  int slots = 0, workers = 1, activities = 1;
  bool strict = false;
  auto* encode = app.add_subcommand("encode", "CNF encoding of a constraint, or the shift-scheduling PB model");
  enc_args.add_to(encode);
  encode->add_option("--target", target, "grammar, regular or shift-pb")
      ->check(CLI::IsMember({"grammar", "regular", "shift-pb"}));
  encode->add_option("--strength", strength, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
  encode->add_option("--slots", slots, "shift-pb: slots");
  encode->add_option("--workers", workers, "shift-pb: workers");
  encode->add_option("--activities", activities, "shift-pb: activities");
  encode->add_option("--demand", demand, "shift-pb: demand file");
  encode->add_option("--worker-encoding", model, "shift-pb: grammar or regular")
      ->check(CLI::IsMember({"grammar", "regular"}));
  encode->add_flag("--strict-demand", strict, "shift-pb: demand read as > instead of >=");
  encode->add_option("--budget", budget, "state cap for regular encodings");
  encode->add_option("-o,--out", out, "output directory")->required();

  std::string family;
  std::vector<int> ns;
  auto* order = app.add_subcommand("order-exp", "compare operator orders on the separation families");
  order->add_option("--family", family, "separation-1 or separation-2")->required();
  order->add_option("-n,--length", ns, "lengths")->required();
  order->add_option("-o,--out", out, "output directory (writes order.tsv)");

  std::string input, dfa_path;
  int unfold_n = 0;
  auto* unfold = app.add_subcommand("unfold", "unfold a cyclic DFA to a layered automaton");
  unfold->add_option("--dfa", dfa_path, "cyclic DFA file")->required();
  unfold->add_option("-n,--length", unfold_n, "number of layers")->required();
  unfold->add_option("-o,--out", out, "output directory (writes unfolded.fla)")->required();

  std::string simplify_domains;
  auto* simplify = app.add_subcommand("simplify", "drop transitions outside the domains");
  simplify->add_option("--fla", input, "layered automaton")->required();
  simplify->add_option("-d,--domains", simplify_domains, "domain file")->required();
  simplify->add_option("-o,--out", out, "output directory (writes simplified.fla)")->required();

  auto* determinize = app.add_subcommand("determinize", "subset construction");
  determinize->add_option("--fla", input, "layered automaton")->required();
  determinize->add_option("--budget", budget, "state cap");
  determinize->add_option("-o,--out", out, "output directory (writes dfa.fla)")->required();

  auto* minimize = app.add_subcommand("minimize", "minimize a layered DFA");
  minimize->add_option("--fla", input, "layered DFA")->required();
  minimize->add_option("-o,--out", out, "output directory (writes min_dfa.fla)")->required();

  auto* reduce = app.add_subcommand("nfa-reduce", "merge equivalent NFA states (heuristic)");
  reduce->add_option("--fla", input, "layered automaton")->required();
  reduce->add_option("-o,--out", out, "output directory (writes reduced.fla)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (pipeline->parsed()) {
      auto g = pipe_args.load_grammar();
      auto d = pipe_args.load_domains(g.get());
      char* report = nullptr;
      check(g2r_pipeline_run(g.get(), d.get(), pipe_args.open.c_str(), budget, out.c_str(), &report));
      deliver(report, "", nullptr);
    } else if (count->parsed()) {
      auto g = count_args.load_grammar();
      auto d = count_args.load_domains(g.get());
      char* tsv = nullptr;
      check(g2r_count(g.get(), d.get(), count_args.open.c_str(), &tsv));
      deliver(tsv, out, "sizes.tsv");
    } else if (solve->parsed()) {
      char* result = nullptr;
      check(g2r_solve_instance(instance.c_str(), model == "regular" ? 1 : 0, nodes, budget, &result));
      deliver(result, out, "solution.tsv");
    } else if (encode->parsed()) {
      char* summary = nullptr;
      if (target == "shift-pb") {
        g2r_shift_pb_params p{};
        p.slots = slots;
        p.workers = workers;
        p.activities = activities;
        p.toy_limits = enc_args.toy ? 1 : 0;
        p.open_spec = enc_args.open.c_str();
        p.demand_path = demand.c_str();
        p.regular_workers = model == "regular" ? 1 : 0;
        p.weak = strength == "weak" ? 1 : 0;
        p.strict_demand = strict ? 1 : 0;
        p.budget = budget;
        check(g2r_encode_shift_pb(&p, out.c_str(), &summary));
      } else {
        auto g = enc_args.load_grammar();
        auto d = enc_args.load_domains(g.get());
        check(g2r_encode(g.get(), d.get(), enc_args.open.c_str(), target == "regular" ? 1 : 0,
                         strength == "weak" ? 1 : 0, budget, out.c_str(), &summary));
      }
      deliver(summary, "", nullptr);
    } else if (order->parsed()) {
      char* tsv = nullptr;
      check(g2r_order_experiment(family.c_str(), ns.data(), ns.size(), &tsv));
      deliver(tsv, out, "order.tsv");
    } else if (unfold->parsed()) {
      g2r_dfa* raw = nullptr;
      check(g2r_dfa_load(dfa_path.c_str(), &raw));
      DfaPtr a(raw);
      g2r_automaton* r = nullptr;
      check(g2r_unfold(a.get(), unfold_n, &r));
      save(AutomatonPtr(r), out, "unfolded.fla");
    } else if (simplify->parsed()) {
      auto a = load_automaton(input);
      g2r_domains* raw = nullptr;
      check(g2r_domains_load_for(a.get(), simplify_domains.c_str(), &raw));
      DomainsPtr d(raw);
      g2r_automaton* r = nullptr;
      check(g2r_simplify(a.get(), d.get(), &r));
      save(AutomatonPtr(r), out, "simplified.fla");
    } else if (determinize->parsed()) {
      auto a = load_automaton(input);
      g2r_automaton* r = nullptr;
      check(g2r_determinize(a.get(), budget, &r));
      save(AutomatonPtr(r), out, "dfa.fla");
    } else if (minimize->parsed()) {
      auto a = load_automaton(input);
      g2r_automaton* r = nullptr;
      check(g2r_minimize(a.get(), &r));
      save(AutomatonPtr(r), out, "min_dfa.fla");
    } else if (reduce->parsed()) {
      auto a = load_automaton(input);
      g2r_automaton* r = nullptr;
      check(g2r_nfa_reduce(a.get(), &r));
      save(AutomatonPtr(r), out, "reduced.fla");
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "g2r: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
