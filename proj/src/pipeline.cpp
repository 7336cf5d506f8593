#include "g2r/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "g2r/error.hpp"
#include "text_util.hpp"

namespace g2r {

namespace fs = std::filesystem;
using detail::parse_int;
using detail::read_file;
using detail::split_lines;
using detail::split_ws;
using detail::trim;
using detail::write_file;

OpenHours synthetic_open_hours(int slots) {
  OpenHours open(static_cast<size_t>(std::max(slots, 0)), false);
  for (int i = 1; i <= slots; ++i) {
    int quarter = (i - 1) * 96 / slots + 1;
    open[i - 1] = quarter >= 29 && quarter <= 68;
  }
  return open;
}

OpenHours resolve_open_hours(const std::string& spec, int slots) {
  if (spec.empty()) return {};
  if (spec == "synthetic") return synthetic_open_hours(slots);
  if (spec[0] == '@') return parse_open_hours(read_file(spec.substr(1)), slots);
  return parse_open_hours(spec, slots);
}

std::string PipelineReport::tsv() const {
  std::ostringstream out;
  out << "n\tentailed\tga_nonterminals\tga_terminals\tga_productions\teps_states\teps_transitions"
         "\tnfa_states\tnfa_transitions\treduced_states\treduced_transitions\tdfa_states\tdfa_transitions"
         "\tmin_dfa_states\tmin_dfa_transitions\tpredicted_eps_states\tpredicted_nfa_states\tupper_bound\n";
  out << n << '\t' << (entailed ? 1 : 0) << '\t' << ga_nonterminals << '\t' << ga_terminals << '\t'
      << ga_productions << '\t' << eps_states << '\t' << eps_transitions << '\t' << nfa_states << '\t'
      << nfa_transitions << '\t' << reduced_states << '\t' << reduced_transitions << '\t' << dfa_states << '\t'
      << dfa_transitions << '\t' << min_dfa_states << '\t' << min_dfa_transitions << '\t'
      << (entailed ? BigInt(predicted.exact_pre_closure + 1) : BigInt(0)) << '\t'
      << (entailed ? BigInt(predicted.exact_post_closure + 1) : BigInt(0)) << '\t' << predicted.upper_bound
      << '\n';
  return out.str();
}

std::string PipelineReport::timings_tsv() const {
  std::ostringstream out;
  out << "stage\tseconds\n" << std::fixed << std::setprecision(6);
  for (const auto& t : timings) out << t.stage << '\t' << t.seconds << '\n';
  return out.str();
}

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}
  void lap(std::string stage) {
    auto now = std::chrono::steady_clock::now();
    sink_.push_back({std::move(stage), std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

LayeredAutomaton empty_automaton(int n, const std::vector<std::string>& alphabet) {
  LayeredAutomaton a;
  a.n = n;
  a.alphabet = alphabet;
  return a;
}

}  // namespace

PipelineResult run_pipeline(const Grammar& g, const DomainVector& d, const PipelineOptions& options) {
  PipelineResult r;
  r.cnf = g.cnf() ? g : to_cnf(g);
  r.domains = d;
  auto& rep = r.report;
  rep.n = d.size();
  if (d.alphabet_size() != static_cast<int>(r.cnf.terminals().size()))
    throw InvalidArgument("domain alphabet does not match the grammar");
  const OpenHours* open = options.open.empty() ? nullptr : &options.open;
  if (open && static_cast<int>(open->size()) != d.size())
    throw InvalidArgument("open-hours length does not match n");
  StageClock clock(rep.timings);

  auto cyk = cyk_build(r.cnf, d, open);
  clock.lap("cyk");
  const auto empty = empty_automaton(d.size(), r.cnf.terminals());
  if (cyk.graph.empty()) {
    r.nfa = r.reduced = r.dfa = r.min_dfa = empty;
    return r;
  }
  rep.entailed = true;
  rep.predicted = exact_state_count(cyk.graph, false);
  clock.lap("count");
  if (rep.predicted.exact_pre_closure > options.budget)
    throw BudgetExceeded("predicted " + rep.predicted.exact_pre_closure.str() + " automaton states, budget " +
                             std::to_string(options.budget),
                         rep.predicted.exact_pre_closure.str());

  r.ga = construct_acyclic_grammar(cyk.table, r.cnf, d, open);
  rep.ga_nonterminals = r.ga.nonterminal_count();
  rep.ga_terminals = r.ga.terminal_count();
  rep.ga_productions = r.ga.rules.size();
  clock.lap("acyclic_grammar");
  r.eps = pda_to_nfa(grammar_to_pda(r.ga), options.budget);
  rep.eps_states = static_cast<size_t>(r.eps.state_count());
  rep.eps_transitions = r.eps.transitions.size();
  clock.lap("eps_nfa");
  r.nfa = epsilon_closure(r.eps);
  rep.nfa_states = static_cast<size_t>(r.nfa.state_count());
  rep.nfa_transitions = r.nfa.transition_count();
  clock.lap("closure");
  r.reduced = heuristic_minimize_nfa(r.nfa);
  rep.reduced_states = static_cast<size_t>(r.reduced.state_count());
  rep.reduced_transitions = r.reduced.transition_count();
  clock.lap("nfa_reduce");
  r.dfa = subset_construction(r.nfa, options.budget);
  rep.dfa_states = static_cast<size_t>(r.dfa.state_count());
  rep.dfa_transitions = r.dfa.transition_count();
  clock.lap("determinize");
  r.min_dfa = minimize_layered(r.dfa);
  rep.min_dfa_states = static_cast<size_t>(r.min_dfa.state_count());
  rep.min_dfa_transitions = r.min_dfa.transition_count();
  clock.lap("minimize");
  return r;
}

void write_pipeline_outputs(const PipelineResult& r, const std::string& dir) {
  fs::create_directories(dir);
  auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  write_file(path("grammar.cnf.txt"), serialize_grammar(r.cnf));
  if (r.report.entailed) {
    write_file(path("acyclic.txt"), serialize_grammar(r.ga.to_grammar()));
    write_file(path("eps_nfa.fla"), serialize_epsilon_nfa(r.eps));
    write_file(path("sizes.tsv"), size_report_tsv(r.report.predicted));
  }
  write_file(path("nfa.fla"), serialize_fla(r.nfa));
  write_file(path("reduced.fla"), serialize_fla(r.reduced));
  write_file(path("dfa.fla"), serialize_fla(r.dfa));
  write_file(path("min_dfa.fla"), serialize_fla(r.min_dfa));
  write_file(path("report.tsv"), r.report.tsv());
  write_file(path("timings.tsv"), r.report.timings_tsv());
}

OrderFamily parse_order_family(std::string_view name) {
  if (name == "separation-1") return OrderFamily::Separation1;
  if (name == "separation-2") return OrderFamily::Separation2;
  throw InvalidArgument("unknown family '" + std::string(name) + "' (separation-1 or separation-2)");
}

OrderRow order_experiment(OrderFamily family, int n) {
  if (n < 2 || n > 12) throw InvalidArgument("order experiments need 2 <= n <= 12");
  OrderRow row;
  row.family = family;
  row.n = n;
  if (family == OrderFamily::Separation1) {
    Dfa a = contains_length_mod_dfa(n);
    row.left = static_cast<size_t>(minimize_layered(unfold(a, n)).state_count());
    row.right = static_cast<size_t>(unfold(minimize_dfa(a), n).state_count());
  } else {
    Dfa a = repeat_last_differ_dfa(n);
    LayeredAutomaton u = unfold(a, n);
    DomainVector d(n, n, true);
    for (int i = 0; i < n; ++i) d.set(i, n - 1, false);
    row.left = static_cast<size_t>(minimize_layered(simplify(u, d)).state_count());
    row.right = static_cast<size_t>(simplify(minimize_layered(u), d).state_count());
  }
  row.ratio = row.left == 0 ? 0.0 : static_cast<double>(row.right) / static_cast<double>(row.left);
  return row;
}

std::string order_rows_tsv(const std::vector<OrderRow>& rows) {
  std::ostringstream out;
  out << "family\tn\tleft\tright\tratio\n" << std::fixed << std::setprecision(4);
  for (const auto& r : rows)
    out << (r.family == OrderFamily::Separation1 ? "separation-1" : "separation-2") << '\t' << r.n << '\t'
        << r.left << '\t' << r.right << '\t' << r.ratio << '\n';
  return out.str();
}

namespace {

int symbol_id(const std::vector<std::string>& alphabet, const std::string& name, int lineno) {
  for (size_t s = 0; s < alphabet.size(); ++s)
    if (alphabet[s] == name) return static_cast<int>(s);
  throw ParseError(lineno, "unknown symbol '" + name + "'");
}

struct DemandLine {
  int slot;
  std::string symbol;
  int count;
  int lineno;
};

DemandLine read_demand(const std::vector<std::string>& words, size_t from, int lineno) {
  DemandLine dl{0, "", 0, lineno};
  if (words.size() != from + 3 || !parse_int(words[from], dl.slot) || !parse_int(words[from + 2], dl.count) ||
      dl.slot < 1 || dl.count < 0)
    throw ParseError(lineno, "expected '<slot> <symbol> <count>'");
  dl.symbol = words[from + 1];
  return dl;
}

std::vector<DemandLine> read_demand_file(std::string_view text) {
  std::vector<DemandLine> out;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(read_demand(split_ws(line), 0, lineno));
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> parse_demand_table(std::string_view text, int slots, int activities) {
  std::vector<std::vector<int>> table(static_cast<size_t>(slots), std::vector<int>(static_cast<size_t>(activities), 0));
  for (const auto& dl : read_demand_file(text)) {
    int k = 0;
    if (dl.symbol.size() < 2 || dl.symbol[0] != 'a' || !parse_int(std::string_view(dl.symbol).substr(1), k) || k < 1 ||
        k > activities)
      throw ParseError(dl.lineno, "activity must be a1..a" + std::to_string(activities));
    if (dl.slot > slots) throw ParseError(dl.lineno, "slot beyond " + std::to_string(slots));
    table[dl.slot - 1][k - 1] = dl.count;
  }
  return table;
}

CspModel load_instance(const std::string& path, CspModel::RowConstraint kind, size_t budget) {
  return parse_instance(read_file(path), fs::path(path).parent_path().string(), kind, budget);
}

CspModel parse_instance(std::string_view text, const std::string& base_dir, CspModel::RowConstraint kind,
                        size_t budget) {
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (fs::path(base_dir) / p).string(); };
  std::string grammar_path, automaton_path, domains_path, open_spec;
  std::vector<DemandLine> demands;
  std::vector<std::pair<std::string, long long>> costs;
  int slots = 0, workers = 1;
  int lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto words = split_ws(line);
    const auto& key = words[0];
    auto one = [&]() -> const std::string& {
      if (words.size() != 2) throw ParseError(lineno, "'" + key + "' takes one value");
      return words[1];
    };
    if (key == "grammar") {
      grammar_path = resolve(one());
    } else if (key == "automaton") {
      automaton_path = resolve(one());
    } else if (key == "domains") {
      domains_path = resolve(one());
    } else if (key == "open") {
      open_spec = line.substr(4);
      open_spec = std::string(trim(open_spec));
      if (!open_spec.empty() && open_spec[0] == '@') open_spec = "@" + resolve(open_spec.substr(1));
    } else if (key == "slots" || key == "workers") {
      int v = 0;
      if (!parse_int(one(), v) || v < 1) throw ParseError(lineno, key + " must be a positive integer");
      (key == "slots" ? slots : workers) = v;
    } else if (key == "demand") {
      demands.push_back(read_demand(words, 1, lineno));
    } else if (key == "demands") {
      auto more = read_demand_file(read_file(resolve(one())));
      demands.insert(demands.end(), more.begin(), more.end());
    } else if (key == "cost") {
      long long c = 0;
      if (words.size() != 3 || !parse_int(words[2], c) || c < 0)
        throw ParseError(lineno, "expected 'cost <symbol> <nonnegative value>'");
      costs.emplace_back(words[1], c);
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (grammar_path.empty()) throw ParseError(lineno, "instance has no grammar");
  if (slots == 0) throw ParseError(lineno, "instance has no slots");

  CspModel m;
  m.kind = kind;
  m.rows = workers;
  m.slots = slots;
  m.grammar = to_cnf(parse_grammar(read_file(grammar_path)));
  m.open = resolve_open_hours(open_spec, slots);
  const auto& alphabet = m.grammar.terminals();
  DomainVector d = domains_path.empty() ? DomainVector(slots, static_cast<int>(alphabet.size()), true)
                                        : parse_domains(read_file(domains_path), alphabet);
  if (d.size() != slots) throw InvalidArgument("domain file length does not match slots");
  m.domains.assign(static_cast<size_t>(workers), d);
  if (kind == CspModel::RowConstraint::Regular) {
    if (!automaton_path.empty()) {
      m.automaton = parse_fla(read_file(automaton_path));
      if (m.automaton.alphabet != alphabet) throw InvalidArgument("automaton alphabet differs from the grammar");
      if (m.automaton.n != slots) throw InvalidArgument("automaton length does not match slots");
    } else {
      DomainVector full(slots, static_cast<int>(alphabet.size()), true);
      const OpenHours* open = m.open.empty() ? nullptr : &m.open;
      m.automaton = minimize_layered(subset_construction(reformulate(m.grammar, full, open, budget), budget));
    }
  }
  for (const auto& dl : demands) {
    if (dl.slot > slots) throw ParseError(dl.lineno, "slot beyond " + std::to_string(slots));
    m.demands.push_back({dl.slot - 1, symbol_id(alphabet, dl.symbol, dl.lineno), dl.count});
  }
  if (!costs.empty()) {
    m.costs.assign(alphabet.size(), 0);
    for (const auto& [sym, c] : costs) m.costs[symbol_id(alphabet, sym, 0)] = c;
  }
  return m;
}

std::string format_solution(const CspModel& m, const SolveResult& r) {
  std::ostringstream out;
  out << "status\t" << (r.found ? (m.costs.empty() ? "satisfiable" : "optimal") : "unsatisfiable") << '\n';
  if (r.found && !m.costs.empty()) out << "objective\t" << r.objective << '\n';
  out << "nodes\t" << r.nodes << '\n';
  if (r.found)
    for (size_t row = 0; row < r.assignment.size(); ++row) {
      out << "row" << row + 1;
      for (int s : r.assignment[row]) out << '\t' << m.alphabet()[s];
      out << '\n';
    }
  return out.str();
}

}  // namespace g2r
