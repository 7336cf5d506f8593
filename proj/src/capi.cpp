#include "g2r/g2r.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "g2r/error.hpp"
#include "g2r/pipeline.hpp"
#include "text_util.hpp"

struct g2r_grammar {
  g2r::Grammar value;
};
struct g2r_domains {
  g2r::DomainVector value;
};
struct g2r_automaton {
  g2r::LayeredAutomaton value;
};
struct g2r_dfa {
  g2r::Dfa value;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_predicted;

template <typename F>
g2r_status guard(F&& body) {
  last_error.clear();
  last_predicted.clear();
  try {
    body();
    return G2R_OK;
  } catch (const g2r::BudgetExceeded& e) {
    last_error = e.what();
    last_predicted = e.predicted();
    return G2R_ERR_BUDGET;
  } catch (const g2r::ParseError& e) {
    last_error = e.what();
    return G2R_ERR_PARSE;
  } catch (const g2r::InvalidArgument& e) {
    last_error = e.what();
    return G2R_ERR_INVALID;
  } catch (const g2r::Error& e) {
    last_error = e.what();
    return G2R_ERR_FAILED;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return G2R_ERR_FAILED;
  } catch (const std::exception& e) {
    last_error = e.what();
    return G2R_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return G2R_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw g2r::InvalidArgument(std::string(what) + " is null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_string(char** out, const std::string& s) {
  if (out) *out = copy_out(s);
}

std::string str(const char* s) { return s ? s : ""; }

g2r::OpenHours open_for(const char* spec, int slots) { return g2r::resolve_open_hours(str(spec), slots); }

const g2r::OpenHours* ptr(const g2r::OpenHours& open) { return open.empty() ? nullptr : &open; }

std::string in_dir(const char* dir, const char* name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

template <typename Handle, typename T>
void emit(Handle** out, T value) {
  require(out, "output handle");
  *out = new Handle{std::move(value)};
}

}  // namespace

extern "C" {

const char* g2r_last_error(void) { return last_error.c_str(); }
const char* g2r_last_predicted(void) { return last_predicted.c_str(); }
void g2r_string_free(char* s) { std::free(s); }

g2r_status g2r_grammar_load(const char* path, g2r_grammar** out) {
  return guard([&] {
    require(path, "path");
    emit(out, g2r::parse_grammar(g2r::detail::read_file(path)));
  });
}

g2r_status g2r_grammar_parse(const char* text, g2r_grammar** out) {
  return guard([&] {
    require(text, "text");
    emit(out, g2r::parse_grammar(text));
  });
}

g2r_status g2r_grammar_shift(int activities, int toy, g2r_grammar** out) {
  return guard([&] {
    emit(out, g2r::shift_scheduling_grammar(activities, toy ? g2r::ShiftLimits::toy() : g2r::ShiftLimits{}));
  });
}

g2r_status g2r_grammar_text(const g2r_grammar* g, char** out) {
  return guard([&] {
    require(g, "grammar");
    set_string(out, g2r::serialize_grammar(g->value));
  });
}

void g2r_grammar_free(g2r_grammar* g) { delete g; }

g2r_status g2r_domains_full(const g2r_grammar* g, int n, g2r_domains** out) {
  return guard([&] {
    require(g, "grammar");
    if (n < 1) throw g2r::InvalidArgument("n must be positive");
    emit(out, g2r::DomainVector(n, static_cast<int>(g->value.terminals().size()), true));
  });
}

g2r_status g2r_domains_load(const g2r_grammar* g, const char* path, g2r_domains** out) {
  return guard([&] {
    require(g, "grammar");
    require(path, "path");
    emit(out, g2r::parse_domains(g2r::detail::read_file(path), g->value.terminals()));
  });
}

g2r_status g2r_domains_load_for(const g2r_automaton* a, const char* path, g2r_domains** out) {
  return guard([&] {
    require(a, "automaton");
    require(path, "path");
    emit(out, g2r::parse_domains(g2r::detail::read_file(path), a->value.alphabet));
  });
}

int g2r_domains_length(const g2r_domains* d) { return d ? d->value.size() : 0; }
void g2r_domains_free(g2r_domains* d) { delete d; }

g2r_status g2r_automaton_load(const char* path, g2r_automaton** out) {
  return guard([&] {
    require(path, "path");
    emit(out, g2r::parse_fla(g2r::detail::read_file(path)));
  });
}

g2r_status g2r_automaton_save(const g2r_automaton* a, const char* path) {
  return guard([&] {
    require(a, "automaton");
    require(path, "path");
    g2r::detail::write_file(path, g2r::serialize_fla(a->value));
  });
}

g2r_status g2r_automaton_size(const g2r_automaton* a, int* n, size_t* states, size_t* transitions) {
  return guard([&] {
    require(a, "automaton");
    if (n) *n = a->value.n;
    if (states) *states = static_cast<size_t>(a->value.state_count());
    if (transitions) *transitions = a->value.transition_count();
  });
}

void g2r_automaton_free(g2r_automaton* a) { delete a; }

g2r_status g2r_dfa_load(const char* path, g2r_dfa** out) {
  return guard([&] {
    require(path, "path");
    emit(out, g2r::parse_dfa(g2r::detail::read_file(path)));
  });
}

void g2r_dfa_free(g2r_dfa* a) { delete a; }

g2r_status g2r_reformulate(const g2r_grammar* g, const g2r_domains* d, const char* open_spec, size_t budget,
                           g2r_automaton** out) {
  return guard([&] {
    require(g, "grammar");
    require(d, "domains");
    auto open = open_for(open_spec, d->value.size());
    emit(out, g2r::reformulate(g2r::to_cnf(g->value), d->value, ptr(open), budget));
  });
}

g2r_status g2r_unfold(const g2r_dfa* a, int n, g2r_automaton** out) {
  return guard([&] {
    require(a, "dfa");
    emit(out, g2r::unfold(a->value, n));
  });
}

g2r_status g2r_simplify(const g2r_automaton* a, const g2r_domains* d, g2r_automaton** out) {
  return guard([&] {
    require(a, "automaton");
    require(d, "domains");
    emit(out, g2r::simplify(a->value, d->value));
  });
}

g2r_status g2r_determinize(const g2r_automaton* a, size_t budget, g2r_automaton** out) {
  return guard([&] {
    require(a, "automaton");
    emit(out, g2r::subset_construction(a->value, budget));
  });
}

g2r_status g2r_minimize(const g2r_automaton* a, g2r_automaton** out) {
  return guard([&] {
    require(a, "automaton");
    emit(out, g2r::minimize_layered(a->value));
  });
}

g2r_status g2r_nfa_reduce(const g2r_automaton* a, g2r_automaton** out) {
  return guard([&] {
    require(a, "automaton");
    emit(out, g2r::heuristic_minimize_nfa(a->value));
  });
}

g2r_status g2r_pipeline_run(const g2r_grammar* g, const g2r_domains* d, const char* open_spec, size_t budget,
                            const char* out_dir, char** report) {
  return guard([&] {
    require(g, "grammar");
    require(d, "domains");
    require(out_dir, "output directory");
    g2r::PipelineOptions options;
    options.budget = budget;
    options.open = open_for(open_spec, d->value.size());
    auto r = g2r::run_pipeline(g->value, d->value, options);
    g2r::write_pipeline_outputs(r, out_dir);
    set_string(report, r.report.tsv());
  });
}

g2r_status g2r_count(const g2r_grammar* g, const g2r_domains* d, const char* open_spec, char** tsv) {
  return guard([&] {
    require(g, "grammar");
    require(d, "domains");
    auto open = open_for(open_spec, d->value.size());
    auto cyk = g2r::cyk_build(g2r::to_cnf(g->value), d->value, ptr(open));
    if (cyk.graph.empty()) throw g2r::InvalidArgument("constraint is dis-entailed; nothing to count");
    set_string(tsv, g2r::size_report_tsv(g2r::exact_state_count(cyk.graph)));
  });
}

g2r_status g2r_solve_instance(const char* path, int regular, unsigned long long node_budget, size_t state_budget,
                              char** result) {
  return guard([&] {
    require(path, "path");
    auto kind = regular ? g2r::CspModel::RowConstraint::Regular : g2r::CspModel::RowConstraint::Grammar;
    auto model = g2r::load_instance(path, kind, state_budget);
    g2r::SolveOptions options;
    options.node_budget = node_budget;
    set_string(result, g2r::format_solution(model, g2r::solve(model, options)));
  });
}

g2r_status g2r_encode(const g2r_grammar* g, const g2r_domains* d, const char* open_spec, int target, int weak,
                      size_t budget, const char* out_dir, char** summary) {
  return guard([&] {
    require(g, "grammar");
    require(d, "domains");
    require(out_dir, "output directory");
    auto open = open_for(open_spec, d->value.size());
    auto cnf = g2r::to_cnf(g->value);
    auto strength = weak ? g2r::Strength::Weak : g2r::Strength::Strong;
    g2r::CnfFormula f;
    if (target == 0) {
      f = g2r::encode_grammar_cnf(g2r::cyk_build(cnf, d->value, ptr(open)).graph, d->value, strength);
    } else if (target == 1) {
      auto nfa = g2r::reformulate(cnf, d->value, ptr(open), budget);
      f = g2r::encode_regular_cnf(g2r::minimize_layered(g2r::subset_construction(nfa, budget)), d->value, strength);
    } else {
      throw g2r::InvalidArgument("target must be 0 (grammar) or 1 (regular)");
    }
    g2r::detail::write_file(in_dir(out_dir, "formula.cnf"), g2r::serialize_dimacs(f));
    g2r::detail::write_file(in_dir(out_dir, "formula.atoms"), g2r::serialize_atoms(f));
    std::ostringstream s;
    s << "variables\t" << f.variable_count() << "\nclauses\t" << f.clauses().size() << "\nempty_clause\t"
      << (f.has_empty_clause() ? 1 : 0) << "\n";
    set_string(summary, s.str());
  });
}

g2r_status g2r_encode_shift_pb(const g2r_shift_pb_params* p, const char* out_dir, char** summary) {
  return guard([&] {
    require(p, "parameters");
    require(out_dir, "output directory");
    g2r::ShiftPbSpec spec;
    spec.slots = p->slots;
    spec.workers = p->workers;
    spec.activities = p->activities;
    if (p->toy_limits) spec.limits = g2r::ShiftLimits::toy();
    spec.open = open_for(p->open_spec, p->slots);
    spec.demand = p->demand_path && *p->demand_path
                      ? g2r::parse_demand_table(g2r::detail::read_file(p->demand_path), p->slots, p->activities)
                      : std::vector<std::vector<int>>(static_cast<size_t>(std::max(p->slots, 0)),
                                                      std::vector<int>(static_cast<size_t>(std::max(p->activities, 0)), 0));
    spec.worker = p->regular_workers ? g2r::ShiftPbSpec::Worker::RegularCnf : g2r::ShiftPbSpec::Worker::GrammarCnf;
    spec.strength = p->weak ? g2r::Strength::Weak : g2r::Strength::Strong;
    spec.strict_demand = p->strict_demand != 0;
    spec.state_budget = p->budget;
    auto model = g2r::build_shift_pb(spec);
    auto opb = model.to_opb();
    g2r::detail::write_file(in_dir(out_dir, "model.opb"), g2r::serialize_opb(opb));
    g2r::detail::write_file(in_dir(out_dir, "model.atoms"), g2r::serialize_atoms(model.cnf));
    std::ostringstream s;
    s << "variables\t" << opb.variables << "\nconstraints\t" << opb.constraints.size() << "\ndemand_constraints\t"
      << model.demands.size() << "\n";
    set_string(summary, s.str());
  });
}

g2r_status g2r_order_experiment(const char* family, const int* ns, size_t count, char** tsv) {
  return guard([&] {
    require(family, "family");
    if (count > 0) require(ns, "n list");
    auto f = g2r::parse_order_family(family);
    std::vector<g2r::OrderRow> rows;
    for (size_t k = 0; k < count; ++k) rows.push_back(g2r::order_experiment(f, ns[k]));
    set_string(tsv, g2r::order_rows_tsv(rows));
  });
}

}  // extern "C"
