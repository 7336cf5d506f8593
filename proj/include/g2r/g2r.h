#ifndef G2R_H
#define G2R_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define G2R_API __attribute__((visibility("default")))
#else
#define G2R_API
#endif

typedef enum g2r_status {
  G2R_OK = 0,
  G2R_ERR_PARSE = 1,    /* malformed input text */
  G2R_ERR_INVALID = 2,  /* bad argument or grammar */
  G2R_ERR_BUDGET = 3,   /* size cap hit; see g2r_last_predicted */
  G2R_ERR_FAILED = 4,   /* other library error (I/O included) */
  G2R_ERR_INTERNAL = 5
} g2r_status;

typedef struct g2r_grammar g2r_grammar;
typedef struct g2r_domains g2r_domains;
typedef struct g2r_automaton g2r_automaton; /* layered NFA or DFA */
typedef struct g2r_dfa g2r_dfa;             /* cyclic DFA */

/* Message of the last failing call on this thread, "" if none. */
G2R_API const char* g2r_last_error(void);
/* Predicted size attached to the last G2R_ERR_BUDGET on this thread. */
G2R_API const char* g2r_last_predicted(void);
/* Frees strings returned through char** out-parameters. */
G2R_API void g2r_string_free(char* s);

G2R_API g2r_status g2r_grammar_load(const char* path, g2r_grammar** out);
G2R_API g2r_status g2r_grammar_parse(const char* text, g2r_grammar** out);
/* Shift-scheduling grammar; toy != 0 selects the reduced span limits. */
G2R_API g2r_status g2r_grammar_shift(int activities, int toy, g2r_grammar** out);
G2R_API g2r_status g2r_grammar_text(const g2r_grammar* g, char** out);
G2R_API void g2r_grammar_free(g2r_grammar* g);

G2R_API g2r_status g2r_domains_full(const g2r_grammar* g, int n, g2r_domains** out);
G2R_API g2r_status g2r_domains_load(const g2r_grammar* g, const char* path, g2r_domains** out);
/* Domains over the automaton's alphabet. */
G2R_API g2r_status g2r_domains_load_for(const g2r_automaton* a, const char* path, g2r_domains** out);
G2R_API int g2r_domains_length(const g2r_domains* d);
G2R_API void g2r_domains_free(g2r_domains* d);

G2R_API g2r_status g2r_automaton_load(const char* path, g2r_automaton** out);
G2R_API g2r_status g2r_automaton_save(const g2r_automaton* a, const char* path);
G2R_API g2r_status g2r_automaton_size(const g2r_automaton* a, int* n, size_t* states, size_t* transitions);
G2R_API void g2r_automaton_free(g2r_automaton* a);

G2R_API g2r_status g2r_dfa_load(const char* path, g2r_dfa** out);
G2R_API void g2r_dfa_free(g2r_dfa* a);

/* open_spec: NULL or "" for no open-hours restriction, "synthetic", "@file",
   or a slot list such as "8-17". */
G2R_API g2r_status g2r_reformulate(const g2r_grammar* g, const g2r_domains* d, const char* open_spec, size_t budget,
                                   g2r_automaton** out);
G2R_API g2r_status g2r_unfold(const g2r_dfa* a, int n, g2r_automaton** out);
G2R_API g2r_status g2r_simplify(const g2r_automaton* a, const g2r_domains* d, g2r_automaton** out);
G2R_API g2r_status g2r_determinize(const g2r_automaton* a, size_t budget, g2r_automaton** out);
G2R_API g2r_status g2r_minimize(const g2r_automaton* a, g2r_automaton** out);
G2R_API g2r_status g2r_nfa_reduce(const g2r_automaton* a, g2r_automaton** out);

/* Full reformulation chain with every artifact written to out_dir. The
   report TSV is returned through `report` (may be NULL). */
G2R_API g2r_status g2r_pipeline_run(const g2r_grammar* g, const g2r_domains* d, const char* open_spec,
                                    size_t budget, const char* out_dir, char** report);
/* Predicted automaton sizes as TSV. */
G2R_API g2r_status g2r_count(const g2r_grammar* g, const g2r_domains* d, const char* open_spec, char** tsv);

/* Instance file as documented in pipeline.hpp; regular != 0 uses Regular rows. */
G2R_API g2r_status g2r_solve_instance(const char* path, int regular, unsigned long long node_budget,
                                      size_t state_budget, char** result);

/* Writes formula.cnf (DIMACS) and formula.atoms. target: 0 Grammar through
   the AND/OR graph, 1 Regular through the minimized reformulated DFA. */
G2R_API g2r_status g2r_encode(const g2r_grammar* g, const g2r_domains* d, const char* open_spec, int target,
                              int weak, size_t budget, const char* out_dir, char** summary);

typedef struct g2r_shift_pb_params {
  int slots;
  int workers;
  int activities;
  int toy_limits;
  const char* open_spec;
  const char* demand_path; /* lines `<slot> a<k> <count>`; NULL for zero demand */
  int regular_workers;     /* 0: Grammar CNF per worker, 1: Regular CNF */
  int weak;
  int strict_demand;
  size_t budget;
} g2r_shift_pb_params;

/* Writes model.opb and model.atoms. */
G2R_API g2r_status g2r_encode_shift_pb(const g2r_shift_pb_params* p, const char* out_dir, char** summary);

/* family: "separation-1" or "separation-2". One TSV row per n. */
G2R_API g2r_status g2r_order_experiment(const char* family, const int* ns, size_t count, char** tsv);

#ifdef __cplusplus
}
#endif

#endif
