#ifndef RIGIDLAB_RIGIDLAB_H
#define RIGIDLAB_RIGIDLAB_H

/*
 * C interface to rigidlab: linear-regular equational theories, bounded
 * proof search, and the word-problem-to-rigidity reduction.
 *
 * Objects are opaque handles released with their *_free function. Calls
 * return an rl_status; on failure rl_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread).
 *
 * Operations produce a JSON result document in *json_out, owned by the
 * caller and released with rl_string_free, plus a three-valued outcome.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RL_API __declspec(dllexport)
#else
#define RL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rl_theory rl_theory;
typedef struct rl_instance rl_instance;
typedef struct rl_interp rl_interp;

typedef enum rl_status {
  RL_OK = 0,
  RL_ERR_PARSE = 1,
  RL_ERR_INVALID = 2,
  RL_ERR_IO = 3,
  RL_ERR_INTERNAL = 4
} rl_status;

typedef enum rl_outcome {
  /* definite positive: proof, witness, certificate found */
  RL_POSITIVE = 0,
  /* definite negative: search space exhausted without hitting a cap */
  RL_NEGATIVE = 1,
  /* a bound stopped the search */
  RL_INDETERMINATE = 2
} rl_outcome;

typedef struct rl_bounds {
  uint32_t depth;
  uint32_t slack;
  /* 0 means max(size of goal terms) + slack */
  uint32_t size_cap;
  uint64_t node_budget;
  uint32_t jobs;
} rl_bounds;

RL_API const char* rl_version(void);
RL_API const char* rl_last_error(void);
RL_API void rl_string_free(char* s);
/* depth 16, slack 8, no explicit cap, budget 10^6, one job */
RL_API void rl_bounds_default(rl_bounds* b);

/* Theories (.thy) */
RL_API rl_status rl_theory_parse(const char* text, rl_theory** out);
RL_API rl_status rl_theory_load(const char* path, rl_theory** out);
RL_API rl_status rl_theory_render(const rl_theory* th, char** text_out);
RL_API rl_status rl_theory_t0(rl_theory** out);
RL_API void rl_theory_free(rl_theory* th);

/* Word-problem instances (.wp) */
RL_API rl_status rl_instance_parse(const char* text, rl_instance** out);
RL_API rl_status rl_instance_load(const char* path, rl_instance** out);
RL_API void rl_instance_free(rl_instance* inst);

/* Interpretations (.itp); theory paths resolve relative to the file. */
RL_API rl_status rl_interp_load(const char* path, rl_interp** out);
RL_API rl_status rl_interp_render(const rl_interp* i, const char* source_path, const char* target_path,
                                  char** text_out);
RL_API void rl_interp_free(rl_interp* i);

/* Compiles the instance into its theory and the interpretation from T0. */
RL_API rl_status rl_reduce(const rl_instance* inst, rl_theory** theory_out, rl_interp** interp_out);

/* equation: "[n] lhs = rhs" */
RL_API rl_status rl_prove(const rl_theory* th, const char* equation, const rl_bounds* b, rl_outcome* outcome,
                          char** json_out);
RL_API rl_status rl_replay(const rl_theory* th, const char* derivation_json, rl_outcome* outcome, char** json_out);
RL_API rl_status rl_census(const rl_theory* th, const char* derivation_json, const char* symbol,
                           rl_outcome* outcome, char** json_out);
RL_API rl_status rl_rigidity_search(const rl_theory* th, uint32_t max_size, uint32_t max_context,
                                    const rl_bounds* b, rl_outcome* outcome, char** json_out);
/* words as letter strings, "eps" for the empty word; size_cap acts as a length cap */
RL_API rl_status rl_word(const rl_instance* inst, const char* w1, const char* w2, const rl_bounds* b,
                         rl_outcome* outcome, char** json_out);
RL_API rl_status rl_hat(const rl_instance* inst, const char* term, uint32_t context, const rl_bounds* b,
                        rl_outcome* outcome, char** json_out);
RL_API rl_status rl_conservativity(const rl_interp* i, uint32_t term_size_bound, const rl_bounds* b,
                                   rl_outcome* outcome, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* RIGIDLAB_RIGIDLAB_H */
