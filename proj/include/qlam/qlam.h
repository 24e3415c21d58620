/*
 * Copyright 2026 The qlam Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the quantum lambda calculus interpreter, checker and
 * inference engine. All handles are opaque. Functions returning a report
 * allocate it; release it with qlam_string_free. A context is not safe for
 * concurrent use; distinct contexts are independent. */

#ifndef QLAM_QLAM_H_
#define QLAM_QLAM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QLAM_API __declspec(dllexport)
#elif defined(__GNUC__)
#define QLAM_API __attribute__((visibility("default")))
#else
#define QLAM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qlam_status {
  QLAM_OK = 0,
  QLAM_ERR_PARSE = 1,        /* source or type syntax */
  QLAM_ERR_TYPE = 2,         /* a typing judgment failed */
  QLAM_ERR_UNTYPABLE = 3,    /* inference found no type */
  QLAM_ERR_RUNTIME = 4,      /* reduction reached an error state */
  QLAM_ERR_EXHAUSTED = 5,    /* step budget used up */
  QLAM_ERR_INCONSISTENT = 6, /* an error state is reachable */
  QLAM_ERR_IO = 7,
  QLAM_ERR_ARGUMENT = 8,
  QLAM_ERR_INTERNAL = 9
} qlam_status;

typedef struct qlam_context qlam_context;
typedef struct qlam_program qlam_program;
typedef struct qlam_distribution qlam_distribution;

typedef struct qlam_options {
  uint64_t seed;      /* default 0 */
  uint64_t max_steps; /* default 10000 */
  uint64_t depth;     /* default 1000 */
  int machine;        /* tab-separated output */
  int unsafe;         /* skip the type check before run/explore */
} qlam_options;

QLAM_API const char* qlam_status_name(qlam_status status);
QLAM_API void qlam_options_init(qlam_options* options);

/* A context owns a gate table initialised with the built-in gates. */
QLAM_API qlam_context* qlam_context_create(void);
QLAM_API void qlam_context_destroy(qlam_context* ctx);
/* Message of the last failing call on this context, or "". */
QLAM_API const char* qlam_context_last_error(const qlam_context* ctx);
QLAM_API qlam_status qlam_context_load_gates(qlam_context* ctx, const char* path);
/* `matrix` holds 2 * 4^arity doubles: row-major (re, im) pairs. */
QLAM_API qlam_status qlam_context_add_gate(qlam_context* ctx, const char* name, int arity, const double* matrix);

QLAM_API qlam_status qlam_program_parse(qlam_context* ctx, const char* source, qlam_program** out);
QLAM_API qlam_status qlam_program_load(qlam_context* ctx, const char* path, qlam_program** out);
QLAM_API void qlam_program_destroy(qlam_program* program);
/* Pretty-printed term; free with qlam_string_free. */
QLAM_API char* qlam_program_text(const qlam_program* program);

/* Checks the closed program at `type` (concrete type syntax), or at an
 * inferred type when `type` is NULL. `explain` appends the derivation. */
QLAM_API qlam_status qlam_check(qlam_context* ctx, const qlam_program* program, const char* type, int explain,
                                char** report);
/* One inferred type, or every root type when `all` is set. */
QLAM_API qlam_status qlam_infer(qlam_context* ctx, const qlam_program* program, int all, char** report);
QLAM_API qlam_status qlam_run(qlam_context* ctx, const qlam_program* program, const qlam_options* options,
                              char** report);
QLAM_API qlam_status qlam_explore(qlam_context* ctx, const qlam_program* program, const qlam_options* options,
                                  char** report);
QLAM_API qlam_status qlam_consistency(qlam_context* ctx, const qlam_program* program, const qlam_options* options,
                                      char** report);

/* Structured access to an exploration, marginalised over terms. */
QLAM_API qlam_status qlam_explore_distribution(qlam_context* ctx, const qlam_program* program, uint64_t depth,
                                               qlam_distribution** out);
QLAM_API size_t qlam_distribution_size(const qlam_distribution* d);
QLAM_API const char* qlam_distribution_term(const qlam_distribution* d, size_t i);
QLAM_API double qlam_distribution_mass(const qlam_distribution* d, size_t i);
QLAM_API double qlam_distribution_pending(const qlam_distribution* d);
QLAM_API double qlam_distribution_error(const qlam_distribution* d);
QLAM_API void qlam_distribution_destroy(qlam_distribution* d);

QLAM_API void qlam_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QLAM_QLAM_H_ */
