// Copyright 2026 The rlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RLAB_RLAB_H_
#define RLAB_RLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RLAB_BUILDING_LIBRARY)
#define RLAB_API __attribute__((visibility("default")))
#else
#define RLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every call that can fail returns one of these and leaves a
   message in rlab_last_error() for the calling thread. */
typedef enum rlab_status {
  RLAB_OK = 0,
  RLAB_INVALID_PARAMS,
  RLAB_MALFORMED_CELL,
  RLAB_DISCONNECTED_INPUT,
  RLAB_CELL_NOT_FOUND,
  RLAB_GROUP_TOO_LARGE,
  RLAB_NOT_ADMISSIBLE,
  RLAB_DIMENSION_OUT_OF_RANGE,
  RLAB_INDEX_CONSTRAINT_VIOLATED,
  RLAB_NOT_A_COVER,
  RLAB_BUDGET_EXCEEDED,
  RLAB_SINGULAR_MATRIX,
  RLAB_COLORING_INCONSISTENT,
  RLAB_NOT_COMMUTING,
  RLAB_NOT_NORMAL,
  RLAB_NOT_EQUITABLE,
  RLAB_UNSUPPORTED_KIND,
  RLAB_ARITY_MISMATCH,
  RLAB_DIMENSION_UNSUPPORTED,
  RLAB_IO_ERROR,
  RLAB_NUMERICAL_FAILURE,
  RLAB_INTERNAL_ERROR
} rlab_status;

/* Colored simplicial complex (uncolored inputs get d = 2). */
typedef struct rlab_complex rlab_complex;
/* Joint spectrum of an operator family. */
typedef struct rlab_spectrum rlab_spectrum;

RLAB_API const char* rlab_version(void);
RLAB_API const char* rlab_status_name(rlab_status status);
/* 0 on success, 3 for numerical failures, 2 for everything else. */
RLAB_API int rlab_exit_code(rlab_status status);
RLAB_API const char* rlab_last_error(void);
/* Frees strings returned through char** out-parameters. */
RLAB_API void rlab_string_free(char* text);

RLAB_API rlab_status rlab_complex_from_json(const char* json, rlab_complex** out);
RLAB_API rlab_status rlab_complex_load(const char* path, rlab_complex** out);
RLAB_API rlab_status rlab_complex_to_json(const rlab_complex* complex, char** out);
RLAB_API size_t rlab_complex_num_vertices(const rlab_complex* complex);
RLAB_API int rlab_complex_dimension(const rlab_complex* complex);
/* 0 when dim is out of range. */
RLAB_API size_t rlab_complex_num_cells(const rlab_complex* complex, int dim);
RLAB_API void rlab_complex_free(rlab_complex* complex);

/* family: "adjacency", "laplacian", "laplacian-up", "laplacian-down",
   "hecke" or "cell:J". */
RLAB_API rlab_status rlab_spectrum_compute(const rlab_complex* complex, int dim,
                                           const char* family, rlab_spectrum** out);
RLAB_API size_t rlab_spectrum_size(const rlab_spectrum* spectrum);
RLAB_API size_t rlab_spectrum_arity(const rlab_spectrum* spectrum);
/* Writes arity values into re[] and im[]. */
RLAB_API rlab_status rlab_spectrum_point(const rlab_spectrum* spectrum, size_t index,
                                         double* re, double* im);
RLAB_API double rlab_spectrum_residual(const rlab_spectrum* spectrum);
RLAB_API void rlab_spectrum_free(rlab_spectrum* spectrum);

/* reference: "tree:k=3", "tree-edges:k=3", "building:q=2,d=3",
   "interval:lo=..,hi=..". *ramanujan is 1 or 0. */
RLAB_API rlab_status rlab_verdict(const rlab_complex* complex, int dim, const char* family,
                                  const char* reference, double tolerance, int* ramanujan);

/* Runs one pipeline command described by a JSON config
   {"command", "seed", "deterministic", "params"} and returns the report
   and CSV table (either out-parameter may be NULL). */
RLAB_API rlab_status rlab_run(const char* config_json, char** report_json, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* RLAB_RLAB_H_ */
