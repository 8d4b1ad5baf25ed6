// Copyright 2026 The QDS Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the QDS toolkit. Every function returns a qds_status;
 * on failure qds_last_error() describes the problem for the calling
 * thread. Strings returned through char** belong to the caller and are
 * released with qds_string_free(). Output pointers are set to NULL before
 * any work, so they are safe to free after an error. */
#ifndef QDS_QDS_H_
#define QDS_QDS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QDS_BUILDING_LIBRARY)
#define QDS_API __attribute__((visibility("default")))
#else
#define QDS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qds_status {
  QDS_OK = 0,
  QDS_ERR_BAD_PARAMETER = 1,
  QDS_ERR_PARSE = 2,
  QDS_ERR_DIMENSION_MISMATCH = 3,
  QDS_ERR_NON_HERMITIAN = 4,
  QDS_ERR_DOMAIN = 5,
  QDS_ERR_BAD_EXPONENT = 6,
  QDS_ERR_BAD_RANK = 7,
  QDS_ERR_NOT_CP = 8,
  QDS_ERR_NOT_TRACE_PRESERVING = 9,
  QDS_ERR_NOT_QDS = 10,
  QDS_ERR_NOT_MAJORIZED = 11,
  QDS_ERR_DECOMPOSITION_STALLED = 12,
  QDS_ERR_UNKNOWN_EXAMPLE = 13,
  QDS_ERR_NULL_ARGUMENT = 14,
  QDS_ERR_INTERNAL = 15
} qds_status;

typedef struct qds_config qds_config;
typedef struct qds_matrix qds_matrix;
typedef struct qds_channel qds_channel;

QDS_API const char* qds_version(void);
QDS_API const char* qds_status_name(qds_status status);
QDS_API const char* qds_last_error(void);
QDS_API void qds_string_free(char* s);

/* Run configuration: seed, tolerance overrides, output target. */
QDS_API qds_status qds_config_new(qds_config** out);
QDS_API void qds_config_free(qds_config* cfg);
QDS_API qds_status qds_config_set_seed(qds_config* cfg, uint64_t seed);
QDS_API qds_status qds_config_get_seed(const qds_config* cfg, uint64_t* seed);
QDS_API qds_status qds_config_set_tolerance(qds_config* cfg, const char* name, double value);
QDS_API qds_status qds_config_get_tolerance(const qds_config* cfg, const char* name, double* value);
QDS_API qds_status qds_config_set_output(qds_config* cfg, const char* output, const char* format);

/* Matrices in {"dim": n, "entries": [[re, im], ...]} form. */
QDS_API qds_status qds_matrix_from_json(const char* json, qds_matrix** out);
QDS_API qds_status qds_matrix_to_json(const qds_matrix* m, char** out);
QDS_API void qds_matrix_free(qds_matrix* m);
QDS_API qds_status qds_matrix_dim(const qds_matrix* m, size_t* dim);
QDS_API qds_status qds_matrix_entry(const qds_matrix* m, size_t row, size_t col, double* re, double* im);
QDS_API qds_status qds_matrix_schatten_norm(const qds_matrix* m, double p, double* out);
QDS_API qds_status qds_matrix_trace(const qds_matrix* m, double* re, double* im);

/* Channels. repr is "kraus", "choi", "superop" or NULL for the stored form. */
QDS_API qds_status qds_channel_from_json(const char* json, qds_channel** out);
QDS_API qds_status qds_channel_zoo(const char* name, const char* params_json, const qds_config* cfg,
                                   qds_channel** out);
QDS_API qds_status qds_channel_to_json(const qds_channel* ch, const char* repr, const qds_config* cfg, char** out);
QDS_API void qds_channel_free(qds_channel* ch);
QDS_API qds_status qds_channel_dim(const qds_channel* ch, size_t* dim);
QDS_API qds_status qds_channel_apply(const qds_channel* ch, const qds_matrix* x, qds_matrix** out);
QDS_API qds_status qds_channel_adjoint(const qds_channel* ch, qds_channel** out);

/* Reports. Each writes a JSON document carrying "tool_version" and
 * "run_config". *violation (may be NULL) is set to 1 when the computation
 * succeeded but exhibited a mathematical property violation. */
QDS_API qds_status qds_certify(const qds_channel* ch, const qds_config* cfg, char** out, int* is_qds);
QDS_API qds_status qds_norm(const qds_channel* ch, double p, int traceless, const qds_config* cfg, char** out,
                            int* violation);
QDS_API qds_status qds_probe(const qds_channel* ch, double p, const qds_config* cfg, char** out);
QDS_API qds_status qds_sweep(const qds_channel* ch, const double* p_grid, size_t count, const qds_config* cfg,
                             char** out, int* violation);
QDS_API qds_status qds_majorize(const qds_matrix* rho, const qds_matrix* sigma, int realize, const qds_config* cfg,
                                char** out, int* violation);
/* d is read as a real matrix; imaginary parts must vanish. */
QDS_API qds_status qds_birkhoff(const qds_matrix* d, const qds_config* cfg, char** out, int* violation);
QDS_API qds_status qds_entropy(const qds_channel* ch, const qds_matrix* rho, int bits, const qds_config* cfg,
                               char** out, int* violation);
QDS_API qds_status qds_perturb(const qds_channel* phi, const char* family, const double* eps_grid, size_t count,
                               double p, const qds_config* cfg, char** out, int* violation);
QDS_API qds_status qds_tailscan(const char* example, size_t n, double p, const size_t* ranks, size_t count,
                                double decay, const qds_config* cfg, char** out, int* violation);
QDS_API qds_status qds_selftest(const qds_config* cfg, char** out, int* violation);

#ifdef __cplusplus
}
#endif

#endif /* QDS_QDS_H_ */
