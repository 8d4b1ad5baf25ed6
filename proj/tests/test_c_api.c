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

// Plain C consumer of libqds: only the public header and the shared library.
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qds/qds.h"

static int failures = 0;

#define CHECK(cond)                                                 \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: CHECK failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

#define CHECK_OK(call) CHECK((call) == QDS_OK)

static int contains(const char* s, const char* needle) { return s && strstr(s, needle) != NULL; }

static void test_config(void) {
  qds_config* cfg = NULL;
  uint64_t seed = 1;
  double v = 0.0;
  CHECK_OK(qds_config_new(&cfg));
  CHECK_OK(qds_config_get_seed(cfg, &seed));
  CHECK(seed == 0);
  CHECK_OK(qds_config_set_seed(cfg, 42));
  CHECK_OK(qds_config_get_seed(cfg, &seed));
  CHECK(seed == 42);
  CHECK_OK(qds_config_set_tolerance(cfg, "maj_tol", 1e-7));
  CHECK_OK(qds_config_get_tolerance(cfg, "maj_tol", &v));
  CHECK(v == 1e-7);
  CHECK(qds_config_set_tolerance(cfg, "no_such_tol", 1.0) == QDS_ERR_BAD_PARAMETER);
  CHECK(contains(qds_last_error(), "no_such_tol"));
  CHECK(qds_config_set_output(cfg, "-", "xml") == QDS_ERR_BAD_PARAMETER);
  CHECK(qds_config_get_seed(NULL, &seed) == QDS_ERR_NULL_ARGUMENT);
  CHECK(strcmp(qds_status_name(QDS_ERR_NOT_QDS), "NotQds") == 0);
  CHECK(strlen(qds_version()) > 0);
  qds_config_free(cfg);
  qds_config_free(NULL);
}

static void test_matrix(void) {
  qds_matrix* m = NULL;
  size_t dim = 0;
  double re = 0.0, im = 0.0, nrm = 0.0;
  char* text = NULL;
  CHECK_OK(qds_matrix_from_json("{\"dim\":2,\"entries\":[[0.5,0],[0.3,0],[0.3,0],[0.5,0]]}", &m));
  CHECK_OK(qds_matrix_dim(m, &dim));
  CHECK(dim == 2);
  CHECK_OK(qds_matrix_entry(m, 0, 1, &re, &im));
  CHECK(re == 0.3 && im == 0.0);
  CHECK(qds_matrix_entry(m, 2, 0, &re, &im) == QDS_ERR_DIMENSION_MISMATCH);
  CHECK_OK(qds_matrix_schatten_norm(m, 1.0, &nrm));
  CHECK(fabs(nrm - 1.0) < 1e-14);
  CHECK_OK(qds_matrix_schatten_norm(m, INFINITY, &nrm));
  CHECK(fabs(nrm - 0.8) < 1e-14);
  CHECK(qds_matrix_schatten_norm(m, 0.5, &nrm) == QDS_ERR_BAD_EXPONENT);
  CHECK_OK(qds_matrix_trace(m, &re, &im));
  CHECK(fabs(re - 1.0) < 1e-15);
  CHECK_OK(qds_matrix_to_json(m, &text));
  CHECK(contains(text, "\"dim\""));
  qds_string_free(text);
  qds_matrix_free(m);
  m = NULL;
  CHECK(qds_matrix_from_json("{\"dim\":2}", &m) == QDS_ERR_PARSE);
  CHECK(m == NULL);
  CHECK(qds_matrix_from_json("[1,", &m) == QDS_ERR_PARSE);
}

static void test_channels(void) {
  qds_config* cfg = NULL;
  qds_channel* ch = NULL;
  qds_channel* adj = NULL;
  qds_matrix* x = NULL;
  qds_matrix* y = NULL;
  char* text = NULL;
  int is_qds = -1;
  double re = 0.0, im = 0.0;
  CHECK_OK(qds_config_new(&cfg));
  CHECK_OK(qds_channel_zoo("depolarizing", "{\"t\":0.0,\"n\":2}", cfg, &ch));
  CHECK_OK(qds_matrix_from_json("{\"dim\":2,\"entries\":[[1,0],[0,0],[0,0],[0,0]]}", &x));
  CHECK_OK(qds_channel_apply(ch, x, &y));
  CHECK_OK(qds_matrix_entry(y, 1, 1, &re, &im));
  CHECK(fabs(re - 0.5) < 1e-15);
  CHECK_OK(qds_channel_adjoint(ch, &adj));
  CHECK_OK(qds_certify(ch, cfg, &text, &is_qds));
  CHECK(is_qds == 1);
  CHECK(contains(text, "\"tool_version\"") && contains(text, "\"run_config\""));
  qds_string_free(text);
  CHECK_OK(qds_channel_to_json(ch, "choi", cfg, &text));
  CHECK(contains(text, "\"choi\""));
  {
    qds_channel* back = NULL;
    size_t dim = 0;
    CHECK_OK(qds_channel_from_json(text, &back));
    CHECK_OK(qds_channel_dim(back, &dim));
    CHECK(dim == 2);
    qds_channel_free(back);
  }
  qds_string_free(text);
  qds_channel_free(ch);
  ch = NULL;
  CHECK(qds_channel_zoo("no_such_channel", NULL, cfg, &ch) == QDS_ERR_UNKNOWN_EXAMPLE);
  CHECK(qds_channel_zoo("depolarizing", "{\"t\":2.0,\"n\":2}", cfg, &ch) == QDS_ERR_BAD_PARAMETER);
  CHECK(qds_channel_apply(adj, NULL, &y) == QDS_ERR_NULL_ARGUMENT);
  /* transpose: certification succeeds with a negative verdict */
  CHECK_OK(qds_channel_zoo("transpose", "{\"n\":2}", cfg, &ch));
  CHECK_OK(qds_certify(ch, cfg, &text, &is_qds));
  CHECK(is_qds == 0);
  qds_string_free(text);
  qds_channel_free(ch);
  qds_channel_free(adj);
  qds_matrix_free(x);
  qds_matrix_free(y);
  qds_config_free(cfg);
}

static void test_reports(void) {
  qds_config* cfg = NULL;
  qds_channel* ch = NULL;
  qds_matrix* rho = NULL;
  qds_matrix* sigma = NULL;
  char* text = NULL;
  int violation = -1;
  const double grid[] = {1.0, 2.0, INFINITY};
  const double eps[] = {1e-1, 1e-2};
  const size_t ranks[] = {4, 8};
  CHECK_OK(qds_config_new(&cfg));
  CHECK_OK(qds_channel_zoo("depolarizing", "{\"t\":0.5,\"n\":2}", cfg, &ch));

  CHECK_OK(qds_norm(ch, 2.0, 1, cfg, &text, &violation));
  CHECK(violation == 0 && contains(text, "\"lower\": 0.5"));
  qds_string_free(text);
  CHECK_OK(qds_probe(ch, 2.0, cfg, &text));
  CHECK(contains(text, "\"hits\""));
  qds_string_free(text);
  CHECK_OK(qds_sweep(ch, grid, 3, cfg, &text, &violation));
  CHECK(violation == 0 && contains(text, "\"ok\": true"));
  qds_string_free(text);

  CHECK_OK(qds_matrix_from_json("{\"dim\":2,\"entries\":[[0.5,0],[0,0],[0,0],[0.5,0]]}", &rho));
  CHECK_OK(qds_matrix_from_json("{\"dim\":2,\"entries\":[[1,0],[0,0],[0,0],[0,0]]}", &sigma));
  CHECK_OK(qds_majorize(rho, sigma, 1, cfg, &text, &violation));
  CHECK(violation == 0 && contains(text, "\"realizing_channel\""));
  qds_string_free(text);
  CHECK_OK(qds_majorize(sigma, rho, 0, cfg, &text, &violation));
  CHECK(contains(text, "\"holds\": false"));
  qds_string_free(text);
  /* diag(0.5, 0.5) is not doubly stochastic */
  CHECK(qds_birkhoff(rho, cfg, &text, &violation) == QDS_ERR_BAD_PARAMETER);
  CHECK(text == NULL);
  qds_string_free(text);
  {
    qds_matrix* d = NULL;
    CHECK_OK(qds_matrix_from_json("{\"dim\":2,\"entries\":[[0.25,0],[0.75,0],[0.75,0],[0.25,0]]}", &d));
    CHECK_OK(qds_birkhoff(d, cfg, &text, &violation));
    CHECK(violation == 0 && contains(text, "\"terms\": 2"));
    qds_string_free(text);
    qds_matrix_free(d);
  }
  CHECK_OK(qds_entropy(ch, sigma, 1, cfg, &text, &violation));
  CHECK(violation == 0 && contains(text, "\"bits\""));
  qds_string_free(text);
  CHECK_OK(qds_perturb(ch, "additive", eps, 2, 2.0, cfg, &text, &violation));
  CHECK(violation == 0);
  qds_string_free(text);
  CHECK_OK(qds_perturb(ch, "mixture", eps, 2, 2.0, cfg, &text, &violation));
  CHECK(violation == 1);
  qds_string_free(text);
  CHECK_OK(qds_tailscan("damped_pinching", 16, 2.0, ranks, 2, 0.5, cfg, &text, &violation));
  CHECK(violation == 0 && contains(text, "compact-like"));
  qds_string_free(text);
  CHECK(qds_tailscan("nope", 16, 2.0, ranks, 2, 0.5, cfg, &text, &violation) == QDS_ERR_UNKNOWN_EXAMPLE);
  CHECK_OK(qds_selftest(cfg, &text, &violation));
  CHECK(violation == 0);
  qds_string_free(text);

  qds_matrix_free(rho);
  qds_matrix_free(sigma);
  qds_channel_free(ch);
  qds_config_free(cfg);
}

int main(void) {
  test_config();
  test_matrix();
  test_channels();
  test_reports();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("c api: all checks passed\n");
  return 0;
}
