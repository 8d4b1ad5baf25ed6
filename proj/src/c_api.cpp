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

#include "qds/qds.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "qds/channels.hpp"
#include "qds/entropy.hpp"
#include "qds/json_io.hpp"
#include "qds/majorization.hpp"
#include "qds/norms.hpp"
#include "qds/perturbation.hpp"
#include "qds/reports.hpp"
#include "qds/selftest.hpp"
#include "qds/truncation.hpp"

struct qds_config {
  qds::RunConfig run;
};

struct qds_matrix {
  qds::ComplexMatrix m;
};

struct qds_channel {
  explicit qds_channel(qds::Channel c) : ch(std::move(c)) {}
  qds::Channel ch;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

qds_status fail(qds_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

qds_status status_of(qds::ErrorCode code) { return static_cast<qds_status>(static_cast<int>(code) + 1); }

template <typename F>
qds_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QDS_OK;
  } catch (const qds::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(QDS_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QDS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QDS_ERR_INTERNAL, e.what());
  }
}

#define QDS_REQUIRE(ptr)                                                          \
  do {                                                                            \
    if ((ptr) == nullptr) return fail(QDS_ERR_NULL_ARGUMENT, #ptr " is null");   \
  } while (0)

// Outputs are cleared first so callers may free them unconditionally.
#define QDS_REQUIRE_OUT(ptr) \
  do {                       \
    QDS_REQUIRE(ptr);        \
    *(ptr) = {};             \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const qds::RunConfig& run_of(const qds_config* cfg) {
  static const qds::RunConfig kDefault;
  return cfg != nullptr ? cfg->run : kDefault;
}

void emit(json body, const qds_config* cfg, char** out) {
  *out = dup_string(qds::envelope(std::move(body), run_of(cfg)).dump(2) + "\n");
}

void set_flag(int* flag, bool value) {
  if (flag != nullptr) *flag = value ? 1 : 0;
}

}  // namespace

extern "C" {

const char* qds_version(void) { return qds::tool_version(); }

const char* qds_status_name(qds_status status) {
  switch (status) {
    case QDS_OK: return "Ok";
    case QDS_ERR_NULL_ARGUMENT: return "NullArgument";
    case QDS_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const int v = static_cast<int>(status);
  if (v >= 1 && v <= 13) return qds::error_code_name(static_cast<qds::ErrorCode>(v - 1));
  return "Unknown";
}

const char* qds_last_error(void) { return g_last_error.c_str(); }

void qds_string_free(char* s) { std::free(s); }

qds_status qds_config_new(qds_config** out) {
  QDS_REQUIRE_OUT(out);
  return guarded([&] { *out = new qds_config(); });
}

void qds_config_free(qds_config* cfg) { delete cfg; }

qds_status qds_config_set_seed(qds_config* cfg, uint64_t seed) {
  QDS_REQUIRE(cfg);
  cfg->run.seed = seed;
  return QDS_OK;
}

qds_status qds_config_get_seed(const qds_config* cfg, uint64_t* seed) {
  QDS_REQUIRE(cfg);
  QDS_REQUIRE(seed);
  *seed = cfg->run.seed;
  return QDS_OK;
}

qds_status qds_config_set_tolerance(qds_config* cfg, const char* name, double value) {
  QDS_REQUIRE(cfg);
  QDS_REQUIRE(name);
  return guarded([&] { cfg->run.override_tolerance(name, value); });
}

qds_status qds_config_get_tolerance(const qds_config* cfg, const char* name, double* value) {
  QDS_REQUIRE(cfg);
  QDS_REQUIRE(name);
  QDS_REQUIRE(value);
  return guarded([&] { *value = cfg->run.tol.get(name); });
}

qds_status qds_config_set_output(qds_config* cfg, const char* output, const char* format) {
  QDS_REQUIRE(cfg);
  return guarded([&] {
    if (output != nullptr) cfg->run.output = output;
    if (format != nullptr) {
      const std::string f = format;
      if (f != "json" && f != "csv") throw qds::Error(qds::ErrorCode::kBadParameter, "format must be json or csv");
      cfg->run.format = f;
    }
  });
}

qds_status qds_matrix_from_json(const char* text, qds_matrix** out) {
  QDS_REQUIRE(text);
  QDS_REQUIRE_OUT(out);
  return guarded([&] { *out = new qds_matrix{qds::matrix_from_json(qds::parse_json_text(text))}; });
}

qds_status qds_matrix_to_json(const qds_matrix* m, char** out) {
  QDS_REQUIRE(m);
  QDS_REQUIRE_OUT(out);
  return guarded([&] { *out = dup_string(qds::matrix_to_json(m->m).dump() + "\n"); });
}

void qds_matrix_free(qds_matrix* m) { delete m; }

qds_status qds_matrix_dim(const qds_matrix* m, size_t* dim) {
  QDS_REQUIRE(m);
  QDS_REQUIRE(dim);
  *dim = static_cast<size_t>(m->m.rows());
  return QDS_OK;
}

qds_status qds_matrix_entry(const qds_matrix* m, size_t row, size_t col, double* re, double* im) {
  QDS_REQUIRE(m);
  const auto n = static_cast<size_t>(m->m.rows());
  if (row >= n || col >= n) return fail(QDS_ERR_DIMENSION_MISMATCH, "entry index out of range");
  const qds::Complex z = m->m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  if (re != nullptr) *re = z.real();
  if (im != nullptr) *im = z.imag();
  return QDS_OK;
}

qds_status qds_matrix_schatten_norm(const qds_matrix* m, double p, double* out) {
  QDS_REQUIRE(m);
  QDS_REQUIRE_OUT(out);
  return guarded([&] { *out = qds::schatten_norm(m->m, p); });
}

qds_status qds_matrix_trace(const qds_matrix* m, double* re, double* im) {
  QDS_REQUIRE(m);
  return guarded([&] {
    const qds::Complex t = qds::trace(m->m);
    if (re != nullptr) *re = t.real();
    if (im != nullptr) *im = t.imag();
  });
}

qds_status qds_channel_from_json(const char* text, qds_channel** out) {
  QDS_REQUIRE(text);
  QDS_REQUIRE_OUT(out);
  return guarded([&] { *out = new qds_channel(qds::channel_from_json(qds::parse_json_text(text))); });
}

qds_status qds_channel_zoo(const char* name, const char* params_json, const qds_config* cfg, qds_channel** out) {
  QDS_REQUIRE(name);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const json params = params_json != nullptr && *params_json != '\0' ? qds::parse_json_text(params_json)
                                                                       : json::object();
    *out = new qds_channel(qds::channel_zoo(name, params, run_of(cfg).tol));
  });
}

qds_status qds_channel_to_json(const qds_channel* ch, const char* repr, const qds_config* cfg, char** out) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    std::optional<qds::Representation> as;
    if (repr != nullptr) as = qds::parse_representation(repr);
    emit(qds::channel_to_json(ch->ch, as, run_of(cfg).tol), cfg, out);
  });
}

void qds_channel_free(qds_channel* ch) { delete ch; }

qds_status qds_channel_dim(const qds_channel* ch, size_t* dim) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE(dim);
  *dim = ch->ch.dim();
  return QDS_OK;
}

qds_status qds_channel_apply(const qds_channel* ch, const qds_matrix* x, qds_matrix** out) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE(x);
  QDS_REQUIRE_OUT(out);
  return guarded([&] { *out = new qds_matrix{qds::apply(ch->ch, x->m)}; });
}

qds_status qds_channel_adjoint(const qds_channel* ch, qds_channel** out) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE_OUT(out);
  return guarded([&] { *out = new qds_channel(qds::adjoint(ch->ch)); });
}

qds_status qds_certify(const qds_channel* ch, const qds_config* cfg, char** out, int* is_qds) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::QdsReport r = qds::certify_qds(ch->ch, run_of(cfg).tol);
    json body = qds::to_json(r);
    body["dim"] = ch->ch.dim();
    body["channel"] = ch->ch.meta().name;
    set_flag(is_qds, r.is_qds);
    emit(std::move(body), cfg, out);
  });
}

qds_status qds_norm(const qds_channel* ch, double p, int traceless, const qds_config* cfg, char** out,
                    int* violation) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::RunConfig& run = run_of(cfg);
    const qds::InducedNormResult r = traceless ? qds::traceless_norm(ch->ch, p, run.tol, run.seed)
                                               : qds::induced_norm(ch->ch, p, run.tol, run.seed);
    const bool qds_map = qds::certify_qds(ch->ch, run.tol).is_qds;
    json body = qds::to_json(r);
    body["subspace"] = traceless ? "traceless" : "full";
    body["is_qds"] = qds_map;
    // A certified QDS map is a contraction on every Schatten class.
    const bool bad = qds_map && r.lower_bound > 1.0 + run.tol.norm_violation_tol;
    body["property_violation"] = bad;
    set_flag(violation, bad);
    emit(std::move(body), cfg, out);
  });
}

qds_status qds_probe(const qds_channel* ch, double p, const qds_config* cfg, char** out) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::RunConfig& run = run_of(cfg);
    emit(qds::to_json(qds::diagonal_contraction_probe(ch->ch, p, run.tol, run.seed)), cfg, out);
  });
}

qds_status qds_sweep(const qds_channel* ch, const double* p_grid, size_t count, const qds_config* cfg, char** out,
                     int* violation) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE(p_grid);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::RunConfig& run = run_of(cfg);
    const std::vector<double> grid(p_grid, p_grid + count);
    const qds::SweepReport r = qds::interpolation_sweep(ch->ch, grid, run.tol, run.seed);
    set_flag(violation, !r.ok);
    emit(qds::to_json(r), cfg, out);
  });
}

qds_status qds_majorize(const qds_matrix* rho, const qds_matrix* sigma, int realize, const qds_config* cfg,
                        char** out, int* violation) {
  QDS_REQUIRE(rho);
  QDS_REQUIRE(sigma);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::Tolerances& tol = run_of(cfg).tol;
    const qds::DensityMatrix r(rho->m, tol), s(sigma->m, tol);
    if (r.dim() != s.dim()) throw qds::Error(qds::ErrorCode::kDimensionMismatch, "rho and sigma differ in dimension");
    qds::MajorizationCertificate cert = qds::check_majorization(r, s, tol);
    bool bad = false;
    if (realize && cert.holds) {
      cert = qds::realize_channel(r, s, tol);
      bad = !cert.channel_qds || cert.realize_residual > tol.realize_tol;
    }
    json body = qds::to_json(cert, tol);
    body["property_violation"] = bad;
    set_flag(violation, bad);
    emit(std::move(body), cfg, out);
  });
}

qds_status qds_birkhoff(const qds_matrix* d, const qds_config* cfg, char** out, int* violation) {
  QDS_REQUIRE(d);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::Tolerances& tol = run_of(cfg).tol;
    if (d->m.imag().cwiseAbs().maxCoeff() > tol.ds_tol) {
      throw qds::Error(qds::ErrorCode::kBadParameter, "doubly stochastic matrix must be real");
    }
    const qds::DoublyStochasticMatrix ds(d->m.real(), tol);
    const qds::BirkhoffDecomposition b = qds::birkhoff_decompose(ds, tol);
    const std::size_t n = ds.dim();
    const double err = (b.reconstruct(n) - ds.entries()).cwiseAbs().maxCoeff();
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    json body = qds::to_json(b);
    body["reconstruction_error"] = err;
    body["term_bound"] = bound;
    const bool bad = err > tol.recon_tol || b.weights.size() > bound;
    body["property_violation"] = bad;
    set_flag(violation, bad);
    emit(std::move(body), cfg, out);
  });
}

qds_status qds_entropy(const qds_channel* ch, const qds_matrix* rho, int bits, const qds_config* cfg, char** out,
                       int* violation) {
  QDS_REQUIRE(ch);
  QDS_REQUIRE(rho);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::Tolerances& tol = run_of(cfg).tol;
    qds::EntropyReport r = qds::entropy_monotonicity_check(ch->ch, qds::DensityMatrix(rho->m, tol), tol);
    if (bits) {
      const double ln2 = std::log(2.0);
      r.s_in /= ln2;
      r.s_out /= ln2;
      r.delta /= ln2;
      r.bound_log_d /= ln2;
    }
    json body = qds::to_json(r);
    body["units"] = bits ? "bits" : "nats";
    set_flag(violation, !r.monotone);
    emit(std::move(body), cfg, out);
  });
}

qds_status qds_perturb(const qds_channel* phi, const char* family, const double* eps_grid, size_t count, double p,
                       const qds_config* cfg, char** out, int* violation) {
  QDS_REQUIRE(phi);
  QDS_REQUIRE(family);
  QDS_REQUIRE(eps_grid);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::RunConfig& run = run_of(cfg);
    const std::vector<double> grid(eps_grid, eps_grid + count);
    const qds::PerturbationSweep s =
        qds::perturbation_sweep(phi->ch, qds::parse_family(family), grid, p, run.tol, run.seed);
    // |norm(Psi) - 1| stays within the fitted bound.
    bool stable = std::isfinite(s.cp_max);
    for (const auto& pt : s.points) {
      if (!stable) break;
      stable = std::abs(pt.psi_norm - 1.0) <= s.cp_max * std::pow(pt.delta_tr + pt.delta_un, pt.alpha) + 1e-8;
    }
    json body = qds::to_json(s);
    body["norm_stability_holds"] = stable;
    const bool bad = !s.bound_counterexamples.empty() || !stable;
    body["property_violation"] = bad;
    set_flag(violation, bad);
    emit(std::move(body), cfg, out);
  });
}

qds_status qds_tailscan(const char* example, size_t n, double p, const size_t* ranks, size_t count, double decay,
                        const qds_config* cfg, char** out, int* violation) {
  QDS_REQUIRE(example);
  QDS_REQUIRE(ranks);
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::RunConfig& run = run_of(cfg);
    const std::vector<std::size_t> r(ranks, ranks + count);
    const qds::TailScan s = qds::scan(example, n, p, r, run.seed, {}, decay);
    set_flag(violation, !s.monotone);
    emit(qds::to_json(s), cfg, out);
  });
}

qds_status qds_selftest(const qds_config* cfg, char** out, int* violation) {
  QDS_REQUIRE_OUT(out);
  return guarded([&] {
    const qds::RunConfig& run = run_of(cfg);
    const qds::SelftestReport r = qds::run_selftest(run.seed, run.tol);
    set_flag(violation, !r.passed);
    emit(qds::to_json(r), cfg, out);
  });
}

}  // extern "C"
