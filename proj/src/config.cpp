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

#include "qds/config.hpp"

#include <cmath>

#include "qds/error.hpp"

namespace qds {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadParameter: return "BadParameter";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonHermitianInput: return "NonHermitianInput";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kBadExponent: return "BadExponent";
    case ErrorCode::kBadRank: return "BadRank";
    case ErrorCode::kNotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::kNotTracePreserving: return "NotTracePreserving";
    case ErrorCode::kNotQds: return "NotQds";
    case ErrorCode::kNotMajorized: return "NotMajorized";
    case ErrorCode::kDecompositionStalled: return "DecompositionStalled";
    case ErrorCode::kUnknownExample: return "UnknownExample";
  }
  return "Unknown";
}

namespace {

template <typename F>
void for_each_field(Tolerances& t, F&& f) {
  f("hermitian_tol", t.hermitian_tol);
  f("psd_tol", t.psd_tol);
  f("trace_tol", t.trace_tol);
  f("recon_tol", t.recon_tol);
  f("orth_tol", t.orth_tol);
  f("tp_tol", t.tp_tol);
  f("un_tol", t.un_tol);
  f("conv_tol", t.conv_tol);
  f("maj_tol", t.maj_tol);
  f("ds_tol", t.ds_tol);
  f("realize_tol", t.realize_tol);
  f("unitary_tol", t.unitary_tol);
  f("mono_tol", t.mono_tol);
  f("strict_floor", t.strict_floor);
  f("norm_violation_tol", t.norm_violation_tol);
}

}  // namespace

void Tolerances::set(const std::string& name, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorCode::kBadParameter, "tolerance " + name + " must be finite and >= 0");
  }
  bool found = false;
  for_each_field(*this, [&](const char* key, double& field) {
    if (name == key) {
      field = value;
      found = true;
    }
  });
  if (!found) throw Error(ErrorCode::kBadParameter, "unknown tolerance '" + name + "'");
}

double Tolerances::get(const std::string& name) const {
  for (const auto& [key, value] : as_map()) {
    if (key == name) return value;
  }
  throw Error(ErrorCode::kBadParameter, "unknown tolerance '" + name + "'");
}

std::map<std::string, double> Tolerances::as_map() const {
  std::map<std::string, double> out;
  Tolerances copy = *this;
  for_each_field(copy, [&](const char* key, double& field) { out[key] = field; });
  return out;
}

}  // namespace qds
