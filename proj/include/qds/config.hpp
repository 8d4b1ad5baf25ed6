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

#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qds {

// Numerical tolerances shared by every module. Values are absolute and sized
// for n <= 64 with O(1) entries.
struct Tolerances {
  double hermitian_tol = 1e-10;
  double psd_tol = 1e-10;
  double trace_tol = 1e-10;
  double recon_tol = 1e-9;
  double orth_tol = 1e-9;
  double tp_tol = 1e-9;
  double un_tol = 1e-9;
  double conv_tol = 1e-9;
  double maj_tol = 1e-9;
  double ds_tol = 1e-9;
  double realize_tol = 1e-8;
  double unitary_tol = 1e-9;
  double mono_tol = 1e-10;
  double strict_floor = 1e-12;
  double norm_violation_tol = 1e-6;

  // Throws Error(kBadParameter) for an unknown name or a negative value.
  void set(const std::string& name, double value);
  double get(const std::string& name) const;
  std::map<std::string, double> as_map() const;
};

// Effective run configuration, echoed into every report.
struct RunConfig {
  std::uint64_t seed = 0;
  Tolerances tol;
  std::map<std::string, double> overrides;
  std::string output = "-";    // path, or "-" for stdout
  std::string format = "json";  // "json" or "csv"

  void override_tolerance(const std::string& name, double value) {
    tol.set(name, value);
    overrides[name] = value;
  }
};

}  // namespace qds
