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

#include <json.hpp>

#include "qds/channels.hpp"
#include "qds/config.hpp"
#include "qds/entropy.hpp"
#include "qds/majorization.hpp"
#include "qds/norms.hpp"
#include "qds/perturbation.hpp"
#include "qds/truncation.hpp"

namespace qds {

const char* tool_version();

// Report bodies. Key order is fixed by nlohmann's sorted objects, which is
// what makes emitted JSON byte-stable.
nlohmann::json to_json(const QdsReport& r);
nlohmann::json to_json(const InducedNormResult& r);
nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const DiagonalProbeReport& r);
nlohmann::json to_json(const BirkhoffDecomposition& d);
nlohmann::json to_json(const MajorizationCertificate& c, const Tolerances& tol = {});
nlohmann::json to_json(const ConvexTestReport& r);
nlohmann::json to_json(const EntropyReport& r);
nlohmann::json to_json(const PerturbationSweep& s);
nlohmann::json to_json(const TailScan& s);
nlohmann::json to_json(const RunConfig& c);

// Adds "tool_version" and "run_config" to a report body.
nlohmann::json envelope(nlohmann::json body, const RunConfig& config);

// Non-finite doubles become null, which json would do anyway; this keeps
// infinities explicit as the string "inf".
nlohmann::json number_or_inf(double x);

}  // namespace qds
