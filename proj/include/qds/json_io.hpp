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

#include <optional>

#include <json.hpp>

#include "qds/channels.hpp"
#include "qds/matcore.hpp"

namespace qds {

// {"dim": n, "entries": [[re, im], ...]} row-major, exactly n^2 pairs.
nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::size_t max_dim = kMaxDim);
nlohmann::json real_matrix_to_json(const RealMatrix& a);
RealMatrix real_matrix_from_json(const nlohmann::json& j, double imag_tol = 0.0);

// {"dim": n, "repr": "kraus"|"choi"|"superop", "data": ..., "meta": {...}}.
// `as` re-encodes in another representation before serializing.
nlohmann::json channel_to_json(const Channel& channel,
                               std::optional<Representation> as = std::nullopt,
                               const Tolerances& tol = {});
Channel channel_from_json(const nlohmann::json& j);

// Exponents serialize as numbers, with p = inf written as the string "inf".
nlohmann::json exponent_to_json(double p);
double exponent_from_json(const nlohmann::json& j);
double parse_exponent(const std::string& text);

nlohmann::json parse_json_text(const std::string& text);

}  // namespace qds
