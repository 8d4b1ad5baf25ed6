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

#include "qds/json_io.hpp"

#include <cmath>
#include <string>

namespace qds {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) parse_fail(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(std::string(what) + " must be finite");
  return x;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& a) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) entries.push_back({a(i, j).real(), a(i, j).imag()});
  return json{{"dim", a.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j, std::size_t max_dim) {
  if (!j.is_object()) parse_fail("matrix JSON must be an object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) parse_fail("matrix JSON needs integer 'dim'");
  const long long dim = j.at("dim").get<long long>();
  if (dim < 1) parse_fail("matrix 'dim' must be >= 1");
  if (static_cast<std::size_t>(dim) > max_dim) parse_fail("matrix 'dim' exceeds " + std::to_string(max_dim));
  if (!j.contains("entries") || !j.at("entries").is_array()) parse_fail("matrix JSON needs array 'entries'");
  const json& e = j.at("entries");
  const auto n = static_cast<std::size_t>(dim);
  if (e.size() != n * n) {
    parse_fail("matrix 'entries' has " + std::to_string(e.size()) + " pairs, expected " +
               std::to_string(n * n));
  }
  ComplexMatrix a(dim, dim);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const json& pair = e[k];
    if (!pair.is_array() || pair.size() != 2) parse_fail("matrix entries must be [re, im] pairs");
    a(k / n, k % n) = Complex(finite_number(pair[0], "entry real part"), finite_number(pair[1], "entry imaginary part"));
  }
  return a;
}

json real_matrix_to_json(const RealMatrix& a) { return matrix_to_json(a.cast<Complex>()); }

RealMatrix real_matrix_from_json(const json& j, double imag_tol) {
  const ComplexMatrix a = matrix_from_json(j);
  if (a.imag().cwiseAbs().maxCoeff() > imag_tol) parse_fail("expected a real matrix (imaginary parts must vanish)");
  return a.real();
}

json channel_to_json(const Channel& channel, std::optional<Representation> as, const Tolerances& tol) {
  const Channel ch = as ? convert(channel, *as, tol) : channel;
  json data;
  if (const auto* k = ch.kraus()) {
    data = json::array();
    for (const auto& op : k->operators) data.push_back(matrix_to_json(op));
  } else if (const auto* c = ch.choi()) {
    data = matrix_to_json(c->matrix);
  } else {
    data = matrix_to_json(ch.superop()->matrix);
  }
  return json{{"dim", ch.dim()},
              {"repr", representation_name(ch.representation())},
              {"data", std::move(data)},
              {"meta", {{"name", ch.meta().name}, {"params", ch.meta().params}}}};
}

Channel channel_from_json(const json& j) {
  if (!j.is_object()) parse_fail("channel JSON must be an object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1) {
    parse_fail("channel JSON needs integer 'dim' >= 1");
  }
  const auto dim = j.at("dim").get<std::size_t>();
  if (!j.contains("repr") || !j.at("repr").is_string()) parse_fail("channel JSON needs string 'repr'");
  if (!j.contains("data")) parse_fail("channel JSON needs 'data'");
  ChannelMeta meta;
  if (j.contains("meta")) {
    const json& m = j.at("meta");
    if (!m.is_object()) parse_fail("channel 'meta' must be an object");
    if (m.contains("name")) {
      if (!m.at("name").is_string()) parse_fail("channel meta 'name' must be a string");
      meta.name = m.at("name").get<std::string>();
    }
    if (m.contains("params")) meta.params = m.at("params");
  }
  const std::string repr = j.at("repr").get<std::string>();
  const json& data = j.at("data");
  if (repr == "kraus") {
    if (!data.is_array() || data.empty()) parse_fail("Kraus 'data' must be a non-empty array of matrices");
    KrausSet k{dim, {}};
    for (const auto& m : data) {
      ComplexMatrix op = matrix_from_json(m);
      if (static_cast<std::size_t>(op.rows()) != dim) {
        throw Error(ErrorCode::kDimensionMismatch, "Kraus operator dimension differs from channel 'dim'");
      }
      k.operators.push_back(std::move(op));
    }
    return Channel(std::move(k), std::move(meta));
  }
  if (repr == "choi" || repr == "superop") {
    ComplexMatrix m = matrix_from_json(data, kMaxDim * kMaxDim);
    if (static_cast<std::size_t>(m.rows()) != dim * dim) {
      throw Error(ErrorCode::kDimensionMismatch, repr + " matrix must have size dim^2");
    }
    if (repr == "choi") return Channel(ChoiMatrix{dim, std::move(m)}, std::move(meta));
    return Channel(SuperopMatrix{dim, std::move(m)}, std::move(meta));
  }
  parse_fail("unknown channel repr '" + repr + "'");
}

json exponent_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "oo") return kInfinity;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kBadExponent, "cannot parse exponent '" + text + "'");
  }
  if (used != text.size()) throw Error(ErrorCode::kBadExponent, "cannot parse exponent '" + text + "'");
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::kBadExponent, "exponent must satisfy p >= 1");
  return p;
}

double exponent_from_json(const json& j) {
  if (j.is_string()) return parse_exponent(j.get<std::string>());
  if (!j.is_number()) throw Error(ErrorCode::kBadExponent, "exponent must be a number or \"inf\"");
  const double p = j.get<double>();
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::kBadExponent, "exponent must satisfy p >= 1");
  return p;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace qds
