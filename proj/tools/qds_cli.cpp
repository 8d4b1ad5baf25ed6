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

// qds: command-line front end over the C API.
//
// Exit codes: 0 success, 1 usage error, 2 input failed validation,
// 3 a mathematical property was violated.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qds/qds.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StatusError : std::runtime_error {
  StatusError(qds_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  qds_status status;
};

void check(qds_status s) {
  if (s != QDS_OK) throw StatusError(s, std::string(qds_status_name(s)) + ": " + qds_last_error());
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

// Owning wrappers for the opaque handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using Config = Handle<qds_config, qds_config_free>;
using Matrix = Handle<qds_matrix, qds_matrix_free>;
using ChannelH = Handle<qds_channel, qds_channel_free>;

struct Text {
  char* s = nullptr;
  ~Text() { qds_string_free(s); }
};

void load_matrix(const std::string& path, Matrix& m) { check(qds_matrix_from_json(read_input(path).c_str(), &m.p)); }
void load_channel(const std::string& path, ChannelH& c) {
  check(qds_channel_from_json(read_input(path).c_str(), &c.p));
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> v;
  for (const auto& x : split(s)) v.push_back(parse_real(x));
  if (v.empty()) throw UsageError("empty list");
  return v;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> v;
  for (const auto& x : split(s)) {
    const double d = parse_real(x);
    if (!(d >= 0) || d != std::floor(d)) throw UsageError("not a nonnegative integer: '" + x + "'");
    v.push_back(static_cast<std::size_t>(d));
  }
  if (v.empty()) throw UsageError("empty list");
  return v;
}

struct Output {
  std::string path = "-";
  void write(const std::string& text) const {
    if (path == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
  }
};

int verdict(int violation) { return violation ? kExitViolation : kExitOk; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum doubly stochastic map toolkit", "qds"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  app.set_version_flag("--version", std::string(qds_version()));

  std::uint64_t seed = 0;
  std::vector<std::string> tol_overrides;
  Output out;
  std::string format = "json";
  app.add_option("--seed", seed, "RNG seed")->envname("QDS_SEED");
  app.add_option("--tol", tol_overrides, "Tolerance override name=value (repeatable)");
  app.add_option("--out", out.path, "Output path, '-' for stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string channel_path, rho_path, sigma_path, matrix_path, family = "additive", example, p_text = "2";
  std::string grid_text = "1,1.5,2,3,inf", eps_text = "1e-1,1e-2,1e-3,1e-4", ranks_text = "4,8,16,32";
  bool traceless = false, probe = false, realize = false, bits = false, csv = false;
  std::size_t ambient = 64;
  double decay = 0.5;

  auto* certify = app.add_subcommand("certify", "Certify trace preservation, unitality and complete positivity");
  certify->add_option("--channel", channel_path, "Channel JSON ('-' for stdin)")->required();

  auto* norm = app.add_subcommand("norm", "Induced Schatten p->p norm");
  norm->add_option("--channel", channel_path)->required();
  norm->add_option("--p", p_text, "Exponent in [1, inf]");
  norm->add_flag("--traceless", traceless, "Restrict to traceless inputs");
  norm->add_flag("--probe", probe, "Diagonal-projection contraction probe instead");

  auto* sweep = app.add_subcommand("sweep", "Norm bounds across a p grid");
  sweep->add_option("--channel", channel_path)->required();
  sweep->add_option("--p-grid", grid_text);

  auto* majorize = app.add_subcommand("majorize", "Majorization certificate for rho against sigma");
  majorize->add_option("--rho", rho_path)->required();
  majorize->add_option("--sigma", sigma_path)->required();
  majorize->add_flag("--realize", realize, "Construct a realizing channel");

  auto* birkhoff = app.add_subcommand("birkhoff", "Birkhoff decomposition of a doubly stochastic matrix");
  birkhoff->add_option("--matrix", matrix_path)->required();

  auto* entropy = app.add_subcommand("entropy", "Entropy change under a channel");
  entropy->add_option("--channel", channel_path)->required();
  entropy->add_option("--rho", rho_path)->required();
  entropy->add_flag("--bits", bits, "Report in bits rather than nats");

  auto* perturb = app.add_subcommand("perturb", "Perturbation sweep around a QDS map");
  perturb->add_option("--phi", channel_path)->required();
  perturb->add_option("--family", family)->check(CLI::IsMember({"additive", "mixture"}));
  perturb->add_option("--eps-grid", eps_text);
  perturb->add_option("--p", p_text);

  auto* tailscan = app.add_subcommand("tailscan", "Tail norms of a truncated example");
  tailscan->add_option("--example", example)->required();
  tailscan->add_option("--N", ambient, "Ambient dimension");
  tailscan->add_option("--p", p_text);
  tailscan->add_option("--ranks", ranks_text);
  tailscan->add_option("--decay", decay, "damped_pinching ratio, c_k = decay^k");
  tailscan->add_flag("--csv", csv, "Emit rank,tail rows");

  std::string zoo_name, zoo_params, zoo_repr, zoo_weights;
  std::optional<double> zoo_t, zoo_decay;
  std::optional<std::size_t> zoo_n, zoo_big_n, zoo_terms;
  auto* zoo = app.add_subcommand("zoo", "Emit a named channel as JSON");
  zoo->add_option("name", zoo_name)->required();
  zoo->add_option("--t", zoo_t);
  zoo->add_option("--n", zoo_n);
  zoo->add_option("--N", zoo_big_n);
  zoo->add_option("--terms", zoo_terms);
  zoo->add_option("--decay", zoo_decay);
  zoo->add_option("--weights", zoo_weights, "Comma-separated weights");
  zoo->add_option("--params", zoo_params, "Extra parameters as a JSON object");
  zoo->add_option("--repr", zoo_repr, "kraus, choi or superop")->check(CLI::IsMember({"kraus", "choi", "superop"}));

  auto* selftest = app.add_subcommand("selftest", "Run the built-in property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config cfg;
    check(qds_config_new(&cfg.p));
    check(qds_config_set_seed(cfg.p, seed));
    for (const auto& kv : tol_overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--tol expects name=value");
      const qds_status s = qds_config_set_tolerance(cfg.p, kv.substr(0, eq).c_str(), parse_real(kv.substr(eq + 1)));
      if (s != QDS_OK) throw UsageError(qds_last_error());
    }
    if (csv) format = "csv";
    if (format == "csv" && !tailscan->parsed()) throw UsageError("csv output is only available for tailscan");
    check(qds_config_set_output(cfg.p, out.path.c_str(), format.c_str()));

    Text text;
    int violation = 0;

    if (certify->parsed()) {
      ChannelH ch;
      load_channel(channel_path, ch);
      int is_qds = 0;
      check(qds_certify(ch.p, cfg.p, &text.s, &is_qds));
      out.write(text.s);
      return kExitOk;  // a negative verdict is still a successful certification
    }
    if (norm->parsed()) {
      ChannelH ch;
      load_channel(channel_path, ch);
      const double p = parse_real(p_text);
      if (probe) {
        check(qds_probe(ch.p, p, cfg.p, &text.s));
      } else {
        check(qds_norm(ch.p, p, traceless ? 1 : 0, cfg.p, &text.s, &violation));
      }
      out.write(text.s);
      return verdict(violation);
    }
    if (sweep->parsed()) {
      ChannelH ch;
      load_channel(channel_path, ch);
      const std::vector<double> grid = parse_reals(grid_text);
      check(qds_sweep(ch.p, grid.data(), grid.size(), cfg.p, &text.s, &violation));
      out.write(text.s);
      return verdict(violation);
    }
    if (majorize->parsed()) {
      Matrix rho, sigma;
      load_matrix(rho_path, rho);
      load_matrix(sigma_path, sigma);
      check(qds_majorize(rho.p, sigma.p, realize ? 1 : 0, cfg.p, &text.s, &violation));
      out.write(text.s);
      return verdict(violation);
    }
    if (birkhoff->parsed()) {
      Matrix d;
      load_matrix(matrix_path, d);
      check(qds_birkhoff(d.p, cfg.p, &text.s, &violation));
      out.write(text.s);
      return verdict(violation);
    }
    if (entropy->parsed()) {
      ChannelH ch;
      Matrix rho;
      load_channel(channel_path, ch);
      load_matrix(rho_path, rho);
      check(qds_entropy(ch.p, rho.p, bits ? 1 : 0, cfg.p, &text.s, &violation));
      out.write(text.s);
      return verdict(violation);
    }
    if (perturb->parsed()) {
      ChannelH ch;
      load_channel(channel_path, ch);
      const std::vector<double> eps = parse_reals(eps_text);
      check(qds_perturb(ch.p, family.c_str(), eps.data(), eps.size(), parse_real(p_text), cfg.p, &text.s, &violation));
      out.write(text.s);
      return verdict(violation);
    }
    if (tailscan->parsed()) {
      const std::vector<std::size_t> ranks = parse_sizes(ranks_text);
      check(qds_tailscan(example.c_str(), ambient, parse_real(p_text), ranks.data(), ranks.size(), decay, cfg.p,
                         &text.s, &violation));
      if (format == "csv") {
        const auto j = nlohmann::json::parse(text.s);
        std::ostringstream rows;
        rows.precision(17);
        rows << "rank,tail\n";
        for (const auto& pt : j.at("points")) {
          rows << pt.at("rank").get<std::size_t>() << ',' << pt.at("tail_norm").get<double>() << '\n';
        }
        out.write(rows.str());
      } else {
        out.write(text.s);
      }
      return verdict(violation);
    }
    if (zoo->parsed()) {
      nlohmann::json params = nlohmann::json::object();
      if (!zoo_params.empty()) {
        try {
          params = nlohmann::json::parse(zoo_params);
        } catch (const nlohmann::json::exception& e) {
          throw UsageError(std::string("--params: ") + e.what());
        }
        if (!params.is_object()) throw UsageError("--params must be a JSON object");
      }
      if (zoo_t) params["t"] = *zoo_t;
      if (zoo_n) params["n"] = *zoo_n;
      if (zoo_big_n) params["N"] = *zoo_big_n;
      if (zoo_terms) params["terms"] = *zoo_terms;
      if (zoo_decay) params["decay"] = *zoo_decay;
      if (!zoo_weights.empty()) params["weights"] = parse_reals(zoo_weights);
      if (zoo_name == "random_mixed_unitary" && !params.contains("seed")) params["seed"] = seed;
      ChannelH ch;
      check(qds_channel_zoo(zoo_name.c_str(), params.dump().c_str(), cfg.p, &ch.p));
      check(qds_channel_to_json(ch.p, zoo_repr.empty() ? nullptr : zoo_repr.c_str(), cfg.p, &text.s));
      out.write(text.s);
      return kExitOk;
    }
    if (selftest->parsed()) {
      check(qds_selftest(cfg.p, &text.s, &violation));
      out.write(text.s);
      return verdict(violation);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "qds: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StatusError& e) {
    std::cerr << "qds: " << e.what() << "\n";
    return kExitInvalid;
  }
}
