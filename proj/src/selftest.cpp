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

#include "qds/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qds/channels.hpp"
#include "qds/entropy.hpp"
#include "qds/majorization.hpp"
#include "qds/norms.hpp"
#include "qds/perturbation.hpp"
#include "qds/random.hpp"
#include "qds/truncation.hpp"

namespace qds {

namespace {

class Runner {
 public:
  explicit Runner(SelftestReport& out) : out_(out) {}

  // `body` returns the observed discrepancy; pass when <= limit.
  void check(const std::string& module, const std::string& op, double limit, const std::function<double()>& body) {
    SelftestCheck c{module, op, false, ""};
    try {
      const double err = body();
      c.passed = std::isfinite(err) && err <= limit;
      std::ostringstream s;
      s.precision(3);
      s << "error " << err << " (limit " << limit << ")";
      c.detail = s.str();
    } catch (const std::exception& e) {
      c.detail = std::string("threw: ") + e.what();
    }
    out_.passed = out_.passed && c.passed;
    out_.checks.push_back(std::move(c));
  }

  void expect_error(const std::string& module, const std::string& op, ErrorCode code,
                    const std::function<void()>& body) {
    SelftestCheck c{module, op, false, ""};
    try {
      body();
      c.detail = "no error raised";
    } catch (const Error& e) {
      c.passed = e.code() == code;
      c.detail = std::string("raised ") + error_code_name(e.code());
    } catch (const std::exception& e) {
      c.detail = std::string("unexpected: ") + e.what();
    }
    out_.passed = out_.passed && c.passed;
    out_.checks.push_back(std::move(c));
  }

 private:
  SelftestReport& out_;
};

double bool_err(bool ok) { return ok ? 0.0 : 1.0; }

DensityMatrix diag_state(std::initializer_list<double> v, const Tolerances& tol) {
  const std::vector<double> d(v);
  return DensityMatrix(diagonal_matrix(d), tol);
}

}  // namespace

SelftestReport run_selftest(std::uint64_t seed, const Tolerances& tol) {
  SelftestReport report;
  Runner t(report);
  const Rng root(seed);

  // matcore
  t.check("matcore", "eig_hermitian", 1e-12, [&] {
    ComplexMatrix a(2, 2);
    a << 0.5, 0.3, 0.3, 0.5;
    const RealVector ev = eig_hermitian(HermitianMatrix(a, tol)).eigenvalues;
    return std::max(std::abs(ev(0) - 0.8), std::abs(ev(1) - 0.2));
  });
  t.check("matcore", "spectral_apply", 1e-12, [&] {
    const std::vector<double> d{4.0, 9.0};
    RealFunction f{[](double x) { return std::sqrt(x); }, 0.0};
    const ComplexMatrix r = spectral_apply(HermitianMatrix(diagonal_matrix(d), tol), f).matrix();
    return std::abs(r(0, 0) - 2.0) + std::abs(r(1, 1) - 3.0);
  });
  t.expect_error("matcore", "spectral_apply", ErrorCode::kDomainError, [&] {
    const std::vector<double> d{-1.0, 1.0};
    spectral_apply(HermitianMatrix(diagonal_matrix(d), tol), RealFunction{[](double x) { return std::log(x); }, 0.0});
  });
  t.check("matcore", "schatten_norm", 1e-12, [&] {
    const std::vector<double> d{3.0, -4.0};
    const ComplexMatrix a = diagonal_matrix(d);
    return std::abs(schatten_norm(a, 1) - 7) + std::abs(schatten_norm(a, 2) - 5) +
           std::abs(schatten_norm(a, kInfinity) - 4);
  });
  t.check("matcore", "trace", 1e-12, [&] {
    ComplexMatrix a(2, 2);
    a << Complex(1, 2), 5, 7, Complex(3, -1);
    return std::abs(trace(a) - Complex(4, 1));
  });

  // channels
  t.check("channels", "apply", 1e-12, [&] {
    const ComplexMatrix y = qds::apply(depolarizing(0.5, 2), matrix_unit(2, 0, 0));
    return std::abs(y(0, 0) - 0.75) + std::abs(y(1, 1) - 0.25) + std::abs(y(0, 1));
  });
  t.check("channels", "adjoint", 1e-10, [&] {
    Rng rng = root.child(1);
    const Channel ch = random_cp_map(3, 2, rng);
    const ComplexMatrix x = random_gaussian(3, 3, rng), y = random_gaussian(3, 3, rng);
    // tr(y Phi(x)) = tr(Phi^*(y) x), checked on the superoperator form as well.
    const Channel sup = convert(ch, Representation::kSuperop, tol);
    const Complex lhs = (y * ch.apply(x)).trace();
    const Complex rhs = (qds::apply(adjoint(ch), y) * x).trace();
    const Complex rhs_sup = (qds::apply(adjoint(sup), y) * x).trace();
    return std::abs(lhs - rhs) + std::abs(lhs - rhs_sup);
  });
  t.check("channels", "kraus_to_choi/choi_to_kraus/to_superop", 1e-10, [&] {
    Rng rng = root.child(2);
    const Channel ch = random_cp_map(3, 3, rng);
    const KrausSet back = choi_to_kraus(kraus_to_choi(*ch.kraus()), tol);
    return (to_superop(ch).matrix - to_superop(Channel(back)).matrix).norm();
  });
  t.check("channels", "certify_qds", 0.0, [&] {
    const QdsReport good = certify_qds(depolarizing(0.25, 4), tol);
    const QdsReport bad = certify_qds(transpose_map(3), tol);
    return bool_err(good.is_qds && !bad.is_qds && std::abs(bad.choi_min_eig + 1.0) < 1e-10);
  });
  t.check("channels", "channel_zoo", 0.0, [&] {
    bool ok = true;
    for (const char* name : {"identity", "depolarizing", "pinching", "transpose", "shift_average",
                             "damped_pinching", "random_mixed_unitary"}) {
      const Channel ch = channel_zoo(name, nlohmann::json::object(), tol);
      ok = ok && ch.dim() > 0;
    }
    return bool_err(ok);
  });
  t.expect_error("channels", "channel_zoo", ErrorCode::kUnknownExample,
                 [&] { channel_zoo("no_such_channel", nlohmann::json::object(), tol); });

  // norms
  t.check("norms", "induced_norm", 1e-8, [&] {
    Rng rng = root.child(3);
    const Channel ch = random_mixed_unitary(4, 3, rng);
    return std::abs(induced_norm(ch, 2.0, tol, seed).lower_bound - 1.0);
  });
  t.check("norms", "traceless_norm", 1e-10, [&] {
    return std::abs(traceless_norm(depolarizing(0.25, 3), 2.0, tol, seed).lower_bound - 0.25);
  });
  t.check("norms", "interpolation_sweep", 0.0, [&] {
    Rng rng = root.child(4);
    const std::vector<double> grid{1.0, 2.0, kInfinity};
    AscentOptions quick{4, 40, 0.1, 12};
    return bool_err(interpolation_sweep(random_mixed_unitary(3, 2, rng), grid, tol, seed, quick).ok);
  });
  t.check("norms", "diagonal_contraction_probe", 0.0, [&] {
    const DiagonalProbeReport r = diagonal_contraction_probe(depolarizing(0.5, 3), 2.0, tol, seed);
    return bool_err(r.exhaustive && r.scanned > 0 && r.best_delta >= 0.0);
  });

  // majorization
  const DensityMatrix rho = diag_state({0.5, 0.3, 0.2}, tol);
  const DensityMatrix sigma = diag_state({0.7, 0.2, 0.1}, tol);
  t.check("majorization", "check_majorization", 1e-12, [&] {
    const MajorizationCertificate c = check_majorization(rho, sigma, tol);
    const RealVector& s = c.partial_sum_slack;
    return bool_err(c.holds) + std::abs(s(0) - 0.2) + std::abs(s(1) - 0.1) + std::abs(s(2));
  });
  t.check("majorization", "build_ds_matrix", 1e-10, [&] {
    const std::vector<double> lr{0.5, 0.3, 0.2}, ls{0.7, 0.2, 0.1};
    const RealMatrix d = build_ds_matrix(lr, ls, tol).entries();
    const Eigen::Map<const RealVector> vr(lr.data(), 3), vs(ls.data(), 3);
    return (d * vs - vr).norm();
  });
  t.check("majorization", "birkhoff_decompose", 1e-10, [&] {
    const std::vector<double> lr{0.5, 0.3, 0.2}, ls{0.7, 0.2, 0.1};
    const DoublyStochasticMatrix d = build_ds_matrix(lr, ls, tol);
    const BirkhoffDecomposition b = birkhoff_decompose(d, tol);
    return (b.reconstruct(3) - d.entries()).cwiseAbs().maxCoeff() + bool_err(b.weights.size() <= 5);
  });
  t.check("majorization", "realize_channel", 1e-8, [&] {
    Rng rng = root.child(5);
    const DensityMatrix s(random_density(4, 4, rng), tol);
    const DensityMatrix r(random_mixed_unitary(4, 3, rng).apply(s.matrix()), tol);
    const MajorizationCertificate c = realize_channel(r, s, tol);
    return c.realize_residual + bool_err(c.holds && c.channel_qds);
  });
  t.check("majorization", "convex_function_test", 0.0, [&] {
    return static_cast<double>(convex_function_test(rho, sigma, tol).violations);
  });

  // entropy
  t.check("entropy", "von_neumann_entropy", 1e-12, [&] {
    return std::abs(von_neumann_entropy(diag_state({0.8, 0.2}, tol), tol) - 0.5004024235381879);
  });
  t.check("entropy", "entropy_monotonicity_check", 1e-9, [&] {
    Rng rng = root.child(6);
    const DensityMatrix pure(random_pure_state(3, rng), tol);
    const EntropyReport r = entropy_monotonicity_check(depolarizing(0.0, 3), pure, tol);
    return std::abs(r.delta - std::log(3.0)) + bool_err(r.monotone);
  });
  t.check("entropy", "unitarity_probe", 0.0, [&] {
    Rng rng = root.child(7);
    const bool u = unitarity_probe(unitary_conjugation(random_unitary(3, rng), tol), tol);
    const bool d = unitarity_probe(depolarizing(0.5, 3), tol);
    return bool_err(u && !d);
  });

  // perturbation
  t.check("perturbation", "deviation_metrics", 1e-12, [&] {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    const DeviationMetrics m = deviation_metrics(additive_perturbation(depolarizing(0.5, 3), 0.1, a));
    return std::abs(m.delta_tr - 0.1) + std::abs(m.delta_un - 0.3);
  });
  t.check("perturbation", "perturbation_sweep", 1e-10, [&] {
    const std::vector<double> grid{1e-1, 1e-2};
    const PerturbationSweep s =
        perturbation_sweep(depolarizing(0.5, 3), PerturbationFamily::kAdditive, grid, 2.0, tol, seed);
    return std::abs(s.points[0].distance - 0.1 * std::sqrt(3.0)) + bool_err(s.distance_decreasing);
  });

  // truncation
  t.check("truncation", "tail_norm", 1e-10, [&] {
    std::vector<double> w;
    for (int k = 1; k <= 8; ++k) w.push_back(std::ldexp(1.0, -k));
    return std::abs(tail_norm(damped_pinching(w), 3, 2.0, seed).value - std::ldexp(1.0, -4));
  });
  t.expect_error("truncation", "tail_norm", ErrorCode::kBadRank, [&] { tail_norm(pinching(4), 4, 2.0, seed); });
  t.check("truncation", "scan", 1e-10, [&] {
    const std::vector<std::size_t> ranks{1, 2, 4};
    const TailScan s = scan("pinching", 8, 2.0, ranks, seed);
    double err = bool_err(s.classification == "non-compact-like");
    for (const auto& pt : s.points) err += std::abs(pt.second - 1.0);
    return err;
  });

  return report;
}

nlohmann::json to_json(const SelftestReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    checks.push_back({{"module", c.module}, {"op", c.op}, {"passed", c.passed}, {"detail", c.detail}});
    if (!c.passed) ++failed;
  }
  return {{"checks", checks}, {"passed", r.passed}, {"total", r.checks.size()}, {"failed", failed}};
}

}  // namespace qds
