// Copyright 2026 The gausscx Authors
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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gausscx/coherent.hpp"
#include "gausscx/complexity.hpp"
#include "gausscx/lie_numerics.hpp"
#include "gausscx/nonreversible.hpp"
#include "gausscx/phase_space.hpp"
#include "gausscx/variational_oracle.hpp"
#include "gausscx/weyl.hpp"
#include "test_support.hpp"

namespace gausscx {
namespace {

using testing::random_state;
using testing::random_target;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

constexpr std::array<double, 5> kRadii{0.1, 0.5, 1.0, 2.0, 5.0};
const std::array<double, 3> kAngles{0.0, std::numbers::pi / 3.0, 1.5 * std::numbers::pi};

GaussianState squeezed(double r, double phi) {
  return apply_transformation(reference_state(StateKind::kBoson, 1), single_mode_squeezing(r, phi));
}

Outcome squeezing_anchor() {
  Outcome o;
  const auto ref = reference_state(StateKind::kBoson, 1);
  double worst = 0.0;
  for (double r : kRadii) {
    for (double phi : kAngles) {
      const double err = std::abs(state_complexity(ref, squeezed(r, phi)) - r);
      worst = std::max(worst, err);
      if (err > 1e-10) fail(o, fmt("r=%g phi=%g error %.3g", r, phi, err));
    }
  }
  if (o.pass) o.detail = fmt("max error %.2g", worst);
  return o;
}

Outcome multimode_additivity() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Vector r(n), phi(n);
      for (int i = 0; i < n; ++i) {
        r(i) = radius(rng);
        phi(i) = angle(rng);
      }
      const auto ref = reference_state(StateKind::kBoson, n);
      const auto target = apply_transformation(ref, product_squeezing(r, phi));
      const double err = std::abs(state_complexity(ref, target) - r.norm());
      worst = std::max(worst, err);
      if (err > 1e-9) fail(o, fmt("N=%g error %.3g", n, err));
    }
  }
  if (o.pass) o.detail = fmt("max error %.2g", worst);
  return o;
}

Outcome coherent_anchor() {
  Outcome o;
  const auto ref = reference_state(StateKind::kBoson, 1);
  double worst = 0.0;
  for (double r : kRadii) {
    for (double phi : kAngles) {
      const double err = std::abs(coherent_complexity(coherent_geodesic(ref, squeezed(r, phi))) - r);
      worst = std::max(worst, err);
      if (err > 1e-10) fail(o, fmt("z=0 r=%g phi=%g error %.3g", r, phi, err));
    }
  }
  Vector z(2);
  z << 3.0, 4.0;
  const GaussianState displaced(ref.complex_structure(), z);
  const double c = coherent_complexity(coherent_geodesic(ref, displaced, CovarianceMatrix::identity(1)));
  if (std::abs(c - 5.0) > 1e-12) fail(o, fmt("z=(3,4) gives %.17g", c));
  if (o.pass) o.detail = fmt("max z=0 error %.2g, z=(3,4) error %.2g", worst, std::abs(c - 5.0));
  return o;
}

Outcome orthogonality() {
  Outcome o;
  std::mt19937_64 rng(21);
  double worst = 0.0;
  for (auto kind : {StateKind::kBoson, StateKind::kFermion}) {
    for (int n : {1, 2}) {
      const auto ref = reference_state(kind, n);
      const auto sigma = ref.covariance();
      const auto basis = stabilizer_basis(ref.complex_structure(), sigma);
      for (int t = 0; t < 50; ++t) {
        const auto target = random_state(kind, n, rng);
        const Matrix gen = relative_complex_structure(ref, target).generator();
        for (const auto& v : basis.elements) {
          const double g = std::abs(inner_product_identity(gen, v.matrix(), sigma));
          worst = std::max(worst, g);
          if (g > 1e-9) fail(o, fmt("N=%g overlap %.3g", n, g));
        }
      }
    }
  }
  if (o.pass) o.detail = fmt("max overlap %.2g", worst);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(31);
  OracleOptions options;
  options.segments = 16;
  options.restarts = 5;
  double worst_gap = 0.0;
  double worst_undercut = 0.0;
  auto run = [&](StateKind kind, int n, int count) {
    const auto ref = reference_state(kind, n);
    for (int t = 0; t < count; ++t) {
      const auto target = random_state(kind, n, rng);
      const double closed = state_complexity(ref, target);
      options.seed = static_cast<std::uint64_t>(1000 * n + t);
      const auto result = minimize_to_target(ref, target, options);
      const double gap = std::abs(result.length - closed) / closed;
      const double undercut = closed - result.length;
      worst_gap = std::max(worst_gap, gap);
      worst_undercut = std::max(worst_undercut, undercut);
      if (!result.converged) fail(o, fmt("N=%g target %g did not converge", n, t));
      if (gap > 0.01) fail(o, fmt("N=%g relative gap %.3g (closed %.6g)", n, gap, closed));
      if (undercut > 1e-6) fail(o, fmt("N=%g undercut %.3g", n, undercut));
    }
  };
  run(StateKind::kBoson, 1, 20);
  run(StateKind::kFermion, 2, 10);
  if (o.pass) o.detail = fmt("max relative gap %.2g, max undercut %.2g", worst_gap, worst_undercut);
  return o;
}

Outcome weyl_analytic() {
  Outcome o;
  const std::array<std::pair<double, double>, 3> cases{{{1.0, 1.0}, {2.0, 0.5}, {0.5, 2.0}}};
  double worst = 0.0;
  double worst_ratio = 1e300;
  for (auto [beta, r] : cases) {
    const auto w = WeylFactor::linear(beta);
    const double exact = std::expm1(beta * r) / beta;
    const double err = std::abs(weyl_complexity(r, w, 128) - exact);
    worst = std::max(worst, err);
    if (err > 1e-8) fail(o, fmt("beta=%g r=%g error %.3g", beta, r, err));
    double prev = std::abs(weyl_complexity(r, w, 4) - exact);
    for (int steps : {8, 16, 32}) {
      const double e = std::abs(weyl_complexity(r, w, steps) - exact);
      const double ratio = prev / e;
      worst_ratio = std::min(worst_ratio, ratio);
      if (ratio < 8.0) fail(o, fmt("beta=%g steps=%g error ratio %.3g", beta, steps, ratio));
      prev = e;
    }
  }
  if (o.pass) o.detail = fmt("max error %.2g, min halving ratio %.3g", worst, worst_ratio);
  return o;
}

Outcome nonreversibility() {
  Outcome o;
  const auto a = VectorPotential::gradient(Polynomial::parse("0.5r"));
  const auto path = lorentz_geodesic({0.0, 0.0}, {1.0, 0.0}, a, 2.0, {.rk_steps = 200});
  const double forward = nonreversible_cost(path, a);
  const double reverse = nonreversible_cost(reversed(path), a);
  if (std::abs(forward - 1.0) > 1e-10) fail(o, fmt("forward cost %.17g", forward));
  if (std::abs(reverse - 3.0) > 1e-10) fail(o, fmt("reverse cost %.17g", reverse));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int samples = 2 + static_cast<int>(60 * unit(rng));
    std::vector<ChartPoint> pts;
    ChartPoint p{1.5 * unit(rng), 2.0 * std::numbers::pi * unit(rng)};
    for (int k = 0; k < samples; ++k) {
      pts.push_back(p);
      p.r = std::clamp(p.r + 0.2 * (unit(rng) - 0.5), 0.0, 1.5);
      p.phi += 0.4 * (unit(rng) - 0.5);
    }
    VectorPotential pot = VectorPotential::none();
    switch (t % 4) {
      case 1:
        pot = VectorPotential::constant(2.0 * unit(rng) - 1.0);
        break;
      case 2:
        pot = VectorPotential::gradient(Polynomial({0.0, 0.3 * unit(rng), 0.2 * unit(rng)}));
        break;
      case 3:
        pot = VectorPotential::modulated(Polynomial({0.4 * unit(rng), 0.2 * unit(rng)}), unit(rng));
        break;
      default:
        break;
    }
    const auto d = DiscretizedPath::from_points(pts);
    const auto fwd = nonreversible_cost_breakdown(d, pot);
    const double rev = nonreversible_cost(reversed(d), pot);
    const double err = std::abs(fwd.total + rev - 2.0 * fwd.length) / std::max(1.0, fwd.length);
    worst = std::max(worst, err);
    if (err > 1e-10) fail(o, fmt("path %g: forward+reverse-2L = %.3g", t, err));
  }
  if (o.pass) {
    o.detail = fmt("forward %.12g, reverse %.12g, max sum defect %.2g", forward, reverse, worst);
  }
  return o;
}

// 5-point stencil residual of the A = 0 geodesic equation along a path.
double geodesic_residual(const DiscretizedPath& path, double h) {
  double worst = 0.0;
  const auto& x = path.points;
  for (std::size_t k = 2; k + 2 < x.size(); ++k) {
    auto d1 = [&](auto get) {
      return (-get(x[k + 2]) + 8.0 * get(x[k + 1]) - 8.0 * get(x[k - 1]) + get(x[k - 2])) /
             (12.0 * h);
    };
    auto d2 = [&](auto get) {
      return (-get(x[k + 2]) + 16.0 * get(x[k + 1]) - 30.0 * get(x[k]) + 16.0 * get(x[k - 1]) -
              get(x[k - 2])) /
             (12.0 * h * h);
    };
    auto r_of = [](const ChartPoint& p) { return p.r; };
    auto phi_of = [](const ChartPoint& p) { return p.phi; };
    const double r = x[k].r;
    const double vr = d1(r_of), vp = d1(phi_of);
    const double res_r = d2(r_of) + SingleModeMetric::christoffel_r_phiphi(r) * vp * vp;
    const double res_p = d2(phi_of) + 2.0 * SingleModeMetric::christoffel_phi_rphi(r) * vr * vp;
    worst = std::max({worst, std::abs(res_r), std::abs(res_p)});
  }
  return worst;
}

Outcome lorentz_degeneracy() {
  Outcome o;
  const ChartPoint start{0.6, 0.3};
  const ChartVelocity v0{0.4, 0.9};
  const double length = 1.5;
  const auto none = VectorPotential::none();
  std::vector<double> residuals;
  for (int steps : {32, 64, 128}) {
    const auto path = lorentz_geodesic(start, v0, none, length, {steps, 1e-3});
    residuals.push_back(geodesic_residual(path, length / steps));
  }
  double min_order = 1e300;
  for (std::size_t i = 1; i < residuals.size(); ++i) {
    const double order = std::log2(residuals[i - 1] / residuals[i]);
    min_order = std::min(min_order, order);
  }
  if (min_order < 3.5) fail(o, fmt("observed order %.3g", min_order));

  const auto base = lorentz_geodesic(start, v0, none, length, {256, 1e-6});
  const std::array<VectorPotential, 3> radial{
      VectorPotential::constant(0.7), VectorPotential::gradient(Polynomial::parse("0.3r^2 - 0.2r")),
      VectorPotential::custom([](double r, double) { return 0.4 * std::sin(r); },
                              [](double, double) { return 0.0; })};
  double worst = 0.0;
  for (const auto& a : radial) {
    const auto path = lorentz_geodesic(start, v0, a, length, {256, 1e-6});
    for (std::size_t k = 0; k < path.size(); ++k) {
      worst = std::max({worst, std::abs(path.points[k].r - base.points[k].r),
                        std::abs(path.points[k].phi - base.points[k].phi)});
    }
  }
  if (worst > 1e-9) fail(o, fmt("radial potential moved the path by %.3g", worst));
  if (o.pass) o.detail = fmt("observed order %.3g, radial-potential deviation %.2g", min_order, worst);
  return o;
}

Outcome stationarity() {
  Outcome o;
  std::mt19937_64 rng(51);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  const std::array<std::pair<StateKind, int>, 4> cases{
      {{StateKind::kBoson, 1}, {StateKind::kBoson, 2}, {StateKind::kFermion, 1},
       {StateKind::kFermion, 2}}};
  for (auto [kind, n] : cases) {
    const auto ref = reference_state(kind, n);
    const auto sigma = ref.covariance();
    const auto basis = stabilizer_basis(ref.complex_structure(), sigma);
    Matrix v = Matrix::Zero(2 * n, 2 * n);
    for (const auto& e : basis.elements) v += normal(rng) * e.matrix();
    const LieAlgebraElement gen(v, basis.algebra, 1e-9);
    const auto report = check_stabilizer_geodesic(gen, sigma, 50, 61 + n);
    worst = std::max(worst, report.max_abs_derivative);
    if (!report.all_stationary) {
      fail(o, fmt("N=%g max derivative %.3g", n, report.max_abs_derivative));
    }
  }
  if (o.pass) o.detail = fmt("max directional derivative %.2g", worst);
  return o;
}

Outcome reversal_symmetry() {
  Outcome o;
  std::mt19937_64 rng(71);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto kind = t % 2 == 0 ? StateKind::kBoson : StateKind::kFermion;
    const int n = 1 + (t / 2) % 2;
    const auto a = random_state(kind, n, rng);
    const auto b = random_state(kind, n, rng);
    const double err = std::abs(state_complexity(a, b) - state_complexity(b, a));
    worst = std::max(worst, err);
    if (err > 1e-10) fail(o, fmt("pair %g asymmetry %.3g", t, err));
  }
  if (o.pass) o.detail = fmt("max asymmetry %.2g", worst);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace gausscx

int main() {
  using namespace gausscx;
  const std::vector<Criterion> criteria{
      {1, "squeezing anchor", 1.0, squeezing_anchor},
      {2, "multimode additivity", 1.0, multimode_additivity},
      {3, "coherent reduction and anchor", 1.0, coherent_anchor},
      {4, "stabilizer orthogonality", 10.0, orthogonality},
      {5, "oracle equivalence", 300.0, oracle_equivalence},
      {6, "Weyl analytic check", 1.0, weyl_analytic},
      {7, "non-reversibility", 5.0, nonreversibility},
      {8, "Lorentz geodesic degeneracy", 10.0, lorentz_degeneracy},
      {9, "stabilizer geodesic stationarity", 60.0, stationarity},
      {10, "reversal symmetry", 5.0, reversal_symmetry},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds > c.limit_seconds) {
      outcome.pass = false;
      outcome.detail += fmt(" [runtime %.3g s exceeds %.3g s]", seconds, c.limit_seconds);
    }
    std::printf("%s criterion %2d: %-34s %8.3f s  %s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                c.name, seconds, outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
