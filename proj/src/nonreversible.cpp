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

#include "gausscx/nonreversible.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>

#include "gausscx/errors.hpp"

namespace gausscx {
namespace {

constexpr double kNormSlack = 1e-12;
constexpr double kOriginRadius = 1e-12;

Error parse_error(std::string_view text, const char* what) {
  return Error(ErrorCode::kParseError,
               std::string("polynomial '") + std::string(text) + "': " + what);
}

double central_difference(const std::function<double(double)>& f, double x) {
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

double SingleModeMetric::g_phiphi(double r) {
  const double s = std::sinh(r);
  return std::cosh(2.0 * r) * s * s;
}

double SingleModeMetric::d_g_phiphi(double r) {
  const double s = std::sinh(r);
  const double s2 = std::sinh(2.0 * r);
  return 2.0 * s2 * s * s + std::cosh(2.0 * r) * s2;
}

double SingleModeMetric::christoffel_r_phiphi(double r) { return -0.5 * d_g_phiphi(r); }

double SingleModeMetric::christoffel_phi_rphi(double r) {
  return 0.5 * d_g_phiphi(r) / g_phiphi(r);
}

double SingleModeMetric::speed(const ChartPoint& p, const ChartVelocity& v) {
  return std::sqrt(v.vr * v.vr + g_phiphi(p.r) * v.vphi * v.vphi);
}

// Polynomial ------------------------------------------------------------------

Polynomial::Polynomial(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == 0.0) {
    coefficients_.pop_back();
  }
}

Polynomial Polynomial::parse(std::string_view text) {
  const auto operand = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '^';
  };
  std::string s;
  bool gap = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = !s.empty();
      continue;
    }
    if (gap && operand(c) && operand(s.back())) {
      throw parse_error(text, "missing operator between terms");
    }
    gap = false;
    s.push_back(c);
  }
  if (s.empty()) {
    throw parse_error(text, "empty expression");
  }
  std::vector<double> coeffs;
  std::size_t i = 0;
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (i != 0) {
      throw parse_error(text, "expected '+' or '-' between terms");
    }
    double coefficient = 1.0;
    bool have_number = false;
    if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
      const char* begin = s.c_str() + i;
      char* end = nullptr;
      coefficient = std::strtod(begin, &end);
      if (end == begin) {
        throw parse_error(text, "malformed number");
      }
      i += static_cast<std::size_t>(end - begin);
      have_number = true;
    }
    if (i < s.size() && s[i] == '*') {
      if (!have_number) {
        throw parse_error(text, "'*' without a coefficient");
      }
      ++i;
      if (i >= s.size() || s[i] != 'r') {
        throw parse_error(text, "expected 'r' after '*'");
      }
    }
    std::size_t power = 0;
    if (i < s.size() && s[i] == 'r') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          ++i;
        }
        if (start == i) {
          throw parse_error(text, "expected an integer exponent");
        }
        power = std::stoul(s.substr(start, i - start));
        if (power > 64) {
          throw parse_error(text, "exponent too large");
        }
      }
    } else if (!have_number) {
      throw parse_error(text, "expected a number or 'r'");
    }
    if (coeffs.size() <= power) {
      coeffs.resize(power + 1, 0.0);
    }
    coeffs[power] += sign * coefficient;
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) {
      throw parse_error(text, "non-finite coefficient");
    }
  }
  return Polynomial(std::move(coeffs));
}

double Polynomial::operator()(double r) const {
  double value = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    value = value * r + *it;
  }
  return value;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    d.push_back(static_cast<double>(k) * coefficients_[k]);
  }
  return Polynomial(std::move(d));
}

// VectorPotential --------------------------------------------------------------

VectorPotential VectorPotential::none() {
  auto zero = [](double, double) { return 0.0; };
  return VectorPotential(zero, zero, zero, true);
}

VectorPotential VectorPotential::constant(double c) {
  if (!std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidArgument, "potential constant must be finite");
  }
  auto zero = [](double, double) { return 0.0; };
  return VectorPotential([c](double, double) { return c; }, zero, zero, true);
}

VectorPotential VectorPotential::gradient(Polynomial h) {
  auto dh = h.derivative();
  auto zero = [](double, double) { return 0.0; };
  return VectorPotential([dh](double r, double) { return dh(r); }, zero, zero, true);
}

VectorPotential VectorPotential::modulated(Polynomial f0, double eps) {
  if (!std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidArgument, "modulation depth must be finite");
  }
  auto zero = [](double, double) { return 0.0; };
  return VectorPotential(
      [f0, eps](double r, double phi) { return f0(r) * (1.0 + eps * std::cos(phi)); }, zero,
      [f0, eps](double r, double phi) { return f0(r) * eps * std::sin(phi); }, eps == 0.0);
}

VectorPotential VectorPotential::custom(Component a_r, Component a_phi) {
  if (!a_r || !a_phi) {
    throw Error(ErrorCode::kInvalidArgument, "custom potential components must be set");
  }
  auto field = [a_r, a_phi](double r, double phi) {
    const double d_r_aphi = central_difference([&](double x) { return a_phi(x, phi); }, r);
    const double d_phi_ar = central_difference([&](double y) { return a_r(r, y); }, phi);
    return d_r_aphi - d_phi_ar;
  };
  return VectorPotential(std::move(a_r), std::move(a_phi), std::move(field), false);
}

double VectorPotential::norm(double r, double phi) const {
  const double ar = a_r(r, phi);
  const double ap = a_phi(r, phi);
  if (ap == 0.0) {
    return std::abs(ar);
  }
  const double g = SingleModeMetric::g_phiphi(r);
  if (g <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::sqrt(ar * ar + ap * ap / g);
}

// Paths ------------------------------------------------------------------------

void DiscretizedPath::validate() const {
  if (points.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a path needs at least two samples");
  }
  if (tau.size() != points.size()) {
    throw Error(ErrorCode::kLengthMismatch, "tau and points differ in length");
  }
  if (!velocities.empty() && velocities.size() != points.size()) {
    throw Error(ErrorCode::kLengthMismatch, "velocities and points differ in length");
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!std::isfinite(tau[k]) || !std::isfinite(points[k].r) || !std::isfinite(points[k].phi)) {
      throw Error(ErrorCode::kNonFinite, "path contains non-finite samples");
    }
    if (points[k].r < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "path leaves the chart (r < 0)");
    }
    if (k > 0 && !(tau[k] > tau[k - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "path parameter must be strictly increasing");
    }
  }
}

DiscretizedPath DiscretizedPath::from_points(std::vector<ChartPoint> points) {
  DiscretizedPath path;
  const std::size_t n = points.size();
  path.points = std::move(points);
  path.tau.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    path.tau[k] = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
  }
  return path;
}

DiscretizedPath reversed(const DiscretizedPath& path) {
  path.validate();
  DiscretizedPath out;
  const std::size_t n = path.size();
  const double t0 = path.tau.front();
  const double t1 = path.tau.back();
  out.tau.resize(n);
  out.points.assign(path.points.rbegin(), path.points.rend());
  for (std::size_t k = 0; k < n; ++k) {
    out.tau[k] = t0 + (t1 - path.tau[n - 1 - k]);
  }
  for (auto it = path.velocities.rbegin(); it != path.velocities.rend(); ++it) {
    out.velocities.push_back({-it->vr, -it->vphi});
  }
  out.reached_chart_boundary = path.reached_chart_boundary;
  return out;
}

CostBreakdown nonreversible_cost_breakdown(const DiscretizedPath& path, const VectorPotential& a) {
  path.validate();
  const std::size_t n = path.size();
  std::vector<double> ar(n), ap(n), g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = path.points[k];
    const double norm = a.norm(p.r, p.phi);
    if (!(norm <= 1.0 + kNormSlack)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "|A| = %.6g exceeds 1 at (r, phi) = (%.6g, %.6g)", norm, p.r,
                    p.phi);
      throw Error(ErrorCode::kPotentialTooLarge, buf);
    }
    ar[k] = a.a_r(p.r, p.phi);
    ap[k] = a.a_phi(p.r, p.phi);
    g[k] = SingleModeMetric::g_phiphi(p.r);
  }
  CostBreakdown out;
  out.accumulated.assign(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dr = path.points[k + 1].r - path.points[k].r;
    const double dphi = path.points[k + 1].phi - path.points[k].phi;
    const double len = 0.5 * (std::sqrt(dr * dr + g[k] * dphi * dphi) +
                              std::sqrt(dr * dr + g[k + 1] * dphi * dphi));
    const double pot = 0.5 * ((ar[k] + ar[k + 1]) * dr + (ap[k] + ap[k + 1]) * dphi);
    out.length += len;
    out.potential_term += pot;
    out.accumulated[k + 1] = out.accumulated[k] + (len - pot);
  }
  out.total = out.length - out.potential_term;
  return out;
}

double nonreversible_cost(const DiscretizedPath& path, const VectorPotential& a) {
  return nonreversible_cost_breakdown(path, a).total;
}

double nonreversible_cost(const std::vector<Vector>& points, const MetricField& metric,
                          const OneFormField& one_form) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a path needs at least two samples");
  }
  const auto dim = points.front().size();
  std::vector<Matrix> g;
  std::vector<Vector> a;
  g.reserve(points.size());
  a.reserve(points.size());
  for (const auto& x : points) {
    if (x.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "path samples differ in dimension");
    }
    g.push_back(metric(x));
    a.push_back(one_form(x));
    if (g.back().rows() != dim || g.back().cols() != dim || a.back().size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "metric or one-form has the wrong size");
    }
    Eigen::LLT<Matrix> llt(g.back());
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingularInput, "metric is not positive definite on the path");
    }
    const double norm = std::sqrt(a.back().dot(llt.solve(a.back())));
    if (!(norm <= 1.0 + kNormSlack)) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "|A| = %.6g exceeds 1 on the path", norm);
      throw Error(ErrorCode::kPotentialTooLarge, buf);
    }
  }
  double cost = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const Vector d = points[k + 1] - points[k];
    cost += 0.5 * (std::sqrt(std::max(0.0, d.dot(g[k] * d))) +
                   std::sqrt(std::max(0.0, d.dot(g[k + 1] * d))));
    cost -= 0.5 * (a[k] + a[k + 1]).dot(d);
  }
  return cost;
}

void write_path_csv(std::ostream& out, const DiscretizedPath& path,
                    const std::vector<double>& accumulated) {
  if (accumulated.size() != path.size() || path.tau.size() != path.size()) {
    throw Error(ErrorCode::kLengthMismatch, "accumulated cost does not match the path");
  }
  out << "tau,r,phi,cost_accumulated\n";
  char buf[128];
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", path.tau[k], path.points[k].r,
                  path.points[k].phi, accumulated[k]);
    out << buf;
  }
}

// Lorentz-force geodesics --------------------------------------------------------

DiscretizedPath lorentz_geodesic(const ChartPoint& start, const ChartVelocity& initial_velocity,
                                 const VectorPotential& a, double length,
                                 const LorentzOptions& options) {
  if (options.rk_steps < 8) {
    throw Error(ErrorCode::kInvalidArgument, "rk_steps must be at least 8");
  }
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::kInvalidArgument, "length must be finite and nonnegative");
  }
  if (!(options.drift_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "drift tolerance must be positive");
  }
  if (!std::isfinite(start.r) || !std::isfinite(start.phi) || start.r < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "start must satisfy r >= 0");
  }
  ChartPoint p0 = start;
  ChartVelocity v0 = initial_velocity;
  const bool at_origin = p0.r < kOriginRadius;
  if (at_origin) {
    if (v0.vphi != 0.0) {
      throw Error(ErrorCode::kChartBoundary,
                  "a launch from r = 0 must have zero angular velocity");
    }
    p0.r = 0.0;
    if (v0.vr < 0.0) {
      p0.phi += std::numbers::pi;
      v0.vr = -v0.vr;
    }
  }
  const double speed = SingleModeMetric::speed(p0, v0);
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw Error(ErrorCode::kInvalidArgument, "initial velocity must be nonzero and finite");
  }
  v0.vr /= speed;
  v0.vphi /= speed;

  using State = std::array<double, 4>;
  auto rhs = [&a](const State& x, State& dxds, double) {
    const double r = x[0];
    const double phi = x[1];
    const double vr = x[2];
    const double vp = x[3];
    const double g = SingleModeMetric::g_phiphi(r);
    const double dg = SingleModeMetric::d_g_phiphi(r);
    const double f = a.field_strength(r, phi);
    dxds[0] = vr;
    dxds[1] = vp;
    dxds[2] = 0.5 * dg * vp * vp - f * vp;
    dxds[3] = (vp == 0.0 ? 0.0 : -(dg / g) * vr * vp) + (f == 0.0 ? 0.0 : f * vr / g);
  };

  const int steps = options.rk_steps;
  const double h = length / steps;
  DiscretizedPath path;
  path.tau.reserve(steps + 1);
  path.points.reserve(steps + 1);
  path.velocities.reserve(steps + 1);
  auto record = [&](int k, const State& x) {
    path.tau.push_back(static_cast<double>(k) / steps);
    path.points.push_back({x[0], x[1]});
    path.velocities.push_back({x[2], x[3]});
  };

  State x{p0.r, p0.phi, v0.vr, v0.vphi};
  record(0, x);
  int k = 0;
  if (at_origin && h > 0.0) {
    x = {h, p0.phi, 1.0, 0.0};
    record(++k, x);
  }
  boost::numeric::odeint::runge_kutta4<State> stepper;
  double s = k * h;
  for (; k < steps; ++k) {
    if (h == 0.0) {
      record(k + 1, x);
      continue;
    }
    const double r_before = x[0];
    stepper.do_step(rhs, x, s, h);
    s += h;
    const bool near_origin = std::min(r_before, x[0]) < h || !std::isfinite(x[0]);
    if (x[0] < kOriginRadius) {
      if (x[3] == 0.0) {
        x[0] = std::abs(x[0]);
        x[1] += std::numbers::pi;
        x[2] = -x[2];
      } else {
        path.reached_chart_boundary = true;
        return path;
      }
    }
    const double v = SingleModeMetric::speed({x[0], x[1]}, {x[2], x[3]});
    if (!std::isfinite(v) || std::abs(v - 1.0) > options.drift_tol) {
      if (near_origin && x[3] != 0.0) {
        path.reached_chart_boundary = true;
        return path;
      }
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "speed drifted to %.6g after arc length %.6g; increase rk_steps", v, s);
      throw Error(ErrorCode::kStepTooCoarse, buf);
    }
    record(k + 1, x);
  }
  return path;
}

}  // namespace gausscx
