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

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gausscx/phase_space.hpp"

namespace gausscx {

/// Point of the single-mode squeezing chart: magnitude r >= 0, angle phi.
struct ChartPoint {
  double r = 0.0;
  double phi = 0.0;
};

/// Tangent vector (dr, dphi) at a chart point.
struct ChartVelocity {
  double vr = 0.0;
  double vphi = 0.0;
};

/// ds^2 = dr^2 + cosh(2r) sinh(r)^2 dphi^2.
struct SingleModeMetric {
  static double g_phiphi(double r);
  static double d_g_phiphi(double r);
  /// Gamma^r_{phi phi} = -g'/2.
  static double christoffel_r_phiphi(double r);
  /// Gamma^phi_{r phi} = g'/(2 g).
  static double christoffel_phi_rphi(double r);
  static double speed(const ChartPoint& p, const ChartVelocity& v);
};

/// Real polynomial in r, parsed from expressions such as "0.5r",
/// "r^2 - 0.1*r + 3" or "2*r^3".
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  static Polynomial parse(std::string_view text);

  double operator()(double r) const;
  Polynomial derivative() const;
  /// Ascending powers.
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  std::vector<double> coefficients_;
};

/// One-form A = a_r dr + a_phi dphi on the chart.
///
/// The cost of a path is its length minus the line integral of A, so moving
/// along A is cheaper than moving against it.
class VectorPotential {
 public:
  using Component = std::function<double(double r, double phi)>;

  static VectorPotential none();
  /// A = c dr.
  static VectorPotential constant(double c);
  /// A = dh for a polynomial h(r); the cost of any path shifts by
  /// -(h(end) - h(start)).
  static VectorPotential gradient(Polynomial h);
  /// A = f0(r) (1 + eps cos phi) dr.
  static VectorPotential modulated(Polynomial f0, double eps);
  /// Arbitrary components; the field strength uses central differences.
  static VectorPotential custom(Component a_r, Component a_phi);

  double a_r(double r, double phi) const { return a_r_(r, phi); }
  double a_phi(double r, double phi) const { return a_phi_(r, phi); }
  /// F_{r phi} = d_r a_phi - d_phi a_r.
  double field_strength(double r, double phi) const { return field_(r, phi); }
  /// Dual norm sqrt(a_r^2 + a_phi^2 / g_phiphi).
  double norm(double r, double phi) const;
  bool is_closed() const { return closed_; }

 private:
  VectorPotential(Component a_r, Component a_phi, Component field, bool closed)
      : a_r_(std::move(a_r)), a_phi_(std::move(a_phi)), field_(std::move(field)),
        closed_(closed) {}

  Component a_r_;
  Component a_phi_;
  Component field_;
  bool closed_;
};

/// Samples of a chart curve at strictly increasing parameter values.
struct DiscretizedPath {
  std::vector<double> tau;
  std::vector<ChartPoint> points;
  /// Arc-length velocities, filled by lorentz_geodesic.
  std::vector<ChartVelocity> velocities;
  /// Integration stopped at the r = 0 chart boundary.
  bool reached_chart_boundary = false;

  std::size_t size() const { return points.size(); }
  void validate() const;

  /// Uniform tau in [0, 1] through the given points.
  static DiscretizedPath from_points(std::vector<ChartPoint> points);
};

/// Same samples traversed in the opposite direction.
DiscretizedPath reversed(const DiscretizedPath& path);

struct CostBreakdown {
  double total = 0.0;
  double length = 0.0;
  /// Trapezoidal integral of A along the path.
  double potential_term = 0.0;
  /// Running total at each sample; starts at zero.
  std::vector<double> accumulated;
};

/// Trapezoidal length minus integral of A on the single-mode chart.
/// Throws PotentialTooLarge if ||A|| > 1 at any sample.
CostBreakdown nonreversible_cost_breakdown(const DiscretizedPath& path, const VectorPotential& a);
double nonreversible_cost(const DiscretizedPath& path, const VectorPotential& a);

/// Generic version on coordinates x_k with metric g(x) and one-form A(x).
using MetricField = std::function<Matrix(const Vector&)>;
using OneFormField = std::function<Vector(const Vector&)>;
double nonreversible_cost(const std::vector<Vector>& points, const MetricField& metric,
                          const OneFormField& one_form);

/// CSV with header tau,r,phi,cost_accumulated.
void write_path_csv(std::ostream& out, const DiscretizedPath& path,
                    const std::vector<double>& accumulated);

struct LorentzOptions {
  int rk_steps = 256;
  /// Largest tolerated |speed - 1| along the trajectory.
  double drift_tol = 1e-6;
};

/// Unit-speed solution of gamma'' + Gamma(gamma', gamma') = -F gamma' with
/// fixed-step RK4, run for the given arc length. The initial velocity is
/// rescaled to unit speed. A launch from r = 0 must be radial.
DiscretizedPath lorentz_geodesic(const ChartPoint& start, const ChartVelocity& initial_velocity,
                                 const VectorPotential& a, double length,
                                 const LorentzOptions& options = {});

}  // namespace gausscx
