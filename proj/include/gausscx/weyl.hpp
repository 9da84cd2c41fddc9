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
#include <string>
#include <vector>

namespace gausscx {

/// Conformal factor omega(r) of the rescaled metric exp(2 omega) g.
class WeylFactor {
 public:
  using Function = std::function<double(double)>;

  static WeylFactor constant(double c);
  /// omega(r) = beta r.
  static WeylFactor linear(double beta);
  /// Monotone piecewise-cubic (PCHIP) interpolant through (r_i, omega_i).
  /// Needs at least four strictly increasing nodes; queries outside
  /// [r_0, r_last] are rejected.
  static WeylFactor tabulated(std::vector<double> r, std::vector<double> omega);
  static WeylFactor custom(Function f, std::string name = "custom");

  double operator()(double r) const { return f_(r); }
  const std::string& name() const { return name_; }

 private:
  WeylFactor(Function f, std::string name) : f_(std::move(f)), name_(std::move(name)) {}

  Function f_;
  std::string name_;
};

/// r_T * integral_0^1 exp(omega(tau r_T)) dtau by composite Simpson.
/// Odd quad_steps are rounded up to the next even count.
double weyl_complexity(double base_complexity, const WeylFactor& weyl, int quad_steps);

/// s(tau) = integral_0^tau exp(omega) / integral_0^1 exp(omega).
double weyl_affine_reparametrization(const WeylFactor& weyl, double r_target, double tau,
                                     int quad_steps);

}  // namespace gausscx
