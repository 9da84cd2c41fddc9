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

#include "gausscx/weyl.hpp"

#include <algorithm>
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>
#include <cstdio>
#include <cmath>
#include <memory>

#include "gausscx/errors.hpp"

namespace gausscx {
namespace {

int even_steps(int quad_steps) {
  if (quad_steps < 2) {
    throw Error(ErrorCode::kInvalidArgument, "quad_steps must be at least 2");
  }
  return quad_steps + (quad_steps % 2);
}

double weight(const WeylFactor& weyl, double r) {
  double w;
  try {
    w = std::exp(weyl(r));
  } catch (const std::domain_error&) {
    w = std::nan("");
  }
  if (!std::isfinite(w)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "exp(omega(%.6g)) is not finite for omega = %s", r,
                  weyl.name().c_str());
    throw Error(ErrorCode::kNonFiniteFactor, buf);
  }
  return w;
}

// Composite Simpson of exp(omega(t r)) over t in [0, upper], returned as the
// mean value (integral / upper) so a constant integrand is reproduced exactly.
double simpson_mean(const WeylFactor& weyl, double r, double upper, int steps) {
  const double h = upper / steps;
  double sum = weight(weyl, 0.0) + weight(weyl, upper * r);
  for (int i = 1; i < steps; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * weight(weyl, i * h * r);
  }
  return sum / (3.0 * steps);
}

}  // namespace

WeylFactor WeylFactor::constant(double c) {
  if (!std::isfinite(c)) {
    throw Error(ErrorCode::kNonFiniteFactor, "constant omega must be finite");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "const:%.17g", c);
  return WeylFactor([c](double) { return c; }, buf);
}

WeylFactor WeylFactor::linear(double beta) {
  if (!std::isfinite(beta)) {
    throw Error(ErrorCode::kNonFiniteFactor, "linear omega slope must be finite");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "linear:%.17g", beta);
  return WeylFactor([beta](double r) { return beta * r; }, buf);
}

WeylFactor WeylFactor::tabulated(std::vector<double> r, std::vector<double> omega) {
  if (r.size() != omega.size()) {
    throw Error(ErrorCode::kLengthMismatch, "omega table columns differ in length");
  }
  if (r.size() < 4) {
    throw Error(ErrorCode::kInvalidArgument, "omega table needs at least 4 rows");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(omega[i])) {
      throw Error(ErrorCode::kNonFiniteFactor, "omega table contains non-finite entries");
    }
    if (i > 0 && !(r[i] > r[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "omega table r column must be strictly increasing");
    }
  }
  const double lo = r.front();
  const double hi = r.back();
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  auto spline = std::make_shared<Pchip>(std::move(r), std::move(omega));
  return WeylFactor(
      [spline, lo, hi](double x) {
        if (x < lo || x > hi) {
          return std::nan("");
        }
        return (*spline)(x);
      },
      "table");
}

WeylFactor WeylFactor::custom(Function f, std::string name) {
  if (!f) {
    throw Error(ErrorCode::kInvalidArgument, "custom omega is empty");
  }
  return WeylFactor(std::move(f), std::move(name));
}

double weyl_complexity(double base_complexity, const WeylFactor& weyl, int quad_steps) {
  if (!(base_complexity >= 0.0) || !std::isfinite(base_complexity)) {
    throw Error(ErrorCode::kInvalidArgument, "base complexity must be finite and nonnegative");
  }
  const int steps = even_steps(quad_steps);
  return base_complexity * simpson_mean(weyl, base_complexity, 1.0, steps);
}

double weyl_affine_reparametrization(const WeylFactor& weyl, double r_target, double tau,
                                     int quad_steps) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in [0, 1]");
  }
  if (!(r_target >= 0.0) || !std::isfinite(r_target)) {
    throw Error(ErrorCode::kInvalidArgument, "r_target must be finite and nonnegative");
  }
  const int steps = even_steps(quad_steps);
  const double total = simpson_mean(weyl, r_target, 1.0, steps);
  if (tau == 0.0) {
    return 0.0;
  }
  if (tau == 1.0) {
    return 1.0;
  }
  const double partial = tau * simpson_mean(weyl, r_target, tau, steps);
  return std::clamp(partial / total, 0.0, 1.0);
}

}  // namespace gausscx
