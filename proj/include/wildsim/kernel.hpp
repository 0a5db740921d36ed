#pragma once

#include <string>
#include <vector>

#include "wildsim/rng.hpp"

namespace wildsim {

// Angular collision kernel: a bounded nonnegative function b of the
// deviation cosine u = <(v-v*)/|v-v*|, sigma> on [-1,1]. The kernel owns its
// derived constants
//
//   kappa       = 2*pi * integral of b(u) du        (total sphere mass)
//   mean_cosine = (2*pi/kappa) * integral of u*b(u) du
//
// computed exactly for each representation (no quadrature error), and a
// sampler for the cosine with density 2*pi*b(u)/kappa.
class AngularKernel {
 public:
  enum class Kind { kConstant, kTruncatedPower, kTabulated };

  // b(u) = value.
  static AngularKernel constant(double value);

  // b(u) = max(((1+u)/2)^exponent, floor), exponent >= 0, floor >= 0.
  // Forward-peaked for large exponents; the floor keeps kappa positive.
  static AngularKernel truncated_power(double exponent, double floor);

  // Piecewise-linear b through (u_i, b_i), u strictly increasing in [-1,1];
  // b = 0 outside the tabulated range.
  static AngularKernel tabulated(std::vector<double> u, std::vector<double> b);

  // Two-column text file "u b(u)", '#' comments allowed.
  static AngularKernel tabulated_from_file(const std::string& path);

  Kind kind() const { return kind_; }
  double operator()(double u) const;
  double kappa() const { return kappa_; }
  double mean_cosine() const { return mean_cosine_; }
  double sup() const { return sup_; }

  // Draws the deviation cosine with density 2*pi*b(u)/kappa on [-1,1].
  double sample_cosine(RngStream& rng) const;

 private:
  AngularKernel() = default;
  void finalize(double integral_b, double integral_ub);

  Kind kind_ = Kind::kConstant;
  double value_ = 0.0;     // constant
  double exponent_ = 0.0;  // truncated power
  double floor_ = 0.0;
  std::vector<double> grid_u_;  // tabulated
  std::vector<double> grid_b_;
  std::vector<double> inv_cdf_u_;  // monotone inverse-CDF table knots
  std::vector<double> inv_cdf_f_;  // CDF values at the knots, scaled to [0,1]

  double kappa_ = 0.0;
  double mean_cosine_ = 0.0;
  double sup_ = 0.0;
};

}  // namespace wildsim
