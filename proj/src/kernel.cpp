#include "wildsim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wildsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kInvCdfKnots = 1024;

}  // namespace

void AngularKernel::finalize(double integral_b, double integral_ub) {
  if (!std::isfinite(integral_b) || integral_b <= 0.0) {
    throw std::invalid_argument("angular kernel has nonpositive mass");
  }
  kappa_ = kTwoPi * integral_b;
  mean_cosine_ = integral_ub / integral_b;
  if (mean_cosine_ < -1.0 || mean_cosine_ > 1.0) {
    throw std::invalid_argument("angular kernel mean cosine outside [-1,1]");
  }
}

AngularKernel AngularKernel::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("constant kernel needs a finite value >= 0");
  }
  AngularKernel k;
  k.kind_ = Kind::kConstant;
  k.value_ = value;
  k.sup_ = value;
  k.finalize(2.0 * value, 0.0);
  return k;
}

AngularKernel AngularKernel::truncated_power(double exponent, double floor) {
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("power kernel needs exponent >= 0");
  }
  if (!(floor >= 0.0) || !std::isfinite(floor)) {
    throw std::invalid_argument("power kernel needs floor >= 0");
  }
  AngularKernel k;
  k.kind_ = Kind::kTruncatedPower;
  k.exponent_ = exponent;
  k.floor_ = floor;
  k.sup_ = std::max(1.0, floor);

  // Closed-form integrals. With w = (1+u)/2 the power part contributes
  // int (2w-1)^j w^q * 2 dw over [w_c,1], where w_c is where the power
  // crosses the floor.
  double ib = 0.0, iub = 0.0;
  if (floor >= 1.0 || exponent == 0.0) {
    const double b0 = std::max(1.0, floor);
    ib = 2.0 * b0;
    iub = 0.0;
  } else {
    const double wc = floor > 0.0 ? std::pow(floor, 1.0 / exponent) : 0.0;
    const double uc = 2.0 * wc - 1.0;
    const double q = exponent;
    // floor part on [-1, uc]
    ib = floor * (uc + 1.0);
    iub = floor * (uc * uc - 1.0) / 2.0;
    // power part on [uc, 1]
    auto powint = [&](double w, double j) {  // int w^(q+j) dw antiderivative
      return std::pow(w, q + j + 1.0) / (q + j + 1.0);
    };
    ib += 2.0 * (powint(1.0, 0.0) - powint(wc, 0.0));
    iub += 4.0 * (powint(1.0, 1.0) - powint(wc, 1.0)) -
           2.0 * (powint(1.0, 0.0) - powint(wc, 0.0));
  }
  k.finalize(ib, iub);
  return k;
}

AngularKernel AngularKernel::tabulated(std::vector<double> u,
                                       std::vector<double> b) {
  if (u.size() != b.size() || u.size() < 2) {
    throw std::invalid_argument("tabulated kernel needs >= 2 (u, b) pairs");
  }
  for (size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || u[i] < -1.0 || u[i] > 1.0) {
      throw std::invalid_argument("tabulated kernel u outside [-1,1]");
    }
    if (i > 0 && !(u[i] > u[i - 1])) {
      throw std::invalid_argument("tabulated kernel u not strictly increasing");
    }
    if (!std::isfinite(b[i]) || b[i] < 0.0) {
      throw std::invalid_argument("tabulated kernel b must be >= 0");
    }
  }
  AngularKernel k;
  k.kind_ = Kind::kTabulated;
  k.grid_u_ = std::move(u);
  k.grid_b_ = std::move(b);
  k.sup_ = *std::max_element(k.grid_b_.begin(), k.grid_b_.end());

  // b is piecewise linear, so the segment integrals are exact: trapezoid for
  // b, Simpson for the quadratic u*b.
  double ib = 0.0, iub = 0.0;
  for (size_t i = 0; i + 1 < k.grid_u_.size(); ++i) {
    const double u0 = k.grid_u_[i], u1 = k.grid_u_[i + 1];
    const double b0 = k.grid_b_[i], b1 = k.grid_b_[i + 1];
    const double h = u1 - u0;
    ib += 0.5 * (b0 + b1) * h;
    const double um = 0.5 * (u0 + u1);
    const double bm = 0.5 * (b0 + b1);
    iub += h / 6.0 * (u0 * b0 + 4.0 * um * bm + u1 * b1);
  }
  k.finalize(ib, iub);

  // Monotone inverse-CDF table: CDF evaluated exactly at uniform cosine
  // knots, inverted at sampling time by binary search + linear interpolation.
  const double lo = k.grid_u_.front(), hi = k.grid_u_.back();
  k.inv_cdf_u_.resize(kInvCdfKnots + 1);
  k.inv_cdf_f_.resize(kInvCdfKnots + 1);
  size_t seg = 0;
  double acc = 0.0;
  double prev_u = lo;
  for (int j = 0; j <= kInvCdfKnots; ++j) {
    const double uu = lo + (hi - lo) * static_cast<double>(j) / kInvCdfKnots;
    while (seg + 2 < k.grid_u_.size() && k.grid_u_[seg + 1] <= uu) {
      acc += 0.5 * (k.grid_b_[seg] + k.grid_b_[seg + 1]) *
             (k.grid_u_[seg + 1] - k.grid_u_[seg]);
      prev_u = k.grid_u_[seg + 1];
      ++seg;
    }
    const double b_at = [&] {
      const double s = (uu - k.grid_u_[seg]) /
                       (k.grid_u_[seg + 1] - k.grid_u_[seg]);
      return k.grid_b_[seg] + s * (k.grid_b_[seg + 1] - k.grid_b_[seg]);
    }();
    const double b_prev = [&] {
      const double s = (prev_u - k.grid_u_[seg]) /
                       (k.grid_u_[seg + 1] - k.grid_u_[seg]);
      return k.grid_b_[seg] + s * (k.grid_b_[seg + 1] - k.grid_b_[seg]);
    }();
    k.inv_cdf_u_[j] = uu;
    k.inv_cdf_f_[j] = acc + 0.5 * (b_prev + b_at) * (uu - prev_u);
  }
  const double total = k.inv_cdf_f_.back();
  for (double& f : k.inv_cdf_f_) f /= total;
  // Guard against flat stretches breaking strict monotonicity of the search.
  for (int j = 1; j <= kInvCdfKnots; ++j) {
    if (k.inv_cdf_f_[j] < k.inv_cdf_f_[j - 1]) {
      k.inv_cdf_f_[j] = k.inv_cdf_f_[j - 1];
    }
  }
  return k;
}

AngularKernel AngularKernel::tabulated_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open kernel table: " + path);
  }
  std::vector<double> u, b;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double uu, bb;
    if (ls >> uu >> bb) {
      u.push_back(uu);
      b.push_back(bb);
    }
  }
  return tabulated(std::move(u), std::move(b));
}

double AngularKernel::operator()(double u) const {
  switch (kind_) {
    case Kind::kConstant:
      return value_;
    case Kind::kTruncatedPower:
      return std::max(std::pow(0.5 * (1.0 + u), exponent_), floor_);
    case Kind::kTabulated: {
      if (u <= grid_u_.front() || u >= grid_u_.back()) {
        if (u == grid_u_.front()) return grid_b_.front();
        if (u == grid_u_.back()) return grid_b_.back();
        return 0.0;
      }
      const auto it = std::upper_bound(grid_u_.begin(), grid_u_.end(), u);
      const size_t i = static_cast<size_t>(it - grid_u_.begin()) - 1;
      const double s = (u - grid_u_[i]) / (grid_u_[i + 1] - grid_u_[i]);
      return grid_b_[i] + s * (grid_b_[i + 1] - grid_b_[i]);
    }
  }
  return 0.0;
}

double AngularKernel::sample_cosine(RngStream& rng) const {
  switch (kind_) {
    case Kind::kConstant:
      return 2.0 * rng.next_double() - 1.0;
    case Kind::kTruncatedPower: {
      // Rejection from the constant majorant sup_b.
      for (;;) {
        const double u = 2.0 * rng.next_double() - 1.0;
        if (rng.next_double() * sup_ <= (*this)(u)) return u;
      }
    }
    case Kind::kTabulated: {
      const double target = rng.next_double();
      const auto it =
          std::upper_bound(inv_cdf_f_.begin(), inv_cdf_f_.end(), target);
      size_t j = static_cast<size_t>(it - inv_cdf_f_.begin());
      if (j == 0) return inv_cdf_u_.front();
      if (j > kInvCdfKnots) return inv_cdf_u_.back();
      const double f0 = inv_cdf_f_[j - 1], f1 = inv_cdf_f_[j];
      const double s = f1 > f0 ? (target - f0) / (f1 - f0) : 0.0;
      return inv_cdf_u_[j - 1] + s * (inv_cdf_u_[j] - inv_cdf_u_[j - 1]);
    }
  }
  return 0.0;
}

}  // namespace wildsim
