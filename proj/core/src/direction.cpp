#include "tfboost/direction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tfboost/errors.hpp"

namespace tfboost {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kUnitTol = 1e-10;
constexpr double kBoxTol = 1e-12;

double clamp_to_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }
}  // namespace

Direction::Direction(Eigen::VectorXd c) : coeffs(std::move(c)) {
  if (coeffs.size() < 1) throw DomainError("Direction: empty coefficient vector");
  const double nrm = coeffs.norm();
  if (std::abs(nrm - 1.0) > kUnitTol) {
    throw ConstraintError("Direction: coefficients not unit norm (|c| = " +
                          std::to_string(nrm) + ")");
  }
}

double angle_lower(int index) { return index == 0 ? -kPi / 2 : 0.0; }
double angle_upper(int index) { return index == 0 ? kPi / 2 : kPi; }

Direction from_angles(const Eigen::VectorXd& angles) {
  const int d = static_cast<int>(angles.size()) + 1;
  if (d < 2) throw DomainError("from_angles: need at least one angle");
  for (int l = 0; l < d - 1; ++l) {
    if (angles(l) < angle_lower(l) - kBoxTol || angles(l) > angle_upper(l) + kBoxTol) {
      throw ConstraintError("from_angles: angle " + std::to_string(l) +
                            " outside its box");
    }
  }
  Eigen::VectorXd c(d);
  double sin_prod = 1.0;
  for (int l = 0; l < d - 1; ++l) {
    c(l) = sin_prod * std::cos(angles(l));
    sin_prod *= std::sin(angles(l));
  }
  c(d - 1) = sin_prod;
  return Direction(std::move(c));
}

Eigen::VectorXd to_angles(const Direction& dir) {
  const int d = dir.dim();
  if (d < 2) throw DomainError("to_angles: dimension must be >= 2");
  const auto& c = dir.coeffs;

  // Only the first angle carries sign; its sine is negative exactly when the
  // signed product needed by the remaining coordinates is negative.
  const double sign = (c(d - 1) < 0.0 || (c(d - 1) == 0.0 && c(0) == 0.0)) ? -1.0 : 1.0;

  // Backward tail norms |(c_l, ..., c_d)| avoid subtractive cancellation.
  Eigen::VectorXd tail(d);
  tail(d - 1) = std::abs(c(d - 1));
  for (int l = d - 2; l >= 0; --l) tail(l) = std::hypot(c(l), tail(l + 1));

  Eigen::VectorXd angles = Eigen::VectorXd::Zero(d - 1);
  for (int l = 0; l < d - 1; ++l) {
    if (tail(l) <= 1e-300) break;  // degenerate zero tail: remaining angles stay 0
    const double denom = (l == 0) ? tail(l) : sign * tail(l);
    angles(l) = std::acos(clamp_to_unit(c(l) / denom));
    if (l == 0) angles(0) *= sign;
  }
  return angles;
}

Direction canonicalize(const Eigen::VectorXd& raw) {
  const double nrm = raw.norm();
  if (!(nrm > 0.0) || !raw.allFinite()) {
    throw DomainError("canonicalize: zero or non-finite vector");
  }
  Eigen::VectorXd c = raw / nrm;
  for (int i = 0; i < c.size(); ++i) {
    if (c(i) != 0.0) {
      if (c(i) < 0.0) c = -c;
      break;
    }
  }
  return Direction(std::move(c));
}

Direction sample_direction(int d, Rng& rng) {
  if (d < 1) throw DomainError("sample_direction: d must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd c(d);
  double nrm = 0.0;
  do {
    for (int i = 0; i < d; ++i) c(i) = gauss(rng);
    nrm = c.norm();
  } while (!(nrm > 1e-12));
  c /= nrm;
  if (c(0) < 0.0) c = -c;
  return Direction(std::move(c));
}

}  // namespace tfboost
