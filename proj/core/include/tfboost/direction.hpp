#pragma once

#include <Eigen/Core>

#include "tfboost/rng.hpp"

namespace tfboost {

// Unit-norm coefficient vector of a projection direction in basis space.
// Directions produced by the factories below are canonical: first coordinate
// >= 0, ties broken by the first nonzero coordinate. The struct itself only
// requires unit norm, so sign-flipped variants can be built in tests.
struct Direction {
  Eigen::VectorXd coeffs;

  explicit Direction(Eigen::VectorXd c);
  int dim() const { return static_cast<int>(coeffs.size()); }
};

// Box constraints of the spherical-angle chart: the first angle lies in
// [-pi/2, pi/2] (closed at the upper boundary so the measure-zero
// first-coordinate-zero directions stay representable), the remaining
// angles in [0, pi].
double angle_lower(int index);
double angle_upper(int index);

// Cartesian coordinates from d-1 spherical angles with unit radius:
// c_1 = cos a_1, c_l = cos a_l * prod_{k<l} sin a_k, c_d = prod sin a_k.
Direction from_angles(const Eigen::VectorXd& angles);

// Inverse chart on canonical directions; degenerate zero tails map to
// angle 0. from_angles(to_angles(dir)) == dir to 1e-10 componentwise.
Eigen::VectorXd to_angles(const Direction& dir);

// Normalize and fix the sign so the first nonzero coordinate is positive.
Direction canonicalize(const Eigen::VectorXd& raw);

// Uniform draw on the canonical half sphere (Gaussian vector normalized,
// sign-flipped when the first coordinate is negative).
Direction sample_direction(int d, Rng& rng);

}  // namespace tfboost
