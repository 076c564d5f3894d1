#include "tfboost/bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tfboost/errors.hpp"

namespace tfboost {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCrossover = 2.0;

// Ascending series of I_nu; converges for all u, used below the crossover
// where the I_{-nu} - I_nu cancellation is still mild.
double bessel_i_series(double nu, double u) {
  const double half_u = u / 2.0;
  double term = std::pow(half_u, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  const double quarter_u2 = half_u * half_u;
  for (int k = 1; k < 400; ++k) {
    term *= quarter_u2 / (k * (k + nu));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// integral_0^inf exp(-u cosh t) cosh(nu t) dt by trapezoid steps; the even,
// entire integrand makes the rule converge faster than any power of h.
double bessel_k_integral(double nu, double u) {
  const double h = 0.05;
  double sum = 0.5 * std::exp(-u);  // t = 0 term, cosh(0) = 1
  for (int k = 1;; ++k) {
    const double t = k * h;
    const double exponent = -u * std::cosh(t);
    if (exponent < -746.0) break;  // underflow, tail is zero
    sum += std::exp(exponent) * std::cosh(nu * t);
  }
  return sum * h;
}

}  // namespace

double bessel_k(double nu, double u) {
  if (!(nu > 0.0) || !(nu < 1.0)) {
    throw DomainError("bessel_k: order must lie in (0, 1), got " + std::to_string(nu));
  }
  if (!(u > 0.0)) throw DomainError("bessel_k: argument must be positive");
  if (u <= kSeriesCrossover) {
    return kPi / 2.0 * (bessel_i_series(-nu, u) - bessel_i_series(nu, u)) /
           std::sin(nu * kPi);
  }
  return bessel_k_integral(nu, u);
}

}  // namespace tfboost
