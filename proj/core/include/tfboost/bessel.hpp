#pragma once

namespace tfboost {

// Modified Bessel function of the second kind for non-integer order in
// (0, 1). Small arguments (u <= 2) use the ascending series through
// K = pi/2 (I_{-nu} - I_nu)/sin(nu pi); larger arguments use the
// exponentially convergent trapezoid quadrature of
// K_nu(u) = integral_0^inf exp(-u cosh t) cosh(nu t) dt, since the
// truncated large-u asymptotic series cannot reach 1e-8 relative accuracy
// at moderate u.
double bessel_k(double nu, double u);

}  // namespace tfboost
