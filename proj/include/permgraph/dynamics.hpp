#pragma once

#include <array>
#include <cstddef>

#include "permgraph/signal.hpp"

namespace permgraph {

/// Hénon map x' = 1 - a x^2 + y, y' = b x.
struct HenonParams {
  double a = 1.4;
  double b = 0.3;
  double x0 = 0.5;
  double y0 = 0.1;
  std::size_t n = 100;
};

/// Orbits leaving this box are reported as divergent.
inline constexpr double kHenonEscapeRadius = 1e10;

/// Two channels ("x", "y") of n samples starting at (x0, y0). Throws
/// DivergenceError carrying the 0-based index of the first escaped sample.
MultivariateSignal henon(const HenonParams& p);

struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  std::array<double, 3> init = {1.0, 1.0, 1.0};
  double dt = 0.01;
  std::size_t steps = 15000;
  std::size_t transient = 5000;
};

using LorenzState = std::array<double, 3>;

LorenzState lorenz_derivative(const LorenzState& s, double sigma, double rho, double beta);

/// One classical fourth-order Runge-Kutta step.
LorenzState lorenz_rk4_step(const LorenzState& s, double dt, double sigma, double rho,
                            double beta);

/// Samples 0..steps-1 (sample 0 is `init`, sample k is the state after k RK4
/// steps) with the first `transient` dropped. Channels "x", "y", "z".
MultivariateSignal lorenz(const LorenzParams& p);

}  // namespace permgraph
