#include "permgraph/dynamics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "permgraph/errors.hpp"

namespace permgraph {

MultivariateSignal henon(const HenonParams& p) {
  if (p.n == 0) throw InvalidArgument("henon requires n >= 1");
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.x0) || !std::isfinite(p.y0)) {
    throw InvalidArgument("henon parameters must be finite");
  }
  std::vector<double> data(2 * p.n);
  double x = p.x0;
  double y = p.y0;
  for (std::size_t t = 0; t < p.n; ++t) {
    if (t > 0) {
      const double next_x = 1.0 - p.a * x * x + y;
      y = p.b * x;
      x = next_x;
    }
    if (!(std::abs(x) <= kHenonEscapeRadius && std::abs(y) <= kHenonEscapeRadius)) {
      throw DivergenceError("henon orbit diverged at sample " + std::to_string(t), t);
    }
    data[t] = x;
    data[p.n + t] = y;
  }
  return {2, p.n, std::move(data), {"x", "y"}};
}

LorenzState lorenz_derivative(const LorenzState& s, double sigma, double rho, double beta) {
  const auto [x, y, z] = s;
  return {sigma * (y - x), x * (rho - z) - y, x * y - beta * z};
}

LorenzState lorenz_rk4_step(const LorenzState& s, double dt, double sigma, double rho,
                            double beta) {
  auto offset = [](const LorenzState& base, const LorenzState& slope, double h) {
    return LorenzState{base[0] + h * slope[0], base[1] + h * slope[1], base[2] + h * slope[2]};
  };
  const auto k1 = lorenz_derivative(s, sigma, rho, beta);
  const auto k2 = lorenz_derivative(offset(s, k1, dt / 2), sigma, rho, beta);
  const auto k3 = lorenz_derivative(offset(s, k2, dt / 2), sigma, rho, beta);
  const auto k4 = lorenz_derivative(offset(s, k3, dt), sigma, rho, beta);
  LorenzState next;
  for (std::size_t c = 0; c < 3; ++c) {
    next[c] = s[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
  }
  return next;
}

MultivariateSignal lorenz(const LorenzParams& p) {
  if (!(p.dt > 0.0) || !std::isfinite(p.dt)) throw InvalidArgument("lorenz requires dt > 0");
  if (p.steps <= p.transient) throw InvalidArgument("lorenz requires steps > transient");
  for (double v : {p.sigma, p.rho, p.beta, p.init[0], p.init[1], p.init[2]}) {
    if (!std::isfinite(v)) throw InvalidArgument("lorenz parameters must be finite");
  }

  const std::size_t kept = p.steps - p.transient;
  std::vector<double> data(3 * kept);
  LorenzState state = p.init;
  for (std::size_t k = 0; k < p.steps; ++k) {
    if (k > 0) state = lorenz_rk4_step(state, p.dt, p.sigma, p.rho, p.beta);
    if (!std::isfinite(state[0]) || !std::isfinite(state[1]) || !std::isfinite(state[2])) {
      throw DivergenceError("lorenz state became non-finite at step " + std::to_string(k), k);
    }
    if (k >= p.transient) {
      const std::size_t t = k - p.transient;
      for (std::size_t c = 0; c < 3; ++c) data[c * kept + t] = state[c];
    }
  }
  return {3, kept, std::move(data), {"x", "y", "z"}};
}

}  // namespace permgraph
