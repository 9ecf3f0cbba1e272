#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "ranslice/rl/qnetwork.hpp"

namespace ranslice::testgen {

struct GradientCheck {
  double worst_relative = 0.0;
  std::size_t checked = 0;
};

inline double half_squared_error(const rl::QNetwork& net, std::span<const double> x, int action, double target)
{
  const double d = target - net.forward(x)[action];
  return 0.5 * d * d;
}

/// Central differences of 0.5*(target - Q(x, a))^2 against the analytic gradient,
/// over every parameter. Relative error |g - fd| / max(|g|, |fd|); pairs where both
/// are below `floor` are compared absolutely instead.
inline GradientCheck check_gradient(rl::QNetwork net, std::span<const double> x, int action, double target,
                                    double h = 1e-6, double floor = 1e-7)
{
  std::vector<double> grad(net.parameter_count(), 0.0);
  (void)net.accumulate_gradient(x, action, target, grad);
  GradientCheck out;
  auto& params = net.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = half_squared_error(net, x, action, target);
    params[i] = saved - h;
    const double down = half_squared_error(net, x, action, target);
    params[i] = saved;
    const double fd = (up - down) / (2.0 * h);
    const double scale = std::max(std::abs(fd), std::abs(grad[i]));
    const double err = scale < floor ? std::abs(fd - grad[i]) : std::abs(fd - grad[i]) / scale;
    out.worst_relative = std::max(out.worst_relative, err);
    ++out.checked;
  }
  return out;
}

}  // namespace ranslice::testgen
