#pragma once

// Brute-force time integration of the rotating rod with tau = 0, started from
// rest:  p'' + gamma p' + (w0^2 - W^2) p = coupling E(t) . rho_hat(t).
// Classic fixed-step RK4; averages use the trapezoid rule over a whole common
// period, which is spectrally accurate for periodic integrands.

#include <cmath>
#include <complex>

namespace oracle {

struct TimeDomainResult {
  double torque;          // < p E . phi_hat >
  double absorbed_power;  // (gamma / coupling) < p'^2 >
};

struct TimeDomainSetup {
  double coupling = 1, w0 = 1, gamma = 0.1;
  std::complex<double> ex, ey;
  double w = 0, W = 0;
};

inline TimeDomainResult integrate_from_rest(const TimeDomainSetup& s, double settle_time,
                                            double period, int steps_per_period,
                                            int periods) {
  auto field = [&](double t) {
    const std::complex<double> ph = std::exp(std::complex<double>(0, -s.w * t));
    return std::pair<double, double>{2 * (s.ex * ph).real(), 2 * (s.ey * ph).real()};
  };
  auto radial = [&](double t) {
    const auto [x, y] = field(t);
    return x * std::cos(s.W * t) + y * std::sin(s.W * t);
  };
  auto tangential = [&](double t) {
    const auto [x, y] = field(t);
    return -x * std::sin(s.W * t) + y * std::cos(s.W * t);
  };
  const double k = s.w0 * s.w0 - s.W * s.W;
  auto accel = [&](double t, double p, double v) {
    return s.coupling * radial(t) - s.gamma * v - k * p;
  };

  const double h = period / steps_per_period;
  const long settle_steps = static_cast<long>(std::ceil(settle_time / h));
  double p = 0, v = 0, t = 0;
  auto step = [&] {
    const double k1p = v, k1v = accel(t, p, v);
    const double k2p = v + 0.5 * h * k1v, k2v = accel(t + 0.5 * h, p + 0.5 * h * k1p, k2p);
    const double k3p = v + 0.5 * h * k2v, k3v = accel(t + 0.5 * h, p + 0.5 * h * k2p, k3p);
    const double k4p = v + h * k3v, k4v = accel(t + h, p + h * k3p, k4p);
    p += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += h;
  };
  for (long i = 0; i < settle_steps; ++i) step();

  const long n = static_cast<long>(steps_per_period) * periods;
  double torque = 0, power = 0;
  for (long i = 0; i < n; ++i) {
    // periodic trapezoid: each sample once
    torque += p * tangential(t);
    power += v * v;
    step();
  }
  return {torque / n, s.gamma / s.coupling * power / n};
}

}  // namespace oracle
