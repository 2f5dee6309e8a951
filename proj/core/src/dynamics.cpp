#include "rotospin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dormand_prince.hpp"
#include "rotospin/errors.hpp"

namespace rotospin {
namespace {

constexpr std::size_t kMaxSteps = 10'000'000;
constexpr int kMaxEventIterations = 100;

}  // namespace

RigidBodyParams RigidBodyParams::solid_sphere(double mass_density, double radius,
                                              double melting_temperature,
                                              double surface_tension) {
  RigidBodyParams b;
  b.mass_density = mass_density;
  b.radius = radius;
  b.moment_of_inertia = 8.0 / 15.0 * std::numbers::pi * mass_density * std::pow(radius, 5);
  b.melting_temperature = melting_temperature;
  b.surface_tension = surface_tension;
  b.validate();
  return b;
}

RigidBodyParams RigidBodyParams::thin_rod(double mass_density, double length, double radius,
                                          double melting_temperature) {
  RigidBodyParams b;
  b.mass_density = mass_density;
  b.radius = radius;
  const double mass = mass_density * std::numbers::pi * radius * radius * length;
  b.moment_of_inertia = mass * length * length / 12.0;
  b.melting_temperature = melting_temperature;
  b.validate();
  return b;
}

void RigidBodyParams::validate() const {
  if (!std::isfinite(moment_of_inertia) || !(moment_of_inertia > 0.0)) {
    throw InvalidArgument("rigid body: moment of inertia must be > 0");
  }
  if (surface_tension < 0.0) throw InvalidArgument("rigid body: surface tension must be >= 0");
  if (radius < 0.0) throw InvalidArgument("rigid body: radius must be >= 0");
}

void ThermalParams::validate() const {
  if (!(ambient_temperature >= 0.0)) throw InvalidArgument("thermal: T0 must be >= 0");
  if (!(radiative_coefficient > 0.0)) throw InvalidArgument("thermal: C must be > 0");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::target_reached: return "target";
    case Termination::melt: return "melt";
    case Termination::burst: return "burst";
    case Termination::max_time: return "max-time";
  }
  return "unknown";
}

double equilibrium_temperature(const ThermalParams& thermal, double absorbed_power) {
  thermal.validate();
  if (!(absorbed_power >= 0.0)) throw InvalidArgument("absorbed power must be >= 0");
  if (absorbed_power == 0.0) return thermal.ambient_temperature;
  const double t0_6 = std::pow(thermal.ambient_temperature, 6);
  return std::pow(t0_6 + absorbed_power / thermal.radiative_coefficient, 1.0 / 6.0);
}

double centrifugal_burst_frequency(const RigidBodyParams& body) {
  body.validate();
  const double surface_energy =
      4.0 * std::numbers::pi * body.radius * body.radius * body.surface_tension;
  return std::sqrt(2.0 * surface_energy / body.moment_of_inertia);
}

SpinUpTrajectory spin_up_trajectory(const OscillatorModel& model, const DriveField& drive,
                                    const RigidBodyParams& body, double initial_rotation,
                                    double target_rotation, const SpinUpControls& controls) {
  model.validate();
  body.validate();
  if (!(initial_rotation >= 0.0) || !(target_rotation >= initial_rotation)) {
    throw InvalidArgument("spin-up needs 0 <= Omega_init <= Omega_target");
  }
  if (!(controls.relative_tolerance > 0.0) || !(controls.max_time > 0.0)) {
    throw InvalidArgument("spin-up needs positive tolerance and max_time");
  }

  SpinUpTrajectory traj;
  traj.times.push_back(0.0);
  traj.rotations.push_back(initial_rotation);

  const double inertia = body.moment_of_inertia;
  auto rate = [&](double rot) { return torque(model, drive, rot) / inertia; };

  const bool melt_enabled = controls.thermal.has_value() && body.melting_temperature > 0.0;
  const double intensity = drive.intensity(model.light_speed);
  auto melted = [&](double rot) {
    if (!melt_enabled) return false;
    const double power = absorption_cross_section(model, drive, rot) * intensity;
    return equilibrium_temperature(*controls.thermal, power) > body.melting_temperature;
  };

  double stop = target_rotation;
  Termination stop_reason = Termination::target_reached;
  if (controls.burst_check && body.surface_tension > 0.0) {
    const double burst = centrifugal_burst_frequency(body);
    if (burst < stop) {
      stop = burst;
      stop_reason = Termination::burst;
    }
  }

  if (melted(initial_rotation)) {
    traj.termination = Termination::melt;
    return traj;
  }
  if (initial_rotation >= stop) {
    traj.termination = stop_reason;
    return traj;
  }
  const double rate0 = rate(initial_rotation);
  if (!(rate0 > 0.0)) {
    throw UnreachableTarget("torque at the initial rotation does not accelerate toward the target");
  }

  const double atol =
      controls.absolute_tolerance > 0.0 ? controls.absolute_tolerance : 1e-12 * stop;
  const double rtol = controls.relative_tolerance;

  double t = 0.0;
  double y = initial_rotation;
  double h = std::min(1e-3 * (stop - initial_rotation) / rate0, controls.max_time);

  for (std::size_t n = 0; n < kMaxSteps; ++n) {
    h = std::min(h, controls.max_time - t);
    const auto step = detail::dormand_prince_step(rate, y, h);
    const double scale = atol + rtol * std::max(std::abs(y), std::abs(step.y));
    const double err = std::abs(step.error) / scale;
    if (!std::isfinite(step.y) || err > 1.0) {
      ++traj.rejected_steps;
      const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      h *= fac;
      if (!(h > 0.0) || t + h == t) throw Error("spin-up step size underflow");
      continue;
    }

    if (step.y >= stop) {
      // Newton on the step length, kept inside the bracket [lo, hi].
      double lo = 0.0, hi = h;
      double hs = h * (stop - y) / (step.y - y);
      for (int it = 0; it < kMaxEventIterations; ++it) {
        const double ys = detail::dormand_prince_step(rate, y, hs).y;
        const double miss = ys - stop;
        if (std::abs(miss) <= 4.0 * std::numeric_limits<double>::epsilon() * stop) break;
        (miss < 0.0 ? lo : hi) = hs;
        double next = hs - miss / rate(ys);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == hs) break;
        hs = next;
      }
      traj.times.push_back(t + hs);
      traj.rotations.push_back(stop);
      traj.termination = stop_reason;
      return traj;
    }

    t += h;
    y = step.y;
    traj.times.push_back(t);
    traj.rotations.push_back(y);

    if (melted(y)) {
      traj.termination = Termination::melt;
      return traj;
    }
    if (t >= controls.max_time) {
      traj.termination = Termination::max_time;
      return traj;
    }
    const double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
  }
  throw Error("spin-up exceeded the step limit");
}

double time_to_target(const OscillatorModel& model, const DriveField& drive,
                      const RigidBodyParams& body, double target_rotation,
                      const SpinUpControls& controls) {
  if (target_rotation == 0.0) return 0.0;
  const auto traj = spin_up_trajectory(model, drive, body, 0.0, target_rotation, controls);
  if (traj.termination != Termination::target_reached) {
    throw Error("spin-up stopped before the target: " + std::string(to_string(traj.termination)));
  }
  return traj.final_time();
}

}  // namespace rotospin
