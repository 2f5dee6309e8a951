#pragma once

// Rotational spin-up under the optical torque, radiative heating balance,
// and the centrifugal burst estimate.
//
// Spin-up follows dOmega/dt = M(w, Omega) / I_mom with the torque evaluated
// quasi-statically at the instantaneous rotation rate.

#include <optional>
#include <string_view>
#include <vector>

#include "rotospin/response.hpp"

namespace rotospin {

struct RigidBodyParams {
  double moment_of_inertia = 0.0;    ///< g cm^2
  double mass_density = 0.0;         ///< g/cm^3
  double radius = 0.0;               ///< cm, sets the surface area for the burst estimate
  double melting_temperature = 0.0;  ///< K; <= 0 disables the melt check
  double surface_tension = 0.0;      ///< erg/cm^2; <= 0 disables the burst check

  /// Solid sphere: I = (2/5) m R^2 = (8/15) pi rho R^5.
  static RigidBodyParams solid_sphere(double mass_density, double radius,
                                      double melting_temperature = 0.0,
                                      double surface_tension = 0.0);
  /// Thin rod spinning about its center: I = (1/12) m L^2. `radius` is the
  /// rod cross-section radius.
  static RigidBodyParams thin_rod(double mass_density, double length, double radius,
                                  double melting_temperature = 0.0);

  void validate() const;
};

/// Radiative cooling P_rad = C (T^6 - T0^6).
struct ThermalParams {
  double ambient_temperature = 0.0;    ///< T0, K
  double radiative_coefficient = 0.0;  ///< C, erg / (s K^6)

  void validate() const;
};

enum class Termination { target_reached, melt, burst, max_time };

std::string_view to_string(Termination t);

struct SpinUpControls {
  double max_time = 1e300;  ///< s
  double relative_tolerance = 1e-8;
  double absolute_tolerance = 0.0;  ///< rad/s; 0 selects 1e-12 * |Omega_target|
  std::optional<ThermalParams> thermal;  ///< enables the melt check
  bool burst_check = true;               ///< stop at the centrifugal burst rate
};

struct SpinUpTrajectory {
  std::vector<double> times;      ///< s, strictly increasing
  std::vector<double> rotations;  ///< rad/s
  Termination termination = Termination::max_time;
  std::size_t rejected_steps = 0;

  double final_time() const { return times.back(); }
  double final_rotation() const { return rotations.back(); }
};

/// Integrates dOmega/dt = M / I_mom from `initial_rotation` until the target
/// is reached or another stop condition fires. Throws UnreachableTarget when
/// the torque at the start does not accelerate toward the target.
SpinUpTrajectory spin_up_trajectory(const OscillatorModel& model, const DriveField& drive,
                                    const RigidBodyParams& body, double initial_rotation,
                                    double target_rotation, const SpinUpControls& controls = {});

/// Time to spin up from rest to `target_rotation`. Throws Error when the run
/// stops for any reason other than reaching the target.
double time_to_target(const OscillatorModel& model, const DriveField& drive,
                      const RigidBodyParams& body, double target_rotation,
                      const SpinUpControls& controls = {});

/// T_eq = (T0^6 + P_abs / C)^(1/6).
double equilibrium_temperature(const ThermalParams& thermal, double absorbed_power);

/// Rate at which (1/2) I_mom Omega^2 equals the surface energy 4 pi R^2 sigma.
/// An order-of-magnitude criterion.
double centrifugal_burst_frequency(const RigidBodyParams& body);

}  // namespace rotospin
