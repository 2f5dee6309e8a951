#pragma once

// Mapping of real particles onto the oscillator model, and the dipole-level
// torque of circularly polarized light on a slowly rotating anisotropic rod.

#include "rotospin/response.hpp"

namespace rotospin {

/// Sphere with Drude permittivity eps = 1 - wp^2 / w(w + i gamma).
struct DrudeSphere {
  double plasma_frequency = 0.0;  ///< wp, rad/s
  double damping = 0.0;           ///< gamma, rad/s
  double radius = 0.0;            ///< R, cm
};

/// Drude ellipsoid probed along an axis with depolarization factor L.
struct DrudeEllipsoid {
  double plasma_frequency = 0.0;
  double damping = 0.0;
  double volume = 0.0;         ///< V, cm^3
  double depolarization = 0.0; ///< L in (0, 1)
};

struct AnisotropicPolarizability {
  Complex parallel;       ///< along the rod
  Complex perpendicular;  ///< across the rod
};

/// w0 = wp / sqrt(3), Q^2/m = w0^2 R^3, tau linked to Q^2/m through c.
/// The mode is physical; pass c = 1 to work in normalized units.
OscillatorModel from_drude_sphere(const DrudeSphere& sphere,
                                  double light_speed = units::kSpeedOfLight);

/// w0 = wp sqrt(L), Q^2/m = wp^2 V / 4 pi, tau linked to Q^2/m through c.
OscillatorModel from_drude_ellipsoid(const DrudeEllipsoid& ellipsoid,
                                     double light_speed = units::kSpeedOfLight);

/// Maxwell-stress torque of LCP light on a slowly rotating rod,
///   M = |E|^2 [Im(a_par + a_perp) - (4 w^3 / 3 c^3) Re(a_par conj(a_perp))].
double dipole_torque_low_rotation(const AnisotropicPolarizability& pol, double frequency,
                                  double field_squared,
                                  double light_speed = units::kSpeedOfLight);

/// Im(-1/alpha) - 2 w^3 / 3 c^3 - gamma w / (Q^2/m). Vanishes identically
/// when tau is linked to the coupling.
double optical_theorem_residual(const OscillatorModel& model, double frequency);

/// Rough torque on a small lossy sphere: twice the rod torque of the mapped
/// oscillator. An approximation valid when absorption dominates Im(-1/alpha),
/// not an identity.
double approximate_sphere_torque(const OscillatorModel& mapped_sphere, const DriveField& drive,
                                 double rotation);

}  // namespace rotospin
