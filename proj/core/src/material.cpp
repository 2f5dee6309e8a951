#include "rotospin/material.hpp"

#include <cmath>
#include <numbers>

#include "rotospin/errors.hpp"

namespace rotospin {
namespace {

OscillatorModel linked_model(double coupling, double w0, double damping, double light_speed) {
  OscillatorModel m;
  m.coupling = coupling;
  m.natural_frequency = w0;
  m.damping = damping;
  m.light_speed = light_speed;
  m.radiative_time = OscillatorModel::linked_radiative_time(coupling, light_speed);
  m.mode = UnitMode::physical;
  m.validate();
  return m;
}

}  // namespace

OscillatorModel from_drude_sphere(const DrudeSphere& sphere, double light_speed) {
  if (!(sphere.plasma_frequency > 0.0) || !(sphere.radius > 0.0) || sphere.damping < 0.0) {
    throw InvalidArgument("Drude sphere needs wp > 0, R > 0, gamma >= 0");
  }
  const double w0 = sphere.plasma_frequency / std::sqrt(3.0);
  const double r = sphere.radius;
  return linked_model(w0 * w0 * r * r * r, w0, sphere.damping, light_speed);
}

OscillatorModel from_drude_ellipsoid(const DrudeEllipsoid& e, double light_speed) {
  if (!(e.plasma_frequency > 0.0) || !(e.volume > 0.0) || e.damping < 0.0) {
    throw InvalidArgument("Drude ellipsoid needs wp > 0, V > 0, gamma >= 0");
  }
  if (!(e.depolarization > 0.0 && e.depolarization < 1.0)) {
    throw InvalidArgument("depolarization factor must lie in (0, 1)");
  }
  const double wp = e.plasma_frequency;
  const double coupling = wp * wp * e.volume / (4.0 * std::numbers::pi);
  return linked_model(coupling, wp * std::sqrt(e.depolarization), e.damping, light_speed);
}

double dipole_torque_low_rotation(const AnisotropicPolarizability& pol, double frequency,
                                  double field_squared, double light_speed) {
  if (!(frequency > 0.0)) throw InvalidArgument("dipole torque needs w > 0");
  const double k3 = frequency * frequency * frequency / (light_speed * light_speed * light_speed);
  const double absorbed = (pol.parallel + pol.perpendicular).imag();
  const double cross = (pol.parallel * std::conj(pol.perpendicular)).real();
  return field_squared * (absorbed - 4.0 / 3.0 * k3 * cross);
}

double optical_theorem_residual(const OscillatorModel& model, double frequency) {
  const Complex alpha = static_polarizability(model, frequency);
  const double w = frequency;
  const double c = model.light_speed;
  const double radiative = 2.0 * w * w * w / (3.0 * c * c * c);
  // Without the tau link the radiative term is tau w^3 / (Q^2/m) instead.
  return (-1.0 / alpha).imag() - radiative - model.damping * w / model.coupling;
}

double approximate_sphere_torque(const OscillatorModel& mapped_sphere, const DriveField& drive,
                                 double rotation) {
  return 2.0 * torque(mapped_sphere, drive, rotation);
}

}  // namespace rotospin
