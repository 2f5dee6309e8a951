#include "rotospin/response.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rotospin/errors.hpp"

namespace rotospin {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// |E+-/E|^2 / |d+-|^2 for both helicities. A helicity with no drive gives a
// zero weight even when its denominator vanishes.
struct HelicityWeights {
  double plus;
  double minus;
};

double weight(const Complex& field, const Complex& denom, double field_sq, const char* which) {
  const double drive = std::norm(field);
  if (drive == 0.0) return 0.0;
  const double dd = std::norm(denom);
  if (dd == 0.0) {
    throw SingularResonance(std::string("lossless resonance: d") + which +
                            " = 0 with non-zero drive");
  }
  return drive / field_sq / dd;
}

void require_field(const DriveField& drive) {
  if (!(drive.field_squared() > 0.0)) {
    throw InvalidArgument("drive field must have |E|^2 > 0");
  }
}

HelicityWeights helicity_weights(const ResponseDenominators& d, const CircularComponents& e,
                                 double field_sq) {
  return {weight(e.plus, d.plus, field_sq, "+"), weight(e.minus, d.minus, field_sq, "-")};
}

Complex ratio(const Complex& field, const Complex& denom, const char* which) {
  if (field == Complex{}) return {};
  if (denom == Complex{}) {
    throw SingularResonance(std::string("lossless resonance: d") + which +
                            " = 0 with non-zero drive");
  }
  return field / denom;
}

}  // namespace

OscillatorModel OscillatorModel::physical(double coupling, double natural_frequency,
                                          double damping, double light_speed) {
  OscillatorModel m;
  m.coupling = coupling;
  m.natural_frequency = natural_frequency;
  m.damping = damping;
  m.light_speed = light_speed;
  m.radiative_time = linked_radiative_time(coupling, light_speed);
  m.mode = UnitMode::physical;
  m.validate();
  return m;
}

OscillatorModel OscillatorModel::normalized(double damping, double radiative_time) {
  OscillatorModel m;
  m.coupling = 1.0;
  m.natural_frequency = 1.0;
  m.damping = damping;
  m.radiative_time = radiative_time;
  m.light_speed = 1.0;
  m.mode = UnitMode::normalized;
  m.validate();
  return m;
}

double OscillatorModel::linked_radiative_time(double coupling, double light_speed) {
  return 2.0 * coupling / (3.0 * light_speed * light_speed * light_speed);
}

void OscillatorModel::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("oscillator model: " + what); };
  if (!std::isfinite(coupling) || !(coupling > 0.0)) fail("coupling Q^2/m must be > 0");
  if (!std::isfinite(natural_frequency) || !(natural_frequency > 0.0)) fail("w0 must be > 0");
  if (!std::isfinite(damping) || damping < 0.0) fail("damping must be >= 0");
  if (!std::isfinite(radiative_time) || radiative_time < 0.0) fail("tau must be >= 0");
  if (!std::isfinite(light_speed) || !(light_speed > 0.0)) fail("light speed must be > 0");
  if (mode == UnitMode::physical) {
    const double linked = linked_radiative_time(coupling, light_speed);
    if (std::abs(radiative_time - linked) > 1e-12 * linked) {
      std::ostringstream msg;
      msg << "physical mode requires tau = 2 coupling / 3 c^3 = " << linked << ", got "
          << radiative_time;
      fail(msg.str());
    }
  }
}

DriveField DriveField::lcp(double frequency, double amplitude) {
  const double a = amplitude / std::sqrt(2.0);
  return {frequency, Complex{a, 0.0}, Complex{0.0, a}};
}

DriveField DriveField::rcp(double frequency, double amplitude) {
  const double a = amplitude / std::sqrt(2.0);
  return {frequency, Complex{a, 0.0}, Complex{0.0, -a}};
}

DriveField DriveField::linear_x(double frequency, double amplitude) {
  return {frequency, Complex{amplitude, 0.0}, Complex{}};
}

double DriveField::intensity(double light_speed) const {
  return light_speed / (2.0 * kPi) * field_squared();
}

double field_amplitude_for_intensity(double intensity, double light_speed) {
  return std::sqrt(2.0 * kPi * intensity / light_speed);
}

CircularComponents circular_components(const DriveField& drive) {
  return {drive.ex + kI * drive.ey, drive.ex - kI * drive.ey};
}

ShiftedFrequencies shifted_frequencies(double frequency, double rotation) {
  return {frequency + rotation, frequency - rotation, frequency + 2.0 * rotation,
          frequency - 2.0 * rotation};
}

ResponseDenominators denominators(const OscillatorModel& model, double frequency,
                                  double rotation) {
  const auto s = shifted_frequencies(frequency, rotation);
  const double w0sq = model.natural_frequency * model.natural_frequency;
  const double rot_sq = rotation * rotation;
  auto one = [&](double shifted) {
    const double re = w0sq - rot_sq - shifted * shifted;
    const double im = -model.damping * shifted -
                      model.radiative_time * shifted * (shifted * shifted + 3.0 * rot_sq);
    return Complex{re, im};
  };
  return {one(s.plus), one(s.minus)};
}

double torque(const OscillatorModel& model, const DriveField& drive, double rotation) {
  const auto s = shifted_frequencies(drive.frequency, rotation);
  const auto d = denominators(model, drive.frequency, rotation);
  const auto e = circular_components(drive);
  const double g = model.damping;
  const double tau = model.radiative_time;
  // Weights against |E|^2 = 1 give |E+-|^2 / |d+-|^2 directly.
  const auto w = helicity_weights(d, e, 1.0);
  const double plus = (g * s.plus + tau * s.plus_twice * s.plus_twice * s.plus_twice) * w.plus;
  const double minus =
      (g * s.minus + tau * s.minus_twice * s.minus_twice * s.minus_twice) * w.minus;
  return 0.5 * model.coupling * (minus - plus);
}

CrossSectionSet cross_sections(const OscillatorModel& model, const DriveField& drive,
                               double rotation) {
  require_field(drive);
  const double w = drive.frequency;
  const auto s = shifted_frequencies(w, rotation);
  const auto d = denominators(model, w, rotation);
  const auto e = circular_components(drive);
  const auto hw = helicity_weights(d, e, drive.field_squared());

  const double g = model.damping;
  const double tau = model.radiative_time;
  const double rot_sq = rotation * rotation;
  const double k = kPi * model.coupling / model.light_speed;
  // Q^4 / 3 m^2 c^4 written through tau so the balance closes in any mode.
  const double k_scat = k * 0.5 * tau;
  auto pow4 = [](double x) { return (x * x) * (x * x); };
  auto cube = [](double x) { return x * x * x; };

  CrossSectionSet out;
  out.absorption = k * g * (s.plus * s.plus * hw.plus + s.minus * s.minus * hw.minus);
  out.elastic = k_scat * pow4(w) * (hw.plus + hw.minus);
  out.inelastic_plus = k_scat * pow4(s.plus_twice) * hw.plus;
  out.inelastic_minus = k_scat * pow4(s.minus_twice) * hw.minus;
  out.mechanical = k * rotation *
                   (-(g * s.plus + tau * cube(s.plus_twice)) * hw.plus +
                    (g * s.minus + tau * cube(s.minus_twice)) * hw.minus);
  out.extinction = k * w *
                   (s.plus * (g + tau * (s.plus * s.plus + 3.0 * rot_sq)) * hw.plus +
                    s.minus * (g + tau * (s.minus * s.minus + 3.0 * rot_sq)) * hw.minus);
  return out;
}

double CrossSectionSet::partial_scale() const {
  return std::abs(elastic) + std::abs(inelastic_plus) + std::abs(inelastic_minus) +
         std::abs(mechanical) + std::abs(absorption);
}

double absorption_cross_section(const OscillatorModel& model, const DriveField& drive,
                                double rotation) {
  return cross_sections(model, drive, rotation).absorption;
}

double elastic_cross_section(const OscillatorModel& model, const DriveField& drive,
                             double rotation) {
  return cross_sections(model, drive, rotation).elastic;
}

InelasticPair inelastic_cross_sections(const OscillatorModel& model, const DriveField& drive,
                                       double rotation) {
  const auto set = cross_sections(model, drive, rotation);
  return {set.inelastic_plus, set.inelastic_minus};
}

double mechanical_cross_section(const OscillatorModel& model, const DriveField& drive,
                                double rotation) {
  return cross_sections(model, drive, rotation).mechanical;
}

double extinction_cross_section(const OscillatorModel& model, const DriveField& drive,
                                double rotation) {
  return cross_sections(model, drive, rotation).extinction;
}

double energy_balance_residual(const CrossSectionSet& set) {
  return set.extinction - set.partial_sum();
}

double energy_balance_residual(const OscillatorModel& model, const DriveField& drive,
                               double rotation) {
  return energy_balance_residual(cross_sections(model, drive, rotation));
}

double steady_state_dipole(const OscillatorModel& model, const DriveField& drive, double rotation,
                           double time) {
  const auto s = shifted_frequencies(drive.frequency, rotation);
  const auto d = denominators(model, drive.frequency, rotation);
  const auto e = circular_components(drive);
  const Complex a_plus = ratio(e.plus, d.plus, "+");
  const Complex a_minus = ratio(e.minus, d.minus, "-");
  const Complex half = a_plus * std::exp(-kI * (s.plus * time)) +
                       a_minus * std::exp(-kI * (s.minus * time));
  // (Q^2/2m)(z + conj z) = (Q^2/m) Re z
  return model.coupling * half.real();
}

double steady_state_displacement(const OscillatorModel& model, const DriveField& drive,
                                 double rotation, double time, double charge) {
  if (charge == 0.0) throw InvalidArgument("charge must be non-zero");
  return steady_state_dipole(model, drive, rotation, time) / charge;
}

DipoleSpectrum induced_dipole_spectrum(const OscillatorModel& model, const DriveField& drive,
                                       double rotation) {
  const auto s = shifted_frequencies(drive.frequency, rotation);
  const auto d = denominators(model, drive.frequency, rotation);
  const auto e = circular_components(drive);
  const Complex a_plus = ratio(e.plus, d.plus, "+");
  const Complex a_minus = ratio(e.minus, d.minus, "-");
  const double k = 0.25 * model.coupling;

  DipoleSpectrum out;
  out.elastic = {drive.frequency, k * (a_plus + a_minus), -kI * k * (a_plus - a_minus)};
  out.inelastic_plus = {s.plus_twice, k * a_plus, kI * k * a_plus};
  out.inelastic_minus = {s.minus_twice, k * a_minus, -kI * k * a_minus};
  return out;
}

Complex static_polarizability(const OscillatorModel& model, double frequency) {
  const double w = frequency;
  const double w0 = model.natural_frequency;
  const Complex d{w0 * w0 - w * w, -model.damping * w - model.radiative_time * w * w * w};
  if (d == Complex{}) {
    throw SingularResonance("lossless resonance: static polarizability diverges at w = w0");
  }
  return model.coupling / d;
}

std::vector<LocusPoint> resonance_locus(double natural_frequency, ResonanceBranch branch,
                                        int n_points) {
  if (n_points < 2) throw InvalidArgument("resonance_locus needs n_points >= 2");
  if (!(natural_frequency > 0.0)) throw InvalidArgument("resonance_locus needs w0 > 0");
  // Omega = w0 sin(phi), w -+ Omega = w0 cos(phi) on the chosen branch.
  const double sign = branch == ResonanceBranch::lower ? 1.0 : -1.0;
  std::vector<LocusPoint> points;
  points.reserve(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double phi = 2.0 * kPi * k / n_points;
    const double rot = natural_frequency * std::sin(phi);
    const double shifted = natural_frequency * std::cos(phi);
    points.push_back({shifted + sign * rot, rot});
  }
  return points;
}

}  // namespace rotospin
