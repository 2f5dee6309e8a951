#pragma once

// Closed-form response of a rotating linear oscillator (a charged spring
// constrained to a rod spinning about z) to monochromatic light.
//
// Conventions used throughout:
//   * Gaussian CGS units. The incident field is E(t) = (Ex x + Ey y) e^{-i w t} + c.c.,
//     so the intensity is I = (c / 2 pi) |E|^2 with |E|^2 = |Ex|^2 + |Ey|^2.
//   * Circular components E+ = Ex + i Ey and E- = Ex - i Ey. Left circular
//     polarization (LCP) is E+ = 0; right circular (RCP) is E- = 0.
//   * The rod rotates at signed angular rate `rotation` (Omega) about +z.
//     Light frequency and rotation may both be negative; every formula is
//     evaluated as written.

#include <complex>
#include <vector>

#include "rotospin/units.hpp"

namespace rotospin {

using Complex = std::complex<double>;

enum class UnitMode { physical, normalized };

/// Effective spring parameters of the particle.
///
/// In physical mode the radiative time is tied to the coupling by
/// tau = 2 (Q^2/m) / (3 c^3). In normalized mode w0 = c = Q^2/m = 1 and tau
/// is a free parameter. Scattering prefactors Q^4 / (3 m^2 c^4) are always
/// evaluated as (Q^2 / m c)(tau / 2), so power balance is exact in both modes.
struct OscillatorModel {
  double coupling = 1.0;           ///< Q^2/m, cm^3/s^2
  double natural_frequency = 1.0;  ///< w0, rad/s
  double damping = 0.0;            ///< intrinsic friction rate gamma, rad/s
  double radiative_time = 0.0;     ///< Abraham-Lorentz time tau, s
  double light_speed = 1.0;        ///< c, cm/s
  UnitMode mode = UnitMode::normalized;

  static OscillatorModel physical(double coupling, double natural_frequency, double damping,
                                  double light_speed = units::kSpeedOfLight);
  static OscillatorModel normalized(double damping, double radiative_time);

  /// Throws InvalidArgument when a field is out of range or, in physical
  /// mode, when tau does not match 2 coupling / 3 c^3.
  void validate() const;

  /// tau = 2 coupling / (3 c^3).
  static double linked_radiative_time(double coupling, double light_speed);
};

struct CircularComponents {
  Complex plus;   ///< E+ = Ex + i Ey
  Complex minus;  ///< E- = Ex - i Ey
};

/// Monochromatic illumination with complex amplitudes along x and y.
struct DriveField {
  double frequency = 0.0;  ///< w, rad/s (signed)
  Complex ex{};
  Complex ey{};

  /// Left circular polarization (E+ = 0) with |E| = amplitude.
  static DriveField lcp(double frequency, double amplitude = 1.0);
  /// Right circular polarization (E- = 0) with |E| = amplitude.
  static DriveField rcp(double frequency, double amplitude = 1.0);
  /// Linear polarization along x with |E| = amplitude.
  static DriveField linear_x(double frequency, double amplitude = 1.0);

  double field_squared() const { return std::norm(ex) + std::norm(ey); }
  double intensity(double light_speed) const;
};

CircularComponents circular_components(const DriveField& drive);

/// |E| amplitude that produces intensity I: |E|^2 = 2 pi I / c.
double field_amplitude_for_intensity(double intensity, double light_speed);

struct ShiftedFrequencies {
  double plus;         ///< w + Omega
  double minus;        ///< w - Omega
  double plus_twice;   ///< w + 2 Omega
  double minus_twice;  ///< w - 2 Omega
};

ShiftedFrequencies shifted_frequencies(double frequency, double rotation);

struct ResponseDenominators {
  Complex plus;
  Complex minus;
};

/// d+- = w0^2 - Omega^2 - w+-(w+- + i gamma) - i tau w+-(w+-^2 + 3 Omega^2).
ResponseDenominators denominators(const OscillatorModel& model, double frequency, double rotation);

/// The six partial areas at one (w, Omega) point. Units follow the model:
/// cm^2 in physical mode, (Q^2/m)/c with w0 = c = 1 in normalized mode.
struct CrossSectionSet {
  double mechanical = 0.0;       ///< M Omega / I (signed)
  double absorption = 0.0;
  double elastic = 0.0;          ///< re-emission at w
  double inelastic_plus = 0.0;   ///< re-emission at w + 2 Omega
  double inelastic_minus = 0.0;  ///< re-emission at w - 2 Omega
  double extinction = 0.0;       ///< from the forward (optical theorem) amplitude

  double partial_sum() const {
    return elastic + inelastic_plus + inelastic_minus + mechanical + absorption;
  }
  /// Sum of magnitudes of the five partial terms; the natural scale for the
  /// balance residual.
  double partial_scale() const;
};

/// Time-averaged torque about z, erg. Throws SingularResonance on a lossless
/// resonance with a non-zero drive on the resonant helicity.
double torque(const OscillatorModel& model, const DriveField& drive, double rotation);

double absorption_cross_section(const OscillatorModel& model, const DriveField& drive,
                                double rotation);
double elastic_cross_section(const OscillatorModel& model, const DriveField& drive,
                             double rotation);

struct InelasticPair {
  double plus;   ///< sigma at w + 2 Omega
  double minus;  ///< sigma at w - 2 Omega
};

InelasticPair inelastic_cross_sections(const OscillatorModel& model, const DriveField& drive,
                                       double rotation);
double mechanical_cross_section(const OscillatorModel& model, const DriveField& drive,
                                double rotation);
double extinction_cross_section(const OscillatorModel& model, const DriveField& drive,
                                double rotation);

/// All six areas in one pass (shares the denominators).
CrossSectionSet cross_sections(const OscillatorModel& model, const DriveField& drive,
                               double rotation);

/// sigma_ext minus the sum of the five partial channels.
double energy_balance_residual(const OscillatorModel& model, const DriveField& drive,
                               double rotation);
double energy_balance_residual(const CrossSectionSet& set);

/// Steady-state induced dipole p(t) = Q rho(t) along the rotating rod axis,
/// statC cm. Only Q^2/m enters, so no separate charge is needed.
double steady_state_dipole(const OscillatorModel& model, const DriveField& drive, double rotation,
                           double time);

/// Steady-state displacement rho(t) in cm for a moving charge `charge`
/// (statC). Equal to steady_state_dipole / charge.
double steady_state_displacement(const OscillatorModel& model, const DriveField& drive,
                                 double rotation, double time, double charge);

/// One spectral component of the lab-frame dipole, written as
/// (x_amp x + y_amp y) e^{-i frequency t} + c.c.
struct SpectralLine {
  double frequency = 0.0;
  Complex x{};
  Complex y{};

  double norm_squared() const { return std::norm(x) + std::norm(y); }
};

struct DipoleSpectrum {
  SpectralLine elastic;          ///< at w
  SpectralLine inelastic_plus;   ///< at w + 2 Omega
  SpectralLine inelastic_minus;  ///< at w - 2 Omega
};

DipoleSpectrum induced_dipole_spectrum(const OscillatorModel& model, const DriveField& drive,
                                       double rotation);

/// Polarizability of the particle at rest, alpha = (Q^2/m) / d with
/// d = w0^2 - w(w + i gamma) - i tau w^3. cm^3.
Complex static_polarizability(const OscillatorModel& model, double frequency);

enum class ResonanceBranch {
  upper,  ///< Omega^2 + (w + Omega)^2 = w0^2, resonant for RCP
  lower,  ///< Omega^2 + (w - Omega)^2 = w0^2, resonant for LCP
};

struct LocusPoint {
  double frequency;
  double rotation;
};

/// Samples the lossless resonance ellipse uniformly in its angular parameter.
std::vector<LocusPoint> resonance_locus(double natural_frequency, ResonanceBranch branch,
                                        int n_points);

}  // namespace rotospin
