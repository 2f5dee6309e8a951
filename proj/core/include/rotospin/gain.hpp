#pragma once

// Light amplification in a dilute medium of externally driven rotating
// particles. Single-pass, single-scattering: each member keeps its rotation
// rate, and the beam grows or decays as exp(g z) with g = -n <sigma_ext>.

#include <vector>

#include "rotospin/config.hpp"
#include "rotospin/response.hpp"

namespace rotospin {

struct EnsembleMember {
  OscillatorModel model;
  double rotation = 0.0;  ///< Omega, rad/s
  double weight = 1.0;
};

struct MediumSpec {
  double number_density = 0.0;  ///< n, cm^-3
  double path_length = 0.0;     ///< z, cm
  std::vector<EnsembleMember> members;

  /// n >= 0, z >= 0, non-empty ensemble, weights >= 0 summing to 1 (1e-12).
  void validate() const;
};

struct EnsembleExtinction {
  double mean = 0.0;          ///< weighted mean sigma_ext over usable members
  std::size_t excluded = 0;   ///< members dropped on a lossless resonance
  bool warning() const { return excluded > 0; }
};

/// Weighted mean of sigma_ext in fixed member order. Singular members are
/// dropped and the remaining weights renormalized. Throws SingularResonance if
/// every member is singular.
EnsembleExtinction ensemble_extinction(const MediumSpec& medium, const DriveField& drive);

/// g = -n <sigma_ext>, cm^-1. Positive means amplification.
double gain_coefficient(const MediumSpec& medium, const DriveField& drive);

/// I(z) = I0 exp(g z).
double propagate_intensity(double initial_intensity, double gain, double distance);

/// Mechanical power a member must be fed to hold its rotation, -sigma_mech I.
double sustaining_power(const EnsembleMember& member, const DriveField& drive);

/// Reads a medium from key-value config:
///
///   [medium]
///   density = 1e12
///   length = 10
///   [member]          (one block per member)
///   rotation = 2.0
///   weight = 0.5
///   gamma = 0.1       (optional override of the base model)
///   tau = 1e-4        (optional, normalized mode only)
///
/// Member weights are normalized to sum to 1. Throws ConfigError.
MediumSpec medium_from_config(const KeyValueConfig& config, const OscillatorModel& base_model);

}  // namespace rotospin
