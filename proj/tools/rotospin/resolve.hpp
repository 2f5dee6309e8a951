#pragma once

// Turns merged key-value settings (preset < config file < flags) into the
// library's domain objects.

#include <optional>
#include <string>

#include "rotospin/config.hpp"
#include "rotospin/dynamics.hpp"
#include "rotospin/gain.hpp"
#include "rotospin/response.hpp"
#include "rotospin/scan.hpp"

namespace rotospin::cli {

/// Rejects unknown sections, unknown keys, and repeated non-[member]
/// sections, pointing at the offending line.
void check_schema(const KeyValueConfig& cfg);

/// Preset parameter blocks: fig2, fig3a, fig3b, figSI2. Throws ConfigError for
/// an unknown name.
KeyValueConfig preset_config(const std::string& name);

/// Copies every entry of `overlay` into `base`; [member] blocks are appended.
void merge_into(KeyValueConfig& base, const KeyValueConfig& overlay);

/// [model] block: mode (normalized|physical), source (direct|drude-sphere|
/// drude-ellipsoid) and the parameters of exactly that source.
OscillatorModel resolve_model(const KeyValueConfig& cfg);

bool sphere_doubling(const KeyValueConfig& cfg);

/// [drive] polarization and field amplitude (from `intensity` or `field`).
Polarization resolve_polarization(const KeyValueConfig& cfg);
double resolve_field_amplitude(const KeyValueConfig& cfg, const OscillatorModel& model);

/// Full drive; requires drive.omega.
DriveField resolve_drive(const KeyValueConfig& cfg, const OscillatorModel& model);

/// [rotation] Omega, default 0.
double resolve_rotation(const KeyValueConfig& cfg);

RigidBodyParams resolve_body(const KeyValueConfig& cfg, const OscillatorModel& model);
std::optional<ThermalParams> resolve_thermal(const KeyValueConfig& cfg, bool required);

ScanUnits resolve_units(const ConfigSection* sec);
AxisRange resolve_axis(const ConfigSection* sec, const std::string& prefix, const AxisRange& def);

std::optional<std::string> output_path(const KeyValueConfig& cfg);

/// Required numeric key; ConfigError names the section and key when missing.
double require_double(const KeyValueConfig& cfg, const std::string& section,
                      const std::string& key);

}  // namespace rotospin::cli
