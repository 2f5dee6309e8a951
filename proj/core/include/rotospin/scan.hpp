#pragma once

// (w, Omega) maps and fixed-Omega spectra of the six partial cross sections.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rotospin/response.hpp"

namespace rotospin {

enum class PolarizationKind { lcp, rcp, linear, explicit_field };

struct Polarization {
  PolarizationKind kind = PolarizationKind::lcp;
  Complex ex{1.0, 0.0};  ///< used only for explicit_field
  Complex ey{};

  static Polarization lcp() { return {PolarizationKind::lcp}; }
  static Polarization rcp() { return {PolarizationKind::rcp}; }
  static Polarization linear() { return {PolarizationKind::linear}; }
  static Polarization explicit_field(Complex ex, Complex ey) {
    return {PolarizationKind::explicit_field, ex, ey};
  }

  /// Drive at `frequency` with |E| = amplitude. An explicit field is rescaled
  /// to that amplitude, keeping its shape.
  DriveField drive(double frequency, double amplitude = 1.0) const;
};

std::string to_string(const Polarization& pol);
/// Accepts lcp, rcp, linear. Throws InvalidArgument otherwise.
Polarization parse_polarization(const std::string& name);

/// How the exported columns are scaled.
enum class ScanUnits {
  model,  ///< raw model units (cm^2, or normalized model units)
  fig2,   ///< mech/abs/ext in Q^2 gamma / m c w0^2, scattering in Q^2 tau / m c
};

std::string to_string(ScanUnits u);
ScanUnits parse_scan_units(const std::string& name);

struct UnitScales {
  double mech_abs;    ///< Q^2 gamma / (m c w0^2)
  double scattering;  ///< Q^2 tau / (m c)
};

/// Throws InvalidArgument when gamma or tau is zero (the unit is degenerate).
UnitScales fig2_unit_scales(const OscillatorModel& model);

/// Divides each quantity by its fig2-unit scale.
CrossSectionSet to_fig2_units(const CrossSectionSet& set, const UnitScales& scales);

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  /// count points from min to max inclusive; count == 1 yields {min}.
  std::vector<double> values() const;
  void validate(const char* name) const;
};

struct ScanRequest {
  OscillatorModel model;
  Polarization polarization;
  double field_amplitude = 1.0;
  AxisRange frequency;  ///< w axis
  AxisRange rotation;   ///< Omega axis
  ScanUnits units = ScanUnits::model;
};

/// Cells are stored row-major in Omega then w: index = i_rot * n_w + i_w.
struct ScanGrid {
  std::vector<double> frequencies;
  std::vector<double> rotations;
  std::vector<CrossSectionSet> cells;
  std::vector<std::uint8_t> singular;
  OscillatorModel model;
  Polarization polarization;
  ScanUnits units = ScanUnits::model;

  std::size_t index(std::size_t i_rot, std::size_t i_w) const {
    return i_rot * frequencies.size() + i_w;
  }
  const CrossSectionSet& at(std::size_t i_rot, std::size_t i_w) const {
    return cells[index(i_rot, i_w)];
  }
  std::size_t singular_count() const;
};

/// Evaluates every lattice point independently. `threads` <= 1 runs serially;
/// the result is bit-identical for any thread count.
ScanGrid grid_scan(const ScanRequest& req, int threads = 1);

struct SpectrumPoint {
  double frequency;
  CrossSectionSet sections;
  bool singular;
};

std::vector<SpectrumPoint> spectrum_sweep(const OscillatorModel& model,
                                          const Polarization& polarization, double rotation,
                                          const AxisRange& frequency,
                                          double field_amplitude = 1.0);

/// The same sweep as a one-row grid, ready for CSV export.
ScanGrid spectrum_grid(const OscillatorModel& model, const Polarization& polarization,
                       double rotation, const AxisRange& frequency,
                       double field_amplitude = 1.0, ScanUnits units = ScanUnits::model);

/// Header of the scan CSV.
inline constexpr const char* kScanCsvHeader =
    "omega,Omega,sigma_mech,sigma_abs,sigma_elastic,sigma_in_plus,sigma_in_minus,sigma_ext,"
    "singular";

/// One row per cell, row-major in Omega then w, 17 significant digits.
/// Singular cells carry nan and singular=1. Values are written in the
/// grid's units.
void write_scan_csv(std::ostream& out, const ScanGrid& grid);

/// Sidecar key=value description: model parameters, polarization, units and
/// the scale factors that convert each column back to model units.
std::map<std::string, std::string> scan_metadata(const ScanGrid& grid);
void write_metadata(std::ostream& out, const std::map<std::string, std::string>& meta);

/// Parsed scan CSV row.
struct ScanRow {
  double frequency;
  double rotation;
  CrossSectionSet sections;
  bool singular;
};

/// Reads a scan CSV written by write_scan_csv. Throws ConfigError (with the
/// line number) on malformed input.
std::vector<ScanRow> read_scan_csv(std::istream& in);

}  // namespace rotospin
