#include "rotospin/scan.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "rotospin/errors.hpp"

namespace rotospin {
namespace {

CrossSectionSet nan_set() {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan, nan, nan, nan, nan};
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

double parse_double(std::string_view field, int line) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("bad number '" + std::string(field) + "'", line);
  }
  return v;
}

}  // namespace

DriveField Polarization::drive(double frequency, double amplitude) const {
  switch (kind) {
    case PolarizationKind::lcp: return DriveField::lcp(frequency, amplitude);
    case PolarizationKind::rcp: return DriveField::rcp(frequency, amplitude);
    case PolarizationKind::linear: return DriveField::linear_x(frequency, amplitude);
    case PolarizationKind::explicit_field: {
      const double norm = std::sqrt(std::norm(ex) + std::norm(ey));
      if (!(norm > 0.0)) throw InvalidArgument("explicit polarization needs a non-zero field");
      const double s = amplitude / norm;
      return {frequency, ex * s, ey * s};
    }
  }
  throw InvalidArgument("unknown polarization");
}

std::string to_string(const Polarization& pol) {
  switch (pol.kind) {
    case PolarizationKind::lcp: return "lcp";
    case PolarizationKind::rcp: return "rcp";
    case PolarizationKind::linear: return "linear";
    case PolarizationKind::explicit_field:
      return fmt::format("explicit({:.17g}{:+.17g}i,{:.17g}{:+.17g}i)", pol.ex.real(),
                         pol.ex.imag(), pol.ey.real(), pol.ey.imag());
  }
  return "unknown";
}

Polarization parse_polarization(const std::string& name) {
  if (name == "lcp") return Polarization::lcp();
  if (name == "rcp") return Polarization::rcp();
  if (name == "linear" || name == "x") return Polarization::linear();
  throw InvalidArgument("unknown polarization '" + name + "' (expected lcp, rcp, linear)");
}

std::string to_string(ScanUnits u) { return u == ScanUnits::fig2 ? "fig2" : "model"; }

ScanUnits parse_scan_units(const std::string& name) {
  if (name == "model" || name == "physical") return ScanUnits::model;
  if (name == "fig2") return ScanUnits::fig2;
  throw InvalidArgument("unknown units '" + name + "' (expected model, fig2)");
}

UnitScales fig2_unit_scales(const OscillatorModel& model) {
  const double w0 = model.natural_frequency;
  const UnitScales s{model.coupling * model.damping / (model.light_speed * w0 * w0),
                     model.coupling * model.radiative_time / model.light_speed};
  if (!(s.mech_abs > 0.0) || !(s.scattering > 0.0)) {
    throw InvalidArgument("fig2 units need gamma > 0 and tau > 0");
  }
  return s;
}

CrossSectionSet to_fig2_units(const CrossSectionSet& set, const UnitScales& scales) {
  return {set.mechanical / scales.mech_abs,        set.absorption / scales.mech_abs,
          set.elastic / scales.scattering,         set.inelastic_plus / scales.scattering,
          set.inelastic_minus / scales.scattering, set.extinction / scales.mech_abs};
}

std::vector<double> AxisRange::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = min;
    return v;
  }
  const double step = (max - min) / (count - 1);
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = min + step * i;
  v.back() = max;
  return v;
}

void AxisRange::validate(const char* name) const {
  if (count < 1) throw InvalidArgument(std::string(name) + ": count must be >= 1");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw InvalidArgument(std::string(name) + ": range must be finite");
  }
  if (count > 1 && !(max > min)) {
    throw InvalidArgument(std::string(name) + ": max must exceed min");
  }
}

std::size_t ScanGrid::singular_count() const {
  return static_cast<std::size_t>(std::count(singular.begin(), singular.end(), 1));
}

ScanGrid grid_scan(const ScanRequest& req, int threads) {
  req.model.validate();
  req.frequency.validate("omega axis");
  req.rotation.validate("Omega axis");
  if (!(req.field_amplitude > 0.0)) throw InvalidArgument("field amplitude must be > 0");
  if (req.units == ScanUnits::fig2) fig2_unit_scales(req.model);

  ScanGrid grid;
  grid.frequencies = req.frequency.values();
  grid.rotations = req.rotation.values();
  grid.model = req.model;
  grid.polarization = req.polarization;
  grid.units = req.units;
  const std::size_t nw = grid.frequencies.size();
  const std::size_t nr = grid.rotations.size();
  grid.cells.resize(nw * nr);
  grid.singular.assign(nw * nr, 0);

  // Rows are disjoint slices of the output, so workers never share a cell.
  auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t r = row_begin; r < row_end; ++r) {
      for (std::size_t i = 0; i < nw; ++i) {
        const std::size_t idx = r * nw + i;
        const auto drive = req.polarization.drive(grid.frequencies[i], req.field_amplitude);
        try {
          grid.cells[idx] = cross_sections(req.model, drive, grid.rotations[r]);
        } catch (const SingularResonance&) {
          grid.cells[idx] = nan_set();
          grid.singular[idx] = 1;
        }
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(nr, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    fill_rows(0, nr);
    return grid;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (nr + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(nr, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fill_rows, b, e);
  }
  pool.clear();
  return grid;
}

ScanGrid spectrum_grid(const OscillatorModel& model, const Polarization& polarization,
                       double rotation, const AxisRange& frequency, double field_amplitude,
                       ScanUnits units) {
  ScanRequest req;
  req.model = model;
  req.polarization = polarization;
  req.field_amplitude = field_amplitude;
  req.frequency = frequency;
  req.rotation = {rotation, rotation, 1};
  req.units = units;
  return grid_scan(req);
}

std::vector<SpectrumPoint> spectrum_sweep(const OscillatorModel& model,
                                          const Polarization& polarization, double rotation,
                                          const AxisRange& frequency, double field_amplitude) {
  const auto grid = spectrum_grid(model, polarization, rotation, frequency, field_amplitude);
  std::vector<SpectrumPoint> out;
  out.reserve(grid.frequencies.size());
  for (std::size_t i = 0; i < grid.frequencies.size(); ++i) {
    out.push_back({grid.frequencies[i], grid.cells[i], grid.singular[i] != 0});
  }
  return out;
}

void write_scan_csv(std::ostream& out, const ScanGrid& grid) {
  std::optional<UnitScales> scales;
  if (grid.units == ScanUnits::fig2) scales = fig2_unit_scales(grid.model);
  out << kScanCsvHeader << '\n';
  std::string line;
  for (std::size_t r = 0; r < grid.rotations.size(); ++r) {
    for (std::size_t i = 0; i < grid.frequencies.size(); ++i) {
      const std::size_t idx = grid.index(r, i);
      CrossSectionSet s = grid.cells[idx];
      if (scales && !grid.singular[idx]) s = to_fig2_units(s, *scales);
      line = fmt::format("{},{},{},{},{},{},{},{},{}\n", num(grid.frequencies[i]),
                         num(grid.rotations[r]), num(s.mechanical), num(s.absorption),
                         num(s.elastic), num(s.inelastic_plus), num(s.inelastic_minus),
                         num(s.extinction), grid.singular[idx] ? 1 : 0);
      out << line;
    }
  }
}

std::map<std::string, std::string> scan_metadata(const ScanGrid& grid) {
  std::map<std::string, std::string> m;
  const auto& model = grid.model;
  m["mode"] = model.mode == UnitMode::physical ? "physical" : "normalized";
  m["coupling"] = num(model.coupling);
  m["omega0"] = num(model.natural_frequency);
  m["gamma"] = num(model.damping);
  m["tau"] = num(model.radiative_time);
  m["light_speed"] = num(model.light_speed);
  m["polarization"] = to_string(grid.polarization);
  m["units"] = to_string(grid.units);
  m["omega_count"] = std::to_string(grid.frequencies.size());
  m["Omega_count"] = std::to_string(grid.rotations.size());
  m["rows"] = std::to_string(grid.cells.size());
  m["singular_cells"] = std::to_string(grid.singular_count());
  m["frequency_unit"] = model.mode == UnitMode::physical ? "rad/s" : "omega0";
  double mech_abs = 1.0, scattering = 1.0;
  if (grid.units == ScanUnits::fig2) {
    const auto s = fig2_unit_scales(model);
    mech_abs = s.mech_abs;
    scattering = s.scattering;
    m["cross_section_unit"] = "fig2";
  } else {
    m["cross_section_unit"] = model.mode == UnitMode::physical ? "cm^2" : "Q^2/(m c), omega0=c=1";
  }
  // Multiply a column by its scale to recover model units.
  m["scale.sigma_mech"] = num(mech_abs);
  m["scale.sigma_abs"] = num(mech_abs);
  m["scale.sigma_ext"] = num(mech_abs);
  m["scale.sigma_elastic"] = num(scattering);
  m["scale.sigma_in_plus"] = num(scattering);
  m["scale.sigma_in_minus"] = num(scattering);
  return m;
}

void write_metadata(std::ostream& out, const std::map<std::string, std::string>& meta) {
  for (const auto& [k, v] : meta) out << k << " = " << v << '\n';
}

std::vector<ScanRow> read_scan_csv(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ConfigError("empty scan CSV");
  ++lineno;
  if (line != kScanCsvHeader) throw ConfigError("unexpected scan CSV header", lineno);
  std::vector<ScanRow> rows;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    fields.clear();
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 9) throw ConfigError("expected 9 columns", lineno);
    ScanRow r{};
    r.frequency = parse_double(fields[0], lineno);
    r.rotation = parse_double(fields[1], lineno);
    r.sections.mechanical = parse_double(fields[2], lineno);
    r.sections.absorption = parse_double(fields[3], lineno);
    r.sections.elastic = parse_double(fields[4], lineno);
    r.sections.inelastic_plus = parse_double(fields[5], lineno);
    r.sections.inelastic_minus = parse_double(fields[6], lineno);
    r.sections.extinction = parse_double(fields[7], lineno);
    if (fields[8] != "0" && fields[8] != "1") throw ConfigError("singular must be 0 or 1", lineno);
    r.singular = fields[8] == "1";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace rotospin
