#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "resolve.hpp"
#include "rotospin/errors.hpp"
#include "rotospin/material.hpp"

namespace rotospin::cli {
namespace {

constexpr double kBalanceTolerance = 1e-10;

std::string num(double v) { return fmt::format("{:.17g}", v); }

// Writes `body` to the configured path, or to `out` when none is set.
// Returns the path written, empty for stdout.
std::string emit(const KeyValueConfig& cfg, std::ostream& out,
                 const std::function<void(std::ostream&)>& body) {
  const auto path = output_path(cfg);
  if (!path) {
    body(out);
    return {};
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + *path + "'");
  body(f);
  f.close();
  if (!f) throw ConfigError("failed writing '" + *path + "'");
  return *path;
}

void emit_sidecar(const std::string& path, const std::map<std::string, std::string>& meta) {
  std::ofstream f(path + ".meta", std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + path + ".meta'");
  write_metadata(f, meta);
}

int write_grid(const KeyValueConfig& cfg, std::ostream& out, const ScanGrid& grid,
               std::map<std::string, std::string> meta) {
  const auto path = emit(cfg, out, [&](std::ostream& o) { write_scan_csv(o, grid); });
  if (path.empty()) return kExitOk;
  emit_sidecar(path, meta);
  out << fmt::format("wrote {} rows ({} singular) to {}\n", grid.cells.size(),
                     grid.singular_count(), path);
  return kExitOk;
}

const char* unit_note(const OscillatorModel& m) {
  return m.mode == UnitMode::physical ? "cgs" : "normalized";
}

}  // namespace

int run_point(const KeyValueConfig& cfg, std::ostream& out, const std::string& format) {
  if (format != "table" && format != "kv" && format != "both") {
    throw ConfigError("--format must be table, kv or both");
  }
  const auto model = resolve_model(cfg);
  const auto drive = resolve_drive(cfg, model);
  const double rotation = resolve_rotation(cfg);
  const auto set = cross_sections(model, drive, rotation);
  const double m = torque(model, drive, rotation);
  const double residual = energy_balance_residual(set);
  const double scale = set.partial_scale();
  const bool ok = std::abs(residual) <= kBalanceTolerance * scale;

  std::vector<std::pair<std::string, double>> rows = {
      {"omega", drive.frequency},
      {"Omega", rotation},
      {"torque", m},
      {"sigma_mech", set.mechanical},
      {"sigma_abs", set.absorption},
      {"sigma_elastic", set.elastic},
      {"sigma_in_plus", set.inelastic_plus},
      {"sigma_in_minus", set.inelastic_minus},
      {"sigma_ext", set.extinction},
      {"balance_residual", residual},
      {"balance_relative", scale > 0.0 ? residual / scale : 0.0},
  };
  if (sphere_doubling(cfg)) rows.push_back({"torque_sphere", 2.0 * m});

  const auto path = emit(cfg, out, [&](std::ostream& o) {
    if (format != "kv") {
      o << fmt::format("rotospin point ({} units, {})\n", unit_note(model),
                       to_string(resolve_polarization(cfg)));
      for (const auto& [k, v] : rows) o << fmt::format("  {:<18}{:>24.10g}\n", k, v);
      o << fmt::format("  {:<18}{:>24}\n", "balance_check", ok ? "ok" : "FAILED");
    }
    if (format == "both") o << '\n';
    if (format != "table") {
      o << "units = " << unit_note(model) << '\n';
      for (const auto& [k, v] : rows) o << k << " = " << num(v) << '\n';
      o << "balance_ok = " << (ok ? "true" : "false") << '\n';
    }
  });
  if (!path.empty()) out << "wrote " << path << '\n';
  return ok ? kExitOk : kExitValidation;
}

int run_scan(const KeyValueConfig& cfg, std::ostream& out) {
  ScanRequest req;
  req.model = resolve_model(cfg);
  req.polarization = resolve_polarization(cfg);
  req.field_amplitude = resolve_field_amplitude(cfg, req.model);
  const auto* s = cfg.section("scan");
  if (!s) throw ConfigError("missing [scan] section");
  const double w0 = req.model.natural_frequency;
  req.frequency = resolve_axis(s, "omega", {0.0, 2.0 * w0, 256});
  req.rotation = resolve_axis(s, "Omega", {0.0, 2.0 * w0, 256});
  req.units = resolve_units(s);
  if (req.units == ScanUnits::fig2) {
    try {
      fig2_unit_scales(req.model);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what(), s->find("units") ? s->find("units")->line : s->line());
    }
  }
  const auto grid = grid_scan(req, thread_budget());
  return write_grid(cfg, out, grid, scan_metadata(grid));
}

int run_spectrum(const KeyValueConfig& cfg, std::ostream& out) {
  const auto model = resolve_model(cfg);
  const auto pol = resolve_polarization(cfg);
  const double amp = resolve_field_amplitude(cfg, model);
  const auto* s = cfg.section("spectrum");
  if (!s) throw ConfigError("missing [spectrum] section");
  const double rotation = require_double(cfg, "spectrum", "Omega");
  const double w0 = model.natural_frequency;
  const auto axis = resolve_axis(s, "omega", {0.0, 3.0 * w0, 601});
  const auto units = resolve_units(s);
  ScanGrid grid;
  try {
    grid = spectrum_grid(model, pol, rotation, axis, amp, units);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), s->line());
  }
  return write_grid(cfg, out, grid, scan_metadata(grid));
}

int run_spinup(const KeyValueConfig& cfg, std::ostream& out) {
  const auto model = resolve_model(cfg);
  const auto drive = resolve_drive(cfg, model);
  const auto body = resolve_body(cfg, model);
  const auto* sp = cfg.section("spinup");
  if (!sp) throw ConfigError("missing [spinup] section");
  const double start = sp->get_double("Omega_init").value_or(0.0);
  const double target = require_double(cfg, "spinup", "Omega_target");
  SpinUpControls controls;
  if (auto v = sp->get_double("max_time")) controls.max_time = *v;
  if (auto v = sp->get_double("rtol")) controls.relative_tolerance = *v;
  controls.burst_check = sp->get_bool("burst_check").value_or(true);
  if (sp->get_bool("thermal_coupling").value_or(false)) {
    controls.thermal = resolve_thermal(cfg, true);
  }
  SpinUpTrajectory traj;
  try {
    traj = spin_up_trajectory(model, drive, body, start, target, controls);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), sp->line());
  } catch (const UnreachableTarget& e) {
    throw ConfigError(e.what(), sp->line());
  }

  const auto path = emit(cfg, out, [&](std::ostream& o) {
    o << "t,Omega\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      o << num(traj.times[i]) << ',' << num(traj.rotations[i]) << '\n';
    }
  });
  if (path.empty()) return kExitOk;
  out << "termination = " << to_string(traj.termination) << '\n';
  out << "final_time = " << num(traj.final_time()) << '\n';
  out << "final_Omega = " << num(traj.final_rotation()) << '\n';
  out << "samples = " << traj.times.size() << '\n';
  out << "rejected_steps = " << traj.rejected_steps << '\n';
  if (body.surface_tension > 0.0 && body.radius > 0.0) {
    out << "burst_Omega = " << num(centrifugal_burst_frequency(body)) << '\n';
  }
  out << "output = " << path << '\n';
  return kExitOk;
}

int run_thermal(const KeyValueConfig& cfg, std::ostream& out) {
  const auto model = resolve_model(cfg);
  const auto drive = resolve_drive(cfg, model);
  const double rotation = resolve_rotation(cfg);
  const auto thermal = *resolve_thermal(cfg, true);
  const auto* t = cfg.section("thermal");
  const double lo = require_double(cfg, "thermal", "intensity_min");
  const double hi = require_double(cfg, "thermal", "intensity_max");
  const int count = t->get_int("intensity_count").value_or(61);
  if (!(lo > 0.0) || !(hi >= lo) || count < 1 || (count > 1 && !(hi > lo))) {
    throw ConfigError("need 0 < intensity_min < intensity_max and intensity_count >= 1",
                      t->line());
  }

  // sigma_abs is intensity independent; the drive only fixes frequency and polarization
  const double sigma = absorption_cross_section(model, drive, rotation);
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  const auto path = emit(cfg, out, [&](std::ostream& o) {
    o << "intensity,sigma_abs,absorbed_power,T_eq\n";
    for (int i = 0; i < count; ++i) {
      const double I = count == 1 ? lo
                       : i == count - 1 ? hi
                                        : std::pow(10.0, llo + (lhi - llo) * i / (count - 1));
      const double p = sigma * I;
      o << num(I) << ',' << num(sigma) << ',' << num(p) << ','
        << num(equilibrium_temperature(thermal, p)) << '\n';
    }
  });
  if (path.empty()) return kExitOk;
  out << "sigma_abs = " << num(sigma) << '\n';
  out << "T_eq_at_max = " << num(equilibrium_temperature(thermal, sigma * hi)) << '\n';
  out << "output = " << path << '\n';
  return kExitOk;
}

int run_amplify(const KeyValueConfig& cfg, std::ostream& out) {
  const auto model = resolve_model(cfg);
  const auto drive = resolve_drive(cfg, model);
  const auto medium = medium_from_config(cfg, model);
  const auto* a = cfg.section("amplify");
  double I0 = drive.intensity(model.light_speed);
  int samples = 101;
  if (a) {
    if (auto v = a->get_double("I0")) I0 = *v;
    if (auto v = a->get_int("samples")) samples = *v;
  }
  if (!(I0 >= 0.0)) throw ConfigError("amplify.I0 must be >= 0", a ? a->line() : 0);
  if (samples < 2) throw ConfigError("amplify.samples must be >= 2", a ? a->line() : 0);

  const auto ext = ensemble_extinction(medium, drive);
  const double g = -medium.number_density * ext.mean;
  const double L = medium.path_length;
  const auto path = emit(cfg, out, [&](std::ostream& o) {
    o << "z,I\n";
    for (int i = 0; i < samples; ++i) {
      const double z = i == samples - 1 ? L : L * i / (samples - 1);
      o << num(z) << ',' << num(propagate_intensity(I0, g, z)) << '\n';
    }
  });
  if (path.empty()) return kExitOk;
  out << "mean_sigma_ext = " << num(ext.mean) << '\n';
  out << "gain = " << num(g) << '\n';
  out << "regime = " << (g > 0.0 ? "amplifying" : g < 0.0 ? "attenuating" : "neutral") << '\n';
  if (g != 0.0) out << "e_fold_length = " << num(1.0 / std::abs(g)) << '\n';
  if (ext.warning()) {
    out << "warning = " << ext.excluded << " member(s) on a lossless resonance were excluded\n";
  }
  for (std::size_t i = 0; i < medium.members.size(); ++i) {
    const auto& mem = medium.members[i];
    try {
      out << fmt::format("member.{}.sustaining_power = {}\n", i,
                         num(sustaining_power(mem, drive)));
    } catch (const SingularResonance&) {
      out << fmt::format("member.{}.sustaining_power = nan\n", i);
    }
  }
  out << "output = " << path << '\n';
  return kExitOk;
}

}  // namespace rotospin::cli
