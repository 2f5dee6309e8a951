#include "resolve.hpp"

#include <map>
#include <set>

#include "rotospin/errors.hpp"
#include "rotospin/material.hpp"

namespace rotospin::cli {
namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"", {}},
      {"model",
       {"mode", "source", "gamma", "tau", "omega0", "coupling", "light_speed", "plasma_frequency",
        "radius", "volume", "depolarization", "sphere_doubling"}},
      {"drive", {"omega", "polarization", "ex_re", "ex_im", "ey_re", "ey_im", "intensity", "field"}},
      {"rotation", {"Omega"}},
      {"scan",
       {"omega_min", "omega_max", "omega_count", "Omega_min", "Omega_max", "Omega_count", "units"}},
      {"spectrum", {"Omega", "omega_min", "omega_max", "omega_count", "units"}},
      {"spinup",
       {"Omega_init", "Omega_target", "max_time", "rtol", "thermal_coupling", "burst_check"}},
      {"body",
       {"shape", "density", "radius", "length", "moment_of_inertia", "melting_temperature",
        "surface_tension"}},
      {"thermal", {"T0", "coefficient", "intensity_min", "intensity_max", "intensity_count"}},
      {"medium", {"density", "length"}},
      {"member", {"rotation", "weight", "gamma", "tau"}},
      {"amplify", {"I0", "samples"}},
      {"output", {"path"}},
  };
  return s;
}

const ConfigSection* sec(const KeyValueConfig& cfg, const char* name) { return cfg.section(name); }

std::optional<double> opt_double(const KeyValueConfig& cfg, const char* section, const char* key) {
  const auto* s = sec(cfg, section);
  return s ? s->get_double(key) : std::nullopt;
}

std::optional<std::string> opt_string(const KeyValueConfig& cfg, const char* section,
                                      const char* key) {
  const auto* s = sec(cfg, section);
  return s ? s->get_string(key) : std::nullopt;
}

int line_of(const KeyValueConfig& cfg, const char* section, const char* key) {
  const auto* s = sec(cfg, section);
  if (!s) return 0;
  const auto* e = s->find(key);
  return e ? e->line : s->line();
}

// Wraps library precondition failures raised while building from config.
template <class F>
auto as_config_error(int line, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), line);
  }
}

}  // namespace

void check_schema(const KeyValueConfig& cfg) {
  std::set<std::string> seen;
  for (const auto& s : cfg.sections()) {
    const auto it = schema().find(s.name());
    if (it == schema().end()) throw ConfigError("unknown section [" + s.name() + "]", s.line());
    if (s.name() != "member" && !s.name().empty() && !seen.insert(s.name()).second) {
      throw ConfigError("section [" + s.name() + "] given more than once", s.line());
    }
    for (const auto& [key, entry] : s.entries()) {
      if (it->second.count(key) == 0) {
        const std::string where = s.name().empty() ? "top level" : "[" + s.name() + "]";
        throw ConfigError("unknown key '" + key + "' in " + where, entry.line);
      }
    }
  }
}

KeyValueConfig preset_config(const std::string& name) {
  // gamma = 0.1 w0 throughout; the dissipative limit is tau w0^2 = 1e-3 gamma.
  if (name == "fig2") {
    return KeyValueConfig::parse_string(
        "[model]\nmode = normalized\ngamma = 0.1\ntau = 1e-4\n"
        "[drive]\npolarization = lcp\n"
        "[scan]\nomega_min = 0\nomega_max = 2\nomega_count = 256\n"
        "Omega_min = 0\nOmega_max = 2\nOmega_count = 256\nunits = fig2\n");
  }
  if (name == "fig3a") {
    return KeyValueConfig::parse_string(
        "[model]\nmode = normalized\ngamma = 0.1\ntau = 1e-4\n"
        "[drive]\npolarization = lcp\n"
        "[spectrum]\nOmega = 2\nomega_min = 0\nomega_max = 3\nomega_count = 601\n");
  }
  if (name == "fig3b") {
    // radiative limit: gamma = 1e-3 tau w0^2
    return KeyValueConfig::parse_string(
        "[model]\nmode = normalized\ngamma = 1e-4\ntau = 0.1\n"
        "[drive]\npolarization = lcp\n"
        "[spectrum]\nOmega = 2\nomega_min = 0\nomega_max = 3\nomega_count = 601\n");
  }
  if (name == "figSI2") {
    return KeyValueConfig::parse_string(
        "[model]\nmode = normalized\ngamma = 0.1\ntau = 1e-4\n"
        "[drive]\npolarization = linear\n"
        "[scan]\nomega_min = 0\nomega_max = 2\nomega_count = 256\n"
        "Omega_min = -2\nOmega_max = 2\nOmega_count = 256\nunits = fig2\n");
  }
  throw ConfigError("unknown preset '" + name + "' (expected fig2, fig3a, fig3b, figSI2)");
}

void merge_into(KeyValueConfig& base, const KeyValueConfig& overlay) {
  for (const auto& s : overlay.sections()) {
    auto& target = s.name() == "member" ? base.append_section("member", s.line())
                                        : base.section_for_update(s.name());
    for (const auto& [k, e] : s.entries()) target.set(k, e.value, e.line);
  }
}

OscillatorModel resolve_model(const KeyValueConfig& cfg) {
  const std::string mode = opt_string(cfg, "model", "mode").value_or("normalized");
  const std::string source = opt_string(cfg, "model", "source").value_or("direct");
  if (mode != "normalized" && mode != "physical") {
    throw ConfigError("model.mode must be normalized or physical", line_of(cfg, "model", "mode"));
  }
  const bool normalized = mode == "normalized";

  const auto* m = sec(cfg, "model");
  auto forbid = [&](std::initializer_list<const char*> keys, const std::string& why) {
    if (!m) return;
    for (const char* k : keys) {
      if (m->has(k)) {
        throw ConfigError("'" + std::string(k) + "' conflicts with " + why, m->find(k)->line);
      }
    }
  };

  const double gamma = opt_double(cfg, "model", "gamma").value_or(0.0);
  const int gline = line_of(cfg, "model", "gamma");

  if (source == "direct") {
    forbid({"plasma_frequency", "radius", "volume", "depolarization"},
           "model.source = direct (exactly one model source)");
    if (normalized) {
      forbid({"omega0", "coupling", "light_speed"}, "normalized mode (w0 = c = Q^2/m = 1)");
      const double tau = opt_double(cfg, "model", "tau").value_or(0.0);
      return as_config_error(gline, [&] { return OscillatorModel::normalized(gamma, tau); });
    }
    forbid({"tau"}, "physical mode (tau = 2 Q^2 / 3 m c^3)");
    const double coupling = require_double(cfg, "model", "coupling");
    const double w0 = require_double(cfg, "model", "omega0");
    const double c = opt_double(cfg, "model", "light_speed").value_or(units::kSpeedOfLight);
    return as_config_error(line_of(cfg, "model", "coupling"),
                           [&] { return OscillatorModel::physical(coupling, w0, gamma, c); });
  }

  const double c = normalized ? 1.0
                              : opt_double(cfg, "model", "light_speed").value_or(units::kSpeedOfLight);
  if (normalized) forbid({"light_speed"}, "normalized mode (c = 1)");
  forbid({"tau", "omega0", "coupling"}, "a Drude model source (derived parameters)");

  OscillatorModel model;
  if (source == "drude-sphere") {
    forbid({"volume", "depolarization"}, "model.source = drude-sphere (exactly one model source)");
    DrudeSphere s{require_double(cfg, "model", "plasma_frequency"), gamma,
                  require_double(cfg, "model", "radius")};
    model = as_config_error(line_of(cfg, "model", "source"),
                            [&] { return from_drude_sphere(s, c); });
  } else if (source == "drude-ellipsoid") {
    forbid({"radius"}, "model.source = drude-ellipsoid (exactly one model source)");
    DrudeEllipsoid e{require_double(cfg, "model", "plasma_frequency"), gamma,
                     require_double(cfg, "model", "volume"),
                     require_double(cfg, "model", "depolarization")};
    model = as_config_error(line_of(cfg, "model", "source"),
                            [&] { return from_drude_ellipsoid(e, c); });
  } else {
    throw ConfigError("model.source must be direct, drude-sphere or drude-ellipsoid",
                      line_of(cfg, "model", "source"));
  }
  if (normalized) model.mode = UnitMode::normalized;
  return model;
}

bool sphere_doubling(const KeyValueConfig& cfg) {
  const auto* m = sec(cfg, "model");
  return m ? m->get_bool("sphere_doubling").value_or(false) : false;
}

Polarization resolve_polarization(const KeyValueConfig& cfg) {
  const std::string name = opt_string(cfg, "drive", "polarization").value_or("lcp");
  const int line = line_of(cfg, "drive", "polarization");
  if (name == "explicit") {
    const Complex ex{opt_double(cfg, "drive", "ex_re").value_or(0.0),
                     opt_double(cfg, "drive", "ex_im").value_or(0.0)};
    const Complex ey{opt_double(cfg, "drive", "ey_re").value_or(0.0),
                     opt_double(cfg, "drive", "ey_im").value_or(0.0)};
    if (std::norm(ex) + std::norm(ey) == 0.0) {
      throw ConfigError("explicit polarization needs a non-zero ex/ey", line);
    }
    return Polarization::explicit_field(ex, ey);
  }
  for (const char* k : {"ex_re", "ex_im", "ey_re", "ey_im"}) {
    if (opt_string(cfg, "drive", k)) {
      throw ConfigError(std::string(k) + " requires polarization = explicit",
                        line_of(cfg, "drive", k));
    }
  }
  return as_config_error(line, [&] { return parse_polarization(name); });
}

double resolve_field_amplitude(const KeyValueConfig& cfg, const OscillatorModel& model) {
  const auto intensity = opt_double(cfg, "drive", "intensity");
  const auto field = opt_double(cfg, "drive", "field");
  if (intensity && field) {
    throw ConfigError("give drive.intensity or drive.field, not both",
                      line_of(cfg, "drive", "field"));
  }
  if (intensity) {
    if (!(*intensity > 0.0)) {
      throw ConfigError("drive.intensity must be > 0", line_of(cfg, "drive", "intensity"));
    }
    return field_amplitude_for_intensity(*intensity, model.light_speed);
  }
  const double amp = field.value_or(1.0);
  if (!(amp > 0.0)) throw ConfigError("drive.field must be > 0", line_of(cfg, "drive", "field"));
  return amp;
}

DriveField resolve_drive(const KeyValueConfig& cfg, const OscillatorModel& model) {
  const double omega = require_double(cfg, "drive", "omega");
  return resolve_polarization(cfg).drive(omega, resolve_field_amplitude(cfg, model));
}

double resolve_rotation(const KeyValueConfig& cfg) {
  return opt_double(cfg, "rotation", "Omega").value_or(0.0);
}

RigidBodyParams resolve_body(const KeyValueConfig& cfg, const OscillatorModel& model) {
  (void)model;
  const auto* b = sec(cfg, "body");
  if (!b) throw ConfigError("missing [body] section");
  const double melt = b->get_double("melting_temperature").value_or(0.0);
  const double tension = b->get_double("surface_tension").value_or(0.0);
  std::string shape = b->get_string("shape").value_or(
      b->has("moment_of_inertia") ? "custom" : "sphere");
  const int line = b->find("shape") ? b->find("shape")->line : b->line();

  if (shape == "custom") {
    RigidBodyParams body;
    body.moment_of_inertia = require_double(cfg, "body", "moment_of_inertia");
    body.mass_density = b->get_double("density").value_or(0.0);
    body.radius = b->get_double("radius").value_or(0.0);
    body.melting_temperature = melt;
    body.surface_tension = tension;
    as_config_error(line, [&] { body.validate(); return 0; });
    return body;
  }
  if (b->has("moment_of_inertia")) {
    throw ConfigError("moment_of_inertia is derived for shape = " + shape,
                      b->find("moment_of_inertia")->line);
  }
  const double density = require_double(cfg, "body", "density");
  const double radius = require_double(cfg, "body", "radius");
  if (shape == "sphere") {
    return as_config_error(line, [&] {
      return RigidBodyParams::solid_sphere(density, radius, melt, tension);
    });
  }
  if (shape == "rod") {
    const double length = require_double(cfg, "body", "length");
    return as_config_error(line, [&] {
      auto body = RigidBodyParams::thin_rod(density, length, radius, melt);
      body.surface_tension = tension;
      return body;
    });
  }
  throw ConfigError("body.shape must be sphere, rod or custom", line);
}

std::optional<ThermalParams> resolve_thermal(const KeyValueConfig& cfg, bool required) {
  const auto* t = sec(cfg, "thermal");
  if (!t || (!t->has("T0") && !t->has("coefficient"))) {
    if (required) throw ConfigError("missing [thermal] T0 / coefficient");
    return std::nullopt;
  }
  ThermalParams p{require_double(cfg, "thermal", "T0"),
                  require_double(cfg, "thermal", "coefficient")};
  as_config_error(t->line(), [&] { p.validate(); return 0; });
  return p;
}

ScanUnits resolve_units(const ConfigSection* s) {
  if (!s) return ScanUnits::model;
  const auto u = s->get_string("units");
  if (!u) return ScanUnits::model;
  return as_config_error(s->find("units")->line, [&] { return parse_scan_units(*u); });
}

AxisRange resolve_axis(const ConfigSection* s, const std::string& prefix, const AxisRange& def) {
  AxisRange r = def;
  if (s) {
    if (auto v = s->get_double(prefix + "_min")) r.min = *v;
    if (auto v = s->get_double(prefix + "_max")) r.max = *v;
    if (auto v = s->get_int(prefix + "_count")) r.count = *v;
  }
  const int line = s ? s->line() : 0;
  as_config_error(line, [&] { r.validate(prefix.c_str()); return 0; });
  return r;
}

std::optional<std::string> output_path(const KeyValueConfig& cfg) {
  return opt_string(cfg, "output", "path");
}

double require_double(const KeyValueConfig& cfg, const std::string& section,
                      const std::string& key) {
  const auto* s = cfg.section(section);
  const auto v = s ? s->get_double(key) : std::nullopt;
  if (!v) {
    throw ConfigError("missing required setting " + section + "." + key, s ? s->line() : 0);
  }
  return *v;
}

}  // namespace rotospin::cli
