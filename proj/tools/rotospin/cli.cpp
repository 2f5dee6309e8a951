#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "resolve.hpp"
#include "rotospin/errors.hpp"

namespace rotospin::cli {
namespace {

// A command-line flag bound to one config key. Switches carry a fixed value.
struct Flag {
  std::string name;
  std::string section;
  std::string key;
  std::string help;
  std::optional<std::string> switch_value{};
};

std::vector<Flag> model_drive_flags(bool spectrum) {
  std::vector<Flag> f = {
      {"--output", "output", "path", "Output file path"},
      {"--normalized", "model", "mode", "Normalized units: w0 = c = Q^2/m = 1", "normalized"},
      {"--physical", "model", "mode", "Gaussian CGS units", "physical"},
      {"--gamma", "model", "gamma", "Intrinsic damping rate"},
      {"--tau", "model", "tau", "Radiative time (normalized mode only)"},
      {"--omega0", "model", "omega0", "Natural frequency (physical mode)"},
      {"--coupling", "model", "coupling", "Q^2/m (physical mode)"},
      {"--light-speed", "model", "light_speed", "Speed of light override (physical mode)"},
      {"--drude-sphere", "model", "source", "Map a Drude sphere onto the model", "drude-sphere"},
      {"--drude-ellipsoid", "model", "source", "Map a Drude ellipsoid onto the model",
       "drude-ellipsoid"},
      {"--plasma-frequency", "model", "plasma_frequency", "Drude plasma frequency"},
      {"--radius", "model", "radius", "Drude sphere radius"},
      {"--volume", "model", "volume", "Drude ellipsoid volume"},
      {"--depolarization", "model", "depolarization", "Ellipsoid depolarization factor L"},
      {"--sphere-doubling", "model", "sphere_doubling",
       "Report twice the rod torque (lossy-sphere approximation)", "true"},
      {"--pol", "drive", "polarization", "lcp | rcp | linear | explicit"},
      {"--ex-re", "drive", "ex_re", "Re Ex (explicit polarization)"},
      {"--ex-im", "drive", "ex_im", "Im Ex (explicit polarization)"},
      {"--ey-re", "drive", "ey_re", "Re Ey (explicit polarization)"},
      {"--ey-im", "drive", "ey_im", "Im Ey (explicit polarization)"},
      {"--intensity", "drive", "intensity", "Light intensity I = (c/2pi)|E|^2"},
      {"--field", "drive", "field", "Field amplitude |E| (default 1)"},
  };
  if (spectrum) {
    f.push_back({"--Omega", "spectrum", "Omega", "Fixed rotation frequency"});
  } else {
    f.push_back({"--omega", "drive", "omega", "Light frequency"});
    f.push_back({"--Omega", "rotation", "Omega", "Rotation frequency"});
  }
  return f;
}

std::vector<Flag> flags_for(const std::string& command) {
  if (command == "scan") {
    auto f = model_drive_flags(false);
    std::erase_if(f, [](const Flag& x) { return x.name == "--omega" || x.name == "--Omega"; });
    for (const char* axis : {"omega", "Omega"}) {
      const std::string a = axis;
      f.push_back({"--" + a + "-min", "scan", a + "_min", a + " axis start"});
      f.push_back({"--" + a + "-max", "scan", a + "_max", a + " axis end"});
      f.push_back({"--" + a + "-count", "scan", a + "_count", a + " axis points"});
    }
    f.push_back({"--units", "scan", "units", "model | fig2"});
    return f;
  }
  if (command == "spectrum") {
    auto f = model_drive_flags(true);
    f.push_back({"--omega-min", "spectrum", "omega_min", "Spectrum start"});
    f.push_back({"--omega-max", "spectrum", "omega_max", "Spectrum end"});
    f.push_back({"--omega-count", "spectrum", "omega_count", "Spectrum points"});
    f.push_back({"--units", "spectrum", "units", "model | fig2"});
    return f;
  }
  auto f = model_drive_flags(false);
  if (command == "spinup") {
    std::vector<Flag> extra = {
        {"--Omega-init", "spinup", "Omega_init", "Initial rotation (default 0)"},
        {"--Omega-target", "spinup", "Omega_target", "Target rotation"},
        {"--max-time", "spinup", "max_time", "Stop after this time"},
        {"--rtol", "spinup", "rtol", "Integrator relative tolerance (default 1e-8)"},
        {"--thermal-coupling", "spinup", "thermal_coupling", "Stop when T_eq exceeds T_melt",
         "true"},
        {"--no-burst", "spinup", "burst_check", "Ignore the centrifugal burst limit", "false"},
        {"--shape", "body", "shape", "sphere | rod | custom"},
        {"--density", "body", "density", "Mass density"},
        {"--body-radius", "body", "radius", "Body radius"},
        {"--length", "body", "length", "Rod length"},
        {"--moment-of-inertia", "body", "moment_of_inertia", "Moment of inertia (custom shape)"},
        {"--melting-temperature", "body", "melting_temperature", "Melting temperature"},
        {"--surface-tension", "body", "surface_tension", "Surface tension"},
        {"--T0", "thermal", "T0", "Ambient temperature"},
        {"--C-rad", "thermal", "coefficient", "Radiative coefficient C in P = C (T^6 - T0^6)"},
    };
    f.insert(f.end(), extra.begin(), extra.end());
  } else if (command == "thermal") {
    std::vector<Flag> extra = {
        {"--T0", "thermal", "T0", "Ambient temperature"},
        {"--C-rad", "thermal", "coefficient", "Radiative coefficient C in P = C (T^6 - T0^6)"},
        {"--intensity-min", "thermal", "intensity_min", "Sweep start"},
        {"--intensity-max", "thermal", "intensity_max", "Sweep end"},
        {"--intensity-count", "thermal", "intensity_count", "Sweep points (log spaced)"},
    };
    f.insert(f.end(), extra.begin(), extra.end());
  } else if (command == "amplify") {
    std::vector<Flag> extra = {
        {"--number-density", "medium", "density", "Particle number density"},
        {"--length", "medium", "length", "Path length"},
        {"--I0", "amplify", "I0", "Input intensity (default: drive intensity)"},
        {"--samples", "amplify", "samples", "Points along z (default 101)"},
    };
    f.insert(f.end(), extra.begin(), extra.end());
  }
  return f;
}

struct Bound {
  Flag flag;
  std::string value;
  CLI::Option* option = nullptr;
};

}  // namespace

int thread_budget() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("ROTOSPIN_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<int>(n, static_cast<int>(cap));
  }
  return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rotospin: light scattering, torque and gain of rotating particles", "rotospin"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"point", "Cross sections, torque and balance residual at one (omega, Omega)"},
      {"scan", "(omega, Omega) grid of all cross sections to CSV"},
      {"spectrum", "Fixed-Omega spectrum of all cross sections to CSV"},
      {"spinup", "Spin-up trajectory (t, Omega) to CSV"},
      {"thermal", "Equilibrium temperature versus intensity to CSV"},
      {"amplify", "Gain coefficient and (z, I) propagation to CSV"},
      {"validate", "Run the invariant suite"},
  };

  std::map<std::string, std::vector<Bound>> bound;
  std::map<std::string, CLI::App*> subs;
  std::string config_path, preset, format = "both";
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    subs[name] = sub;
    if (name == "validate") continue;
    sub->add_option("--config", config_path, "Key-value config file");
    sub->add_option("--preset", preset, "fig2 | fig3a | fig3b | figSI2");
    if (name == "point") sub->add_option("--format", format, "table | kv | both");
    auto& list = bound[name];
    for (auto& f : flags_for(name)) list.push_back({std::move(f), {}, nullptr});
    for (auto& b : list) {
      if (b.flag.switch_value) {
        b.option = sub->add_flag(b.flag.name, b.flag.help);
      } else {
        b.option = sub->add_option(b.flag.name, b.value, b.flag.help);
      }
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "rotospin: " << e.what() << '\n';
    return kExitConfig;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  try {
    if (command == "validate") return run_validate(out);

    KeyValueConfig cfg;
    if (!preset.empty()) merge_into(cfg, preset_config(preset));
    if (!config_path.empty()) {
      const auto file = KeyValueConfig::load(config_path);
      try {
        check_schema(file);
      } catch (const ConfigError& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
      merge_into(cfg, file);
    }
    for (const auto& b : bound[command]) {
      if (b.option->count() == 0) continue;
      cfg.section_for_update(b.flag.section)
          .set(b.flag.key, b.flag.switch_value ? *b.flag.switch_value : b.value);
    }
    check_schema(cfg);

    if (command == "point") return run_point(cfg, out, format);
    if (command == "scan") return run_scan(cfg, out);
    if (command == "spectrum") return run_spectrum(cfg, out);
    if (command == "spinup") return run_spinup(cfg, out);
    if (command == "thermal") return run_thermal(cfg, out);
    if (command == "amplify") return run_amplify(cfg, out);
  } catch (const ConfigError& e) {
    err << "rotospin: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SingularResonance& e) {
    err << "rotospin: singular resonance: " << e.what() << '\n';
    return kExitSingular;
  } catch (const InvalidArgument& e) {
    err << "rotospin: invalid input: " << e.what() << '\n';
    return kExitConfig;
  }
  err << "rotospin: unknown command\n";
  return kExitConfig;
}

}  // namespace rotospin::cli
