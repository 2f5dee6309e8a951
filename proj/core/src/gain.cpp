#include "rotospin/gain.hpp"

#include <cmath>

#include "rotospin/errors.hpp"

namespace rotospin {

void MediumSpec::validate() const {
  if (!(number_density >= 0.0)) throw InvalidArgument("medium: number density must be >= 0");
  if (!(path_length >= 0.0)) throw InvalidArgument("medium: path length must be >= 0");
  if (members.empty()) throw InvalidArgument("medium: ensemble is empty");
  double total = 0.0;
  for (const auto& m : members) {
    if (!(m.weight >= 0.0)) throw InvalidArgument("medium: weights must be >= 0");
    m.model.validate();
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("medium: weights must sum to 1");
}

EnsembleExtinction ensemble_extinction(const MediumSpec& medium, const DriveField& drive) {
  medium.validate();
  EnsembleExtinction out;
  double weighted = 0.0;
  double used_weight = 0.0;
  for (const auto& m : medium.members) {
    try {
      const double ext = extinction_cross_section(m.model, drive, m.rotation);
      weighted += m.weight * ext;
      used_weight += m.weight;
    } catch (const SingularResonance&) {
      ++out.excluded;
    }
  }
  if (out.excluded == medium.members.size()) {
    throw SingularResonance("every ensemble member sits on a lossless resonance");
  }
  out.mean = used_weight > 0.0 ? weighted / used_weight : 0.0;
  return out;
}

double gain_coefficient(const MediumSpec& medium, const DriveField& drive) {
  return -medium.number_density * ensemble_extinction(medium, drive).mean;
}

double propagate_intensity(double initial_intensity, double gain, double distance) {
  if (!(initial_intensity >= 0.0)) throw InvalidArgument("initial intensity must be >= 0");
  return initial_intensity * std::exp(gain * distance);
}

double sustaining_power(const EnsembleMember& member, const DriveField& drive) {
  return -mechanical_cross_section(member.model, drive, member.rotation) *
         drive.intensity(member.model.light_speed);
}

MediumSpec medium_from_config(const KeyValueConfig& config, const OscillatorModel& base_model) {
  const auto* medium = config.section("medium");
  if (medium == nullptr) throw ConfigError("missing [medium] section");
  if (config.sections_named("medium").size() > 1) {
    throw ConfigError("[medium] given more than once", config.sections_named("medium")[1]->line());
  }
  MediumSpec spec;
  const auto density = medium->get_double("density");
  if (!density) throw ConfigError("[medium] needs 'density'", medium->line());
  spec.number_density = *density;
  spec.path_length = medium->get_double("length").value_or(0.0);

  double total = 0.0;
  for (const auto* sec : config.sections_named("member")) {
    EnsembleMember m;
    m.model = base_model;
    const auto rotation = sec->get_double("rotation");
    if (!rotation) throw ConfigError("[member] needs 'rotation'", sec->line());
    m.rotation = *rotation;
    m.weight = sec->get_double("weight").value_or(1.0);
    if (m.weight < 0.0) throw ConfigError("member weight must be >= 0", sec->line());
    if (auto g = sec->get_double("gamma")) m.model.damping = *g;
    if (auto t = sec->get_double("tau")) {
      if (base_model.mode == UnitMode::physical) {
        throw ConfigError("tau is derived from the coupling in physical mode",
                          sec->find("tau")->line);
      }
      m.model.radiative_time = *t;
    }
    try {
      m.model.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what(), sec->line());
    }
    total += m.weight;
    spec.members.push_back(m);
  }
  if (spec.members.empty()) throw ConfigError("medium needs at least one [member] section");
  if (!(total > 0.0)) throw ConfigError("member weights sum to zero");
  for (auto& m : spec.members) m.weight /= total;
  // Renormalization can leave the sum a few ulp away from 1; validate() allows 1e-12.
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), medium->line());
  }
  return spec;
}

}  // namespace rotospin
