#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "rotospin/errors.hpp"
#include "rotospin/gain.hpp"

using namespace rotospin;
using gen::rel;

namespace {

MediumSpec medium_of(std::initializer_list<std::pair<double, double>> members, double n = 2.0) {
  MediumSpec m;
  m.number_density = n;
  m.path_length = 1.0;
  const auto model = OscillatorModel::normalized(0.1, 1e-4);
  for (const auto& [rot, w] : members) m.members.push_back({model, rot, w});
  return m;
}

}  // namespace

TEST(Gain, DoublingLength) {
  for (double g : {1e-6, 0.37, 5.0, 1e4}) {
    EXPECT_LT(rel(propagate_intensity(3.0, g, std::numbers::ln2 / g), 6.0), 4e-16);
  }
  EXPECT_EQ(propagate_intensity(3.0, 0.5, 0.0), 3.0);
  EXPECT_THROW(propagate_intensity(-1.0, 0.5, 1.0), InvalidArgument);
}

TEST(Gain, FastRotorsUnderLcpAmplify) {
  gen::Gen g(501);
  for (int i = 0; i < 100; ++i) {
    const double w = g.uniform(0.1, 2.0);
    MediumSpec m;
    m.number_density = g.log_uniform(1e-3, 1e3);
    const int k = g.integer(1, 6);
    for (int j = 0; j < k; ++j) {
      m.members.push_back({OscillatorModel::normalized(g.uniform(0.01, 0.5), g.uniform(0, 0.01)),
                           w + g.uniform(0.01, 3.0), 1.0 / k});
    }
    EXPECT_GT(gain_coefficient(m, DriveField::lcp(w)), 0.0) << "case " << i;
  }
}

TEST(Gain, StaticMediumAttenuates) {
  const auto m = medium_of({{0.0, 1.0}});
  EXPECT_LT(gain_coefficient(m, DriveField::lcp(0.6)), 0.0);
}

TEST(Gain, WeightedMeanInFixedOrder) {
  const auto m = medium_of({{1.2, 0.25}, {2.0, 0.75}});
  const auto d = DriveField::lcp(0.6);
  const double expect = 0.25 * extinction_cross_section(m.members[0].model, d, 1.2) +
                        0.75 * extinction_cross_section(m.members[1].model, d, 2.0);
  EXPECT_EQ(ensemble_extinction(m, d).mean, expect);
  EXPECT_EQ(gain_coefficient(m, d), -2.0 * expect);
}

TEST(Gain, SingularMembersAreExcluded) {
  auto m = medium_of({{0.0, 0.5}, {2.0, 0.5}});
  m.members[0].model = OscillatorModel::normalized(0.0, 0.0);
  const auto d = DriveField::lcp(1.0);  // member 0 sits on w = w0 at rest
  const auto e = ensemble_extinction(m, d);
  EXPECT_EQ(e.excluded, 1u);
  EXPECT_TRUE(e.warning());
  EXPECT_EQ(e.mean, extinction_cross_section(m.members[1].model, d, 2.0));
  m.members[1] = m.members[0];
  EXPECT_THROW(ensemble_extinction(m, d), SingularResonance);
}

TEST(Gain, Validation) {
  EXPECT_THROW(medium_of({{1.0, 0.5}}).validate(), InvalidArgument);
  EXPECT_THROW(medium_of({}).validate(), InvalidArgument);
  EXPECT_THROW(medium_of({{1.0, 1.0}}, -1.0).validate(), InvalidArgument);
}

TEST(Gain, SustainingPowerOpposesMechanicalChannel) {
  const auto m = medium_of({{2.0, 1.0}});
  const auto d = DriveField::lcp(0.6, 2.0);
  const double p = sustaining_power(m.members[0], d);
  EXPECT_GT(p, 0.0);  // the rotor must be driven to stay above w
  EXPECT_LT(rel(p, -mechanical_cross_section(m.members[0].model, d, 2.0) * d.intensity(1.0)), 1e-15);
}

TEST(Gain, MediumFromConfig) {
  const auto cfg = KeyValueConfig::parse_string(
      "[medium]\ndensity = 10\nlength = 0.5\n"
      "[member]\nrotation = 1.5\nweight = 1\n"
      "[member]\nrotation = 2.5\nweight = 3\ngamma = 0.2\n");
  const auto base = OscillatorModel::normalized(0.1, 1e-4);
  const auto m = medium_from_config(cfg, base);
  EXPECT_EQ(m.number_density, 10.0);
  EXPECT_EQ(m.path_length, 0.5);
  ASSERT_EQ(m.members.size(), 2u);
  EXPECT_DOUBLE_EQ(m.members[0].weight, 0.25);
  EXPECT_DOUBLE_EQ(m.members[1].weight, 0.75);
  EXPECT_EQ(m.members[1].model.damping, 0.2);
  EXPECT_EQ(m.members[0].model.damping, 0.1);
}

TEST(Gain, MediumConfigErrors) {
  const auto base = OscillatorModel::normalized(0.1, 1e-4);
  EXPECT_THROW(medium_from_config(KeyValueConfig::parse_string("[member]\nrotation=1\n"), base),
               ConfigError);
  try {
    medium_from_config(KeyValueConfig::parse_string("[medium]\ndensity=1\n[member]\nweight=1\n"), base);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}
