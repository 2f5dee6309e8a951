#include <gtest/gtest.h>

#include "rotospin/config.hpp"
#include "rotospin/errors.hpp"

using namespace rotospin;

namespace {

int error_line(std::string_view text) {
  try {
    KeyValueConfig::parse_string(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Config, ParsesSectionsCommentsAndWhitespace) {
  const auto cfg = KeyValueConfig::parse_string(
      "# top\nname = rotor  \n\n[model]\n  gamma=0.1 ; inline comment\n"
      "tau = 1e-4\n[drive]\nomega = 0.5\nflag = yes\n");
  EXPECT_EQ(cfg.section("")->get_string("name"), "rotor");
  EXPECT_EQ(cfg.section("model")->get_double("tau"), 1e-4);
  EXPECT_EQ(cfg.section("drive")->get_bool("flag"), true);
  EXPECT_EQ(cfg.section("model")->find("tau")->line, 6);
  EXPECT_EQ(cfg.section("missing"), nullptr);
}

TEST(Config, LineAnchoredErrors) {
  EXPECT_EQ(error_line("[model]\ngamma = 0.1\njunk line\n"), 3);
  EXPECT_EQ(error_line("[model\n"), 1);
  EXPECT_EQ(error_line("[model]\ngamma = 1\ngamma = 2\n"), 3);
  EXPECT_EQ(error_line("a = 1\n = 2\n"), 2);
}

TEST(Config, TypedGettersReportTheLine) {
  const auto cfg = KeyValueConfig::parse_string("[a]\nx = 1\ny = abc\nz = 1.5\nb = maybe\n");
  const auto* a = cfg.section("a");
  EXPECT_EQ(a->get_int("x"), 1);
  try {
    a->get_double("y");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(a->get_int("z"), ConfigError);
  EXPECT_THROW(a->get_bool("b"), ConfigError);
  EXPECT_EQ(a->get_double("absent"), std::nullopt);
}

TEST(Config, RejectsNonFiniteNumbers) {
  const auto cfg = KeyValueConfig::parse_string("[a]\nx = inf\ny = nan\n");
  EXPECT_THROW(cfg.section("a")->get_double("x"), ConfigError);
  EXPECT_THROW(cfg.section("a")->get_double("y"), ConfigError);
}

TEST(Config, RepeatedSectionsAndUnusedKeys) {
  const auto cfg = KeyValueConfig::parse_string("[m]\nr = 1\n[m]\nr = 2\nextra = 3\n");
  const auto ms = cfg.sections_named("m");
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[1]->get_double("r"), 2.0);
  ms[0]->get_double("r");
  try {
    cfg.reject_unused();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(Config, OverridesReplaceValues) {
  auto cfg = KeyValueConfig::parse_string("[drive]\nomega = 0.5\n");
  cfg.section_for_update("drive").set("omega", "0.7");
  cfg.section_for_update("rotation").set("Omega", "0.2");
  EXPECT_EQ(cfg.section("drive")->get_double("omega"), 0.7);
  EXPECT_EQ(cfg.section("rotation")->get_double("Omega"), 0.2);
}

TEST(Config, MissingFile) {
  EXPECT_THROW(KeyValueConfig::load("/nonexistent/rotospin.cfg"), ConfigError);
}
