#include <fmt/format.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "rotospin/dynamics.hpp"
#include "rotospin/errors.hpp"
#include "rotospin/gain.hpp"
#include "rotospin/material.hpp"
#include "rotospin/response.hpp"
#include "rotospin/scan.hpp"

namespace rotospin::cli {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Physical-mode model with tau linked to the coupling, w0 = 1e15 rad/s.
OscillatorModel random_physical(Rng& rng, double gamma_max_over_w0) {
  const double w0 = 1e15;
  const double tau_w0 = std::pow(10.0, uniform(rng, -6.0, -1.0));
  const double c = units::kSpeedOfLight;
  const double coupling = 1.5 * (tau_w0 / w0) * c * c * c;
  const double gamma = uniform(rng, 0.0, gamma_max_over_w0) * w0;
  return OscillatorModel::physical(coupling, w0, gamma);
}

CheckResult balance_identity() {
  Rng rng(20240101);
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto model = random_physical(rng, 0.5);
    const double w0 = model.natural_frequency;
    const auto drive = DriveField{uniform(rng, -3, 3) * w0,
                                  {uniform(rng, -1, 1), uniform(rng, -1, 1)},
                                  {uniform(rng, -1, 1), uniform(rng, -1, 1)}};
    const double rotation = uniform(rng, -3, 3) * w0;
    try {
      const auto s = cross_sections(model, drive, rotation);
      const double scale = s.partial_scale();
      if (scale > 0.0) worst = std::max(worst, std::abs(energy_balance_residual(s)) / scale);
      ++used;
    } catch (const SingularResonance&) {
    }
  }
  return {"balance identity (1000 random tuples)", worst <= 1e-10 && used > 900,
          fmt::format("worst relative residual {:.3g}", worst)};
}

CheckResult polynomial_identity() {
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double w = uniform(rng, -3, 3);
    const double W = uniform(rng, -3, 3);
    const auto s = shifted_frequencies(w, W);
    const double lhs = w * s.plus * (s.plus * s.plus + 3 * W * W);
    const double pp3 = s.plus_twice * s.plus_twice * s.plus_twice;
    const double rhs = (std::pow(w, 4) + pp3 * s.plus_twice) / 2 - W * pp3;
    const double scale = std::pow(w, 4) + std::abs(pp3 * s.plus_twice) + std::abs(W * pp3);
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return {"quartic rewrite of the radiative term", worst <= 1e-13,
          fmt::format("worst relative mismatch {:.3g}", worst)};
}

CheckResult sign_structure() {
  int bad = 0;
  const auto lossy = OscillatorModel::normalized(0.1, 1e-4);
  for (int i = 1; i < 300; ++i) {
    const double w = 3.0 * i / 300;
    if (w == 2.0) continue;
    const double ext = extinction_cross_section(lossy, DriveField::lcp(w), 2.0);
    if ((w < 2.0 && !(ext < 0.0)) || (w > 2.0 && !(ext > 0.0))) ++bad;
  }
  const auto no_rad = OscillatorModel::normalized(0.1, 0.0);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      const double W = 2.0 * r / 63;
      const double w = 2.0 * c / 63;
      double m = 0.0;
      try {
        m = torque(no_rad, DriveField::lcp(w), W);
      } catch (const SingularResonance&) {
        continue;
      }
      const int want = (w > W) - (w < W);
      const int got = (m > 0.0) - (m < 0.0);
      if (want != got) ++bad;
    }
  }
  return {"sign of sigma_ext and torque", bad == 0, fmt::format("{} violations", bad)};
}

CheckResult mirror_symmetry() {
  Rng rng(11);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto model = OscillatorModel::normalized(uniform(rng, 0.01, 0.5), uniform(rng, 0, 0.1));
    const double w = uniform(rng, 0, 3);
    const double W = uniform(rng, -3, 3);
    const auto a = cross_sections(model, DriveField::lcp(w), W);
    const auto b = cross_sections(model, DriveField::rcp(w), -W);
    worst = std::max({worst, rel(a.mechanical, b.mechanical), rel(a.absorption, b.absorption),
                      rel(a.elastic, b.elastic), rel(a.inelastic_plus, b.inelastic_minus),
                      rel(a.inelastic_minus, b.inelastic_plus), rel(a.extinction, b.extinction),
                      rel(torque(model, DriveField::lcp(w), W),
                          -torque(model, DriveField::rcp(w), -W))});
  }
  return {"mirror symmetry (LCP, Omega) <-> (RCP, -Omega)", worst <= 1e-12,
          fmt::format("worst relative mismatch {:.3g}", worst)};
}

// Eighth-order central differences.
template <class F>
std::pair<double, double> derivatives(F&& f, double t, double h) {
  static constexpr double d1[] = {4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
  static constexpr double d2[] = {8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
  double first = 0.0, second = -205.0 / 72 * f(t);
  for (int k = 1; k <= 4; ++k) {
    const double fp = f(t + k * h), fm = f(t - k * h);
    first += d1[k - 1] * (fp - fm);
    second += d2[k - 1] * (fp + fm);
  }
  return {first / h, second / (h * h)};
}

CheckResult radial_ode_residual() {
  Rng rng(3);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto model = OscillatorModel::normalized(uniform(rng, 0.01, 0.5), 0.0);
    const DriveField drive{uniform(rng, 0.05, 3),
                           {uniform(rng, -1, 1), uniform(rng, -1, 1)},
                           {uniform(rng, -1, 1), uniform(rng, -1, 1)}};
    const double W = uniform(rng, -3, 3);
    const double t = uniform(rng, 0, 100);
    auto p = [&](double s) { return steady_state_dipole(model, drive, W, s); };
    const double fast = std::abs(drive.frequency) + 2 * std::abs(W);
    const auto [dp, ddp] = derivatives(p, t, 0.05 / fast);
    const Complex phase = std::exp(Complex(0, -drive.frequency * t));
    const double field_r = 2.0 * ((drive.ex * phase).real() * std::cos(W * t) +
                                  (drive.ey * phase).real() * std::sin(W * t));
    const double k = 1.0 - W * W;
    const double terms[] = {ddp, model.damping * dp, k * p(t), field_r};
    const double res = ddp + model.damping * dp + k * p(t) - field_r;
    double scale = 0.0;
    for (double x : terms) scale = std::max(scale, std::abs(x));
    if (scale > 0.0) worst = std::max(worst, std::abs(res) / scale);
  }
  return {"steady state solves the radial equation", worst <= 1e-7,
          fmt::format("worst relative residual {:.3g}", worst)};
}

CheckResult rest_frame_limit() {
  Rng rng(5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto model = random_physical(rng, 0.5);
    const double w = uniform(rng, 0.1, 3) * model.natural_frequency;
    const auto drive = DriveField::lcp(w, uniform(rng, 0.1, 10));
    const double m = torque(model, drive, 0.0);
    const double expect = drive.field_squared() * static_polarizability(model, w).imag();
    worst = std::max(worst, rel(m, expect));
  }
  return {"Omega = 0 torque equals |E|^2 Im(alpha)", worst <= 1e-12,
          fmt::format("worst relative mismatch {:.3g}", worst)};
}

CheckResult optical_theorem() {
  Rng rng(9);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto model = random_physical(rng, 0.5);
    const double w = uniform(rng, 0.1, 3) * model.natural_frequency;
    const double c = model.light_speed;
    const double rad = 2.0 * w * w * w / (3.0 * c * c * c);
    const double loss = model.damping * w / model.coupling;
    worst = std::max(worst, std::abs(optical_theorem_residual(model, w)) / (rad + loss));
  }
  return {"optical theorem for the linked radiative time", worst <= 1e-12,
          fmt::format("worst relative residual {:.3g}", worst)};
}

CheckResult positivity() {
  Rng rng(13);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto model = OscillatorModel::normalized(uniform(rng, 0, 0.5), uniform(rng, 0, 0.1));
    const DriveField drive{uniform(rng, -3, 3),
                           {uniform(rng, -1, 1), uniform(rng, -1, 1)},
                           {uniform(rng, -1, 1), uniform(rng, -1, 1)}};
    try {
      const auto s = cross_sections(model, drive, uniform(rng, -3, 3));
      if (s.absorption < 0 || s.elastic < 0 || s.inelastic_plus < 0 || s.inelastic_minus < 0) {
        ++bad;
      }
    } catch (const SingularResonance&) {
    }
  }
  return {"absorption and scattering are non-negative", bad == 0,
          fmt::format("{} violations", bad)};
}

CheckResult heating_law() {
  const ThermalParams th{300.0, 1e-20};
  const bool ambient = equilibrium_temperature(th, 0.0) == 300.0;
  bool monotone = true;
  double prev = 300.0;
  for (int k = -3; k <= 12; ++k) {
    const double t = equilibrium_temperature(th, std::pow(10.0, k));
    if (!(t > prev)) monotone = false;
    prev = t;
  }
  const double lo = std::log(equilibrium_temperature(th, 1e9));
  const double hi = std::log(equilibrium_temperature(th, 1e12));
  const double slope = (hi - lo) / std::log(1e3);
  return {"heating law T_eq", ambient && monotone && std::abs(slope - 1.0 / 6) < 0.01,
          fmt::format("T_eq(0) = T0: {}, high-power slope {:.5f}", ambient, slope)};
}

CheckResult spin_up_quadrature() {
  const auto model = OscillatorModel::normalized(0.1, 1e-4);
  const auto drive = DriveField::lcp(0.5);
  RigidBodyParams body;
  body.moment_of_inertia = 2.5;
  const double target = 0.3;
  const double t = time_to_target(model, drive, body, target);
  const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double W) { return body.moment_of_inertia / torque(model, drive, W); }, 0.0, target,
      15, 1e-13);
  return {"spin-up time matches the quadrature of I/M", rel(t, q) <= 1e-6,
          fmt::format("ode {:.12g}, quadrature {:.12g}", t, q)};
}

CheckResult amplification() {
  const double g = 0.37;
  const double doubled = propagate_intensity(1.0, g, std::numbers::ln2 / g);
  MediumSpec medium;
  medium.number_density = 1.0;
  medium.path_length = 1.0;
  const auto model = OscillatorModel::normalized(0.1, 1e-4);
  for (double W : {0.8, 1.2, 2.0, 2.5}) medium.members.push_back({model, W, 0.25});
  const double gain = gain_coefficient(medium, DriveField::lcp(0.6));
  return {"amplification: doubling length and gain for Omega > omega",
          rel(doubled, 2.0) <= 4e-16 && gain > 0.0,
          fmt::format("I(ln2/g) = {:.17g}, g = {:.6g}", doubled, gain)};
}

CheckResult scan_round_trip() {
  ScanRequest req;
  req.model = OscillatorModel::normalized(0.1, 1e-4);
  req.frequency = {0.0, 2.0, 41};
  req.rotation = {-2.0, 2.0, 33};
  req.units = ScanUnits::fig2;
  const auto one = grid_scan(req, 1);
  const auto many = grid_scan(req, 4);
  std::ostringstream a, b;
  write_scan_csv(a, one);
  write_scan_csv(b, many);
  std::istringstream in(a.str());
  double worst = 0.0;
  for (const auto& row : read_scan_csv(in)) {
    if (row.singular) continue;
    const auto s = row.sections;
    // fig2 units scale the channels differently; undo before summing
    const auto scales = fig2_unit_scales(req.model);
    const CrossSectionSet raw{s.mechanical * scales.mech_abs,     s.absorption * scales.mech_abs,
                              s.elastic * scales.scattering,      s.inelastic_plus * scales.scattering,
                              s.inelastic_minus * scales.scattering, s.extinction * scales.mech_abs};
    const double scale = raw.partial_scale();
    if (scale > 0.0) worst = std::max(worst, std::abs(energy_balance_residual(raw)) / scale);
  }
  const bool same = a.str() == b.str();
  return {"scan CSV: thread-count independent bytes, balance on re-parse",
          same && worst <= 1e-10,
          fmt::format("identical: {}, worst re-parsed residual {:.3g}", same, worst)};
}

}  // namespace

std::vector<CheckResult> validation_suite() {
  using Check = CheckResult (*)();
  const Check checks[] = {balance_identity,   polynomial_identity, sign_structure,
                          mirror_symmetry,    radial_ode_residual, rest_frame_limit,
                          optical_theorem,    positivity,          heating_law,
                          spin_up_quadrature, amplification,       scan_round_trip};
  std::vector<CheckResult> out;
  for (Check c : checks) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"(check threw)", false, e.what()});
    }
  }
  return out;
}

int run_validate(std::ostream& out) {
  const auto results = validation_suite();
  int passed = 0;
  for (const auto& r : results) {
    out << fmt::format("{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    passed += r.passed ? 1 : 0;
  }
  const int failed = static_cast<int>(results.size()) - passed;
  out << fmt::format("{} passed, {} failed\n", passed, failed);
  return failed == 0 ? kExitOk : kExitValidation;
}

}  // namespace rotospin::cli
