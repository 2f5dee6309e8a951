#pragma once

// Reference computations written independently of the library, in long double.
//
// Real signals are stored as phasor lists: s(t) = sum_k c_k exp(-i nu_k t),
// with both +nu and -nu terms present so s is real. Products, derivatives and
// time averages are then exact algebra, and every observable (torque, absorbed
// power, work done by the field, radiated line power) is obtained from the
// equations of motion rather than from closed-form cross sections.
//
// Rotating rod: r = rho (cos Wt, sin Wt). Lab-frame force on the charge is
// Q E + m tau r''' (radiation reaction). Its radial projection in the rotating
// frame gives, for rho ~ exp(-i nu t),
//   d(nu) = w0^2 - W^2 - nu^2 - i gamma nu - i tau nu (nu^2 + 3 W^2).

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using real = long double;
using cplx = std::complex<real>;

struct Term {
  real nu;
  std::array<cplx, 2> c;  // x, y components (scalars use x only)
};

struct Signal {
  std::vector<Term> terms;

  static Signal real_part(real nu, cplx x, cplx y = {}) {
    // 2 Re(v e^{-i nu t}) = v e^{-i nu t} + conj(v) e^{+i nu t}
    return {{{nu, {x, y}}, {-nu, {std::conj(x), std::conj(y)}}}};
  }
  Signal& operator+=(const Signal& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }
  Signal scaled(real k) const {
    Signal s = *this;
    for (auto& t : s.terms) t.c = {t.c[0] * k, t.c[1] * k};
    return s;
  }
  Signal derivative() const {
    Signal s = *this;
    for (auto& t : s.terms) {
      const cplx f(0, -t.nu);
      t.c = {t.c[0] * f, t.c[1] * f};
    }
    return s;
  }
};

// Scalar times vector.
inline Signal times(const Signal& scalar, const Signal& vec) {
  Signal out;
  for (const auto& a : scalar.terms) {
    for (const auto& b : vec.terms) {
      out.terms.push_back({a.nu + b.nu, {a.c[0] * b.c[0], a.c[0] * b.c[1]}});
    }
  }
  return out;
}

// Dot product, returned as a scalar signal.
inline Signal dot(const Signal& u, const Signal& v) {
  Signal out;
  for (const auto& a : u.terms) {
    for (const auto& b : v.terms) {
      out.terms.push_back({a.nu + b.nu, {a.c[0] * b.c[0] + a.c[1] * b.c[1], {}}});
    }
  }
  return out;
}

// Long-time average of a real scalar signal: the zero-frequency content.
inline real average(const Signal& s, real tol = 1e-12L) {
  cplx sum = 0;
  for (const auto& t : s.terms) {
    if (std::abs(t.nu) <= tol) sum += t.c[0];
  }
  return sum.real();
}

// Power in each positive-frequency line of a vector signal, grouped by frequency.
struct Line {
  real nu;
  std::array<cplx, 2> amp;
};
inline std::vector<Line> lines(const Signal& s, real tol = 1e-12L) {
  std::vector<Line> out;
  for (const auto& t : s.terms) {
    if (t.nu <= tol) continue;
    bool merged = false;
    for (auto& l : out) {
      if (std::abs(l.nu - t.nu) <= tol) {
        l.amp[0] += t.c[0];
        l.amp[1] += t.c[1];
        merged = true;
      }
    }
    if (!merged) out.push_back({t.nu, t.c});
  }
  return out;
}

struct Setup {
  real coupling = 1;  // Q^2/m
  real w0 = 1;
  real gamma = 0;
  real tau = 0;
  real c = 1;
  cplx ex, ey;  // E = (ex x + ey y) e^{-i w t} + c.c.
  real w = 0;
  real W = 0;
};

struct Observables {
  real torque;
  real sigma_mech, sigma_abs, sigma_ext;
  real sigma_elastic, sigma_plus, sigma_minus;  // lines at w, w + 2W, w - 2W
  real intensity;
};

inline cplx d_of(const Setup& s, real nu) {
  return cplx(s.w0 * s.w0 - s.W * s.W - nu * nu,
              -s.gamma * nu - s.tau * nu * (nu * nu + 3 * s.W * s.W));
}

struct Fields {
  Signal E, rho_hat, phi_hat, p;  // p = Q rho, scalar
};

inline Fields fields(const Setup& s) {
  Fields f;
  f.E = Signal::real_part(s.w, s.ex, s.ey);
  // rho_hat = (cos Wt, sin Wt), phi_hat = (-sin Wt, cos Wt)
  f.rho_hat = Signal::real_part(s.W, 0.5L, cplx(0, 0.5L));
  f.phi_hat = Signal::real_part(s.W, cplx(0, -0.5L), 0.5L);
  // Drive on the radial coordinate, E . rho_hat, split into its lines; each
  // line is divided by d at that frequency.
  const Signal drive = dot(f.E, f.rho_hat);
  for (const auto& t : drive.terms) {
    f.p.terms.push_back({t.nu, {s.coupling * t.c[0] / d_of(s, t.nu), {}}});
  }
  return f;
}

inline Observables observe(const Setup& s) {
  const Fields f = fields(s);
  const Signal p_lab = times(f.p, f.rho_hat);
  const Signal p3 = p_lab.derivative().derivative().derivative();
  const real e2 = std::norm(s.ex) + std::norm(s.ey);
  const real pi = std::acos(-1.0L);
  const real I = s.c * e2 / (2 * pi);

  // frequencies are sums of w and +-W, so they only coincide up to rounding
  const real ftol = 1e-9L * (std::abs(s.w) + std::abs(s.W) + s.w0);

  Observables o{};
  o.intensity = I;
  // tau = 2 Q^2 / 3 m c^3 in the force m tau r''', so m tau / Q^2 = tau / coupling
  Signal tangential = dot(f.E, f.phi_hat);
  tangential += dot(p3, f.phi_hat).scaled(s.tau / s.coupling);
  // torque = < rho (Q E + m tau r''') . phi_hat > = < p (E + (tau/coupling) p_lab''') . phi_hat >
  o.torque = average(dot(f.p, tangential), ftol);
  o.sigma_mech = o.torque * s.W / I;
  const Signal pdot = f.p.derivative();
  o.sigma_abs = s.gamma * average(dot(pdot, pdot), ftol) / s.coupling / I;
  o.sigma_ext = average(dot(p_lab.derivative(), f.E), ftol) / I;
  // Larmor: 2 Re(p0 e^{-i nu t}) radiates 4 nu^4 |p0|^2 / 3c^3 = 2 nu^4 |p0|^2 tau / coupling
  for (const auto& l : lines(p_lab, ftol)) {
    const real P = 2 * std::pow(l.nu, 4) * (std::norm(l.amp[0]) + std::norm(l.amp[1])) * s.tau /
                   s.coupling;
    const real sig = P / I;
    if (std::abs(l.nu - s.w) < ftol) o.sigma_elastic += sig;
    else if (std::abs(l.nu - (s.w + 2 * s.W)) < ftol) o.sigma_plus += sig;
    else if (std::abs(l.nu - std::abs(s.w - 2 * s.W)) < ftol) o.sigma_minus += sig;
  }
  return o;
}

// Steady-state p(t) and its first two derivatives, from the phasors.
inline std::array<real, 3> dipole_and_derivatives(const Setup& s, real t) {
  const Fields f = fields(s);
  std::array<real, 3> out{};
  Signal cur = f.p;
  for (int k = 0; k < 3; ++k) {
    cplx v = 0;
    for (const auto& term : cur.terms) v += term.c[0] * std::exp(cplx(0, -term.nu * t));
    out[static_cast<std::size_t>(k)] = v.real();
    cur = cur.derivative();
  }
  return out;
}

}  // namespace oracle
