#include "levrot/trap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "levrot/error.hpp"

namespace levrot::trap {
namespace {

using geometry::BodyProperties;

constexpr double kTraceTol = 1e-9;

// Restoring coefficient k (M u_tt = k V(t) u) and the matching mass or inertia M.
std::pair<double, double> restoring(const BodyProperties& body, const TrapConfig& trap, Mode mode) {
  const double scale = trap.efficiency * body.charge_C / (trap.gap_m * trap.gap_m);
  switch (mode) {
    case Mode::RotX: return {3.0 * scale * body.surface.s_x(), body.ix};
    case Mode::RotY: return {3.0 * scale * body.surface.s_y(), body.iy};
    case Mode::ComRadial: return {scale, body.mass_kg};
    case Mode::ComAxial: return {-2.0 * scale, body.mass_kg};
  }
  return {0.0, 0.0};
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::RotX: return "rot_x";
    case Mode::RotY: return "rot_y";
    case Mode::ComRadial: return "com_radial";
    case Mode::ComAxial: return "com_axial";
  }
  return "?";
}

void TrapConfig::validate() const {
  if (!(drive_rad_s > 0.0) || !std::isfinite(drive_rad_s))
    throw InvalidArgument("trap: drive frequency must be > 0");
  if (!(gap_m > 0.0) || !std::isfinite(gap_m)) throw InvalidArgument("trap: z0 must be > 0");
  if (!(efficiency > 0.0 && efficiency <= 1.0))
    throw InvalidArgument("trap: efficiency must lie in (0, 1]");
  if (!std::isfinite(v_ac_V) || !std::isfinite(v_dc_V))
    throw InvalidArgument("trap: voltages must be finite");
}

MathieuCoefficients mathieu_coefficients(const BodyProperties& body, const TrapConfig& trap,
                                         Mode mode) {
  trap.validate();
  if (body.charge_C == 0.0 || !std::isfinite(body.charge_C))
    throw InvalidArgument("mathieu_coefficients: body charge must be nonzero");
  const auto [k, inertia] = restoring(body, trap, mode);
  if (!(inertia > 0.0))
    throw InvalidArgument(std::string("mathieu_coefficients: zero inertia for mode ") +
                          std::string(to_string(mode)));
  const double denom = inertia * trap.drive_rad_s * trap.drive_rad_s;
  MathieuCoefficients c;
  c.mode = mode;
  c.q = k * trap.v_ac_V / denom;
  c.a = -2.0 * k * trap.v_dc_V / denom;
  return c;
}

SecularEntry secular_frequency(const MathieuCoefficients& c, const TrapConfig& trap) {
  const double arg = c.a + 0.5 * c.q * c.q;
  if (arg < 0.0)
    throw AntiTrappingError(std::string("secular_frequency: a + q^2/2 < 0 for mode ") +
                            std::string(to_string(c.mode)));
  SecularEntry e;
  e.mode = c.mode;
  e.omega_rad_s = 0.5 * trap.drive_rad_s * std::sqrt(arg);
  e.pseudopotential_valid = std::abs(c.q) <= kPseudopotentialMaxQ;
  return e;
}

double monodromy_trace(double a, double q) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 4>;  // (u1, u1', u2, u2')
  if (!std::isfinite(a) || !std::isfinite(q))
    throw InvalidArgument("monodromy_trace: non-finite coefficients");

  auto rhs = [a, q](const State& x, State& dx, double tau) {
    const double k = a - 2.0 * q * std::cos(2.0 * tau);
    dx[0] = x[1];
    dx[1] = -k * x[0];
    dx[2] = x[3];
    dx[3] = -k * x[2];
  };
  State x{1.0, 0.0, 0.0, 1.0};
  auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>{});
  std::size_t steps = 0;
  try {
    steps = odeint::integrate_adaptive(stepper, rhs, x, 0.0, std::numbers::pi, 1e-3);
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("monodromy_trace: integrator failed: ") + e.what());
  }
  const double trace = x[0] + x[3];
  if (!std::isfinite(trace))
    throw IntegrationError("monodromy_trace: non-finite result after " + std::to_string(steps) +
                           " steps");
  return trace;
}

StabilityVerdict floquet_stability(const MathieuCoefficients& c, const TrapConfig& trap) {
  trap.validate();
  StabilityVerdict v;
  v.mode = c.mode;
  v.monodromy_trace = monodromy_trace(c.a, c.q);
  const double excess = std::abs(v.monodromy_trace) - 2.0;
  v.stable = excess <= kTraceTol;
  v.marginal = std::abs(excess) <= kTraceTol;
  if (v.stable) {
    v.characteristic_exponent =
        std::acos(std::clamp(0.5 * v.monodromy_trace, -1.0, 1.0)) / std::numbers::pi;
  }
  return v;
}

double stability_boundary_q(double a, double q_stable, double q_unstable, double tol) {
  auto stable = [a](double q) { return std::abs(monodromy_trace(a, q)) <= 2.0 + kTraceTol; };
  if (!stable(q_stable) || stable(q_unstable))
    throw InvalidArgument("stability_boundary_q: bracket does not straddle the boundary");
  double lo = q_stable;
  double hi = q_unstable;
  while (std::abs(hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ThermalState thermal_angle(const BodyProperties& body, double omega_phi_rad_s,
                           double temperature_K, const PhysicalConstants& constants) {
  if (!(omega_phi_rad_s > 0.0)) throw InvalidArgument("thermal_angle: omega_phi must be > 0");
  if (!(temperature_K >= 0.0)) throw InvalidArgument("thermal_angle: temperature must be >= 0");
  if (!(body.iy > 0.0)) throw InvalidArgument("thermal_angle: I_Y must be > 0");
  ThermalState s;
  s.temperature_K = temperature_K;
  s.rms_angle_rad =
      std::sqrt(constants.k_B_JpK * temperature_K / (body.iy * omega_phi_rad_s * omega_phi_rad_s));
  return s;
}

ChargeBudget charge_budget(const BodyProperties& body, const TrapConfig& trap,
                           double target_omega_phi_rad_s, double ratio,
                           const PhysicalConstants& constants) {
  trap.validate();
  if (!(ratio > 0.0)) throw InvalidArgument("charge_budget: ratio must be > 0");
  if (!(target_omega_phi_rad_s > 0.0))
    throw InvalidArgument("charge_budget: target frequency must be > 0 (charge must be positive)");
  if (trap.v_ac_V == 0.0) throw InvalidArgument("charge_budget: V_ac must be nonzero");
  const double omega_com = target_omega_phi_rad_s / ratio;
  ChargeBudget b;
  b.rotation_to_com_ratio = ratio;
  b.charge_C = std::sqrt(2.0) * body.mass_kg * trap.drive_rad_s * trap.gap_m * trap.gap_m *
               omega_com / (trap.efficiency * std::abs(trap.v_ac_V));
  b.elementary_charges =
      static_cast<std::int64_t>(std::ceil(b.charge_C / constants.elementary_charge_C));
  if (b.elementary_charges < 1) b.elementary_charges = 1;
  return b;
}

}  // namespace levrot::trap
