#include "levrot/rotor_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "levrot/error.hpp"
#include "levrot/spectrum.hpp"

namespace levrot::rotor {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 4>;  // phi1, phi2, dphi1, dphi2

constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct Rhs {
  RotorDrive drive;
  TorqueModel model;
  double gamma;

  void operator()(const State& x, State& dx, double t) const {
    const double w2 = 0.25 * drive.drive_rad_s * drive.drive_rad_s;
    const double c = std::cos(drive.drive_rad_s * t);
    const double g1 = w2 * (-drive.a1 + 2.0 * drive.q1 * c);
    const double g2 = w2 * (-drive.a2 + 2.0 * drive.q2 * c);
    double f1 = x[0];
    double f2 = x[1];
    if (model == TorqueModel::Nonlinear) {
      const double c1 = std::cos(x[0]);
      f1 = std::cos(x[1]) * 0.5 * std::sin(2.0 * x[0]);
      f2 = c1 * c1 * 0.5 * std::sin(2.0 * x[1]);
    }
    dx[0] = x[2];
    dx[1] = x[3];
    dx[2] = g1 * f1 - gamma * x[2];
    dx[3] = g2 * f2 - gamma * x[3];
  }
};

RotorState to_rotor_state(const State& x, double t) { return {t, x[0], x[1], x[2], x[3]}; }

}  // namespace

RotorDrive RotorDrive::from_trap(const geometry::BodyProperties& body,
                                 const trap::TrapConfig& trap) {
  const auto y = trap::mathieu_coefficients(body, trap, trap::Mode::RotY);
  const auto x = trap::mathieu_coefficients(body, trap, trap::Mode::RotX);
  return {y.a, y.q, x.a, x.q, trap.drive_rad_s};
}

RotorDrive RotorDrive::symmetric(double a, double q, double drive_rad_s) {
  return {a, q, a, q, drive_rad_s};
}

Trajectory simulate(const RotorDrive& drive, TorqueModel model, const RotorState& init,
                    double duration_s, const DampingModel& damping,
                    const SimulationSettings& settings) {
  if (!(drive.drive_rad_s > 0.0)) throw InvalidArgument("simulate: drive frequency must be > 0");
  if (!std::isfinite(duration_s) || duration_s == 0.0)
    throw InvalidArgument("simulate: duration must be finite and nonzero");
  if (!(damping.rate_per_s >= 0.0)) throw InvalidArgument("simulate: damping must be >= 0");
  if (settings.samples_per_drive_period < 4)
    throw InvalidArgument("simulate: need at least 4 samples per drive period");

  const double period = 2.0 * std::numbers::pi / drive.drive_rad_s;
  const double dir = duration_s > 0.0 ? 1.0 : -1.0;
  const double h = dir * period / settings.samples_per_drive_period;
  const auto n_samples = static_cast<std::size_t>(std::floor(std::abs(duration_s / h))) + 1;

  Trajectory traj;
  traj.drive = drive;
  traj.damping = damping;
  traj.model = model;
  traj.sample_interval_s = std::abs(h);
  traj.samples.reserve(n_samples);

  const Rhs rhs{drive, model, damping.rate_per_s};
  State x{init.phi1_rad, init.phi2_rad, init.dphi1_rad_s, init.dphi2_rad_s};
  auto stepper = odeint::make_dense_output(settings.abs_tol, settings.rel_tol,
                                           odeint::runge_kutta_dopri5<State>{});
  const double t0 = init.time_s;
  stepper.initialize(x, t0, h / 8.0);
  traj.samples.push_back(to_rotor_state(x, t0));

  std::size_t steps = 0;
  for (std::size_t k = 1; k < n_samples; ++k) {
    const double tk = t0 + static_cast<double>(k) * h;
    while (dir * (stepper.current_time() - tk) < 0.0) {
      stepper.do_step(rhs);
      if (++steps > 200'000'000)
        throw IntegrationError("simulate: step budget exhausted at t=" +
                               std::to_string(stepper.current_time()));
    }
    State xk;
    stepper.calc_state(tk, xk);
    for (double v : xk)
      if (!std::isfinite(v))
        throw IntegrationError("simulate: non-finite state at t=" + std::to_string(tk) +
                               " after " + std::to_string(steps) + " steps");
    traj.samples.push_back(to_rotor_state(xk, tk));
    if (std::abs(xk[0]) >= kHalfPi || std::abs(xk[1]) >= kHalfPi) {
      traj.unstable = true;
      break;
    }
  }
  return traj;
}

Trajectory simulate_linear(const geometry::BodyProperties& body, const trap::TrapConfig& trap,
                           const RotorState& init, double duration_s,
                           const DampingModel& damping, const SimulationSettings& settings) {
  return simulate(RotorDrive::from_trap(body, trap), TorqueModel::Linear, init, duration_s,
                  damping, settings);
}

Trajectory simulate_nonlinear(const geometry::BodyProperties& body, const trap::TrapConfig& trap,
                              const RotorState& init, double duration_s,
                              const DampingModel& damping, const SimulationSettings& settings) {
  return simulate(RotorDrive::from_trap(body, trap), TorqueModel::Nonlinear, init, duration_s,
                  damping, settings);
}

double extract_secular_frequency(const Trajectory& t) {
  if (t.unstable) throw ExtractionError("extract_secular_frequency: trajectory is unstable");
  if (t.samples.size() < 1024)
    throw ExtractionError("extract_secular_frequency: need at least 1024 samples");
  std::vector<double> p1;
  std::vector<double> p2;
  p1.reserve(t.samples.size());
  p2.reserve(t.samples.size());
  double m1 = 0.0;
  double m2 = 0.0;
  for (const auto& s : t.samples) {
    p1.push_back(s.phi1_rad);
    p2.push_back(s.phi2_rad);
    m1 = std::max(m1, std::abs(s.phi1_rad));
    m2 = std::max(m2, std::abs(s.phi2_rad));
  }
  const double f_drive = t.drive.drive_rad_s / (2.0 * std::numbers::pi);
  const auto& sig = m1 >= m2 ? p1 : p2;
  return 2.0 * std::numbers::pi *
         spectrum::dominant_frequency(sig, t.sample_interval_s, 0.5 * f_drive);
}

}  // namespace levrot::rotor
