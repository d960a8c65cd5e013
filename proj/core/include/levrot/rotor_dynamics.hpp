#pragma once

#include <vector>

#include "levrot/geometry.hpp"
#include "levrot/trap.hpp"

namespace levrot::rotor {

/// Two Euler angles: phi1 about y, then phi2 about the rotated x'.
struct RotorState {
  double time_s = 0.0;
  double phi1_rad = 0.0;
  double phi2_rad = 0.0;
  double dphi1_rad_s = 0.0;
  double dphi2_rad_s = 0.0;
};

/// Linear torque -Gamma I dphi/dt.
struct DampingModel {
  double rate_per_s = 0.0;
};

/// Mathieu coefficients driving each angle: phi1 follows the RotY mode, phi2 the RotX mode.
struct RotorDrive {
  double a1 = 0.0;
  double q1 = 0.0;
  double a2 = 0.0;
  double q2 = 0.0;
  double drive_rad_s = 0.0;

  static RotorDrive from_trap(const geometry::BodyProperties& body, const trap::TrapConfig& trap);
  /// Same (a, q) on both angles.
  static RotorDrive symmetric(double a, double q, double drive_rad_s);
};

enum class TorqueModel { Linear, Nonlinear };

struct SimulationSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  int samples_per_drive_period = 16;
};

struct Trajectory {
  std::vector<RotorState> samples;
  double sample_interval_s = 0.0;
  RotorDrive drive;
  DampingModel damping;
  TorqueModel model = TorqueModel::Linear;
  /// An angle left (-pi/2, pi/2); `samples` stops at the first such point.
  bool unstable = false;
};

/// Integrates I phi'' = V(t) K phi - Gamma I phi' for both angles, written in
/// Mathieu form phi_tt = (Omega^2/4)(-a + 2 q cos Omega t) phi - Gamma phi_t.
/// A negative `duration_s` integrates backwards in time from `init.time_s`.
Trajectory simulate(const RotorDrive& drive, TorqueModel model, const RotorState& init,
                    double duration_s, const DampingModel& damping,
                    const SimulationSettings& settings = {});

Trajectory simulate_linear(const geometry::BodyProperties& body, const trap::TrapConfig& trap,
                           const RotorState& init, double duration_s,
                           const DampingModel& damping, const SimulationSettings& settings = {});
/// Full two-angle torque: the restoring term of phi1 carries cos(phi2) sin(2 phi1) / 2
/// and that of phi2 carries cos^2(phi1) sin(2 phi2) / 2. Spin about Z is frozen.
Trajectory simulate_nonlinear(const geometry::BodyProperties& body, const trap::TrapConfig& trap,
                              const RotorState& init, double duration_s,
                              const DampingModel& damping,
                              const SimulationSettings& settings = {});

/// Dominant sub-drive line (rad/s) of the angle with the larger excursion.
double extract_secular_frequency(const Trajectory& t);

}  // namespace levrot::rotor
