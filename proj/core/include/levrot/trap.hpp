#pragma once

#include <cstdint>
#include <string_view>

#include "levrot/constants.hpp"
#include "levrot/geometry.hpp"

namespace levrot::trap {

/// Needle-trap drive: V(t) = V_dc + V_ac cos(Omega t) applied across a gap z0,
/// reduced by the electrode efficiency eta.
struct TrapConfig {
  double v_ac_V = 5000.0;
  double v_dc_V = 0.0;
  double drive_rad_s = kTwoPi * 5e6;
  double gap_m = 10e-6;
  double efficiency = 0.3;

  void validate() const;
};

enum class Mode { RotX, RotY, ComRadial, ComAxial };
std::string_view to_string(Mode m);

/// Coefficients of u'' + (a - 2 q cos 2 tau) u = 0 with tau = Omega t / 2.
///
/// Every mode obeys M u_tt = k V(t) u for a restoring coefficient k; the
/// coefficients are q = k V_ac / (M Omega^2) and a = -2 k V_dc / (M Omega^2).
/// Rotations use k = 3 eta Q S_mu / z0^2 with M = I_mu; the centre of mass
/// uses k = eta Q / z0^2 (radial) and k = -2 eta Q / z0^2 (axial) with M = m.
struct MathieuCoefficients {
  Mode mode = Mode::RotY;
  double a = 0.0;
  double q = 0.0;
};

struct SecularEntry {
  Mode mode = Mode::RotY;
  double omega_rad_s = 0.0;
  bool pseudopotential_valid = true;  ///< |q| <= kPseudopotentialMaxQ
};

inline constexpr double kPseudopotentialMaxQ = 0.4;

struct StabilityVerdict {
  Mode mode = Mode::RotY;
  bool stable = false;
  bool marginal = false;  ///< |trace| within tolerance of 2
  double monodromy_trace = 0.0;
  /// Floquet characteristic exponent nu in [0, 1] when stable (omega = nu Omega / 2).
  double characteristic_exponent = 0.0;
};

struct ThermalState {
  double temperature_K = 0.0;
  double rms_angle_rad = 0.0;
};

struct ChargeBudget {
  double charge_C = 0.0;
  std::int64_t elementary_charges = 0;
  double rotation_to_com_ratio = 0.0;
};

MathieuCoefficients mathieu_coefficients(const geometry::BodyProperties& body,
                                         const TrapConfig& trap, Mode mode);

/// omega = (Omega / 2) sqrt(a + q^2 / 2). Throws AntiTrappingError when a + q^2/2 < 0.
SecularEntry secular_frequency(const MathieuCoefficients& c, const TrapConfig& trap);

/// Trace of the one-period monodromy matrix of the Mathieu equation.
double monodromy_trace(double a, double q);

StabilityVerdict floquet_stability(const MathieuCoefficients& c, const TrapConfig& trap);

/// Bisection on q (a fixed) for the edge of the first stability region in
/// [q_stable, q_unstable].
double stability_boundary_q(double a, double q_stable, double q_unstable, double tol = 1e-6);

/// Equipartition: sqrt(<phi^2>) = sqrt(k_B T / (I_Y omega^2)).
ThermalState thermal_angle(const geometry::BodyProperties& body, double omega_phi_rad_s,
                           double temperature_K, const PhysicalConstants& constants);

/// Charge needed so that the axial pseudopotential frequency
/// |Q| V_ac eta / (sqrt(2) m Omega z0^2) equals omega_phi / ratio.
ChargeBudget charge_budget(const geometry::BodyProperties& body, const TrapConfig& trap,
                           double target_omega_phi_rad_s, double ratio,
                           const PhysicalConstants& constants);

}  // namespace levrot::trap
