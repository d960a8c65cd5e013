#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "levrot/constants.hpp"
#include "levrot/geometry.hpp"
#include "levrot/nv_spin.hpp"

namespace levrot::coupling {

/// Quantised libration about y: phi = phi0 (a + a^dag), L = i L0 (a^dag - a).
struct RotationalMode {
  double omega_phi_rad_s = 0.0;
  double inertia_kgm2 = 0.0;
  double phi0_rad = 0.0;
  double l0_Js = 0.0;
};

RotationalMode rotational_mode(const geometry::BodyProperties& body, double omega_phi_rad_s,
                               const PhysicalConstants& constants);

/// Rates are ordinary frequencies (Hz).
struct CouplingReport {
  double lambda_hz = 0.0;        ///< gamma B phi0
  double lambda_tilde_hz = 0.0;  ///< lambda cos(theta) sin(psi)
  double theta = 0.0;
  double psi = 0.0;
  double field_T = 0.0;
  double omega_phi_rad_s = 0.0;
  double rabi_hz = 0.0;
  double detuning_hz = 0.0;
  double resonance_mismatch_rad_s = 0.0;  ///< omega_e' - omega_+ - omega_phi
  /// lambda_tilde <= 10 |omega_e' - omega_+| / 2 pi
  bool rwa_wide_bound_ok = true;
  /// lambda_tilde <= 0.1 omega_phi / 2 pi
  bool rwa_conventional_ok = true;
  /// "none", "conventional", "wide" or "both": which RWA bound fails first.
  std::string rwa_binding = "none";
};

CouplingReport dressed_coupling(const RotationalMode& mode, const nv::SpinConfig& spin,
                                const nv::MixedSpinSpectrum& mixed,
                                const nv::DressedSpectrum& dressed);

/// Spin and mechanical lifetimes. T2 follows 1/T2 = 1/(2 T1) + 1/T2*.
struct DecoherenceBudget {
  double t1_s = 1e-3;
  double t2_star_s = 1e-4;
  double mechanical_linewidth_hz = 0.0;

  [[nodiscard]] double t2_s() const { return 1.0 / (0.5 / t1_s + 1.0 / t2_star_s); }
  /// Budget reproducing a measured T2 for a given T1.
  static DecoherenceBudget from_t2(double t1_s, double t2_s, double mechanical_linewidth_hz = 0.0);
  void validate() const;
};

struct StrongCouplingVerdict {
  double lambda_t1 = 0.0;
  double lambda_t2 = 0.0;
  double lambda_over_mechanical = 0.0;  ///< infinite when no mechanical linewidth is given
  bool strong = false;                  ///< every ratio above 1
};

StrongCouplingVerdict strong_coupling_assessment(const CouplingReport& report,
                                                 const DecoherenceBudget& budget);

struct MapGrid {
  double field_min_T = 0.0;
  double field_max_T = 0.1;
  int field_points = 101;
  double psi_min = 0.0;
  double psi_max = 0.5 * std::numbers::pi;
  int psi_points = 101;

  void validate() const;
  [[nodiscard]] double field_at(int i) const;
  [[nodiscard]] double psi_at(int j) const;
};

struct CouplingMapPoint {
  double field_T = 0.0;
  double psi = 0.0;
  double lambda_tilde_hz = 0.0;
  /// Resonance reachable at this (B, psi) with a Rabi frequency no larger than the
  /// largest requested overlay value: tan(psi) = Omega_R / K(B).
  bool resonance_feasible = false;
};

struct ResonanceCurvePoint {
  double rabi_hz = 0.0;
  double field_T = 0.0;
  double psi = 0.0;
  double detuning_hz = 0.0;
  double lambda_tilde_hz = 0.0;
  bool reachable = false;
};

struct CouplingMap {
  MapGrid grid;
  std::vector<CouplingMapPoint> points;  ///< field-major: index i * psi_points + j
  std::vector<ResonanceCurvePoint> overlays;
};

/// lambda_tilde(B, psi) = gamma B phi0 cos(theta(B)) sin(psi) on the grid, plus the
/// resonant psi(B) curve for every Rabi frequency in `rabi_hz`.
CouplingMap coupling_map(const RotationalMode& mode, const nv::SpinConfig& spin,
                         const MapGrid& grid, std::span<const double> rabi_hz, int threads = 1);

struct ShapeCase {
  std::string id;
  geometry::BodyProperties body;
  double omega_phi_rad_s = 0.0;
};

struct RabiCurvePoint {
  std::string shape_id;
  double rabi_hz = 0.0;
  double field_T = 0.0;
  double lambda_tilde_hz = 0.0;
  bool reachable = false;
};

/// For each Rabi frequency, tune B to the Delta = 0 resonance and report the
/// coupling of every shape. Shape-major ordering.
std::vector<RabiCurvePoint> coupling_vs_rabi(std::span<const ShapeCase> shapes,
                                             std::span<const double> rabi_hz,
                                             const PhysicalConstants& constants, int threads = 1);

}  // namespace levrot::coupling
