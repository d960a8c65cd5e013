#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levrot/constants.hpp"

namespace levrot::nv {

// Spin energies are angular frequencies (rad/s) everywhere in this module;
// inputs named *_hz are ordinary frequencies and are converted on entry.

/// Transverse field along lab x.
struct SpinConfig {
  double field_T = 0.0;
  double zero_field_splitting_hz = 2.87e9;
  double gamma_hz_per_t = 28.024e9;

  static SpinConfig from_constants(const PhysicalConstants& c, double field_T) {
    return {field_T, c.zero_field_splitting_hz, c.gamma_nv_hz_per_t};
  }
  void validate() const;
};

/// Eigenstructure of D S_z^2 + gamma B S_x.
///
/// |g> = cos t |0> - sin t |b>, |d> = (|-1> - |+1>)/sqrt2, |e> = sin t |0> + cos t |b>,
/// with |b> = (|-1> + |+1>)/sqrt2 and tan 2t = 2 gamma B / D.
struct MixedSpinSpectrum {
  double theta = 0.0;
  double omega_g = 0.0;
  double omega_d = 0.0;
  double omega_e = 0.0;
  /// Columns |g>, |d>, |e> in the {|-1>, |0>, |+1>} basis.
  Eigen::Matrix3d eigenvectors = Eigen::Matrix3d::Identity();

  [[nodiscard]] double omega_dg() const { return omega_d - omega_g; }
  [[nodiscard]] double omega_ed() const { return omega_e - omega_d; }
};

struct MicrowaveConfig {
  double rabi_hz = 0.0;
  double detuning_hz = 0.0;            ///< from omega_dg; ignored if drive_hz is set
  std::optional<double> drive_hz;      ///< absolute microwave frequency
};

/// Rotating-frame structure of the g<->d drive.
///
/// |+> = i sin p |g> + cos p |d>, |-> = -i cos p |g> + sin p |d>, tan 2p = Omega_R / Delta.
struct DressedSpectrum {
  double psi = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double omega_e_prime = 0.0;
  double detuning_rad_s = 0.0;
  double rabi_rad_s = 0.0;
  double drive_rad_s = 0.0;
  /// Columns |+>, |->, |e> in the {|g>, |d>, |e>} basis.
  Eigen::Matrix3cd eigenvectors = Eigen::Matrix3cd::Identity();
  std::vector<std::string> warnings;
};

struct SpinOperators {
  Eigen::Matrix3cd sx;
  Eigen::Matrix3cd sy;
  Eigen::Matrix3cd sz;
};

/// Spin-1 operators in the {|-1>, |0>, |+1>} basis.
SpinOperators spin_operators_lab();

/// Lab-frame Hamiltonian D S_z^2 + gamma B S_x in rad/s.
Eigen::Matrix3cd nv_hamiltonian(const SpinConfig& s);

MixedSpinSpectrum mixed_spectrum(const SpinConfig& s);

/// Closed-form dressed structure. omega_e' = omega_e - (omega + omega_g + omega_d)/2.
/// Warns when the g<->d drive is not well separated from the e<->d line
/// (|omega_ed - omega_dg| < kLeakageFactor * Omega_R).
DressedSpectrum dressed_spectrum(const MixedSpinSpectrum& m, const MicrowaveConfig& mw);

inline constexpr double kLeakageFactor = 5.0;

/// The 3x3 rotating-frame Hamiltonian over {|g>, |d>, |e>} (rad/s), origin at
/// (omega_g + omega_d)/2.
Eigen::Matrix3cd rotating_frame_hamiltonian(const DressedSpectrum& d);

SpinOperators spin_operators_mixed_basis(double theta);

struct ResonanceSolution {
  double detuning_rad_s = 0.0;
  double psi = 0.0;
  double field_T = 0.0;
};

/// Detuning that makes omega_e' - omega_+ = omega_phi at the configured field.
/// Solves Delta + sqrt(Delta^2 + Omega_R^2) = K with K = 2(omega_e - omega_d - omega_phi).
ResonanceSolution resonance_detuning(const SpinConfig& s, double rabi_hz, double omega_phi_rad_s);

/// Field that makes the resonance hold with Delta = 0 (bisection on B).
ResonanceSolution resonance_field(const SpinConfig& s, double rabi_hz, double omega_phi_rad_s);

}  // namespace levrot::nv
