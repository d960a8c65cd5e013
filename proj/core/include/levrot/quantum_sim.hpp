#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "levrot/coupling.hpp"
#include "levrot/nv_spin.hpp"

namespace levrot::quantum {

enum class ModelKind { FullRabi, JaynesCummings };

enum class Level { Plus = 0, Minus = 1, Excited = 2 };

/// Dressed energies in rad/s.
struct DressedLevels {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double omega_e_prime = 0.0;

  static DressedLevels from(const nv::DressedSpectrum& d) {
    return {d.omega_plus, d.omega_minus, d.omega_e_prime};
  }
};

/// H over {|+>, |->, |e>} (x) {|0> .. |N_max>} in rad/s; index = level * (N_max + 1) + n.
///
/// FullRabi couples 2 pi lambda (a + a^dag)(|e><+| + |+><e|); JaynesCummings keeps
/// only 2 pi lambda (a |e><+| + a^dag |+><e|). |-> is present but uncoupled.
struct QuantumModel {
  Eigen::MatrixXcd hamiltonian;
  ModelKind kind = ModelKind::JaynesCummings;
  DressedLevels levels;
  double lambda_tilde_hz = 0.0;
  double omega_phi_rad_s = 0.0;
  int n_max = 0;

  [[nodiscard]] int dim() const { return 3 * (n_max + 1); }
  [[nodiscard]] int index(Level l, int n) const { return static_cast<int>(l) * (n_max + 1) + n; }
};

QuantumModel build_model(const DressedLevels& levels, double omega_phi_rad_s,
                         double lambda_tilde_hz, int n_max, ModelKind kind);
QuantumModel build_model(const nv::DressedSpectrum& dressed, const coupling::RotationalMode& mode,
                         double lambda_tilde_hz, int n_max, ModelKind kind);

/// Relaxation |e> -> |+> at 1/T1, dephasing that adds 1/T2* to the +/e coherence
/// decay, and phonon loss a at `phonon_rate`.
struct LindbladChannels {
  double relaxation_rate = 0.0;
  double dephasing_rate = 0.0;
  double phonon_rate = 0.0;

  static LindbladChannels from_budget(const coupling::DecoherenceBudget& b) {
    return {1.0 / b.t1_s, 1.0 / b.t2_star_s, 0.0};
  }
  [[nodiscard]] bool unitary() const {
    return relaxation_rate == 0.0 && dephasing_rate == 0.0 && phonon_rate == 0.0;
  }
  void validate() const;
};

struct EvolveOptions {
  bool keep_states = false;
  double tolerance = 1e-9;  ///< trace, hermiticity and positivity checks
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> p_plus;
  std::vector<double> p_minus;
  std::vector<double> p_excited;
  std::vector<double> mean_phonons;
  std::vector<double> purity;
  std::vector<double> energy;              ///< Tr(rho H), rad/s
  std::vector<double> excitation_number;   ///< Tr(rho (|e><e| + a^dag a))
  std::vector<Eigen::MatrixXcd> states;    ///< filled when keep_states
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

Eigen::MatrixXcd pure_state(const QuantumModel& model, Level level, int n);
/// Thermal phonon mixture (truncated at N_max and renormalised) on one spin level.
Eigen::MatrixXcd thermal_state(const QuantumModel& model, Level level, double mean_occupation);

/// Master-equation propagation on `times` (strictly increasing, first entry is
/// the time of `rho0`). Unitary runs use the eigendecomposition of H; dissipative
/// runs exponentiate the Liouvillian per distinct step.
EvolutionResult evolve(const QuantumModel& model, const Eigen::MatrixXcd& rho0,
                       std::span<const double> times, const LindbladChannels& channels,
                       const EvolveOptions& options = {});

/// Population-oscillation frequency (Hz) from a damped-sinusoid fit of P_e(t).
/// For a resonant single-excitation manifold this is 2 lambda_tilde sqrt(N).
double exchange_frequency(std::span<const double> times, std::span<const double> excited);

}  // namespace levrot::quantum
