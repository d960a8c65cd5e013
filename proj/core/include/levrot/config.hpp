#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "levrot/constants.hpp"
#include "levrot/coupling.hpp"
#include "levrot/geometry.hpp"
#include "levrot/trap.hpp"

namespace levrot::studio {

struct Table1Config {
  double b_m = 20e-9;
  double aspect_ratio = 2.5;
  std::vector<double> disk_ratios{0.125, 0.0625};  ///< c/b of the composite rows
};

struct ThermalCase {
  std::string particle;
  double omega_phi_hz = 0.0;
};

struct ThermalConfig {
  double temperature_K = 300.0;
  std::vector<ThermalCase> cases{{"prolate_b20", 5e6}, {"prolate_b80", 0.5e6}};
};

struct ChargesConfig {
  std::string particle = "prolate_b80";
  double omega_phi_hz = 0.5e6;
  double ratio = 3.0;  ///< omega_phi / omega_com
  double reference_count = 60.0;
};

struct StabilityChartConfig {
  double a_min = -0.2;
  double a_max = 0.2;
  int a_points = 21;
  double q_min = 0.0;
  double q_max = 1.0;
  int q_points = 51;
};

struct DynamicsConfig {
  double a = 0.0;
  double q = 0.2;
  double drive_hz = 5e6;
  double phi1_rad = 0.01;
  double phi2_rad = 0.005;
  double duration_periods = 400.0;  ///< in drive periods
  bool nonlinear = false;
  double damping_per_s = 0.0;
  int samples_per_period = 16;
};

struct SpinRunConfig {
  double field_T = 0.03;
  double rabi_hz = 500e6;
  double detuning_hz = 0.0;
};

struct ResonanceRunConfig {
  double rabi_hz = 500e6;
  double omega_phi_hz = 5e6;
};

struct CouplingRunConfig {
  std::string particle = "prolate_b20";
  double omega_phi_hz = 5e6;
  double rabi_hz = 500e6;
  double t1_s = 1e-3;
  double t2_s = 150e-6;
  double mechanical_linewidth_hz = 0.0;
};

struct Fig2Config {
  std::string particle = "prolate_b20";
  double omega_phi_hz = 5e6;
  coupling::MapGrid grid{};
  std::vector<double> overlay_rabi_hz{250e6, 500e6, 1000e6};
};

struct Fig4Class {
  std::string id;
  double omega_phi_hz = 0.0;
  std::vector<std::string> particles;
};

struct Fig4Config {
  double rabi_min_hz = 50e6;
  double rabi_max_hz = 1000e6;
  int rabi_points = 20;
  std::vector<Fig4Class> classes{
      {"b20", 5e6, {"prolate_b20", "oblate_b20"}},
      {"b80",
       0.5e6,
       {"prolate_b80", "oblate_b80", "composite_b80_c8", "composite_b80_c16",
        "composite_b80_massless"}}};
};

struct JcConfig {
  std::string particle = "prolate_b20";
  double omega_phi_hz = 5e6;
  double rabi_hz = 500e6;
  int n_max = 8;
  bool full_rabi = false;
  int initial_phonons = 1;
  double duration_periods = 2.0;  ///< in units of 1 / lambda_tilde
  int steps = 400;
  bool dissipative = false;
  double t1_s = 1e-3;
  double t2_star_s = 150e-6;
  double phonon_rate_per_s = 0.0;
};

/// Full description of a run. Defaults reproduce the reference scenarios.
struct RunConfig {
  PhysicalConstants constants{};
  trap::TrapConfig trap{};
  double surface_charge_Cm2 = 1e-3;
  geometry::QuadratureSettings quadrature{};
  std::map<std::string, geometry::ParticleSpec> particles = default_particles();

  Table1Config table1{};
  ThermalConfig thermal{};
  ChargesConfig charges{};
  StabilityChartConfig stability_chart{};
  DynamicsConfig dynamics{};
  SpinRunConfig spin{};
  ResonanceRunConfig resonance{};
  CouplingRunConfig coupling{};
  Fig2Config fig2_map{};
  Fig4Config fig4_curves{};
  JcConfig jc_sim{};

  std::string output_dir = "out";
  std::uint64_t seed = 0;  ///< reserved

  static std::map<std::string, geometry::ParticleSpec> default_particles();

  /// Looks up a named particle; throws ConfigError when missing.
  [[nodiscard]] const geometry::ParticleSpec& particle(const std::string& name) const;
  [[nodiscard]] geometry::BodyProperties body(const std::string& name) const;

  void validate() const;
  /// Canonical JSON text (sorted keys, fixed number formatting).
  [[nodiscard]] std::string to_json() const;
  /// FNV-1a 64 of to_json() with output_dir blanked, so the destination does not
  /// change the bytes written.
  [[nodiscard]] std::uint64_t hash() const;
};

/// Parses a JSON document on top of the defaults. Unknown keys are rejected.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace levrot::studio
