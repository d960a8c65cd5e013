#pragma once

#include <numbers>

namespace levrot {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// SI constants plus the material and NV parameters used throughout.
///
/// `gamma_nv_hz_per_t` is an ordinary frequency per tesla; spin energies are
/// converted to angular units (rad/s) at the nv_spin boundary.
/// Library version string, e.g. "0.3.0".
const char* version();

struct PhysicalConstants {
  double hbar_Js = 1.054571817e-34;
  double k_B_JpK = 1.380649e-23;
  double elementary_charge_C = 1.602176634e-19;
  double gamma_nv_hz_per_t = 28.024e9;
  double zero_field_splitting_hz = 2.87e9;
  double density_diamond_kgm3 = 3515.0;
  double density_silica_kgm3 = 2200.0;

  [[nodiscard]] double planck_Js() const { return kTwoPi * hbar_Js; }

  /// Throws InvalidArgument unless every field is finite and strictly positive.
  void validate() const;
};

}  // namespace levrot
