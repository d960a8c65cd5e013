#include "levrot/constants.hpp"

#include <cmath>
#include <string>

#include "levrot/error.hpp"

namespace levrot {

const char* version() { return LEVROT_VERSION; }


void PhysicalConstants::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidArgument(std::string("constant ") + name + " must be finite and > 0");
    }
  };
  check(hbar_Js, "hbar_Js");
  check(k_B_JpK, "k_B_JpK");
  check(elementary_charge_C, "elementary_charge_C");
  check(gamma_nv_hz_per_t, "gamma_nv_hz_per_t");
  check(zero_field_splitting_hz, "zero_field_splitting_hz");
  check(density_diamond_kgm3, "density_diamond_kgm3");
  check(density_silica_kgm3, "density_silica_kgm3");
}

}  // namespace levrot
