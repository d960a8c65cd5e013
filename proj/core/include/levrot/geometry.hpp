#pragma once

#include <string>
#include <variant>

#include "levrot/constants.hpp"

namespace levrot::geometry {

enum class Material { Diamond, Silica };

// Body frame: Z is the symmetry axis. `b` is always the smallest radius and
// `a` the largest, so a prolate body is long along Z and an oblate one is
// flat along Z.
struct Sphere {
  double b_m;
};
struct ProlateEllipsoid {
  double a_m;  ///< polar semi-axis (Z)
  double b_m;  ///< equatorial semi-axis
};
struct OblateEllipsoid {
  double a_m;  ///< equatorial semi-axis
  double b_m;  ///< polar semi-axis (Z)
};
/// Diamond sphere of radius `b` concentric with a thin disk modelled as an
/// oblate ellipsoid (equatorial `a`, polar half-thickness `c`).
struct Composite {
  double b_m;
  double a_m;
  double c_m;
  Material disk_material = Material::Silica;
  /// Disk carries charge but no mass: the bare-sphere inertia limit.
  bool zero_mass_disk = false;
};

using Shape = std::variant<Sphere, ProlateEllipsoid, OblateEllipsoid, Composite>;

struct ParticleSpec {
  Shape shape;
  Material material = Material::Diamond;

  void validate() const;
  [[nodiscard]] std::string label() const;
};

struct ChargeModel {
  enum class Mode { TotalCharge, SurfaceDensity };
  Mode mode = Mode::TotalCharge;
  double value = 0.0;  ///< C or C/m^2 depending on mode

  static ChargeModel total(double charge_C) { return {Mode::TotalCharge, charge_C}; }
  static ChargeModel surface_density(double sigma_Cm2) { return {Mode::SurfaceDensity, sigma_Cm2}; }
};

/// Second moments of a uniform surface charge, per unit charge.
struct SurfaceMoments {
  double area_m2 = 0.0;
  double rx2_m2 = 0.0;
  double ry2_m2 = 0.0;
  double rz2_m2 = 0.0;

  [[nodiscard]] double s_x() const { return rz2_m2 - ry2_m2; }
  [[nodiscard]] double s_y() const { return rz2_m2 - rx2_m2; }
};

struct MassProperties {
  double mass_kg = 0.0;
  double ix = 0.0;
  double iy = 0.0;
  double iz = 0.0;
};

struct BodyProperties {
  double mass_kg = 0.0;
  double ix = 0.0;
  double iy = 0.0;
  double iz = 0.0;
  SurfaceMoments surface;
  double charge_C = 0.0;
};

struct QuadratureSettings {
  int nodes = 64;          ///< starting Gauss-Legendre order per surface
  int max_nodes = 1 << 14;
  double rel_tol = 1e-10;

  void validate() const;
};

/// Area and charge moments by Gauss-Legendre quadrature in cos(theta), with
/// node doubling until every moment changes by less than `q.rel_tol`.
/// Composite surfaces are the union of the sphere and disk surfaces.
SurfaceMoments surface_moments(const ParticleSpec& spec, const QuadratureSettings& q = {});

MassProperties inertia_and_mass(const ParticleSpec& spec, const PhysicalConstants& constants);

BodyProperties build_body(const ParticleSpec& spec, const ChargeModel& charge,
                          const QuadratureSettings& q, const PhysicalConstants& constants);

/// Closed-form area of a spheroid with polar semi-axis `polar` and
/// equatorial semi-axis `equatorial`.
double spheroid_area(double polar, double equatorial);

double density(Material m, const PhysicalConstants& constants);

}  // namespace levrot::geometry
