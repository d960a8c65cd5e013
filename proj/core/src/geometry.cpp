#include "levrot/geometry.hpp"

#include <algorithm>
#include <string>
#include <vector>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levrot/error.hpp"
#include "levrot/quadrature.hpp"

namespace levrot::geometry {
namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Raw surface integrals of a uniform unit density: area, int x^2 dS, int y^2 dS, int z^2 dS.
struct RawMoments {
  double area = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
  double z2 = 0.0;

  RawMoments& operator+=(const RawMoments& o) {
    area += o.area;
    x2 += o.x2;
    y2 += o.y2;
    z2 += o.z2;
    return *this;
  }
};

// Spheroid with polar semi-axis `c` (along Z) and equatorial semi-axis `r`,
// parametrised by u = cos(theta):
//   dS = 2 pi r sqrt(c^2 (1 - u^2) + r^2 u^2) du,  z = c u,  <x^2>_phi = r^2 (1 - u^2) / 2.
RawMoments spheroid_moments(double c, double r, const quadrature::GaussLegendreRule& rule) {
  RawMoments m;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double s2 = 1.0 - u * u;
    const double ds = 2.0 * kPi * r * std::sqrt(c * c * s2 + r * r * u * u) * rule.weights[i];
    m.area += ds;
    const double xy = 0.5 * r * r * s2 * ds;
    m.x2 += xy;
    m.y2 += xy;
    m.z2 += c * c * u * u * ds;
  }
  if (c == r) {
    // a sphere is isotropic; keep the rounding noise out of S_X and S_Y
    const double iso = (m.x2 + m.y2 + m.z2) / 3.0;
    m.x2 = m.y2 = m.z2 = iso;
  }
  return m;
}

struct SpheroidPart {
  double polar;
  double equatorial;
};

std::vector<SpheroidPart> surface_parts(const ParticleSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Sphere& s) { return std::vector<SpheroidPart>{{s.b_m, s.b_m}}; },
          [](const ProlateEllipsoid& p) { return std::vector<SpheroidPart>{{p.a_m, p.b_m}}; },
          [](const OblateEllipsoid& o) { return std::vector<SpheroidPart>{{o.b_m, o.a_m}}; },
          [](const Composite& c) {
            return std::vector<SpheroidPart>{{c.b_m, c.b_m}, {c.c_m, c.a_m}};
          },
      },
      spec.shape);
}

RawMoments integrate(const std::vector<SpheroidPart>& parts, int nodes) {
  const auto rule = quadrature::gauss_legendre(nodes);
  RawMoments total;
  for (const auto& p : parts) total += spheroid_moments(p.polar, p.equatorial, rule);
  return total;
}

double rel_change(double prev, double next, double scale) {
  return std::abs(next - prev) / std::max(std::abs(scale), 1e-300);
}

// Solid ellipsoid with semi-axes (ax, ay, az).
MassProperties solid_ellipsoid(double rho, double ax, double ay, double az) {
  MassProperties m;
  m.mass_kg = rho * 4.0 / 3.0 * kPi * ax * ay * az;
  m.ix = m.mass_kg * (ay * ay + az * az) / 5.0;
  m.iy = m.mass_kg * (ax * ax + az * az) / 5.0;
  m.iz = m.mass_kg * (ax * ax + ay * ay) / 5.0;
  return m;
}

}  // namespace

double density(Material m, const PhysicalConstants& constants) {
  return m == Material::Diamond ? constants.density_diamond_kgm3 : constants.density_silica_kgm3;
}

void ParticleSpec::validate() const {
  std::visit(Overloaded{
                 [](const Sphere& s) {
                   if (!positive_finite(s.b_m)) throw InvalidArgument("sphere: b must be > 0");
                 },
                 [](const ProlateEllipsoid& p) {
                   if (!positive_finite(p.b_m) || !positive_finite(p.a_m) || p.a_m < p.b_m)
                     throw InvalidArgument("prolate ellipsoid: need a >= b > 0");
                 },
                 [](const OblateEllipsoid& o) {
                   if (!positive_finite(o.b_m) || !positive_finite(o.a_m) || o.a_m < o.b_m)
                     throw InvalidArgument("oblate ellipsoid: need a >= b > 0");
                 },
                 [](const Composite& c) {
                   if (!positive_finite(c.b_m) || !positive_finite(c.a_m) ||
                       !positive_finite(c.c_m) || c.c_m > c.b_m || c.b_m > c.a_m)
                     throw InvalidArgument("composite: need 0 < c <= b <= a");
                 },
             },
             shape);
}

std::string ParticleSpec::label() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Sphere& s) { os << "sphere(b=" << s.b_m << ")"; },
                 [&](const ProlateEllipsoid& p) {
                   os << "prolate(a=" << p.a_m << ",b=" << p.b_m << ")";
                 },
                 [&](const OblateEllipsoid& o) {
                   os << "oblate(a=" << o.a_m << ",b=" << o.b_m << ")";
                 },
                 [&](const Composite& c) {
                   os << "composite(b=" << c.b_m << ",a=" << c.a_m << ",c=" << c.c_m
                      << (c.zero_mass_disk ? ",massless-disk" : "") << ")";
                 },
             },
             shape);
  return os.str();
}

void QuadratureSettings::validate() const {
  if (nodes < 16) throw InvalidArgument("quadrature: nodes must be >= 16");
  if (max_nodes < nodes) throw InvalidArgument("quadrature: max_nodes must be >= nodes");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
    throw InvalidArgument("quadrature: rel_tol must be in (0, 1e-3]");
}

SurfaceMoments surface_moments(const ParticleSpec& spec, const QuadratureSettings& q) {
  spec.validate();
  q.validate();
  const auto parts = surface_parts(spec);

  int n = q.nodes;
  RawMoments prev = integrate(parts, n);
  for (;;) {
    if (2 * n > q.max_nodes) {
      throw QuadratureError("surface_moments: no convergence for " + spec.label() +
                                " within " + std::to_string(q.max_nodes) + " nodes",
                            prev.area, prev.area);
    }
    n *= 2;
    const RawMoments next = integrate(parts, n);
    // second moments are compared on the scale of the largest one so that a
    // vanishing component (a thin disk's z^2) cannot stall convergence
    const double scale2 = std::max({next.x2, next.y2, next.z2});
    const double worst = std::max({rel_change(prev.area, next.area, next.area),
                                   rel_change(prev.x2, next.x2, scale2),
                                   rel_change(prev.y2, next.y2, scale2),
                                   rel_change(prev.z2, next.z2, scale2)});
    if (worst < q.rel_tol) {
      SurfaceMoments out;
      out.area_m2 = next.area;
      out.rx2_m2 = next.x2 / next.area;
      out.ry2_m2 = next.y2 / next.area;
      out.rz2_m2 = next.z2 / next.area;
      return out;
    }
    if (2 * n > q.max_nodes) {
      throw QuadratureError("surface_moments: no convergence for " + spec.label() +
                                " within " + std::to_string(q.max_nodes) + " nodes",
                            prev.area, next.area);
    }
    prev = next;
  }
}

MassProperties inertia_and_mass(const ParticleSpec& spec, const PhysicalConstants& constants) {
  spec.validate();
  const double rho = density(spec.material, constants);
  return std::visit(
      Overloaded{
          [&](const Sphere& s) { return solid_ellipsoid(rho, s.b_m, s.b_m, s.b_m); },
          [&](const ProlateEllipsoid& p) { return solid_ellipsoid(rho, p.b_m, p.b_m, p.a_m); },
          [&](const OblateEllipsoid& o) { return solid_ellipsoid(rho, o.a_m, o.a_m, o.b_m); },
          [&](const Composite& c) {
            MassProperties m = solid_ellipsoid(rho, c.b_m, c.b_m, c.b_m);
            if (!c.zero_mass_disk) {
              const auto disk =
                  solid_ellipsoid(density(c.disk_material, constants), c.a_m, c.a_m, c.c_m);
              m.mass_kg += disk.mass_kg;
              m.ix += disk.ix;
              m.iy += disk.iy;
              m.iz += disk.iz;
            }
            return m;
          },
      },
      spec.shape);
}

BodyProperties build_body(const ParticleSpec& spec, const ChargeModel& charge,
                          const QuadratureSettings& q, const PhysicalConstants& constants) {
  constants.validate();
  if (!std::isfinite(charge.value) || charge.value == 0.0)
    throw InvalidArgument("build_body: charge must be finite and nonzero");
  BodyProperties body;
  const auto mass = inertia_and_mass(spec, constants);
  body.mass_kg = mass.mass_kg;
  body.ix = mass.ix;
  body.iy = mass.iy;
  body.iz = mass.iz;
  body.surface = surface_moments(spec, q);
  body.charge_C = charge.mode == ChargeModel::Mode::TotalCharge
                      ? charge.value
                      : charge.value * body.surface.area_m2;
  return body;
}

double spheroid_area(double polar, double equatorial) {
  if (!positive_finite(polar) || !positive_finite(equatorial))
    throw InvalidArgument("spheroid_area: semi-axes must be > 0");
  const double r = equatorial;
  if (polar > r) {
    const double e = std::sqrt(1.0 - (r * r) / (polar * polar));
    if (e < 1e-5) return 2.0 * kPi * r * r * (2.0 + 2.0 / 3.0 * e * e);
    return 2.0 * kPi * r * r * (1.0 + polar / (r * e) * std::asin(e));
  }
  if (polar < r) {
    const double e = std::sqrt(1.0 - (polar * polar) / (r * r));
    if (e < 1e-5) return 2.0 * kPi * r * r * (2.0 - 2.0 / 3.0 * e * e);
    return 2.0 * kPi * r * r * (1.0 + (1.0 - e * e) / e * std::atanh(e));
  }
  return 4.0 * kPi * r * r;
}

}  // namespace levrot::geometry
