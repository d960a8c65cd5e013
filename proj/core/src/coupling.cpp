#include "levrot/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levrot/error.hpp"
#include "levrot/parallel.hpp"

namespace levrot::coupling {
namespace {

// 2 (omega_e - omega_d - omega_phi); the resonance needs it positive.
double resonance_k(const nv::MixedSpinSpectrum& m, double omega_phi) {
  return 2.0 * (m.omega_ed() - omega_phi);
}

}  // namespace

RotationalMode rotational_mode(const geometry::BodyProperties& body, double omega_phi_rad_s,
                               const PhysicalConstants& constants) {
  if (!(omega_phi_rad_s > 0.0)) throw InvalidArgument("rotational_mode: omega_phi must be > 0");
  if (!(body.iy > 0.0)) throw InvalidArgument("rotational_mode: I_Y must be > 0");
  RotationalMode m;
  m.omega_phi_rad_s = omega_phi_rad_s;
  m.inertia_kgm2 = body.iy;
  m.phi0_rad = std::sqrt(constants.hbar_Js / (2.0 * body.iy * omega_phi_rad_s));
  m.l0_Js = std::sqrt(constants.hbar_Js * body.iy * omega_phi_rad_s / 2.0);
  return m;
}

CouplingReport dressed_coupling(const RotationalMode& mode, const nv::SpinConfig& spin,
                                const nv::MixedSpinSpectrum& mixed,
                                const nv::DressedSpectrum& dressed) {
  CouplingReport r;
  r.field_T = spin.field_T;
  r.theta = mixed.theta;
  r.psi = dressed.psi;
  r.omega_phi_rad_s = mode.omega_phi_rad_s;
  r.rabi_hz = dressed.rabi_rad_s / kTwoPi;
  r.detuning_hz = dressed.detuning_rad_s / kTwoPi;
  r.lambda_hz = spin.gamma_hz_per_t * spin.field_T * mode.phi0_rad;
  r.lambda_tilde_hz = r.lambda_hz * std::cos(mixed.theta) * std::sin(dressed.psi);
  r.resonance_mismatch_rad_s = dressed.omega_e_prime - dressed.omega_plus - mode.omega_phi_rad_s;

  r.rwa_wide_bound_ok =
      r.lambda_tilde_hz <= 10.0 * std::abs(dressed.omega_e_prime - dressed.omega_plus) / kTwoPi;
  r.rwa_conventional_ok = r.lambda_tilde_hz <= 0.1 * mode.omega_phi_rad_s / kTwoPi;
  if (!r.rwa_wide_bound_ok && !r.rwa_conventional_ok) {
    r.rwa_binding = "both";
  } else if (!r.rwa_conventional_ok) {
    r.rwa_binding = "conventional";
  } else if (!r.rwa_wide_bound_ok) {
    r.rwa_binding = "wide";
  }
  return r;
}

DecoherenceBudget DecoherenceBudget::from_t2(double t1_s, double t2_s,
                                             double mechanical_linewidth_hz) {
  if (!(t1_s > 0.0) || !(t2_s > 0.0))
    throw InvalidArgument("DecoherenceBudget: T1 and T2 must be > 0");
  const double inv_star = 1.0 / t2_s - 0.5 / t1_s;
  if (!(inv_star > 0.0)) throw InvalidArgument("DecoherenceBudget: T2 must be < 2 T1");
  return {t1_s, 1.0 / inv_star, mechanical_linewidth_hz};
}

void DecoherenceBudget::validate() const {
  if (!(t1_s > 0.0) || !(t2_star_s > 0.0))
    throw InvalidArgument("DecoherenceBudget: T1 and T2* must be > 0");
  if (!(mechanical_linewidth_hz >= 0.0))
    throw InvalidArgument("DecoherenceBudget: mechanical linewidth must be >= 0");
}

StrongCouplingVerdict strong_coupling_assessment(const CouplingReport& report,
                                                 const DecoherenceBudget& budget) {
  budget.validate();
  StrongCouplingVerdict v;
  v.lambda_t1 = report.lambda_tilde_hz * budget.t1_s;
  v.lambda_t2 = report.lambda_tilde_hz * budget.t2_s();
  v.lambda_over_mechanical = budget.mechanical_linewidth_hz > 0.0
                                 ? report.lambda_tilde_hz / budget.mechanical_linewidth_hz
                                 : std::numeric_limits<double>::infinity();
  v.strong = v.lambda_t1 > 1.0 && v.lambda_t2 > 1.0 && v.lambda_over_mechanical > 1.0;
  return v;
}

void MapGrid::validate() const {
  if (field_points < 2 || psi_points < 2) throw InvalidArgument("map grid: need >= 2 points per axis");
  if (!(field_min_T >= 0.0) || !(field_max_T > field_min_T))
    throw InvalidArgument("map grid: need 0 <= B_min < B_max");
  if (!(psi_min >= 0.0) || !(psi_max > psi_min) || psi_max > 0.5 * std::numbers::pi + 1e-12)
    throw InvalidArgument("map grid: need 0 <= psi_min < psi_max <= pi/2");
}

double MapGrid::field_at(int i) const {
  return field_min_T + (field_max_T - field_min_T) * i / (field_points - 1);
}

double MapGrid::psi_at(int j) const { return psi_min + (psi_max - psi_min) * j / (psi_points - 1); }

CouplingMap coupling_map(const RotationalMode& mode, const nv::SpinConfig& spin,
                         const MapGrid& grid, std::span<const double> rabi_hz, int threads) {
  grid.validate();
  spin.validate();
  double rabi_max = 0.0;
  for (double r : rabi_hz) {
    if (!(r > 0.0)) throw InvalidArgument("coupling_map: Rabi frequencies must be > 0");
    rabi_max = std::max(rabi_max, kTwoPi * r);
  }

  CouplingMap map;
  map.grid = grid;
  const auto nb = static_cast<std::size_t>(grid.field_points);
  const auto np = static_cast<std::size_t>(grid.psi_points);
  const std::size_t nr = rabi_hz.size();
  map.points.resize(nb * np);
  map.overlays.resize(nr * nb);

  parallel_for(nb, threads, [&](std::size_t i) {
    nv::SpinConfig s = spin;
    s.field_T = grid.field_at(static_cast<int>(i));
    const auto mixed = nv::mixed_spectrum(s);
    const double lambda_cos = s.gamma_hz_per_t * s.field_T * mode.phi0_rad * std::cos(mixed.theta);
    const double k = resonance_k(mixed, mode.omega_phi_rad_s);
    for (std::size_t j = 0; j < np; ++j) {
      auto& p = map.points[i * np + j];
      p.field_T = s.field_T;
      p.psi = grid.psi_at(static_cast<int>(j));
      p.lambda_tilde_hz = lambda_cos * std::sin(p.psi);
      p.resonance_feasible = k > 0.0 && p.psi > 0.0 && k * std::tan(p.psi) <= rabi_max;
    }
    for (std::size_t r = 0; r < nr; ++r) {
      auto& o = map.overlays[r * nb + i];
      o.rabi_hz = rabi_hz[r];
      o.field_T = s.field_T;
      try {
        const auto sol = nv::resonance_detuning(s, rabi_hz[r], mode.omega_phi_rad_s);
        o.psi = sol.psi;
        o.detuning_hz = sol.detuning_rad_s / kTwoPi;
        o.lambda_tilde_hz = lambda_cos * std::sin(sol.psi);
        o.reachable = true;
      } catch (const ResonanceUnreachable&) {
        o.psi = std::numeric_limits<double>::quiet_NaN();
        o.detuning_hz = std::numeric_limits<double>::quiet_NaN();
        o.lambda_tilde_hz = std::numeric_limits<double>::quiet_NaN();
        o.reachable = false;
      }
    }
  });
  return map;
}

std::vector<RabiCurvePoint> coupling_vs_rabi(std::span<const ShapeCase> shapes,
                                             std::span<const double> rabi_hz,
                                             const PhysicalConstants& constants, int threads) {
  const std::size_t nr = rabi_hz.size();
  std::vector<RabiCurvePoint> out(shapes.size() * nr);
  parallel_for(out.size(), threads, [&](std::size_t idx) {
    const auto& shape = shapes[idx / nr];
    const double rabi = rabi_hz[idx % nr];
    auto& p = out[idx];
    p.shape_id = shape.id;
    p.rabi_hz = rabi;
    try {
      const auto mode = rotational_mode(shape.body, shape.omega_phi_rad_s, constants);
      auto spin = nv::SpinConfig::from_constants(constants, 0.0);
      spin.field_T = nv::resonance_field(spin, rabi, shape.omega_phi_rad_s).field_T;
      const auto mixed = nv::mixed_spectrum(spin);
      const auto dressed = nv::dressed_spectrum(mixed, {rabi, 0.0, std::nullopt});
      const auto report = dressed_coupling(mode, spin, mixed, dressed);
      p.field_T = spin.field_T;
      p.lambda_tilde_hz = report.lambda_tilde_hz;
      p.reachable = true;
    } catch (const ResonanceUnreachable&) {
      p.field_T = std::numeric_limits<double>::quiet_NaN();
      p.lambda_tilde_hz = std::numeric_limits<double>::quiet_NaN();
      p.reachable = false;
    }
  });
  return out;
}

}  // namespace levrot::coupling
