#include "levrot/nv_spin.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "levrot/error.hpp"

namespace levrot::nv {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

Eigen::Matrix3d mixed_basis(double theta) {
  const double r = 1.0 / std::sqrt(2.0);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // rows: |-1>, |0>, |+1>; columns: g, d, e
  Eigen::Matrix3d u;
  u << -s * r, r, c * r,
       c, 0.0, s,
       -s * r, -r, c * r;
  return u;
}

// 2 pi D (sqrt(1 + x^2) - 1) / 2 for the e-d splitting, x = 2 gamma B / D.
double splitting_ed(const SpinConfig& s, double field_T) {
  const double x = 2.0 * s.gamma_hz_per_t * field_T / s.zero_field_splitting_hz;
  return kTwoPi * s.zero_field_splitting_hz * (std::sqrt(1.0 + x * x) - 1.0) / 2.0;
}

}  // namespace

void SpinConfig::validate() const {
  if (!(field_T >= 0.0) || !std::isfinite(field_T)) throw InvalidArgument("spin: B must be >= 0");
  if (!(zero_field_splitting_hz > 0.0)) throw InvalidArgument("spin: D must be > 0");
  if (!(gamma_hz_per_t > 0.0)) throw InvalidArgument("spin: gamma must be > 0");
}

SpinOperators spin_operators_lab() {
  const double r = 1.0 / std::sqrt(2.0);
  SpinOperators ops;
  ops.sx << 0.0, r, 0.0,
            r, 0.0, r,
            0.0, r, 0.0;
  ops.sy << 0.0, kI * r, 0.0,
            -kI * r, 0.0, kI * r,
            0.0, -kI * r, 0.0;
  ops.sz << -1.0, 0.0, 0.0,
            0.0, 0.0, 0.0,
            0.0, 0.0, 1.0;
  return ops;
}

Eigen::Matrix3cd nv_hamiltonian(const SpinConfig& s) {
  s.validate();
  const auto ops = spin_operators_lab();
  return kTwoPi * (s.zero_field_splitting_hz * ops.sz * ops.sz + s.gamma_hz_per_t * s.field_T * ops.sx);
}

MixedSpinSpectrum mixed_spectrum(const SpinConfig& s) {
  s.validate();
  const double x = 2.0 * s.gamma_hz_per_t * s.field_T / s.zero_field_splitting_hz;
  const double root = std::sqrt(1.0 + x * x);
  const double two_pi_d = kTwoPi * s.zero_field_splitting_hz;
  MixedSpinSpectrum m;
  m.theta = 0.5 * std::atan(x);
  m.omega_g = two_pi_d * (1.0 - root) / 2.0;
  m.omega_e = two_pi_d * (1.0 + root) / 2.0;
  m.omega_d = two_pi_d;
  m.eigenvectors = mixed_basis(m.theta);
  return m;
}

DressedSpectrum dressed_spectrum(const MixedSpinSpectrum& m, const MicrowaveConfig& mw) {
  if (!(mw.rabi_hz > 0.0) || !std::isfinite(mw.rabi_hz))
    throw InvalidArgument("dressed_spectrum: Rabi frequency must be > 0");
  DressedSpectrum d;
  d.rabi_rad_s = kTwoPi * mw.rabi_hz;
  if (mw.drive_hz) {
    d.drive_rad_s = kTwoPi * *mw.drive_hz;
    d.detuning_rad_s = d.drive_rad_s - m.omega_dg();
  } else {
    d.detuning_rad_s = kTwoPi * mw.detuning_hz;
    d.drive_rad_s = m.omega_dg() + d.detuning_rad_s;
  }
  d.psi = 0.5 * std::atan2(d.rabi_rad_s, d.detuning_rad_s);
  const double split = std::hypot(d.detuning_rad_s, d.rabi_rad_s);
  d.omega_plus = 0.5 * split;
  d.omega_minus = -0.5 * split;
  d.omega_e_prime = m.omega_e - (d.drive_rad_s + m.omega_g + m.omega_d) / 2.0;

  const double c = std::cos(d.psi);
  const double s = std::sin(d.psi);
  d.eigenvectors << kI * s, -kI * c, 0.0,
                    c, s, 0.0,
                    0.0, 0.0, 1.0;

  if (std::abs(m.omega_ed() - m.omega_dg()) < kLeakageFactor * d.rabi_rad_s) {
    std::ostringstream os;
    os << "drive may address e<->d: |omega_ed - omega_dg|/2pi = "
       << std::abs(m.omega_ed() - m.omega_dg()) / kTwoPi << " Hz is below " << kLeakageFactor
       << " x Omega_R";
    d.warnings.push_back(os.str());
  }
  return d;
}

Eigen::Matrix3cd rotating_frame_hamiltonian(const DressedSpectrum& d) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 0) = -0.5 * d.detuning_rad_s;
  h(1, 1) = 0.5 * d.detuning_rad_s;
  h(0, 1) = 0.5 * kI * d.rabi_rad_s;
  h(1, 0) = -0.5 * kI * d.rabi_rad_s;
  h(2, 2) = d.omega_e_prime;
  return h;
}

SpinOperators spin_operators_mixed_basis(double theta) {
  const Eigen::Matrix3cd u = mixed_basis(theta).cast<cd>();
  const auto lab = spin_operators_lab();
  return {u.adjoint() * lab.sx * u, u.adjoint() * lab.sy * u, u.adjoint() * lab.sz * u};
}

ResonanceSolution resonance_detuning(const SpinConfig& s, double rabi_hz, double omega_phi_rad_s) {
  s.validate();
  if (!(rabi_hz > 0.0)) throw InvalidArgument("resonance_detuning: Rabi frequency must be > 0");
  const double rabi = kTwoPi * rabi_hz;
  const double k = 2.0 * (splitting_ed(s, s.field_T) - omega_phi_rad_s);
  if (!(k > 0.0)) {
    std::ostringstream os;
    os << "resonance unreachable at B=" << s.field_T
       << " T: omega_e - omega_d does not exceed omega_phi";
    throw ResonanceUnreachable(os.str(), "field_T");
  }
  ResonanceSolution r;
  r.field_T = s.field_T;
  r.detuning_rad_s = (k * k - rabi * rabi) / (2.0 * k);
  if (k - r.detuning_rad_s < 0.0)
    throw ResonanceUnreachable("resonance unreachable: negative dressed splitting", "rabi_hz");
  r.psi = 0.5 * std::atan2(rabi, r.detuning_rad_s);
  return r;
}

ResonanceSolution resonance_field(const SpinConfig& s, double rabi_hz, double omega_phi_rad_s) {
  if (!(rabi_hz > 0.0)) throw InvalidArgument("resonance_field: Rabi frequency must be > 0");
  if (!(omega_phi_rad_s >= 0.0)) throw InvalidArgument("resonance_field: omega_phi must be >= 0");
  const double target = omega_phi_rad_s + 0.5 * kTwoPi * rabi_hz;
  auto f = [&](double b) { return splitting_ed(s, b) - target; };
  double lo = 0.0;
  double hi = 1e-3;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw ResonanceUnreachable("resonance_field: no field found", "field_T");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  ResonanceSolution r;
  r.field_T = 0.5 * (lo + hi);
  r.detuning_rad_s = 0.0;
  r.psi = std::numbers::pi / 4.0;
  return r;
}

}  // namespace levrot::nv
