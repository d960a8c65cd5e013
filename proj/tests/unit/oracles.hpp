#pragma once

// Independent reference computations used only by the tests. None of these
// share code with the library.

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

struct Moments {
  double area, z2_mean, x2_mean;
};

// Spheroid x = r sin t cos p, y = r sin t sin p, z = c cos t, integrated in t.
inline Moments spheroid(double c, double r) {
  using boost::math::quadrature::gauss_kronrod;
  auto ds = [=](double t) {
    const double s = std::sin(t);
    const double co = std::cos(t);
    return 2.0 * pi * r * s * std::sqrt(c * c * s * s + r * r * co * co);
  };
  const double area = gauss_kronrod<double, 61>::integrate(ds, 0.0, pi, 15, 1e-14);
  const double z2 = gauss_kronrod<double, 61>::integrate(
      [&](double t) { return ds(t) * c * c * std::cos(t) * std::cos(t); }, 0.0, pi, 15, 1e-14);
  const double x2 = gauss_kronrod<double, 61>::integrate(
      [&](double t) { return ds(t) * 0.5 * r * r * std::sin(t) * std::sin(t); }, 0.0, pi, 15, 1e-14);
  return {area, z2 / area, x2 / area};
}

// Closed-form spheroid areas.
inline double prolate_area(double a, double b) {
  const double e = std::sqrt(1.0 - b * b / (a * a));
  return 2.0 * pi * b * b * (1.0 + a / (b * e) * std::asin(e));
}
inline double oblate_area(double a, double b) {
  const double e = std::sqrt(1.0 - b * b / (a * a));
  return 2.0 * pi * a * a * (1.0 + (1.0 - e * e) / e * std::atanh(e));
}

// Fixed-step RK4 monodromy trace of u'' + (a - 2 q cos 2t) u = 0 over [0, pi].
inline double mathieu_trace(double a, double q, int steps = 20000) {
  auto f = [=](double t, const Eigen::Vector4d& y) {
    const double k = a - 2.0 * q * std::cos(2.0 * t);
    return Eigen::Vector4d(y(1), -k * y(0), y(3), -k * y(2));
  };
  Eigen::Vector4d y(1.0, 0.0, 0.0, 1.0);
  const double h = pi / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Eigen::Vector4d k1 = f(t, y);
    const Eigen::Vector4d k2 = f(t + h / 2, y + h / 2 * k1);
    const Eigen::Vector4d k3 = f(t + h / 2, y + h / 2 * k2);
    const Eigen::Vector4d k4 = f(t + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y(0) + y(3);
}

// Sorted eigenvalues (rad/s) of 2 pi (D Sz^2 + gamma B Sx) in {-1, 0, +1}.
inline Eigen::Vector3d nv_energies(double d_hz, double gamma_hz_per_t, double b_t) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = h(2, 2) = d_hz;
  h(0, 1) = h(1, 0) = h(1, 2) = h(2, 1) = gamma_hz_per_t * b_t * r;
  return 2.0 * pi * Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(h).eigenvalues();
}

}  // namespace oracle
