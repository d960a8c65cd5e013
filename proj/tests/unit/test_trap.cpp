#include <cmath>
#include <random>

#include "doctest.h"
#include "levrot/error.hpp"
#include "levrot/trap.hpp"
#include "oracles.hpp"

using namespace levrot;
using namespace levrot::trap;
using geometry::ChargeModel;

namespace {
const PhysicalConstants kC{};

geometry::BodyProperties prolate(double b, double charge_C) {
  return geometry::build_body({geometry::ProlateEllipsoid{2.5 * b, b}}, ChargeModel::total(charge_C),
                              {}, kC);
}
}  // namespace

TEST_CASE("Mathieu coefficients") {
  TrapConfig t;
  t.drive_rad_s = kTwoPi * 50e6;
  t.efficiency = 1.0;
  const auto body = prolate(20e-9, 366 * kC.elementary_charge_C);
  const auto c = mathieu_coefficients(body, t, Mode::RotY);
  CHECK(c.a == 0.0);
  CHECK(c.q == doctest::Approx(0.283).epsilon(5e-3));
  // q = 3 Q S_Y V_ac / (I_Y z0^2 Omega^2), written out
  const double q_ref = 3 * body.charge_C * body.surface.s_y() * t.v_ac_V /
                       (body.iy * t.gap_m * t.gap_m * t.drive_rad_s * t.drive_rad_s);
  CHECK(c.q == doctest::Approx(q_ref).epsilon(1e-13));

  const auto sphere = geometry::build_body({geometry::Sphere{20e-9}},
                                           ChargeModel::total(kC.elementary_charge_C), {}, kC);
  CHECK(mathieu_coefficients(sphere, t, Mode::RotY).q == 0.0);
  CHECK_THROWS_AS(mathieu_coefficients(prolate(20e-9, 0.0), t, Mode::RotY), InvalidArgument);

  t.v_dc_V = 10.0;
  const auto cd = mathieu_coefficients(body, t, Mode::RotY);
  CHECK(cd.a == doctest::Approx(-2.0 * c.q * 10.0 / t.v_ac_V).epsilon(1e-13));
}

TEST_CASE("q scaling laws") {
  TrapConfig t;
  const auto body = prolate(20e-9, 100 * kC.elementary_charge_C);
  const double q0 = mathieu_coefficients(body, t, Mode::RotY).q;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> f(0.5, 3.0);
  for (int i = 0; i < 10; ++i) {
    const double kv = f(rng), kq = f(rng), kw = f(rng);
    TrapConfig s = t;
    s.v_ac_V *= kv;
    s.drive_rad_s *= kw;
    const auto scaled = prolate(20e-9, 100 * kC.elementary_charge_C * kq);
    CHECK(mathieu_coefficients(scaled, s, Mode::RotY).q ==
          doctest::Approx(q0 * kv * kq / (kw * kw)).epsilon(1e-12));
  }
  // fixed sigma: Q S / I scales as 1/b
  const double sigma = 1e-3;
  auto at = [&](double b) {
    const auto body = geometry::build_body({geometry::ProlateEllipsoid{2.5 * b, b}},
                                           ChargeModel::surface_density(sigma), {}, kC);
    return mathieu_coefficients(body, t, Mode::RotY).q;
  };
  CHECK(at(40e-9) / at(20e-9) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("secular frequency") {
  TrapConfig t;
  t.drive_rad_s = kTwoPi * 50e6;
  CHECK(secular_frequency({Mode::RotY, 0.0, 0.2828}, t).omega_rad_s / kTwoPi ==
        doctest::Approx(5.0e6).epsilon(1e-3));
  CHECK(secular_frequency({Mode::RotY, 0.0, 0.0}, t).omega_rad_s == 0.0);
  t.drive_rad_s = kTwoPi * 10e6;
  CHECK(secular_frequency({Mode::RotY, 0.01, 0.1}, t).omega_rad_s / kTwoPi ==
        doctest::Approx(0.6124e6).epsilon(1e-4));
  CHECK_FALSE(secular_frequency({Mode::RotY, 0.0, 0.5}, t).pseudopotential_valid);
  CHECK_THROWS_AS(secular_frequency({Mode::RotY, -0.1, 0.1}, t), AntiTrappingError);
}

TEST_CASE("Floquet monodromy against the RK4 oracle") {
  for (double a : {-0.1, 0.0, 0.05}) {
    for (double q : {0.0, 0.2, 0.6, 1.0}) {
      CHECK(monodromy_trace(a, q) == doctest::Approx(oracle::mathieu_trace(a, q)).epsilon(1e-8));
    }
  }
  TrapConfig t;
  CHECK(floquet_stability({Mode::RotY, 0.0, 0.2}, t).stable);
  CHECK_FALSE(floquet_stability({Mode::RotY, 0.0, 1.0}, t).stable);
  const auto free = floquet_stability({Mode::RotY, 0.0, 0.0}, t);
  CHECK(free.stable);
  CHECK(free.marginal);
  CHECK(free.monodromy_trace == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Floquet exponent tracks the secular formula for small q") {
  TrapConfig t;
  for (double q : {0.1, 0.2, 0.3}) {
    const auto v = floquet_stability({Mode::RotY, 0.0, q}, t);
    const double floquet = 0.5 * t.drive_rad_s * v.characteristic_exponent;
    const double formula = secular_frequency({Mode::RotY, 0.0, q}, t).omega_rad_s;
    CHECK(std::abs(floquet / formula - 1.0) < 0.02);
  }
}

TEST_CASE("stability boundary on a = 0") {
  const double q = stability_boundary_q(0.0, 0.5, 1.0, 1e-7);
  CHECK(q > 0.90);
  CHECK(q < 0.92);
  CHECK(q == doctest::Approx(0.908046).epsilon(1e-5));
  CHECK_THROWS_AS(stability_boundary_q(0.0, 0.95, 1.0), InvalidArgument);
}

TEST_CASE("thermal spread") {
  const auto b20 = prolate(20e-9, kC.elementary_charge_C);
  const auto b80 = prolate(80e-9, kC.elementary_charge_C);
  CHECK(thermal_angle(b20, kTwoPi * 5e6, 300, kC).rms_angle_rad == doctest::Approx(0.157).epsilon(5e-3));
  CHECK(thermal_angle(b80, kTwoPi * 0.5e6, 300, kC).rms_angle_rad == doctest::Approx(0.049).epsilon(5e-3));
  CHECK(thermal_angle(b20, kTwoPi * 5e6, 0.0, kC).rms_angle_rad == 0.0);
}

TEST_CASE("charge budget inverts the axial formula") {
  TrapConfig t;
  const auto body = prolate(80e-9, kC.elementary_charge_C);
  const double target = kTwoPi * 0.5e6;
  const auto cb = charge_budget(body, t, target, 3.0, kC);
  CHECK(cb.elementary_charges >= 100);
  CHECK(cb.elementary_charges <= 1000);
  CHECK(cb.elementary_charges ==
        static_cast<std::int64_t>(std::ceil(cb.charge_C / kC.elementary_charge_C)));

  // feed the charge back through the axial COM mode
  const auto charged = prolate(80e-9, cb.elementary_charges * kC.elementary_charge_C);
  const double w = secular_frequency(mathieu_coefficients(charged, t, Mode::ComAxial), t).omega_rad_s;
  CHECK(w / (target / 3.0) == doctest::Approx(1.0).epsilon(5e-3));

  TrapConfig t2 = t;
  t2.v_ac_V *= 2;
  CHECK(charge_budget(body, t2, target, 3.0, kC).charge_C == doctest::Approx(cb.charge_C / 2).epsilon(1e-14));
  CHECK_THROWS_AS(charge_budget(body, t, 0.0, 3.0, kC), InvalidArgument);
}
