// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "levrot/commands.hpp"
#include "levrot/config.hpp"
#include "levrot/coupling.hpp"
#include "levrot/error.hpp"
#include "levrot/geometry.hpp"
#include "levrot/nv_spin.hpp"
#include "levrot/quantum_sim.hpp"
#include "levrot/report.hpp"
#include "levrot/rotor_dynamics.hpp"
#include "levrot/trap.hpp"
#include "oracles.hpp"

using namespace levrot;
using namespace levrot::studio;

namespace {

// Pinned tolerances.
constexpr double kTable1Tol = 0.05;
constexpr double kCompositeComTol = 0.10;
constexpr double kTable1MaxSeconds = 5.0;
constexpr double kThermalTol = 0.05;
constexpr double kFieldMin = 0.029, kFieldMax = 0.033;
constexpr double kBand20Min = 35e3, kBand20Max = 60e3;
constexpr double kBand80Min = 4.5e3, kBand80Max = 7e3;
constexpr double kMathieuTol = 0.02;
constexpr double kBoundaryMin = 0.90, kBoundaryMax = 0.92;
constexpr double kSphereTol = 1e-10;
constexpr double kSyTol = 1e-3;
constexpr double kTransferMin = 0.999;
constexpr double kTimingTol = 0.01;
constexpr double kSqrtNTol = 0.01;
constexpr double kRwaGap = 0.01;
constexpr double kStateTol = 1e-9;
constexpr double kStrongRatio = 8.6, kStrongTol = 0.05;
constexpr double kMapMaxSeconds = 10.0;
constexpr double kMinSpeedup = 4.0;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("%s  [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within(double v, double ref, double tol) { return std::abs(v / ref - 1.0) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
void guarded(int id, const char* title, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

void criterion1() {
  guarded(1, "Table 1 reproduction", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto t = cmd_table1(RunConfig{}).tables.at(0);
    const double elapsed = seconds_since(t0);
    const char* cols[] = {"omega_com_over_omega0", "omega_phi_over_omega0", "omega_phi_over_omega_com",
                          "Iy_over_I0"};
    const double sphere[] = {1, 0, 0, 1};
    const double oblate[] = {0.64, 1.8, 2.9, 23};
    const double prolate[] = {0.83, 2.3, 2.8, 9};
    bool ok = elapsed < kTable1MaxSeconds;
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      ok = ok && t.number(0, cols[k]) == sphere[k];
      const double eo = std::abs(t.number(1, cols[k]) / oblate[k] - 1);
      const double ep = std::abs(t.number(2, cols[k]) / prolate[k] - 1);
      worst = std::max({worst, eo, ep});
    }
    ok = ok && worst <= kTable1Tol;
    const double c8 = t.number(3, "omega_com_over_omega0");
    const double c16 = t.number(4, "omega_com_over_omega0");
    ok = ok && within(c8, 2.8, kCompositeComTol) && within(c16, 3.3, kCompositeComTol);
    report(1, "Table 1 reproduction", ok,
           fmt("worst ellipsoid deviation %.2f%%, composite omega_com/omega_0 %.3f and %.3f, ", 100 * worst,
               c8, c16) +
               fmt("composite omega_phi/omega_0 %.1f and %.1f, Iy/I0 %.2f and %.2f (logged deviations), ",
                   t.number(3, "omega_phi_over_omega0"), t.number(4, "omega_phi_over_omega0"),
                   t.number(3, "Iy_over_I0"), t.number(4, "Iy_over_I0")) +
               fmt("%.3f s", elapsed));
  });
}

void criterion2() {
  guarded(2, "Thermal angular spread", [] {
    const auto t = cmd_thermal(RunConfig{}).tables.at(0);
    const double s20 = t.number(0, "rms_angle_rad");
    const double s80 = t.number(1, "rms_angle_rad");
    report(2, "Thermal angular spread", within(s20, 0.16, kThermalTol) && within(s80, 0.05, kThermalTol),
           fmt("b=20 nm %.4f rad, b=80 nm %.4f rad", s20, s80));
  });
}

void criterion3() {
  guarded(3, "Resonance field", [] {
    const auto spin = nv::SpinConfig::from_constants(PhysicalConstants{}, 0.0);
    const auto sol = nv::resonance_field(spin, 500e6, kTwoPi * 5e6);
    report(3, "Resonance field", sol.field_T >= kFieldMin && sol.field_T <= kFieldMax,
           fmt("B = %.3f mT at Delta = 0", 1e3 * sol.field_T));
  });
}

void criterion4() {
  guarded(4, "Coupling band", [] {
    RunConfig cfg;
    cfg.fig4_curves.rabi_min_hz = cfg.fig4_curves.rabi_max_hz = 500e6;
    cfg.fig4_curves.rabi_points = 1;
    const auto t = cmd_fig4_curves(cfg, 1).tables.at(0);
    bool ok = true;
    std::string detail;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& id = std::get<std::string>(t.rows[r][t.column("shape_id")]);
      const double v = t.number(r, "lambda_tilde_hz");
      if (id.rfind("b20/", 0) == 0) {
        ok = ok && v >= kBand20Min && v <= kBand20Max;
        detail += fmt("%s %.2f kHz, ", id.c_str(), v / 1e3);
      } else if (id == "b80/prolate_b80") {
        ok = ok && v >= kBand80Min && v <= kBand80Max;
        detail += fmt("%s %.2f kHz, ", id.c_str(), v / 1e3);
      }
    }
    detail += "b20 band [35, 60] kHz, b80 prolate band [4.5, 7] kHz";
    report(4, "Coupling band", ok, detail);
  });
}

void criterion5() {
  guarded(5, "Mathieu cross-validation", [] {
    const double drive = kTwoPi * 5e6;
    double worst = 0.0;
    for (double q : {0.1, 0.2, 0.3}) {
      rotor::RotorState init;
      init.phi1_rad = 0.01;
      const auto traj = rotor::simulate(rotor::RotorDrive::symmetric(0.0, q, drive), rotor::TorqueModel::Linear,
                                        init, 400 * kTwoPi / drive, {});
      const double w = rotor::extract_secular_frequency(traj);
      const double formula = 0.5 * drive * q / std::sqrt(2.0);
      worst = std::max(worst, std::abs(w / formula - 1));
    }
    const double boundary = trap::stability_boundary_q(0.0, 0.5, 1.0, 1e-6);
    int disagree = 0;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const double a = -0.1 + 0.2 * i / 9.0, q = j / 9.0;
        const bool floquet = trap::floquet_stability({trap::Mode::RotY, a, q}, trap::TrapConfig{}).stable;
        rotor::RotorState init;
        init.phi1_rad = init.phi2_rad = 1e-3;
        const auto traj = rotor::simulate(rotor::RotorDrive::symmetric(a, q, drive), rotor::TorqueModel::Linear,
                                          init, 200 * kTwoPi / drive, {});
        if (floquet == traj.unstable) ++disagree;
      }
    report(5, "Mathieu cross-validation",
           worst <= kMathieuTol && boundary >= kBoundaryMin && boundary <= kBoundaryMax && disagree == 0,
           fmt("max |extracted/formula - 1| = %.2f%%, boundary q = %.5f, %d/100 grid disagreements",
               100 * worst, boundary, disagree));
  });
}

void criterion6() {
  guarded(6, "Quadrature oracle", [] {
    const double b = 20e-9;
    geometry::QuadratureSettings qs;
    const auto s = geometry::surface_moments({geometry::Sphere{b}}, qs);
    const double sphere_err = std::max({std::abs(s.rx2_m2 / (b * b / 3) - 1), std::abs(s.ry2_m2 / (b * b / 3) - 1),
                                        std::abs(s.rz2_m2 / (b * b / 3) - 1)});
    const auto p = geometry::surface_moments({geometry::ProlateEllipsoid{2.5 * b, b}}, qs);
    const auto o = geometry::surface_moments({geometry::OblateEllipsoid{2.5 * b, b}}, qs);
    const double area_err = std::max(std::abs(p.area_m2 / oracle::prolate_area(2.5 * b, b) - 1),
                                     std::abs(o.area_m2 / oracle::oblate_area(2.5 * b, b) - 1));
    const auto ref = oracle::spheroid(2.5 * b, b);
    const double sy_oracle = ref.z2_mean - ref.x2_mean;
    const double sy = p.s_y() / (b * b);
    const bool ok = sphere_err <= kSphereTol && area_err <= qs.rel_tol &&
                    std::abs(p.s_y() / sy_oracle - 1) <= kSyTol && std::abs(sy / 1.3551 - 1) <= kSyTol;
    report(6, "Quadrature oracle", ok,
           fmt("sphere R^2 error %.1e, area error %.1e, S_Y = %.5f b^2 (oracle %.5f b^2)", sphere_err, area_err, sy,
               sy_oracle / (b * b)));
  });
}

void criterion7() {
  guarded(7, "Jaynes-Cummings dynamics", [] {
    const double wphi = kTwoPi * 5e6;
    const quantum::DressedLevels lv{kTwoPi * 250e6, -kTwoPi * 250e6, kTwoPi * 250e6 + wphi};
    const double lam = 57e3;
    auto grid = [](double t_end, int n) {
      std::vector<double> t(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = t_end * k / n;
      return t;
    };
    double state_err = 0.0;
    auto track = [&](const quantum::EvolutionResult& r) {
      state_err = std::max({state_err, r.max_trace_error, r.max_hermiticity_error, -r.min_eigenvalue});
    };

    const auto jc = quantum::build_model(lv, wphi, lam, 8, quantum::ModelKind::JaynesCummings);
    // peak of the first transfer, located on a fine grid around 1 / (4 lambda)
    const auto tp = grid(2.0 / (4 * lam), 2000);
    const auto rp = quantum::evolve(jc, quantum::pure_state(jc, quantum::Level::Plus, 1), tp, {});
    track(rp);
    std::size_t best = 0;
    for (std::size_t k = 0; k < tp.size(); ++k)
      if (rp.p_excited[k] > rp.p_excited[best]) best = k;
    const double t_peak = tp[best];
    const double p_peak = rp.p_excited[best];
    const bool timing = std::abs(t_peak * 4 * lam - 1) <= kTimingTol;

    const auto t = grid(3.0 / lam, 900);
    const auto r1 = quantum::evolve(jc, quantum::pure_state(jc, quantum::Level::Plus, 1), t, {});
    const auto r4 = quantum::evolve(jc, quantum::pure_state(jc, quantum::Level::Plus, 4), t, {});
    track(r1);
    track(r4);
    const double ratio = quantum::exchange_frequency(t, r4.p_excited) / quantum::exchange_frequency(t, r1.p_excited);

    const double lam_rwa = 1e-2 * wphi / kTwoPi;
    const auto a = quantum::build_model(lv, wphi, lam_rwa, 8, quantum::ModelKind::JaynesCummings);
    const auto b = quantum::build_model(lv, wphi, lam_rwa, 8, quantum::ModelKind::FullRabi);
    const auto tr = grid(3.0 / lam_rwa, 1200);
    const auto ra = quantum::evolve(a, quantum::pure_state(a, quantum::Level::Plus, 1), tr, {});
    const auto rb = quantum::evolve(b, quantum::pure_state(b, quantum::Level::Plus, 1), tr, {});
    track(ra);
    track(rb);
    double gap = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
      gap = std::max({gap, std::abs(ra.p_plus[k] - rb.p_plus[k]), std::abs(ra.p_minus[k] - rb.p_minus[k]),
                      std::abs(ra.p_excited[k] - rb.p_excited[k])});
    }

    // dissipative run for the state checks
    quantum::LindbladChannels ch{1.0 / 1e-3, 1.0 / 150e-6, 1e3};
    const auto rd = quantum::evolve(jc, quantum::pure_state(jc, quantum::Level::Plus, 1), grid(2.0 / lam, 200), ch);
    track(rd);

    const bool ok = p_peak >= kTransferMin && timing && std::abs(ratio / 2.0 - 1) <= kSqrtNTol && gap <= kRwaGap &&
                    state_err <= kStateTol;
    report(7, "Jaynes-Cummings dynamics", ok,
           fmt("P_e peak %.6f at t*4*lambda = %.4f, sqrt(N) ratio %.4f, ", p_peak, t_peak * 4 * lam, ratio) +
               fmt("FullRabi-JC gap %.2e, worst state error %.1e", gap, state_err));
  });
}

void criterion8() {
  guarded(8, "Strong-coupling verdicts", [] {
    coupling::CouplingReport r;
    r.lambda_tilde_hz = 57e3;
    const auto v1 = coupling::strong_coupling_assessment(r, coupling::DecoherenceBudget::from_t2(1e-3, 150e-6));
    r.lambda_tilde_hz = 5.6e3;
    const auto v2 = coupling::strong_coupling_assessment(r, coupling::DecoherenceBudget::from_t2(10e-3, 1e-3));
    const bool ok = v1.strong && within(v1.lambda_t2, kStrongRatio, kStrongTol) && v2.strong;
    report(8, "Strong-coupling verdicts", ok,
           fmt("57 kHz x 150 us = %.2f (%s), 5.6 kHz x 1 ms = %.2f (%s)", v1.lambda_t2,
               v1.strong ? "strong" : "weak", v2.lambda_t2, v2.strong ? "strong" : "weak"));
  });
}

void criterion9() {
  guarded(9, "Determinism", [] {
    const RunConfig cfg;
    const std::string t1 = render_csv(cmd_table1(cfg).tables.at(0));
    const std::string t2 = render_csv(cmd_table1(cfg).tables.at(0));
    const auto m1 = cmd_fig2_map(cfg, 1);
    const auto m2 = cmd_fig2_map(cfg, 4);
    const bool ok = t1 == t2 && render_csv(m1.tables.at(0)) == render_csv(m2.tables.at(0)) &&
                    render_csv(m1.tables.at(1)) == render_csv(m2.tables.at(1));
    report(9, "Determinism", ok,
           fmt("table1 %zu bytes, fig2 map %zu bytes, identical across repeats and thread counts", t1.size(),
               render_csv(m1.tables.at(0)).size()));
  });
}

void criterion10() {
  guarded(10, "Performance", [] {
    RunConfig cfg;
    cfg.fig2_map.grid.field_points = 200;
    cfg.fig2_map.grid.psi_points = 200;
    auto timed = [&](int threads) {
      double best = 1e30;
      for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = cmd_fig2_map(cfg, threads);
        (void)render_csv(r.tables.at(0));
        best = std::min(best, seconds_since(t0));
      }
      return best;
    };
    const double t1 = timed(1);
    const double t8 = timed(8);
    const double speedup = t1 / t8;
    const unsigned cores = std::thread::hardware_concurrency();
    report(10, "Performance", t8 < kMapMaxSeconds && speedup >= kMinSpeedup,
           fmt("200x200 map %.3f s with 8 threads, %.3f s with 1 thread, speedup %.2fx on %u hardware threads",
               t8, t1, speedup, cores));
  });
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
