#include "levrot/commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "levrot/coupling.hpp"
#include "levrot/error.hpp"
#include "levrot/nv_spin.hpp"
#include "levrot/parallel.hpp"
#include "levrot/quantum_sim.hpp"
#include "levrot/rotor_dynamics.hpp"
#include "levrot/trap.hpp"

namespace levrot::studio {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ReportTable make_table(const RunConfig& cfg, std::string name, std::string command,
                       std::vector<std::string> columns) {
  ReportTable t;
  t.name = std::move(name);
  t.columns = std::move(columns);
  t.provenance = provenance_fields(command, cfg.hash(), cfg.constants);
  return t;
}

double secular(const geometry::BodyProperties& body, const trap::TrapConfig& trap, trap::Mode m) {
  return trap::secular_frequency(trap::mathieu_coefficients(body, trap, m), trap).omega_rad_s;
}

// Everything needed to describe one particle tuned to the Delta = 0 resonance.
struct ResonantPoint {
  geometry::BodyProperties body;
  coupling::RotationalMode mode;
  nv::SpinConfig spin;
  nv::MixedSpinSpectrum mixed;
  nv::DressedSpectrum dressed;
  coupling::CouplingReport report;
};

ResonantPoint resonant_point(const RunConfig& cfg, const std::string& particle, double omega_phi_hz,
                             double rabi_hz) {
  ResonantPoint p;
  p.body = cfg.body(particle);
  p.mode = coupling::rotational_mode(p.body, kTwoPi * omega_phi_hz, cfg.constants);
  p.spin = nv::SpinConfig::from_constants(cfg.constants, 0.0);
  const auto sol = nv::resonance_field(p.spin, rabi_hz, p.mode.omega_phi_rad_s);
  p.spin.field_T = sol.field_T;
  p.mixed = nv::mixed_spectrum(p.spin);
  p.dressed = nv::dressed_spectrum(p.mixed, nv::MicrowaveConfig{rabi_hz, 0.0, std::nullopt});
  p.report = coupling::dressed_coupling(p.mode, p.spin, p.mixed, p.dressed);
  return p;
}

}  // namespace

CommandResult cmd_table1(const RunConfig& cfg) {
  using namespace geometry;
  const double b = cfg.table1.b_m;
  const double a = cfg.table1.aspect_ratio * b;
  struct Row {
    std::string id;
    double disk_ratio;
    ParticleSpec spec;
  };
  std::vector<Row> rows{{"sphere", kNaN, {Sphere{b}}},
                        {"oblate", kNaN, {OblateEllipsoid{a, b}}},
                        {"prolate", kNaN, {ProlateEllipsoid{a, b}}}};
  for (double r : cfg.table1.disk_ratios) rows.push_back({"composite", r, {Composite{b, a, r * b}}});

  const auto charge = ChargeModel::surface_density(cfg.surface_charge_Cm2);
  const auto ref = build_body(rows.front().spec, charge, cfg.quadrature, cfg.constants);
  const double omega0 = secular(ref, cfg.trap, trap::Mode::ComRadial);
  const double i0 = ref.iy;

  ReportTable t = make_table(cfg, "table1", "table1",
                             {"shape", "c_over_b", "omega_com_over_omega0", "omega_phi_over_omega0",
                              "omega_phi_over_omega_com", "Iy_over_I0", "mass_kg", "charge_C",
                              "Iy_kgm2"});
  t.notes.push_back("omega_0 and I_0 belong to a sphere of the same b; frequencies are radial");
  for (const auto& row : rows) {
    const auto body = build_body(row.spec, charge, cfg.quadrature, cfg.constants);
    const double w_com = secular(body, cfg.trap, trap::Mode::ComRadial);
    const double w_phi = secular(body, cfg.trap, trap::Mode::RotY);
    t.add_row({row.id, row.disk_ratio, w_com / omega0, w_phi / omega0, w_phi / w_com, body.iy / i0,
               body.mass_kg, body.charge_C, body.iy});
  }
  return {{std::move(t)}, {}};
}

CommandResult cmd_fig2_map(const RunConfig& cfg, int threads) {
  const auto& fc = cfg.fig2_map;
  const auto body = cfg.body(fc.particle);
  const auto mode = coupling::rotational_mode(body, kTwoPi * fc.omega_phi_hz, cfg.constants);
  const auto spin = nv::SpinConfig::from_constants(cfg.constants, 0.0);
  const auto map = coupling::coupling_map(mode, spin, fc.grid, fc.overlay_rabi_hz, threads);

  CommandResult out;
  ReportTable t = make_table(cfg, "fig2_map", "fig2-map",
                             {"B_T", "psi_rad", "lambda_tilde_hz", "resonance_flag"});
  t.notes.push_back("particle " + fc.particle);
  t.rows.reserve(map.points.size());
  for (const auto& p : map.points)
    t.rows.push_back({p.field_T, p.psi, p.lambda_tilde_hz, p.resonance_feasible});

  ReportTable o = make_table(cfg, "fig2_overlays", "fig2-map",
                             {"OmegaR_Hz", "B_T", "psi_rad", "detuning_hz", "lambda_tilde_hz",
                              "reachable"});
  std::size_t unreachable = 0;
  for (const auto& p : map.overlays) {
    o.rows.push_back({p.rabi_hz, p.field_T, p.psi, p.detuning_hz, p.lambda_tilde_hz, p.reachable});
    if (!p.reachable) ++unreachable;
  }
  if (unreachable > 0)
    out.warnings.push_back("fig2-map: " + std::to_string(unreachable) +
                           " overlay points have no resonance (omega_e - omega_d <= omega_phi)");
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(o));
  return out;
}

CommandResult cmd_fig4_curves(const RunConfig& cfg, int threads) {
  const auto& fc = cfg.fig4_curves;
  std::vector<double> rabi(static_cast<std::size_t>(fc.rabi_points));
  for (int i = 0; i < fc.rabi_points; ++i)
    rabi[static_cast<std::size_t>(i)] =
        fc.rabi_points == 1 ? fc.rabi_min_hz
                            : fc.rabi_min_hz + (fc.rabi_max_hz - fc.rabi_min_hz) * i / (fc.rabi_points - 1);

  std::vector<coupling::ShapeCase> shapes;
  for (const auto& cls : fc.classes)
    for (const auto& p : cls.particles)
      shapes.push_back({cls.id + "/" + p, cfg.body(p), kTwoPi * cls.omega_phi_hz});

  const auto curves = coupling::coupling_vs_rabi(shapes, rabi, cfg.constants, threads);
  CommandResult out;
  ReportTable t = make_table(cfg, "fig4_curves", "fig4-curves",
                             {"omega_R_hz", "B_T", "shape_id", "lambda_tilde_hz"});
  std::size_t unreachable = 0;
  for (const auto& p : curves) {
    t.rows.push_back({p.rabi_hz, p.field_T, p.shape_id, p.lambda_tilde_hz});
    if (!p.reachable) ++unreachable;
  }
  if (unreachable > 0)
    out.warnings.push_back("fig4-curves: " + std::to_string(unreachable) +
                           " points have no resonance and are reported as nan");
  out.tables.push_back(std::move(t));
  return out;
}

CommandResult cmd_thermal(const RunConfig& cfg) {
  ReportTable t = make_table(cfg, "thermal", "thermal",
                             {"particle", "omega_phi_hz", "temperature_K", "Iy_kgm2", "rms_angle_rad"});
  for (const auto& c : cfg.thermal.cases) {
    const auto body = cfg.body(c.particle);
    const auto th = trap::thermal_angle(body, kTwoPi * c.omega_phi_hz, cfg.thermal.temperature_K,
                                        cfg.constants);
    t.add_row({c.particle, c.omega_phi_hz, cfg.thermal.temperature_K, body.iy, th.rms_angle_rad});
  }
  return {{std::move(t)}, {}};
}

CommandResult cmd_charges(const RunConfig& cfg) {
  const auto& cc = cfg.charges;
  const auto body = cfg.body(cc.particle);
  const auto budget =
      trap::charge_budget(body, cfg.trap, kTwoPi * cc.omega_phi_hz, cc.ratio, cfg.constants);
  ReportTable t = make_table(cfg, "charges", "charges",
                             {"particle", "omega_phi_hz", "ratio", "Vac_V", "drive_hz", "z0_m",
                              "efficiency", "charge_C", "elementary_charges", "reference_count"});
  t.notes.push_back(
      "elementary_charges inverts the axial pseudopotential frequency directly; reference_count is "
      "the commonly quoted minimum and is not reproduced by that inversion");
  t.add_row({cc.particle, cc.omega_phi_hz, cc.ratio, cfg.trap.v_ac_V, cfg.trap.drive_rad_s / kTwoPi,
             cfg.trap.gap_m, cfg.trap.efficiency, budget.charge_C, budget.elementary_charges,
             cc.reference_count});
  return {{std::move(t)}, {}};
}

CommandResult cmd_stability_chart(const RunConfig& cfg, int threads) {
  const auto& sc = cfg.stability_chart;
  const auto axis = [](double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  };
  const std::size_t n = static_cast<std::size_t>(sc.a_points) * static_cast<std::size_t>(sc.q_points);
  std::vector<trap::StabilityVerdict> verdicts(n);
  std::vector<std::pair<double, double>> aq(n);
  parallel_for(n, threads, [&](std::size_t k) {
    const int i = static_cast<int>(k / static_cast<std::size_t>(sc.q_points));
    const int j = static_cast<int>(k % static_cast<std::size_t>(sc.q_points));
    aq[k] = {axis(sc.a_min, sc.a_max, sc.a_points, i), axis(sc.q_min, sc.q_max, sc.q_points, j)};
    verdicts[k] = trap::floquet_stability({trap::Mode::RotY, aq[k].first, aq[k].second}, cfg.trap);
  });
  ReportTable t = make_table(cfg, "stability_chart", "stability-chart",
                             {"a", "q", "monodromy_trace", "stable", "characteristic_exponent"});
  for (std::size_t k = 0; k < n; ++k)
    t.rows.push_back({aq[k].first, aq[k].second, verdicts[k].monodromy_trace, verdicts[k].stable,
                      verdicts[k].characteristic_exponent});
  return {{std::move(t)}, {}};
}

CommandResult cmd_dynamics(const RunConfig& cfg) {
  const auto& dc = cfg.dynamics;
  const double drive = kTwoPi * dc.drive_hz;
  const auto rd = rotor::RotorDrive::symmetric(dc.a, dc.q, drive);
  rotor::RotorState init;
  init.phi1_rad = dc.phi1_rad;
  init.phi2_rad = dc.phi2_rad;
  rotor::SimulationSettings settings;
  settings.samples_per_drive_period = dc.samples_per_period;
  const double duration = dc.duration_periods * kTwoPi / drive;
  const auto traj = rotor::simulate(rd, dc.nonlinear ? rotor::TorqueModel::Nonlinear : rotor::TorqueModel::Linear,
                                    init, duration, rotor::DampingModel{dc.damping_per_s}, settings);

  CommandResult out;
  ReportTable t = make_table(cfg, "dynamics_trajectory", "dynamics",
                             {"time_s", "phi1_rad", "phi2_rad", "dphi1_radps", "dphi2_radps"});
  t.rows.reserve(traj.samples.size());
  for (const auto& s : traj.samples)
    t.rows.push_back({s.time_s, s.phi1_rad, s.phi2_rad, s.dphi1_rad_s, s.dphi2_rad_s});

  const double arg = dc.a + 0.5 * dc.q * dc.q;
  const double formula = arg >= 0.0 ? 0.5 * drive * std::sqrt(arg) : kNaN;
  const auto floquet = trap::floquet_stability({trap::Mode::RotY, dc.a, dc.q}, cfg.trap);
  double extracted = kNaN;
  if (traj.unstable) {
    out.warnings.push_back("dynamics: trajectory left |phi| < pi/2; no frequency extracted");
  } else {
    try {
      extracted = rotor::extract_secular_frequency(traj);
    } catch (const ExtractionError& e) {
      out.warnings.push_back(std::string("dynamics: ") + e.what());
    }
  }
  ReportTable s = make_table(cfg, "dynamics_summary", "dynamics",
                             {"a", "q", "drive_hz", "model", "omega_formula_radps",
                              "omega_extracted_radps", "omega_floquet_radps", "relative_difference",
                              "trajectory_unstable", "floquet_stable"});
  s.add_row({dc.a, dc.q, dc.drive_hz, std::string(dc.nonlinear ? "nonlinear" : "linear"), formula,
             extracted, floquet.stable ? 0.5 * drive * floquet.characteristic_exponent : kNaN,
             (extracted - formula) / formula, traj.unstable, floquet.stable});
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(s));
  return out;
}

CommandResult cmd_spin(const RunConfig& cfg) {
  const auto spin = nv::SpinConfig::from_constants(cfg.constants, cfg.spin.field_T);
  const auto mixed = nv::mixed_spectrum(spin);
  const auto dressed =
      nv::dressed_spectrum(mixed, nv::MicrowaveConfig{cfg.spin.rabi_hz, cfg.spin.detuning_hz, std::nullopt});
  ReportTable t = make_table(cfg, "spin", "spin",
                             {"B_T", "theta_rad", "omega_g_radps", "omega_d_radps", "omega_e_radps",
                              "OmegaR_Hz", "detuning_hz", "psi_rad", "omega_plus_radps",
                              "omega_minus_radps", "omega_e_prime_radps"});
  t.add_row({spin.field_T, mixed.theta, mixed.omega_g, mixed.omega_d, mixed.omega_e, cfg.spin.rabi_hz,
             cfg.spin.detuning_hz, dressed.psi, dressed.omega_plus, dressed.omega_minus,
             dressed.omega_e_prime});
  CommandResult out{{std::move(t)}, {}};
  for (const auto& w : dressed.warnings) out.warnings.push_back("spin: " + w);
  return out;
}

CommandResult cmd_resonance(const RunConfig& cfg) {
  const auto spin = nv::SpinConfig::from_constants(cfg.constants, 0.0);
  const double omega_phi = kTwoPi * cfg.resonance.omega_phi_hz;
  const auto sol = nv::resonance_field(spin, cfg.resonance.rabi_hz, omega_phi);
  auto tuned = spin;
  tuned.field_T = sol.field_T;
  const auto mixed = nv::mixed_spectrum(tuned);
  const auto dressed =
      nv::dressed_spectrum(mixed, nv::MicrowaveConfig{cfg.resonance.rabi_hz, 0.0, std::nullopt});
  ReportTable t = make_table(cfg, "resonance", "resonance",
                             {"OmegaR_Hz", "omega_phi_hz", "B_T", "psi_rad", "detuning_hz",
                              "mismatch_radps"});
  t.add_row({cfg.resonance.rabi_hz, cfg.resonance.omega_phi_hz, sol.field_T, sol.psi,
             sol.detuning_rad_s / kTwoPi,
             dressed.omega_e_prime - dressed.omega_plus - omega_phi});
  CommandResult out{{std::move(t)}, {}};
  for (const auto& w : dressed.warnings) out.warnings.push_back("resonance: " + w);
  return out;
}

CommandResult cmd_coupling(const RunConfig& cfg) {
  const auto& cc = cfg.coupling;
  const auto p = resonant_point(cfg, cc.particle, cc.omega_phi_hz, cc.rabi_hz);
  const auto budget = coupling::DecoherenceBudget::from_t2(cc.t1_s, cc.t2_s, cc.mechanical_linewidth_hz);
  const auto verdict = coupling::strong_coupling_assessment(p.report, budget);
  ReportTable t = make_table(cfg, "coupling", "coupling",
                             {"particle", "omega_phi_hz", "OmegaR_Hz", "B_T", "theta_rad", "psi_rad",
                              "phi0_rad", "lambda_hz", "lambda_tilde_hz", "T1_s", "T2_s",
                              "lambda_T1", "lambda_T2", "strong", "rwa_binding"});
  t.add_row({cc.particle, cc.omega_phi_hz, cc.rabi_hz, p.report.field_T, p.report.theta, p.report.psi,
             p.mode.phi0_rad, p.report.lambda_hz, p.report.lambda_tilde_hz, budget.t1_s, budget.t2_s(),
             verdict.lambda_t1, verdict.lambda_t2, verdict.strong, p.report.rwa_binding});
  CommandResult out{{std::move(t)}, {}};
  for (const auto& w : p.dressed.warnings) out.warnings.push_back("coupling: " + w);
  return out;
}

CommandResult cmd_jc(const RunConfig& cfg) {
  const auto& jc = cfg.jc_sim;
  const auto p = resonant_point(cfg, jc.particle, jc.omega_phi_hz, jc.rabi_hz);
  const double lt = p.report.lambda_tilde_hz;
  const auto model = quantum::build_model(p.dressed, p.mode, lt, jc.n_max,
                                          jc.full_rabi ? quantum::ModelKind::FullRabi
                                                       : quantum::ModelKind::JaynesCummings);
  std::vector<double> times(static_cast<std::size_t>(jc.steps) + 1);
  const double t_end = jc.duration_periods / lt;
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = t_end * static_cast<double>(k) / jc.steps;

  coupling::DecoherenceBudget budget{jc.t1_s, jc.t2_star_s, 0.0};
  quantum::LindbladChannels channels;
  if (jc.dissipative) {
    channels = quantum::LindbladChannels::from_budget(budget);
    channels.phonon_rate = jc.phonon_rate_per_s;
  }
  const auto rho0 = quantum::pure_state(model, quantum::Level::Plus, jc.initial_phonons);
  const auto res = quantum::evolve(model, rho0, times, channels);

  CommandResult out;
  double exchange = kNaN;
  try {
    exchange = quantum::exchange_frequency(res.times, res.p_excited);
  } catch (const ExtractionError& e) {
    out.warnings.push_back(std::string("jc-sim: ") + e.what());
  }
  const auto verdict = coupling::strong_coupling_assessment(p.report, budget);

  ReportTable t = make_table(cfg, "jc_evolution", "jc-sim",
                             {"time_s", "P_plus", "P_minus", "P_e", "mean_phonons", "purity"});
  for (std::size_t k = 0; k < res.times.size(); ++k)
    t.rows.push_back({res.times[k], res.p_plus[k], res.p_minus[k], res.p_excited[k],
                      res.mean_phonons[k], res.purity[k]});

  ReportTable s = make_table(cfg, "jc_summary", "jc-sim",
                             {"particle", "model", "N_max", "B_T", "lambda_tilde_hz",
                              "exchange_frequency_hz", "expected_exchange_hz", "max_trace_error",
                              "max_hermiticity_error", "min_eigenvalue", "T2_s", "lambda_T1",
                              "lambda_T2", "strong"});
  const double expected = jc.initial_phonons > 0 ? 2.0 * lt * std::sqrt(double(jc.initial_phonons)) : kNaN;
  s.add_row({jc.particle, std::string(jc.full_rabi ? "full_rabi" : "jaynes_cummings"),
             static_cast<std::int64_t>(jc.n_max), p.report.field_T, lt, exchange, expected,
             res.max_trace_error, res.max_hermiticity_error, res.min_eigenvalue, budget.t2_s(),
             verdict.lambda_t1, verdict.lambda_t2, verdict.strong});
  out.tables.push_back(std::move(t));
  out.tables.push_back(std::move(s));
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"table1",   "fig2-map",  "fig4-curves", "thermal",
                                              "charges",  "stability-chart", "dynamics", "spin",
                                              "resonance", "coupling", "jc-sim"};
  return names;
}

CommandResult run_command(std::string_view verb, const RunConfig& cfg, int threads) {
  if (verb == "table1") return cmd_table1(cfg);
  if (verb == "fig2-map") return cmd_fig2_map(cfg, threads);
  if (verb == "fig4-curves") return cmd_fig4_curves(cfg, threads);
  if (verb == "thermal") return cmd_thermal(cfg);
  if (verb == "charges") return cmd_charges(cfg);
  if (verb == "stability-chart") return cmd_stability_chart(cfg, threads);
  if (verb == "dynamics") return cmd_dynamics(cfg);
  if (verb == "spin") return cmd_spin(cfg);
  if (verb == "resonance") return cmd_resonance(cfg);
  if (verb == "coupling") return cmd_coupling(cfg);
  if (verb == "jc-sim") return cmd_jc(cfg);
  throw InvalidArgument("unknown command '" + std::string(verb) + "'");
}

}  // namespace levrot::studio
