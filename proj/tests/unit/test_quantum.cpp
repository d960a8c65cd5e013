#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "levrot/error.hpp"
#include "levrot/quantum_sim.hpp"
#include "oracles.hpp"

using namespace levrot;
using namespace levrot::quantum;

namespace {
constexpr double kPhi = kTwoPi * 5e6;
constexpr double kLambda = 57e3;

// Resonant levels: omega_e' - omega_+ = omega_phi.
DressedLevels levels() { return {kTwoPi * 250e6, -kTwoPi * 250e6, kTwoPi * 250e6 + kPhi}; }

std::vector<double> grid(double t_end, int n) {
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) t[static_cast<std::size_t>(k)] = t_end * k / n;
  return t;
}
}  // namespace

TEST_CASE("Hamiltonian structure") {
  const auto diag = build_model(levels(), kPhi, 0.0, 3, ModelKind::FullRabi);
  CHECK((diag.hamiltonian - Eigen::MatrixXcd(diag.hamiltonian.diagonal().asDiagonal())).norm() == 0.0);

  const auto jc1 = build_model(levels(), kPhi, kLambda, 1, ModelKind::JaynesCummings);
  CHECK(std::abs(jc1.hamiltonian(jc1.index(Level::Plus, 1), jc1.index(Level::Excited, 0))) ==
        doctest::Approx(kTwoPi * kLambda));

  const auto jc4 = build_model(levels(), kPhi, kLambda, 4, ModelKind::JaynesCummings);
  CHECK(jc4.hamiltonian(jc4.index(Level::Excited, 3), jc4.index(Level::Plus, 4)).real() ==
        doctest::Approx(kTwoPi * kLambda * 2.0));
  CHECK((jc4.hamiltonian - jc4.hamiltonian.adjoint()).norm() < 1e-12);
  // |-> is uncoupled
  for (int n = 0; n <= 4; ++n)
    for (int k = 0; k < jc4.dim(); ++k)
      if (k != jc4.index(Level::Minus, n)) CHECK(jc4.hamiltonian(jc4.index(Level::Minus, n), k) == 0.0);

  // JC conserves |e><e| + a^dag a
  Eigen::MatrixXcd number = Eigen::MatrixXcd::Zero(jc4.dim(), jc4.dim());
  for (int n = 0; n <= 4; ++n) {
    number(jc4.index(Level::Plus, n), jc4.index(Level::Plus, n)) = n;
    number(jc4.index(Level::Minus, n), jc4.index(Level::Minus, n)) = n;
    number(jc4.index(Level::Excited, n), jc4.index(Level::Excited, n)) = n + 1;
  }
  CHECK((jc4.hamiltonian * number - number * jc4.hamiltonian).norm() < 1e-12 * jc4.hamiltonian.norm());
  const auto fr = build_model(levels(), kPhi, kLambda, 4, ModelKind::FullRabi);
  CHECK((fr.hamiltonian * number - number * fr.hamiltonian).norm() > 1.0);

  CHECK_THROWS_AS(build_model(levels(), kPhi, kLambda, 0, ModelKind::FullRabi), InvalidArgument);
}

TEST_CASE("resonant vacuum Rabi oscillation") {
  const auto model = build_model(levels(), kPhi, kLambda, 4, ModelKind::JaynesCummings);
  const auto t = grid(1.0 / kLambda, 400);
  const auto res = evolve(model, pure_state(model, Level::Plus, 1), t, {});
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double s = std::sin(kTwoPi * kLambda * t[k]);
    CHECK(res.p_excited[k] == doctest::Approx(s * s).epsilon(1e-9));
    CHECK(std::abs(res.purity[k] - 1.0) < 1e-9);
    CHECK(std::abs(res.energy[k] - res.energy[0]) < 1e-9 * std::abs(res.energy[0]));
    CHECK(std::abs(res.excitation_number[k] - 1.0) < 1e-9);
  }
  CHECK(res.max_trace_error < 1e-9);
  CHECK(res.min_eigenvalue > -1e-9);
  // first full transfer at 1 / (4 lambda)
  CHECK(1.0 / (4 * kLambda) == doctest::Approx(4.39e-6).epsilon(1e-3));
  CHECK(res.p_excited[100] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("exchange frequency") {
  auto t = grid(50e-6, 1000);
  std::vector<double> p(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) p[k] = std::pow(std::sin(kTwoPi * kLambda * t[k]), 2);
  CHECK(exchange_frequency(t, p) == doctest::Approx(2 * kLambda).epsilon(1e-6));
  std::vector<double> flat(t.size(), 0.3);
  CHECK_THROWS_AS(exchange_frequency(t, flat), ExtractionError);

  const auto model = build_model(levels(), kPhi, kLambda, 6, ModelKind::JaynesCummings);
  const auto tt = grid(3.0 / kLambda, 600);
  const auto r1 = evolve(model, pure_state(model, Level::Plus, 1), tt, {});
  const auto r4 = evolve(model, pure_state(model, Level::Plus, 4), tt, {});
  const double ratio = exchange_frequency(tt, r4.p_excited) / exchange_frequency(tt, r1.p_excited);
  CHECK(ratio == doctest::Approx(2.0).epsilon(1e-3));

  const auto slow = build_model(levels(), kPhi, 5e3, 4, ModelKind::JaynesCummings);
  const auto slow_fr = build_model(levels(), kPhi, 5e3, 4, ModelKind::FullRabi);
  const auto ts = grid(3.0 / 5e3, 600);
  const double f_jc = exchange_frequency(ts, evolve(slow, pure_state(slow, Level::Plus, 1), ts, {}).p_excited);
  const double f_fr = exchange_frequency(ts, evolve(slow_fr, pure_state(slow_fr, Level::Plus, 1), ts, {}).p_excited);
  CHECK(std::abs(f_fr / f_jc - 1) < 1e-3);
}

TEST_CASE("full Rabi stays close to JC at lambda = 1e-2 omega_phi / 2 pi") {
  const double lam = 1e-2 * kPhi / kTwoPi;
  const auto jc = build_model(levels(), kPhi, lam, 6, ModelKind::JaynesCummings);
  const auto fr = build_model(levels(), kPhi, lam, 6, ModelKind::FullRabi);
  const auto t = grid(2.0 / lam, 800);
  const auto a = evolve(jc, pure_state(jc, Level::Plus, 1), t, {});
  const auto b = evolve(fr, pure_state(fr, Level::Plus, 1), t, {});
  double gap = 0;
  for (std::size_t k = 0; k < t.size(); ++k) gap = std::max(gap, std::abs(a.p_excited[k] - b.p_excited[k]));
  CHECK(gap <= 0.01);
}

TEST_CASE("truncation") {
  const auto small = build_model(levels(), kPhi, kLambda, 4, ModelKind::FullRabi);
  const auto large = build_model(levels(), kPhi, kLambda, 6, ModelKind::FullRabi);
  const auto t = grid(1.0 / kLambda, 100);
  const auto a = evolve(small, pure_state(small, Level::Plus, 1), t, {});
  const auto b = evolve(large, pure_state(large, Level::Plus, 1), t, {});
  for (std::size_t k = 0; k < t.size(); ++k) CHECK(std::abs(a.p_excited[k] - b.p_excited[k]) < 1e-6);
}

TEST_CASE("dissipation") {
  // strong dephasing: contrast falls below 1/e within one period
  const auto model = build_model(levels(), kPhi, kLambda, 3, ModelKind::JaynesCummings);
  LindbladChannels ch;
  ch.dephasing_rate = 10 * kTwoPi * kLambda;
  const double period = 1.0 / (2 * kLambda);
  const auto t = grid(period, 200);
  const auto res = evolve(model, pure_state(model, Level::Plus, 1), t, ch);
  double hi = 0, lo = 1;
  for (std::size_t k = 100; k < t.size(); ++k) {
    hi = std::max(hi, res.p_excited[k]);
    lo = std::min(lo, res.p_excited[k]);
  }
  CHECK(hi - lo < std::exp(-1.0));
  CHECK(res.max_trace_error < 1e-9);
  CHECK(res.min_eigenvalue > -1e-9);

  // coherence <+|rho|e> decays at 1/T2 = 1/(2 T1) + 1/T2*
  const auto free = build_model(levels(), kPhi, 0.0, 1, ModelKind::JaynesCummings);
  const coupling::DecoherenceBudget budget{20e-6, 30e-6, 0.0};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(free.dim(), free.dim());
  const int ip = free.index(Level::Plus, 0), ie = free.index(Level::Excited, 0);
  rho(ip, ip) = rho(ie, ie) = rho(ip, ie) = rho(ie, ip) = 0.5;
  const auto tc = grid(40e-6, 40);
  EvolveOptions keep;
  keep.keep_states = true;
  const auto rc = evolve(free, rho, tc, LindbladChannels::from_budget(budget), keep);
  const double c0 = std::abs(rc.states.front()(ip, ie));
  const double c1 = std::abs(rc.states.back()(ip, ie));
  const double rate = std::log(c0 / c1) / tc.back();
  CHECK(rate * budget.t2_s() == doctest::Approx(1.0).epsilon(0.02));

  // thermal initial state is normalised and diagonal
  const auto th = thermal_state(model, Level::Plus, 0.5);
  CHECK(std::abs(th.trace() - 1.0) < 1e-14);
  CHECK_THROWS_AS(evolve(model, 2.0 * th, t, {}), InvalidArgument);
}
