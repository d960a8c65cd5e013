#include "levrot/quantum_sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "levrot/error.hpp"

namespace levrot::quantum {
namespace {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr cd kI{0.0, 1.0};

// Spin-level projector |to><from| tensored with the phonon identity.
MatrixXcd spin_op(int n_max, Level to, Level from) {
  const int nf = n_max + 1;
  MatrixXcd op = MatrixXcd::Zero(3 * nf, 3 * nf);
  for (int n = 0; n < nf; ++n)
    op(static_cast<int>(to) * nf + n, static_cast<int>(from) * nf + n) = 1.0;
  return op;
}

MatrixXcd annihilation(int n_max) {
  const int nf = n_max + 1;
  MatrixXcd op = MatrixXcd::Zero(3 * nf, 3 * nf);
  for (int l = 0; l < 3; ++l)
    for (int n = 1; n < nf; ++n) op(l * nf + n - 1, l * nf + n) = std::sqrt(static_cast<double>(n));
  return op;
}

// Column-major vectorisation: vec(A X B) = (B^T kron A) vec(X).
MatrixXcd liouvillian(const QuantumModel& model, const LindbladChannels& ch) {
  const int d = model.dim();
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  const MatrixXcd& h = model.hamiltonian;
  MatrixXcd l = -kI * (Eigen::kroneckerProduct(id, h) - Eigen::kroneckerProduct(h.transpose(), id))
                          .eval();
  auto add_channel = [&](const MatrixXcd& op) {
    const MatrixXcd ll = op.adjoint() * op;
    l += Eigen::kroneckerProduct(op.conjugate(), op);
    l -= 0.5 * Eigen::kroneckerProduct(id, ll);
    l -= 0.5 * Eigen::kroneckerProduct(ll.transpose(), id);
  };
  if (ch.relaxation_rate > 0.0)
    add_channel(std::sqrt(ch.relaxation_rate) * spin_op(model.n_max, Level::Plus, Level::Excited));
  if (ch.dephasing_rate > 0.0)
    add_channel(std::sqrt(2.0 * ch.dephasing_rate) *
                spin_op(model.n_max, Level::Excited, Level::Excited));
  if (ch.phonon_rate > 0.0) add_channel(std::sqrt(ch.phonon_rate) * annihilation(model.n_max));
  return l;
}

void validate_state(const QuantumModel& model, const MatrixXcd& rho, double tol) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim())
    throw InvalidArgument("evolve: initial state has the wrong dimension");
  if (std::abs(rho.trace() - 1.0) > tol) throw InvalidArgument("evolve: initial state not normalised");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw InvalidArgument("evolve: initial state not Hermitian");
}

}  // namespace

QuantumModel build_model(const DressedLevels& levels, double omega_phi_rad_s,
                         double lambda_tilde_hz, int n_max, ModelKind kind) {
  if (n_max < 1) throw InvalidArgument("build_model: N_max must be >= 1");
  if (!std::isfinite(lambda_tilde_hz) || !std::isfinite(omega_phi_rad_s))
    throw InvalidArgument("build_model: non-finite parameters");
  QuantumModel m;
  m.kind = kind;
  m.levels = levels;
  m.lambda_tilde_hz = lambda_tilde_hz;
  m.omega_phi_rad_s = omega_phi_rad_s;
  m.n_max = n_max;
  const int d = m.dim();
  m.hamiltonian = MatrixXcd::Zero(d, d);
  const double energies[3] = {levels.omega_plus, levels.omega_minus, levels.omega_e_prime};
  for (int l = 0; l < 3; ++l)
    for (int n = 0; n <= n_max; ++n)
      m.hamiltonian(m.index(static_cast<Level>(l), n), m.index(static_cast<Level>(l), n)) =
          energies[l] + n * omega_phi_rad_s;

  const double g = kTwoPi * lambda_tilde_hz;
  for (int n = 0; n < n_max; ++n) {
    const double amp = g * std::sqrt(static_cast<double>(n + 1));
    // a |e><+| : |+, n+1> -> |e, n>
    const int e_n = m.index(Level::Excited, n);
    const int p_n1 = m.index(Level::Plus, n + 1);
    m.hamiltonian(e_n, p_n1) += amp;
    m.hamiltonian(p_n1, e_n) += amp;
    if (kind == ModelKind::FullRabi) {
      // a^dag |e><+| : |+, n> -> |e, n+1>
      const int e_n1 = m.index(Level::Excited, n + 1);
      const int p_n = m.index(Level::Plus, n);
      m.hamiltonian(e_n1, p_n) += amp;
      m.hamiltonian(p_n, e_n1) += amp;
    }
  }
  return m;
}

QuantumModel build_model(const nv::DressedSpectrum& dressed, const coupling::RotationalMode& mode,
                         double lambda_tilde_hz, int n_max, ModelKind kind) {
  return build_model(DressedLevels::from(dressed), mode.omega_phi_rad_s, lambda_tilde_hz, n_max,
                     kind);
}

void LindbladChannels::validate() const {
  if (!(relaxation_rate >= 0.0) || !(dephasing_rate >= 0.0) || !(phonon_rate >= 0.0))
    throw InvalidArgument("LindbladChannels: rates must be >= 0");
}

MatrixXcd pure_state(const QuantumModel& model, Level level, int n) {
  if (n < 0 || n > model.n_max) throw InvalidArgument("pure_state: phonon number out of range");
  MatrixXcd rho = MatrixXcd::Zero(model.dim(), model.dim());
  const int i = model.index(level, n);
  rho(i, i) = 1.0;
  return rho;
}

MatrixXcd thermal_state(const QuantumModel& model, Level level, double mean_occupation) {
  if (!(mean_occupation >= 0.0)) throw InvalidArgument("thermal_state: occupation must be >= 0");
  MatrixXcd rho = MatrixXcd::Zero(model.dim(), model.dim());
  const double ratio = mean_occupation / (1.0 + mean_occupation);
  double norm = 0.0;
  for (int n = 0; n <= model.n_max; ++n) {
    const double p = std::pow(ratio, n);
    rho(model.index(level, n), model.index(level, n)) = p;
    norm += p;
  }
  return rho / norm;
}

EvolutionResult evolve(const QuantumModel& model, const MatrixXcd& rho0,
                       std::span<const double> times, const LindbladChannels& channels,
                       const EvolveOptions& options) {
  channels.validate();
  validate_state(model, rho0, options.tolerance);
  if (times.empty()) throw InvalidArgument("evolve: empty time grid");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw InvalidArgument("evolve: times must increase strictly");

  const int d = model.dim();
  const int nf = model.n_max + 1;
  EvolutionResult res;
  res.times.assign(times.begin(), times.end());
  res.min_eigenvalue = 1.0;

  auto record = [&](const MatrixXcd& rho, double t) {
    const double trace_err = std::abs(rho.trace() - 1.0);
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const MatrixXcd sym = 0.5 * (rho + rho.adjoint());
    const double min_eig = Eigen::SelfAdjointEigenSolver<MatrixXcd>(sym, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
    res.max_trace_error = std::max(res.max_trace_error, trace_err);
    res.max_hermiticity_error = std::max(res.max_hermiticity_error, herm_err);
    res.min_eigenvalue = std::min(res.min_eigenvalue, min_eig);
    if (trace_err > options.tolerance || herm_err > options.tolerance ||
        min_eig < -options.tolerance)
      throw IntegrationError("evolve: density matrix left the physical set at t=" +
                             std::to_string(t));
    double pops[3] = {0.0, 0.0, 0.0};
    double phonons = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int n = 0; n < nf; ++n) {
        const double p = rho(l * nf + n, l * nf + n).real();
        pops[l] += p;
        phonons += n * p;
      }
    res.p_plus.push_back(pops[0]);
    res.p_minus.push_back(pops[1]);
    res.p_excited.push_back(pops[2]);
    res.mean_phonons.push_back(phonons);
    res.purity.push_back(rho.cwiseAbs2().sum());
    res.energy.push_back((rho * model.hamiltonian).trace().real());
    res.excitation_number.push_back(pops[2] + phonons);
    if (options.keep_states) res.states.push_back(rho);
  };

  if (channels.unitary()) {
    const Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(model.hamiltonian);
    const MatrixXcd& v = eig.eigenvectors();
    const MatrixXcd rho_eig = v.adjoint() * rho0 * v;
    for (double t : times) {
      const double dt = t - times.front();
      VectorXcd phase(d);
      for (int i = 0; i < d; ++i) phase(i) = std::exp(-kI * eig.eigenvalues()(i) * dt);
      const MatrixXcd evolved = phase.asDiagonal() * rho_eig * phase.conjugate().asDiagonal();
      record(v * evolved * v.adjoint(), t);
    }
    return res;
  }

  const MatrixXcd lv = liouvillian(model, channels);
  VectorXcd vec = Eigen::Map<const VectorXcd>(rho0.data(), d * d);
  record(rho0, times.front());
  double cached_dt = -1.0;
  MatrixXcd propagator;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    if (std::abs(dt - cached_dt) > 1e-12 * dt) {
      propagator = (lv * dt).exp();
      cached_dt = dt;
    }
    vec = propagator * vec;
    const MatrixXcd rho = Eigen::Map<const MatrixXcd>(vec.data(), d, d);
    record(rho, times[k]);
  }
  return res;
}

double exchange_frequency(std::span<const double> times, std::span<const double> excited) {
  const std::size_t n = times.size();
  if (n != excited.size() || n < 8)
    throw ExtractionError("exchange_frequency: need matching series of >= 8 samples");

  double mean = 0.0;
  for (double p : excited) mean += p;
  mean /= static_cast<double>(n);

  // mean-level crossings give the starting frequency
  std::vector<double> crossings;
  for (std::size_t k = 1; k < n; ++k) {
    const double a = excited[k - 1] - mean;
    const double b = excited[k] - mean;
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      crossings.push_back(times[k - 1] + (times[k] - times[k - 1]) * a / (a - b));
    }
  }
  if (crossings.size() < 3) throw ExtractionError("exchange_frequency: no oscillation detected");
  const double f0 = static_cast<double>(crossings.size() - 1) /
                    (2.0 * (crossings.back() - crossings.front()));

  // linear least squares for offset and quadrature amplitudes at f0
  const double t0 = times[0];
  Eigen::MatrixXd basis(n, 3);
  Eigen::VectorXd y(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 2.0 * std::numbers::pi * f0 * (times[k] - t0);
    basis(k, 0) = 1.0;
    basis(k, 1) = std::cos(w);
    basis(k, 2) = std::sin(w);
    y(k) = excited[k];
  }
  const Eigen::Vector3d lin = basis.colPivHouseholderQr().solve(y);

  // Levenberg-Marquardt on c + A exp(-kappa t) cos(2 pi f t + phi)
  Eigen::Matrix<double, 5, 1> p;
  p << lin(0), std::hypot(lin(1), lin(2)), 0.0, f0, std::atan2(-lin(2), lin(1));
  auto residuals = [&](const Eigen::Matrix<double, 5, 1>& x, Eigen::VectorXd& r,
                       Eigen::MatrixXd* jac) {
    r.resize(static_cast<Eigen::Index>(n));
    if (jac) jac->resize(static_cast<Eigen::Index>(n), 5);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = times[k] - t0;
      const double env = std::exp(-x(2) * t);
      const double arg = 2.0 * std::numbers::pi * x(3) * t + x(4);
      const double c = std::cos(arg);
      const double s = std::sin(arg);
      const auto i = static_cast<Eigen::Index>(k);
      r(i) = x(0) + x(1) * env * c - excited[k];
      if (jac) {
        (*jac)(i, 0) = 1.0;
        (*jac)(i, 1) = env * c;
        (*jac)(i, 2) = -t * x(1) * env * c;
        (*jac)(i, 3) = -2.0 * std::numbers::pi * t * x(1) * env * s;
        (*jac)(i, 4) = -x(1) * env * s;
      }
    }
  };
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  residuals(p, r, &jac);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::Matrix<double, 5, 5> jtj = jac.transpose() * jac;
    const Eigen::Matrix<double, 5, 1> jtr = jac.transpose() * r;
    Eigen::Matrix<double, 5, 5> a = jtj;
    a.diagonal() += mu * jtj.diagonal().cwiseMax(1e-30);
    const Eigen::Matrix<double, 5, 1> step = a.ldlt().solve(-jtr);
    const Eigen::Matrix<double, 5, 1> trial = p + step;
    Eigen::VectorXd r_trial;
    residuals(trial, r_trial, nullptr);
    const double trial_cost = r_trial.squaredNorm();
    if (trial_cost < cost) {
      const bool done = cost - trial_cost < 1e-15 * (cost + 1e-300);
      p = trial;
      cost = trial_cost;
      residuals(p, r, &jac);
      mu = std::max(mu * 0.3, 1e-12);
      if (done) break;
    } else {
      mu *= 10.0;
      if (mu > 1e12) break;
    }
  }
  if (!std::isfinite(p(3)) || !(p(3) > 0.0))
    throw ExtractionError("exchange_frequency: fit diverged");
  return p(3);
}

}  // namespace levrot::quantum
