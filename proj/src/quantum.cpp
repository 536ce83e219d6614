#include "hardy/quantum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>

namespace hardy {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::numbers::pi;

void check_angle(double v, const char* name) {
  if (!(v >= 0.0 && v <= pi)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, pi]");
  }
}

void check_concurrence(double C) {
  if (!(C >= 0.0 && C <= 1.0)) {
    throw std::domain_error("concurrence must lie in [0, 1], got " +
                            std::to_string(C));
  }
}

// Orthonormal qubit basis with the given columns.
MatrixXcd qubit_basis(double c00, double c10, double c01, double c11) {
  MatrixXcd u(2, 2);
  u << c00, c01, c10, c11;
  return u;
}

ProjectiveMeasurement sigma_z() {
  return ProjectiveMeasurement::rank_one(MatrixXcd::Identity(2, 2));
}

// Eigenbasis of cos(2t) sigma_z - sin(2t) sigma_x; outcome 0 is the +1
// eigenvector (cos t, -sin t), outcome 1 is (sin t, cos t).
ProjectiveMeasurement rotated_z(double t) {
  return ProjectiveMeasurement::rank_one(
      qubit_basis(std::cos(t), -std::sin(t), std::sin(t), std::cos(t)));
}

}  // namespace

ProjectiveMeasurement ProjectiveMeasurement::rank_one(const MatrixXcd& basis) {
  std::vector<int> labels(basis.cols());
  for (int c = 0; c < basis.cols(); ++c) labels[c] = c;
  return {basis, std::move(labels)};
}

MatrixXcd ProjectiveMeasurement::projector(int outcome) const {
  const auto dim = basis.rows();
  MatrixXcd p = MatrixXcd::Zero(dim, dim);
  for (int c = 0; c < basis.cols(); ++c) {
    if (outcome_of_column[c] == outcome) p += basis.col(c) * basis.col(c).adjoint();
  }
  return p;
}

QuantumStrategy::QuantumStrategy(int outcomes, VectorXcd state,
                                 std::vector<ProjectiveMeasurement> measurements_A,
                                 std::vector<ProjectiveMeasurement> measurements_B)
    : local_dim_(0),
      outcomes_(outcomes),
      state_(std::move(state)),
      meas_A_(std::move(measurements_A)),
      meas_B_(std::move(measurements_B)) {
  const auto n = state_.size();
  local_dim_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (local_dim_ < 1 || static_cast<Eigen::Index>(local_dim_) * local_dim_ != n) {
    throw std::invalid_argument("state length is not a square");
  }
  if (std::abs(state_.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state is not normalized: norm " +
                                std::to_string(state_.norm()));
  }
  if (meas_A_.size() != meas_B_.size() || meas_A_.size() < 2 || outcomes_ < 2) {
    throw std::invalid_argument(
        "strategy needs the same number (>= 2) of inputs per party and >= 2 outcomes");
  }
  const MatrixXcd id = MatrixXcd::Identity(local_dim_, local_dim_);
  for (const auto* party : {&meas_A_, &meas_B_}) {
    for (const auto& m : *party) {
      if (m.basis.rows() != local_dim_ || m.basis.cols() != local_dim_ ||
          static_cast<int>(m.outcome_of_column.size()) != local_dim_) {
        throw std::invalid_argument("measurement basis has the wrong shape");
      }
      if ((m.basis.adjoint() * m.basis - id).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("measurement basis is not orthonormal");
      }
      for (int lbl : m.outcome_of_column) {
        if (lbl < 0 || lbl >= outcomes_) {
          throw std::invalid_argument("measurement outcome label out of range");
        }
      }
    }
  }
}

MatrixXcd QuantumStrategy::state_matrix() const {
  MatrixXcd psi(local_dim_, local_dim_);
  for (int i = 0; i < local_dim_; ++i)
    for (int j = 0; j < local_dim_; ++j) psi(i, j) = state_(i * local_dim_ + j);
  return psi;
}

Behavior born_behavior(const QuantumStrategy& qs) {
  const Scenario sc = qs.scenario();
  const MatrixXcd psi = qs.state_matrix();
  std::vector<double> p(sc.num_entries(), 0.0);
  for (int x = 0; x < sc.k; ++x) {
    const auto& ma = qs.measurements_A()[x];
    const MatrixXcd left = ma.basis.adjoint() * psi;
    for (int y = 0; y < sc.k; ++y) {
      const auto& mb = qs.measurements_B()[y];
      // amplitude <u_c (x) w_e | psi>
      const MatrixXcd amp = left * mb.basis.conjugate();
      for (int c = 0; c < amp.rows(); ++c) {
        for (int e = 0; e < amp.cols(); ++e) {
          p[Behavior::index(sc, ma.outcome_of_column[c], mb.outcome_of_column[e], x,
                            y)] += std::norm(amp(c, e));
        }
      }
    }
  }
  return Behavior::from_table(sc, std::move(p));
}

QuantumStrategy random_real_strategy(const Scenario& sc, int dim,
                                     std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_basis = [&] {
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    ProjectiveMeasurement m{q.cast<std::complex<double>>(), std::vector<int>(dim)};
    for (int c = 0; c < dim; ++c) m.outcome_of_column[c] = c % sc.d;
    return m;
  };
  Eigen::VectorXd v(dim * dim);
  for (int i = 0; i < v.size(); ++i) v(i) = gauss(rng);
  v.normalize();
  std::vector<ProjectiveMeasurement> ma, mb;
  for (int x = 0; x < sc.k; ++x) ma.push_back(random_basis());
  for (int y = 0; y < sc.k; ++y) mb.push_back(random_basis());
  return QuantumStrategy(sc.d, v.cast<std::complex<double>>(), std::move(ma),
                         std::move(mb));
}

QuantumStrategy fti_family(const TwoQubitFamilyParams& p) {
  check_angle(p.theta, "theta");
  check_angle(p.alpha, "alpha");
  check_angle(p.beta, "beta");
  VectorXcd psi = VectorXcd::Zero(4);
  psi(0b01) = std::sin(p.theta) * std::cos(p.alpha);
  psi(0b11) = -std::sin(p.theta) * std::sin(p.alpha);
  psi(0b10) = std::cos(p.theta);
  return QuantumStrategy(2, psi, {sigma_z(), rotated_z(p.alpha)},
                         {sigma_z(), rotated_z(p.beta)});
}

double fti_success_formula(const TwoQubitFamilyParams& p) {
  check_angle(p.theta, "theta");
  check_angle(p.alpha, "alpha");
  check_angle(p.beta, "beta");
  const double sa = std::sin(p.alpha);
  return 0.5 * sa *
         ((std::cos(2 * p.beta) * std::cos(2 * p.theta) - 1.0) * sa +
          std::sin(2 * p.beta) * std::sin(2 * p.theta));
}

double hardy_family_beta(double theta, double alpha) {
  check_angle(theta, "theta");
  check_angle(alpha, "alpha");
  return std::atan2(std::sin(theta) * std::sin(alpha), std::cos(theta));
}

QuantumStrategy hardy_family(double theta, double alpha) {
  return fti_family({theta, alpha, hardy_family_beta(theta, alpha), 0.0});
}

double hardy_success_formula(const TwoQubitFamilyParams& p) {
  const double amp = std::cos(p.theta) * std::cos(p.alpha) * std::sin(p.beta);
  return amp * amp;
}

double cll_family_beta(double phi, double theta, double alpha) {
  return std::atan2(std::sin(theta), std::tan(phi) + std::cos(theta) * std::tan(alpha));
}

QuantumStrategy cll_family(const TwoQubitFamilyParams& p) {
  VectorXcd psi = VectorXcd::Zero(4);
  psi(0b00) = std::sin(p.phi);
  psi(0b01) = std::cos(p.phi) * std::sin(p.theta);
  psi(0b10) = std::cos(p.phi) * std::cos(p.theta);
  const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  auto a1 = ProjectiveMeasurement::rank_one(qubit_basis(sa, -ca, ca, sa));
  auto b0 = ProjectiveMeasurement::rank_one(qubit_basis(cb, sb, -sb, cb));
  return QuantumStrategy(2, psi, {sigma_z(), a1}, {b0, sigma_z()});
}

double cll_success_formula(const TwoQubitFamilyParams& p) {
  const double q = std::cos(p.phi) * std::sin(p.theta) * std::cos(p.alpha);
  const double r = std::sin(p.phi) * std::cos(p.beta) +
                   std::cos(p.phi) * std::sin(p.theta) * std::sin(p.beta);
  return q * q - r * r;
}

double concurrence_two_qubit(const VectorXcd& state) {
  if (state.size() != 4) {
    throw std::invalid_argument("concurrence needs a two-qubit state (length 4)");
  }
  return 2.0 * std::abs(state(0) * state(3) - state(1) * state(2));
}

double fti_max_ds_at_concurrence(double C) {
  check_concurrence(C);
  const double s = std::sqrt(1.0 - C * C);
  return 0.5 * s * (1.0 - s);
}

double hardy_max_ds_at_concurrence(double C) {
  check_concurrence(C);
  return C * C * (1.0 - C) / ((2.0 - C) * (2.0 - C));
}

double cll_ds_at_concurrence(double C, double beta) {
  check_concurrence(C);
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double sec2 = 1.0 / (cb * cb);
  const double tan2 = std::tan(beta) * std::tan(beta);
  const double asin_arg = C * sec2 / (C + tan2);
  if (!std::isfinite(asin_arg) || asin_arg > 1.0 || asin_arg < -1.0) {
    throw std::domain_error("arcsine argument out of range at C=" +
                            std::to_string(C) + ", beta=" + std::to_string(beta));
  }
  const double root_arg = (1.0 - C) * cb * cb * (1.0 + C + (C - 1.0) * std::cos(2 * beta));
  if (!(root_arg >= 0.0)) {
    throw std::domain_error("square-root argument negative at C=" +
                            std::to_string(C) + ", beta=" + std::to_string(beta));
  }
  const double c4 = cb * cb * cb * cb;
  return (C - 1.0) * c4 + std::sqrt(2.0) * cb * sb * std::sqrt(root_arg) *
                              std::sin(0.5 * std::asin(asin_arg));
}

CllCurvePoint cll_max_ds_at_concurrence(double C) {
  check_concurrence(C);
  constexpr int kGrid = 4000;
  const double hi = pi / 2;
  auto eval = [&](double b) {
    try {
      return cll_ds_at_concurrence(C, b);
    } catch (const std::domain_error&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  int best_i = -1;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double v = eval(hi * i / kGrid);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i < 0 || !std::isfinite(best)) {
    throw std::domain_error("CLL curve undefined at C=" + std::to_string(C));
  }
  const double lo_b = hi * std::max(0, best_i - 1) / kGrid;
  const double hi_b = hi * std::min(kGrid, best_i + 1) / kGrid;
  auto [b_opt, neg] = boost::math::tools::brent_find_minima(
      [&](double b) { return -eval(b); }, lo_b, hi_b,
      std::numeric_limits<double>::digits / 2);
  if (-neg >= best) return {-neg, b_opt};
  return {best, hi * best_i / kGrid};
}

QuantumStrategy direct_sum(const QuantumStrategy& qa, const QuantumStrategy& qb,
                           double weight) {
  if (qa.inputs() != qb.inputs() || qa.outcomes() != qb.outcomes()) {
    throw std::invalid_argument("direct sum needs strategies of the same scenario");
  }
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw std::invalid_argument("direct-sum weight must lie in [0, 1]");
  }
  const int da = qa.local_dim();
  const int db = qb.local_dim();
  const int dim = da + db;
  VectorXcd psi = VectorXcd::Zero(dim * dim);
  const double wa = std::sqrt(weight);
  const double wb = std::sqrt(1.0 - weight);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) psi(i * dim + j) = wa * qa.state()(i * da + j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      psi((da + i) * dim + (da + j)) = wb * qb.state()(i * db + j);

  auto block = [&](const ProjectiveMeasurement& ma, const ProjectiveMeasurement& mb) {
    ProjectiveMeasurement m{MatrixXcd::Zero(dim, dim), {}};
    m.basis.topLeftCorner(da, da) = ma.basis;
    m.basis.bottomRightCorner(db, db) = mb.basis;
    m.outcome_of_column = ma.outcome_of_column;
    m.outcome_of_column.insert(m.outcome_of_column.end(), mb.outcome_of_column.begin(),
                               mb.outcome_of_column.end());
    return m;
  };
  std::vector<ProjectiveMeasurement> meas_A, meas_B;
  for (int x = 0; x < qa.inputs(); ++x) {
    meas_A.push_back(block(qa.measurements_A()[x], qb.measurements_A()[x]));
    meas_B.push_back(block(qa.measurements_B()[x], qb.measurements_B()[x]));
  }
  // Renormalize away rounding in the square roots.
  psi /= psi.norm();
  return QuantumStrategy(qa.outcomes(), std::move(psi), std::move(meas_A),
                         std::move(meas_B));
}

}  // namespace hardy
