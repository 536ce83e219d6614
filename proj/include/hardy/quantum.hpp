#pragma once

// Quantum strategies (pure state + projective measurements), Born-rule
// evaluation, and closed-form two-qubit families with their
// degree-of-success versus concurrence curves.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hardy/scenario.hpp"

namespace hardy {

/// Projective measurement on C^D given by an orthonormal basis whose columns
/// are grouped into outcomes. Rank-1 measurements have D == d and identity
/// grouping.
struct ProjectiveMeasurement {
  Eigen::MatrixXcd basis;              // D x D, orthonormal columns
  std::vector<int> outcome_of_column;  // size D

  static ProjectiveMeasurement rank_one(const Eigen::MatrixXcd& basis);
  Eigen::MatrixXcd projector(int outcome) const;
};

/// Shared pure state on C^D (x) C^D, amplitude of |i>|j> at index i*D + j,
/// and one projective measurement per input for each party.
class QuantumStrategy {
 public:
  /// Validates unit norm (1e-10), orthonormal bases (1e-9) and outcome
  /// labels in [0, outcomes).
  QuantumStrategy(int outcomes, Eigen::VectorXcd state,
                  std::vector<ProjectiveMeasurement> measurements_A,
                  std::vector<ProjectiveMeasurement> measurements_B);

  int local_dim() const { return local_dim_; }
  int outcomes() const { return outcomes_; }
  int inputs() const { return static_cast<int>(meas_A_.size()); }
  Scenario scenario() const { return Scenario(inputs(), outcomes_); }

  const Eigen::VectorXcd& state() const { return state_; }
  const std::vector<ProjectiveMeasurement>& measurements_A() const { return meas_A_; }
  const std::vector<ProjectiveMeasurement>& measurements_B() const { return meas_B_; }

  /// State reshaped as the D x D coefficient matrix psi(i, j).
  Eigen::MatrixXcd state_matrix() const;

 private:
  int local_dim_;
  int outcomes_;
  Eigen::VectorXcd state_;
  std::vector<ProjectiveMeasurement> meas_A_;
  std::vector<ProjectiveMeasurement> meas_B_;
};

/// P(a,b|x,y) = <psi| P^A_{a|x} (x) P^B_{b|y} |psi>.
Behavior born_behavior(const QuantumStrategy& qs);

/// Random real strategy with rank-one measurements in dimension `dim` and a
/// Gaussian state. Outcome c of a basis maps to label c % d.
QuantumStrategy random_real_strategy(const Scenario& sc, int dim,
                                     std::mt19937_64& rng);

struct TwoQubitFamilyParams {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;  // CLL family only
};

/// Two-qubit state
///   sin(theta) (cos(alpha)|0> - sin(alpha)|1>)|1> + cos(theta)|1>|0>
/// with A_0 = B_0 = sigma_z and A_1, B_1 rotated by 2 alpha, 2 beta; it meets
/// the zero constraints of fti_chsh(0) for every angle.
/// Angles theta, alpha, beta must lie in [0, pi].
QuantumStrategy fti_family(const TwoQubitFamilyParams& p);

/// Closed form of P(1,1|1,1) - P(1,1|0,1) on fti_family(p).
double fti_success_formula(const TwoQubitFamilyParams& p);

/// fti_family with beta fixed by tan(beta) = tan(theta) sin(alpha), which
/// additionally zeroes P(1,1|0,1); satisfies hardy_chsh().
QuantumStrategy hardy_family(double theta, double alpha);
double hardy_family_beta(double theta, double alpha);
/// (cos(theta) cos(alpha) sin(beta))^2.
double hardy_success_formula(const TwoQubitFamilyParams& p);

/// State sin(phi)|00> + cos(phi) sin(theta)|01> + cos(phi) cos(theta)|10>,
/// A_0 = B_1 = sigma_z, A_1 outcome 1 along (cos alpha, sin alpha), B_0
/// outcome 0 along (cos beta, sin beta). With
///   (tan(phi) + cos(theta) tan(alpha)) tan(beta) = sin(theta)
/// it satisfies the two zero constraints of cll_chsh().
QuantumStrategy cll_family(const TwoQubitFamilyParams& p);
/// Solves the constraint above for beta in [0, pi].
double cll_family_beta(double phi, double theta, double alpha);
/// (cos(phi) sin(theta) cos(alpha))^2
///   - (sin(phi) cos(beta) + cos(phi) sin(theta) sin(beta))^2.
double cll_success_formula(const TwoQubitFamilyParams& p);

/// 2 |a00 a11 - a01 a10| for a two-qubit pure state.
double concurrence_two_qubit(const Eigen::VectorXcd& state);

/// sqrt(1-C^2)/2 (1 - sqrt(1-C^2)); best FTI DS found at concurrence C.
double fti_max_ds_at_concurrence(double C);
/// C^2 (1-C) / (2-C)^2; maximal Hardy success probability at concurrence C.
double hardy_max_ds_at_concurrence(double C);
/// CLL degree of success as a function of concurrence and beta, evaluated
/// literally. Throws std::domain_error when an inner square root or arcsine
/// argument is out of range.
double cll_ds_at_concurrence(double C, double beta);

struct CllCurvePoint {
  double value;
  double beta;
};

/// Maximizes cll_ds_at_concurrence over beta in [0, pi/2] (grid scan plus
/// Brent refinement). Throws std::domain_error if no grid point evaluates.
CllCurvePoint cll_max_ds_at_concurrence(double C);

/// Local spaces C^Da (+) C^Db, state sqrt(w) psi_a (+) sqrt(1-w) psi_b,
/// block-diagonal measurements. Born behavior is w B_a + (1-w) B_b.
QuantumStrategy direct_sum(const QuantumStrategy& qa, const QuantumStrategy& qb,
                           double weight);

}  // namespace hardy
