#pragma once

// Moment-matrix relaxations (level 1 and 1+AB) of the quantum set for a
// paradox spec, evaluation of the moments on concrete strategies, and
// sparse SDPA export/import.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hardy/paradox.hpp"
#include "hardy/quantum.hpp"
#include "hardy/scenario.hpp"

namespace hardy {

enum class NpaLevel { One, OneAB };

NpaLevel parse_npa_level(const std::string& s);  // "1" or "1+AB"
std::string to_string(NpaLevel level);

/// constant + sum coef * y[var].
struct LinearForm {
  double constant = 0.0;
  std::map<int, double> coefs;

  double evaluate(const Eigen::VectorXd& y) const;
  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator*=(double s);
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Projector E_{a|x} of one party (a <= d-2; the last outcome is eliminated).
struct Projector {
  int input;
  int outcome;
  friend auto operator<=>(const Projector&, const Projector&) = default;
};

/// Product of Alice's word and Bob's word, already reduced.
struct Monomial {
  std::vector<Projector> alice;
  std::vector<Projector> bob;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

std::string to_string(const Monomial& m);

struct MomentProblem {
  std::string spec_name;
  Scenario scenario;
  NpaLevel level;
  std::vector<std::string> operator_labels;  // rows of the moment matrix
  std::vector<std::string> variable_labels;  // one per free moment
  /// Symmetric N x N table; entry (i, j) is a constant or a single variable.
  std::vector<std::vector<LinearForm>> entries;
  LinearForm objective;                 // degree of success, to be maximized
  std::vector<LinearForm> equalities;   // form == 0
  std::vector<LinearForm> inequalities; // form >= 0

  int matrix_size() const { return static_cast<int>(operator_labels.size()); }
  int num_variables() const { return static_cast<int>(variable_labels.size()); }

  friend bool operator==(const MomentProblem&, const MomentProblem&) = default;
};

/// Zero constraints become equalities; epsilon constraints and positivity of
/// every P(a,b|x,y) become inequalities.
MomentProblem build_moment_problem(const ParadoxSpec& spec, NpaLevel level);

/// P(a,b|x,y) as a form over the moment variables.
LinearForm probability_form(const MomentProblem& mp, int a, int b, int x, int y);

/// Real parts of the moments realized by `qs`, indexed like variable_labels.
Eigen::VectorXd evaluate_moments(const MomentProblem& mp, const QuantumStrategy& qs);
Eigen::MatrixXd moment_matrix(const MomentProblem& mp, const Eigen::VectorXd& y);

/// Parsed sparse SDPA problem: minimize c.x subject to
/// sum_i x_i F_i - F_0 >= 0 blockwise. Negative block sizes are diagonal.
struct SdpaEntry {
  int matrix;  // 0 for F_0
  int block;   // 1-based
  int row;     // 1-based, row <= col
  int col;
  double value;
  friend auto operator<=>(const SdpaEntry&, const SdpaEntry&) = default;
};

struct SdpaProblem {
  std::vector<std::string> comments;  // without the leading '*'
  int num_variables = 0;
  std::vector<int> block_sizes;
  std::vector<double> c;
  std::vector<SdpaEntry> entries;
};

/// Block 1 is the moment matrix; block 2 (diagonal) holds one row per
/// inequality and a +/- pair per equality. The objective is -DS up to a
/// constant recorded in the comments.
SdpaProblem to_sdpa(const MomentProblem& mp);
void write_sdpa(std::ostream& os, const SdpaProblem& p);
SdpaProblem read_sdpa(std::istream& is);
/// Inverse of to_sdpa; needs the metadata comments that to_sdpa writes.
MomentProblem from_sdpa(const SdpaProblem& p);

/// Writes to a file; throws std::runtime_error if it cannot be opened.
void export_sdpa(const MomentProblem& mp, const std::string& path);

}  // namespace hardy
