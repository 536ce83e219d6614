#pragma once

// Variational maximization of the degree of success over real pure states and
// rank-one projective measurements, plus the table and curve drivers built on
// top of it.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hardy/paradox.hpp"
#include "hardy/quantum.hpp"
#include "hardy/scenario.hpp"

namespace hardy {

struct OptimizerConfig {
  int restarts = 50;
  int max_iterations = 2000;  // per penalty stage
  std::vector<double> penalty_schedule = {1e2, 1e3, 1e4, 1e6};
  int polish_rounds = 4;          // multiplier updates at the final weight
  double gradient_step = 1e-6;    // central-difference step for gradient checks
  std::uint64_t seed = 0;
  double convergence_tol = 1e-13; // relative change in objective
  double feasibility_tol = 1e-6;  // max violation accepted as feasible
  unsigned threads = 1;

  /// Throws std::invalid_argument on restarts < 1, an empty or
  /// non-increasing schedule, or a final weight below 1e4.
  void validate() const;
};

struct StageTrace {
  double weight;
  double ds;
  double max_violation;
  int iterations;
};

struct RestartTrace {
  int restart;
  double ds;
  double max_violation;
  bool feasible;
  std::vector<StageTrace> stages;  // penalty stages, then polish rounds
};

struct OptimizationResult {
  std::string spec_name;
  double ds;
  QuantumStrategy strategy;
  Behavior behavior;
  double max_violation;
  int restarts_used;
  int best_restart;
  /// True when some restart ended with max_violation <= feasibility_tol.
  bool converged;
  std::vector<RestartTrace> trace;
};

/// -DS plus the constraint penalties as a smooth function of the parameter
/// vector (unnormalized real state, then Givens angles for A_0..A_{k-1} and
/// B_0..B_{k-1}). Exact gradient.
class PenalizedObjective {
 public:
  PenalizedObjective(const ParadoxSpec& spec, int local_dim);

  int num_parameters() const { return num_params_; }
  int local_dim() const { return dim_; }
  const ParadoxSpec& spec() const { return spec_; }

  /// Penalty weight mu. Multipliers are reset to zero.
  void set_weight(double mu);
  double weight() const { return mu_; }
  /// Augmented-Lagrangian multiplier step at the current weight, taken at x.
  void update_multipliers(const Eigen::VectorXd& x);

  /// Objective value; fills `grad` when non-null.
  double evaluate(const Eigen::VectorXd& x, Eigen::VectorXd* grad) const;

  /// DS and max violation of the strategy encoded by x.
  double ds(const Eigen::VectorXd& x) const;
  double max_violation(const Eigen::VectorXd& x) const;

  Eigen::VectorXd random_start(std::mt19937_64& rng) const;
  QuantumStrategy to_strategy(const Eigen::VectorXd& x) const;

 private:
  struct Group {
    int x, y;
    std::vector<std::pair<int, int>> cells;  // basis-column pairs (c, e)
    std::optional<double> epsilon;
    std::size_t multiplier_offset;           // zero constraints: one per cell
  };
  struct Amplitudes;

  Amplitudes amplitudes(const Eigen::VectorXd& x) const;
  double group_probability(const Amplitudes& amp, const Group& g) const;

  ParadoxSpec spec_;
  int dim_;
  int k_;
  int angles_per_basis_;
  int num_params_;
  std::vector<Eigen::MatrixXd> objective_weights_;  // per (x,y): coefficient of |M(c,e)|^2
  std::vector<Group> groups_;
  double mu_ = 1.0;
  std::vector<double> lambda_cells_;  // zero-constraint multipliers
  std::vector<double> lambda_groups_; // epsilon-constraint multipliers
};

/// Best-of-restarts local maximum of DS. Among feasible restarts the largest
/// DS wins, ties going to smaller violation and then lower restart index.
/// With no feasible restart the least-violating one is returned and
/// converged is false.
OptimizationResult maximize_ds(const ParadoxSpec& spec, int local_dim,
                               const OptimizerConfig& cfg);

enum class TableId { Ia, Ib, II };

TableId parse_table_id(const std::string& s);
std::string to_string(TableId id);

struct TableCell {
  std::string row;     // "Boschi", "Cereceda", "FTI", ...
  std::string family;  // builtin family used
  int k;
  int d;
  double printed_lb;
};

/// Every LB cell of the table, in row-major order.
std::vector<TableCell> table_cells(TableId id);

struct TableBudget {
  int max_k = 6;
  int max_d = 7;
};

struct TableRow {
  TableCell cell;
  std::optional<double> lb_found;  // empty when the cell exceeded the budget
  double max_violation = 0.0;
  bool converged = false;
  double seconds = 0.0;
  std::string note;
};

/// Runs maximize_ds with local dimension d on each cell within the budget.
std::vector<TableRow> reproduce_table(TableId id, const OptimizerConfig& cfg,
                                      const TableBudget& budget = {});

struct MgdsPoint {
  double epsilon;
  double mgds;
  double max_violation;
  bool converged;
};

/// Per epsilon: maximize_ds(fti_chsh(eps), dim 2). Epsilons must lie in [0, 1/2).
std::vector<MgdsPoint> mgds_curve(const std::vector<double>& eps_grid,
                                  const OptimizerConfig& cfg);

struct ConcurrencePoint {
  double concurrence;
  double hardy;
  std::optional<double> cll;  // empty when the closed form is undefined
  double fti;
  std::string note;
};

std::vector<ConcurrencePoint> ds_concurrence_curve(const std::vector<double>& grid);

/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

/// CSV with a header row and 9 significant digits.
void write_csv(std::ostream& os, const std::vector<MgdsPoint>& points);
void write_csv(std::ostream& os, const std::vector<ConcurrencePoint>& points);

}  // namespace hardy
