#include "hardy/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>
#include <glog/logging.h>

namespace hardy {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (penalty_schedule.empty()) {
    throw std::invalid_argument("penalty schedule is empty");
  }
  for (std::size_t i = 0; i < penalty_schedule.size(); ++i) {
    if (!(penalty_schedule[i] > 0.0) ||
        (i > 0 && !(penalty_schedule[i] > penalty_schedule[i - 1]))) {
      throw std::invalid_argument("penalty schedule must be positive and strictly increasing");
    }
  }
  if (penalty_schedule.back() < 1e4) {
    throw std::invalid_argument("final penalty weight must be >= 1e4");
  }
  if (polish_rounds < 0) throw std::invalid_argument("polish_rounds must be >= 0");
  if (!(gradient_step > 0.0)) throw std::invalid_argument("gradient_step must be > 0");
}

// ---------------------------------------------------------------------------
// Parametrization

namespace {

struct Rotation {
  int p, q;
};

std::vector<Rotation> rotation_pairs(int dim) {
  std::vector<Rotation> r;
  for (int p = 0; p < dim; ++p)
    for (int q = p + 1; q < dim; ++q) r.push_back({p, q});
  return r;
}

// A <- A G(p,q,t), touching columns p and q.
void rotate_columns(MatrixXd& a, const Rotation& r, double c, double s) {
  const VectorXd cp = a.col(r.p);
  a.col(r.p) = c * cp + s * a.col(r.q);
  a.col(r.q) = -s * cp + c * a.col(r.q);
}

// A <- G(p,q,t) A, touching rows p and q.
void rotate_rows(MatrixXd& a, const Rotation& r, double c, double s) {
  const Eigen::RowVectorXd rp = a.row(r.p);
  a.row(r.p) = c * rp - s * a.row(r.q);
  a.row(r.q) = s * rp + c * a.row(r.q);
}

MatrixXd givens_product(const double* angles, const std::vector<Rotation>& pairs,
                        int dim) {
  MatrixXd u = MatrixXd::Identity(dim, dim);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    rotate_columns(u, pairs[i], std::cos(angles[i]), std::sin(angles[i]));
  return u;
}

// Chain rule from dF/dU to the rotation angles of U = G_1 ... G_m.
void givens_gradient(const double* angles, const std::vector<Rotation>& pairs,
                     int dim, const MatrixXd& grad_u, double* out) {
  const std::size_t m = pairs.size();
  std::vector<MatrixXd> suffix(m + 1, MatrixXd::Identity(dim, dim));
  for (std::size_t i = m; i-- > 0;) {
    suffix[i] = suffix[i + 1];
    rotate_rows(suffix[i], pairs[i], std::cos(angles[i]), std::sin(angles[i]));
  }
  MatrixXd prefix = MatrixXd::Identity(dim, dim);
  for (std::size_t i = 0; i < m; ++i) {
    const double c = std::cos(angles[i]);
    const double s = std::sin(angles[i]);
    const auto [p, q] = pairs[i];
    // R = prefix^T grad_u suffix_{i+1}^T restricted to rows/cols {p, q}.
    const MatrixXd left = prefix.transpose() * grad_u;
    auto r = [&](int row, int col) { return left.row(row).dot(suffix[i + 1].row(col)); };
    out[i] = -s * r(p, p) - c * r(p, q) + c * r(q, p) - s * r(q, q);
    rotate_columns(prefix, pairs[i], c, s);
  }
}

}  // namespace

struct PenalizedObjective::Amplitudes {
  MatrixXd psi;  // normalized, psi(i, j) = state[i*D + j]
  double norm;
  std::vector<MatrixXd> ua, ub;
  std::vector<MatrixXd> m;  // per x*k+y: ua[x]^T psi ub[y]
};

PenalizedObjective::PenalizedObjective(const ParadoxSpec& spec, int local_dim)
    : spec_(spec), dim_(local_dim), k_(spec.scenario().k) {
  const int d = spec.scenario().d;
  if (local_dim < 2) throw std::invalid_argument("local dimension must be >= 2");
  if (local_dim < d) {
    throw std::invalid_argument("local dimension " + std::to_string(local_dim) +
                                " cannot host " + std::to_string(d) +
                                " rank-one outcomes");
  }
  angles_per_basis_ = dim_ * (dim_ - 1) / 2;
  num_params_ = dim_ * dim_ + 2 * k_ * angles_per_basis_;

  auto label = [d](int col) { return col % d; };
  objective_weights_.assign(static_cast<std::size_t>(k_) * k_,
                            MatrixXd::Zero(dim_, dim_));
  auto add_event = [&](const Event& e, double w) {
    MatrixXd& target = objective_weights_[e.x() * k_ + e.y()];
    for (int c = 0; c < dim_; ++c)
      for (int f = 0; f < dim_; ++f)
        if (e.contains(label(c), label(f))) target(c, f) += w;
  };
  add_event(spec.success(), 1.0);
  for (const auto& e : spec.penalties()) add_event(e, -1.0);

  std::size_t offset = 0;
  for (const auto& con : spec.constraints()) {
    Group g{con.event.x(), con.event.y(), {}, con.epsilon, offset};
    for (int c = 0; c < dim_; ++c)
      for (int f = 0; f < dim_; ++f)
        if (con.event.contains(label(c), label(f))) g.cells.emplace_back(c, f);
    if (!con.epsilon) offset += g.cells.size();
    groups_.push_back(std::move(g));
  }
  lambda_cells_.assign(offset, 0.0);
  lambda_groups_.assign(groups_.size(), 0.0);
}

void PenalizedObjective::set_weight(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("penalty weight must be positive");
  mu_ = mu;
  std::fill(lambda_cells_.begin(), lambda_cells_.end(), 0.0);
  std::fill(lambda_groups_.begin(), lambda_groups_.end(), 0.0);
}

PenalizedObjective::Amplitudes PenalizedObjective::amplitudes(const VectorXd& x) const {
  if (x.size() != num_params_) {
    throw std::invalid_argument("parameter vector has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(num_params_));
  }
  Amplitudes a;
  a.psi = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                         Eigen::RowMajor>>(x.data(), dim_, dim_);
  a.norm = a.psi.norm();
  if (!(a.norm > 0.0) || !std::isfinite(a.norm)) {
    throw std::domain_error("state parameters vanished or diverged");
  }
  a.psi /= a.norm;
  const auto pairs = rotation_pairs(dim_);
  const double* angles = x.data() + dim_ * dim_;
  for (int i = 0; i < k_; ++i)
    a.ua.push_back(givens_product(angles + i * angles_per_basis_, pairs, dim_));
  for (int i = 0; i < k_; ++i)
    a.ub.push_back(givens_product(angles + (k_ + i) * angles_per_basis_, pairs, dim_));
  a.m.reserve(static_cast<std::size_t>(k_) * k_);
  for (int xa = 0; xa < k_; ++xa) {
    const MatrixXd left = a.ua[xa].transpose() * a.psi;
    for (int yb = 0; yb < k_; ++yb) a.m.push_back(left * a.ub[yb]);
  }
  return a;
}

double PenalizedObjective::group_probability(const Amplitudes& amp, const Group& g) const {
  const MatrixXd& m = amp.m[g.x * k_ + g.y];
  double p = 0.0;
  for (const auto& [c, f] : g.cells) p += m(c, f) * m(c, f);
  return p;
}

double PenalizedObjective::evaluate(const VectorXd& x, VectorXd* grad) const {
  const Amplitudes amp = amplitudes(x);
  const std::size_t cells = amp.m.size();
  std::vector<MatrixXd> h(cells);
  double f = spec_.epsilon_offset();
  for (std::size_t i = 0; i < cells; ++i) {
    const MatrixXd weighted = objective_weights_[i].cwiseProduct(amp.m[i]);
    f -= weighted.cwiseProduct(amp.m[i]).sum();
    h[i] = -2.0 * weighted;
  }
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    const Group& g = groups_[gi];
    const MatrixXd& m = amp.m[g.x * k_ + g.y];
    MatrixXd& hg = h[g.x * k_ + g.y];
    if (!g.epsilon) {
      for (std::size_t j = 0; j < g.cells.size(); ++j) {
        const auto [c, e] = g.cells[j];
        const double lam = lambda_cells_[g.multiplier_offset + j];
        f += mu_ * m(c, e) * m(c, e) + lam * m(c, e);
        hg(c, e) += 2.0 * mu_ * m(c, e) + lam;
      }
    } else {
      // Penalized in amplitude norm, sqrt(P) <= sqrt(eps): the DS slope in P
      // diverges as eps -> 0, its slope in sqrt(P) stays bounded.
      const double norm = std::sqrt(group_probability(amp, g));
      const double t = norm - std::sqrt(*g.epsilon) + lambda_groups_[gi] / (2.0 * mu_);
      if (t > 0.0) {
        f += mu_ * t * t;
        if (norm > 0.0) {
          for (const auto& [c, e] : g.cells) hg(c, e) += 2.0 * mu_ * t * m(c, e) / norm;
        }
      }
    }
  }
  if (!grad) return f;

  grad->setZero(num_params_);
  MatrixXd g_psi = MatrixXd::Zero(dim_, dim_);
  std::vector<MatrixXd> g_ua(k_, MatrixXd::Zero(dim_, dim_));
  std::vector<MatrixXd> g_ub(k_, MatrixXd::Zero(dim_, dim_));
  for (int xa = 0; xa < k_; ++xa) {
    for (int yb = 0; yb < k_; ++yb) {
      const MatrixXd& hh = h[xa * k_ + yb];
      g_psi += amp.ua[xa] * hh * amp.ub[yb].transpose();
      g_ua[xa] += amp.psi * amp.ub[yb] * hh.transpose();
      g_ub[yb] += amp.psi.transpose() * amp.ua[xa] * hh;
    }
  }
  const MatrixXd g_state =
      (g_psi - amp.psi * amp.psi.cwiseProduct(g_psi).sum()) / amp.norm;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) (*grad)(i * dim_ + j) = g_state(i, j);

  const auto pairs = rotation_pairs(dim_);
  const double* angles = x.data() + dim_ * dim_;
  double* out = grad->data() + dim_ * dim_;
  for (int i = 0; i < k_; ++i)
    givens_gradient(angles + i * angles_per_basis_, pairs, dim_, g_ua[i],
                    out + i * angles_per_basis_);
  for (int i = 0; i < k_; ++i)
    givens_gradient(angles + (k_ + i) * angles_per_basis_, pairs, dim_, g_ub[i],
                    out + (k_ + i) * angles_per_basis_);
  return f;
}

void PenalizedObjective::update_multipliers(const VectorXd& x) {
  const Amplitudes amp = amplitudes(x);
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    const Group& g = groups_[gi];
    if (!g.epsilon) {
      const MatrixXd& m = amp.m[g.x * k_ + g.y];
      for (std::size_t j = 0; j < g.cells.size(); ++j) {
        const auto [c, e] = g.cells[j];
        lambda_cells_[g.multiplier_offset + j] += 2.0 * mu_ * m(c, e);
      }
    } else {
      const double gap = std::sqrt(group_probability(amp, g)) - std::sqrt(*g.epsilon);
      lambda_groups_[gi] = std::max(0.0, lambda_groups_[gi] + 2.0 * mu_ * gap);
    }
  }
}

double PenalizedObjective::ds(const VectorXd& x) const {
  const Amplitudes amp = amplitudes(x);
  double v = -spec_.epsilon_offset();
  for (std::size_t i = 0; i < amp.m.size(); ++i)
    v += objective_weights_[i].cwiseProduct(amp.m[i].cwiseAbs2()).sum();
  return v;
}

double PenalizedObjective::max_violation(const VectorXd& x) const {
  const Amplitudes amp = amplitudes(x);
  double worst = 0.0;
  for (const auto& g : groups_) {
    const double p = group_probability(amp, g);
    worst = std::max(worst, g.epsilon ? p - *g.epsilon : p);
  }
  return worst;
}

VectorXd PenalizedObjective::random_start(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  VectorXd x(num_params_);
  for (int i = 0; i < dim_ * dim_; ++i) x(i) = gauss(rng);
  for (int i = dim_ * dim_; i < num_params_; ++i) x(i) = angle(rng);
  return x;
}

QuantumStrategy PenalizedObjective::to_strategy(const VectorXd& x) const {
  const Amplitudes amp = amplitudes(x);
  const int d = spec_.scenario().d;
  Eigen::VectorXcd state(dim_ * dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) state(i * dim_ + j) = amp.psi(i, j);
  state /= state.norm();
  auto measurement = [&](const MatrixXd& u) {
    ProjectiveMeasurement m{u.cast<std::complex<double>>(), std::vector<int>(dim_)};
    for (int c = 0; c < dim_; ++c) m.outcome_of_column[c] = c % d;
    return m;
  };
  std::vector<ProjectiveMeasurement> ma, mb;
  for (const auto& u : amp.ua) ma.push_back(measurement(u));
  for (const auto& u : amp.ub) mb.push_back(measurement(u));
  return QuantumStrategy(d, std::move(state), std::move(ma), std::move(mb));
}

// ---------------------------------------------------------------------------
// Local search

namespace {

class CeresAdapter final : public ceres::FirstOrderFunction {
 public:
  explicit CeresAdapter(const PenalizedObjective& obj) : obj_(obj) {}

  bool Evaluate(const double* parameters, double* cost,
                double* gradient) const override {
    const VectorXd x = Eigen::Map<const VectorXd>(parameters, obj_.num_parameters());
    try {
      if (gradient) {
        VectorXd g;
        *cost = obj_.evaluate(x, &g);
        Eigen::Map<VectorXd>(gradient, g.size()) = g;
      } else {
        *cost = obj_.evaluate(x, nullptr);
      }
    } catch (const std::domain_error&) {
      return false;
    }
    return std::isfinite(*cost);
  }
  int NumParameters() const override { return obj_.num_parameters(); }

 private:
  const PenalizedObjective& obj_;
};

int minimize(const PenalizedObjective& obj, VectorXd& x, const OptimizerConfig& cfg) {
  // Ceres reports recoverable BFGS resets as glog warnings on stderr.
  static std::once_flag quiet;
  std::call_once(quiet, [] { FLAGS_minloglevel = std::max(FLAGS_minloglevel, 2); });
  ceres::GradientProblemSolver::Options opts;
  opts.line_search_direction_type = ceres::BFGS;
  opts.line_search_type = ceres::WOLFE;
  opts.max_num_iterations = cfg.max_iterations;
  opts.function_tolerance = cfg.convergence_tol;
  opts.gradient_tolerance = 1e-14;
  opts.parameter_tolerance = 1e-15;
  opts.logging_type = ceres::SILENT;
  opts.minimizer_progress_to_stdout = false;
  ceres::GradientProblem problem(new CeresAdapter(obj));
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(opts, problem, x.data(), &summary);
  return static_cast<int>(summary.iterations.size());
}

struct RestartOutcome {
  RestartTrace trace;
  VectorXd x;
};

RestartOutcome run_restart(const ParadoxSpec& spec, int local_dim,
                           const OptimizerConfig& cfg, int restart) {
  PenalizedObjective obj(spec, local_dim);
  std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed),
                    static_cast<std::uint64_t>(restart)};
  std::mt19937_64 rng(seq);
  RestartOutcome out{{restart, 0.0, 0.0, false, {}}, obj.random_start(rng)};
  auto record = [&](int iterations) {
    out.trace.stages.push_back(
        {obj.weight(), obj.ds(out.x), obj.max_violation(out.x), iterations});
  };
  for (double mu : cfg.penalty_schedule) {
    obj.set_weight(mu);
    record(minimize(obj, out.x, cfg));
  }
  for (int round = 0; round < cfg.polish_rounds; ++round) {
    obj.update_multipliers(out.x);
    record(minimize(obj, out.x, cfg));
  }
  out.trace.ds = obj.ds(out.x);
  out.trace.max_violation = std::max(0.0, obj.max_violation(out.x));
  out.trace.feasible = out.trace.max_violation <= cfg.feasibility_tol;
  return out;
}

// True when candidate a beats b.
bool better(const RestartTrace& a, const RestartTrace& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible) return a.max_violation < b.max_violation;
  constexpr double kTie = 1e-12;
  if (std::abs(a.ds - b.ds) > kTie) return a.ds > b.ds;
  if (a.max_violation != b.max_violation) return a.max_violation < b.max_violation;
  return a.restart < b.restart;
}

}  // namespace

OptimizationResult maximize_ds(const ParadoxSpec& spec, int local_dim,
                               const OptimizerConfig& cfg) {
  cfg.validate();
  PenalizedObjective probe(spec, local_dim);  // validates the dimension

  std::vector<std::optional<RestartOutcome>> outcomes(cfg.restarts);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < cfg.restarts; r = next++) {
      try {
        outcomes[r] = run_restart(spec, local_dim, cfg, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.restarts)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (better(outcomes[r]->trace, outcomes[best]->trace)) best = r;

  const VectorXd& x = outcomes[best]->x;
  QuantumStrategy strategy = probe.to_strategy(x);
  Behavior behavior = born_behavior(strategy);
  std::vector<RestartTrace> trace;
  for (auto& o : outcomes) trace.push_back(std::move(o->trace));
  return OptimizationResult{spec.name(),
                            degree_of_success(spec, behavior),
                            std::move(strategy),
                            behavior,
                            constraint_violations(spec, behavior).max,
                            cfg.restarts,
                            static_cast<int>(best),
                            trace[best].feasible,
                            std::move(trace)};
}

// ---------------------------------------------------------------------------
// Tables and curves

TableId parse_table_id(const std::string& s) {
  if (s == "Ia") return TableId::Ia;
  if (s == "Ib") return TableId::Ib;
  if (s == "II") return TableId::II;
  throw std::invalid_argument("unknown table id '" + s + "' (expected Ia, Ib or II)");
}

std::string to_string(TableId id) {
  switch (id) {
    case TableId::Ia: return "Ia";
    case TableId::Ib: return "Ib";
    case TableId::II: return "II";
  }
  return "?";
}

std::vector<TableCell> table_cells(TableId id) {
  struct RowData {
    const char* row;
    const char* family;
    std::vector<double> lbs;
  };
  std::vector<RowData> rows;
  int first = 2;
  switch (id) {
    case TableId::Ia:
      rows = {{"Boschi", "gen-hardy", {0.09017, 0.17455, 0.23126, 0.27088, 0.29995}},
              {"Cereceda", "gen-cll", {0.10781, 0.18519, 0.23796, 0.27542, 0.30321}},
              {"FTI", "gen-fti", {0.125, 0.20711, 0.25973, 0.29576, 0.32190}}};
      break;
    case TableId::Ib:
      rows = {{"Meng", "gen-stapp", {0.14133, 0.26779, 0.34816, 0.40184}},
              {"CLL", "gen-cll", {0.16791, 0.28265, 0.35698, 0.40753}},
              {"FTI", "gen-fti", {0.19309, 0.31226, 0.38460, 0.43216}}};
      break;
    case TableId::II:
      rows = {{"Chen", "gen-hardy",
               {0.09017, 0.14133, 0.17656, 0.20306, 0.22424, 0.24175}},
              {"CLL", "gen-cll", {0.10781, 0.16791, 0.20883, 0.23948, 0.26378, 0.28378}},
              {"FTI", "gen-fti", {0.125, 0.19309, 0.23839, 0.27175, 0.29773, 0.31880}}};
      break;
  }
  std::vector<TableCell> cells;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.lbs.size(); ++i) {
      const int v = first + static_cast<int>(i);
      const int k = id == TableId::II ? 2 : v;
      const int d = id == TableId::Ia ? 2 : id == TableId::Ib ? 3 : v;
      cells.push_back({r.row, r.family, k, d, r.lbs[i]});
    }
  }
  return cells;
}

std::vector<TableRow> reproduce_table(TableId id, const OptimizerConfig& cfg,
                                      const TableBudget& budget) {
  std::vector<TableRow> rows;
  for (const auto& cell : table_cells(id)) {
    TableRow row;
    row.cell = cell;
    if (cell.k > budget.max_k || cell.d > budget.max_d) {
      row.note = "skipped: outside (k,d) budget";
      rows.push_back(std::move(row));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const ParadoxSpec spec = builtin_spec(cell.family, Scenario(cell.k, cell.d), 0.0);
    const OptimizationResult res = maximize_ds(spec, cell.d, cfg);
    row.lb_found = res.ds;
    row.max_violation = res.max_violation;
    row.converged = res.converged;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    if (!res.converged) row.note = "no restart met the feasibility tolerance";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MgdsPoint> mgds_curve(const std::vector<double>& eps_grid,
                                  const OptimizerConfig& cfg) {
  std::vector<MgdsPoint> points;
  for (double eps : eps_grid) {
    const OptimizationResult res = maximize_ds(fti_chsh(eps), 2, cfg);
    points.push_back({eps, res.ds, res.max_violation, res.converged});
  }
  return points;
}

std::vector<ConcurrencePoint> ds_concurrence_curve(const std::vector<double>& grid) {
  std::vector<ConcurrencePoint> points;
  for (double c : grid) {
    ConcurrencePoint pt{c, hardy_max_ds_at_concurrence(c), std::nullopt,
                        fti_max_ds_at_concurrence(c), {}};
    try {
      pt.cll = cll_max_ds_at_concurrence(c).value;
    } catch (const std::domain_error& e) {
      pt.note = e.what();
    }
    points.push_back(std::move(pt));
  }
  return points;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

void write_csv(std::ostream& os, const std::vector<MgdsPoint>& points) {
  os << std::setprecision(9);
  os << "epsilon,mgds_lb,max_violation,converged\n";
  for (const auto& p : points) {
    os << p.epsilon << ',' << p.mgds << ',' << p.max_violation << ','
       << (p.converged ? 1 : 0) << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<ConcurrencePoint>& points) {
  os << std::setprecision(9);
  os << "concurrence,hardy,cll,fti\n";
  for (const auto& p : points) {
    if (!p.cll) continue;  // undefined closed form; see the note
    os << p.concurrence << ',' << p.hardy << ',' << *p.cll << ',' << p.fti << '\n';
  }
}

}  // namespace hardy
