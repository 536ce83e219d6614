#include "hardy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hardy/json_io.hpp"
#include "hardy/lhv.hpp"
#include "hardy/npa.hpp"
#include "hardy/optimize.hpp"
#include "hardy/paradox.hpp"
#include "hardy/relabel.hpp"

namespace hardy::cli {

unsigned default_threads() {
  if (const char* env = std::getenv("HARDY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void add_spec_options(CLI::App* sub, Command& cmd) {
  sub->add_option("--family", cmd.family,
                  "Builtin family: hardy, cll, fti, gen-cll, gen-fti, gen-hardy, gen-stapp")
      ->check(CLI::IsMember(builtin_families()));
  sub->add_option("--spec", cmd.spec_source,
                  "builtin:<family> or a spec JSON file (overrides --family)");
  sub->add_option("--k", cmd.k, "Inputs per party")->check(CLI::Range(2, 64));
  sub->add_option("--d", cmd.d, "Outcomes per input")->check(CLI::Range(2, 64));
  sub->add_option("--eps", cmd.eps, "Relaxation of the zero constraints, in [0, 0.5)")
      ->check(CLI::Range(0.0, 0.5));
}

void add_optimizer_options(CLI::App* sub, Command& cmd) {
  sub->add_option("--restarts", cmd.restarts, "Random restarts (default 50)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-iterations", cmd.max_iterations,
                  "Quasi-Newton iterations per penalty stage (default 2000)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", cmd.seed, "Seed of the restart generator (default 0)");
  sub->add_option("--threads", cmd.threads,
                  "Worker threads (default: HARDY_THREADS or hardware concurrency)")
      ->check(CLI::PositiveNumber);
}

std::unique_ptr<CLI::App> build_app(Command& cmd) {
  auto app = std::make_unique<CLI::App>(
      "Hardy-type paradoxes in (k,d) Bell scenarios: local bounds, quantum "
      "optimization, relabelings and SDP export.",
      "hardy");
  app->require_subcommand(1, 1);
  app->fallthrough(false);

  auto* spec = app->add_subcommand(
      "spec", "Print the conditions of a Hardy-type paradox (Hardy, CLL, FTI and the "
              "generalized ladder / transitivity families) as JSON.");
  add_spec_options(spec, cmd);
  spec->add_option("--out", cmd.out, "Output file (default stdout)");

  auto* lhv = app->add_subcommand(
      "lhv-check", "Enumerate deterministic local strategies and report the local "
                   "bound of the paradox functional (0 for every builtin family).");
  add_spec_options(lhv, cmd);
  lhv->add_flag("--all", cmd.all,
                "Check every builtin family on every (k,d) with d^(2k) <= 10^6");
  lhv->add_option("--threads", cmd.threads, "Worker threads")->check(CLI::PositiveNumber);
  lhv->add_option("--out", cmd.out, "Output file (default stdout)");

  auto* opt = app->add_subcommand(
      "optimize", "Maximize the degree of success over pure states and projective "
                  "measurements (lower bounds of the quantum maximum).");
  add_spec_options(opt, cmd);
  add_optimizer_options(opt, cmd);
  opt->add_option("--dim", cmd.dim, "Local Hilbert-space dimension (default d)")
      ->check(CLI::Range(2, 16));
  opt->add_option("--out", cmd.out, "Output file (default stdout)");

  auto* table = app->add_subcommand(
      "table", "Recompute the lower-bound rows of the degree-of-success tables: Ia "
               "(k inputs, 2 outcomes), Ib (k inputs, 3 outcomes), II (2 inputs, d outcomes).");
  table->add_option("--id", cmd.table_id, "Ia, Ib or II")
      ->check(CLI::IsMember({"Ia", "Ib", "II"}));
  add_optimizer_options(table, cmd);
  table->add_option("--max-k", cmd.max_k, "Skip cells with more inputs")->check(CLI::Range(2, 64));
  table->add_option("--max-d", cmd.max_d, "Skip cells with more outcomes")->check(CLI::Range(2, 64));
  table->add_option("--out", cmd.out, "Output file (default stdout)");

  auto* curve = app->add_subcommand(
      "curve", "Emit curve data as CSV: mgds = maximal generalized degree of success of "
               "the epsilon-relaxed FTI argument; ds-vs-c = best Hardy, CLL and FTI "
               "degree of success at fixed two-qubit concurrence.");
  curve->add_option("--kind", cmd.kind, "mgds or ds-vs-c")
      ->check(CLI::IsMember({"mgds", "ds-vs-c"}));
  curve->add_option("--eps-min", cmd.eps_min, "First epsilon (mgds)")->check(CLI::Range(0.0, 0.5));
  curve->add_option("--eps-max", cmd.eps_max, "Last epsilon (mgds)")->check(CLI::Range(0.0, 0.5));
  curve->add_option("--steps", cmd.steps,
                    "Grid points (default 49 for mgds, 101 for ds-vs-c)")
      ->check(CLI::PositiveNumber);
  add_optimizer_options(curve, cmd);
  curve->add_option("--out", cmd.out, "Output file (default stdout)");

  auto* equiv = app->add_subcommand(
      "equiv", "Check that the generalized Hardy conditions map onto the generalized "
               "Stapp conditions under the explicit input/outcome relabeling.");
  equiv->add_option("--k", cmd.k, "Inputs per party")->check(CLI::Range(2, 64));
  equiv->add_option("--d", cmd.d, "Outcomes per input")->check(CLI::Range(2, 64));
  equiv->add_option("--out", cmd.out, "Output file (default stdout)");

  auto* npa = app->add_subcommand(
      "npa-export", "Write the level 1 or 1+AB moment-matrix relaxation (upper bound on "
                    "the quantum degree of success) in sparse SDPA format.");
  add_spec_options(npa, cmd);
  npa->add_option("--level", cmd.level, "1 or 1+AB")->check(CLI::IsMember({"1", "1+AB"}));
  npa->add_option("--out", cmd.out, "SDPA file (default stdout)");
  return app;
}

ParadoxSpec resolve_spec(const Command& cmd) {
  const Scenario sc(cmd.k, cmd.d);
  if (!cmd.spec_source.empty()) {
    const std::string prefix = "builtin:";
    if (cmd.spec_source.rfind(prefix, 0) == 0) {
      return builtin_spec(cmd.spec_source.substr(prefix.size()), sc, cmd.eps);
    }
    std::ifstream in(cmd.spec_source);
    if (!in) throw std::runtime_error("cannot read spec file '" + cmd.spec_source + "'");
    return spec_from_json(Json::parse(in));
  }
  if (cmd.family.empty()) throw UsageError("one of --family or --spec is required");
  return builtin_spec(cmd.family, sc, cmd.eps);
}

OptimizerConfig optimizer_config(const Command& cmd) {
  OptimizerConfig cfg;
  cfg.restarts = cmd.restarts;
  cfg.max_iterations = cmd.max_iterations;
  cfg.seed = cmd.seed;
  cfg.threads = cmd.threads;
  return cfg;
}

void emit(const Command& cmd, const std::string& text, std::ostream& out) {
  if (cmd.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cmd.out);
  if (!file) throw std::runtime_error("cannot open '" + cmd.out + "' for writing");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int run_lhv(const Command& cmd, std::ostream& out) {
  LhvOptions opts;
  opts.threads = cmd.threads;
  if (!cmd.all) {
    emit(cmd, dump(to_json(local_max_ds(resolve_spec(cmd), opts))), out);
    return kExitOk;
  }
  Json reports = Json::array();
  bool all_zero = true;
  for (const auto& family : builtin_families()) {
    const bool chsh_only = family == "hardy" || family == "cll" || family == "fti";
    for (int k = 2; k <= 10; ++k) {
      for (int d = 2; d <= 31; ++d) {
        const Scenario sc(k, d);
        if (std::pow(static_cast<double>(d), 2.0 * k) > 1e6) break;
        if (chsh_only && (k != 2 || d != 2)) continue;
        const LocalBoundReport r = local_max_ds(builtin_spec(family, sc, 0.0), opts);
        all_zero = all_zero && r.max_ds == 0.0;
        Json j = to_json(r);
        j.erase("argmax");
        reports.push_back({{"k", k}, {"d", d}, {"report", std::move(j)}});
      }
    }
  }
  emit(cmd, dump(Json{{"all_zero", all_zero}, {"reports", std::move(reports)}}), out);
  return kExitOk;
}

int run_curve(const Command& cmd, std::ostream& out) {
  std::ostringstream csv;
  bool converged = true;
  if (cmd.kind == "mgds") {
    if (!(cmd.eps_min <= cmd.eps_max) || cmd.eps_max >= 0.5) {
      throw UsageError("need 0 <= --eps-min <= --eps-max < 0.5");
    }
    const auto points = mgds_curve(
        linspace(cmd.eps_min, cmd.eps_max, cmd.steps > 0 ? cmd.steps : 49),
        optimizer_config(cmd));
    for (const auto& p : points) converged = converged && p.converged;
    write_csv(csv, points);
  } else {
    write_csv(csv, ds_concurrence_curve(linspace(0.0, 1.0, cmd.steps > 0 ? cmd.steps : 101)));
  }
  emit(cmd, csv.str(), out);
  return converged ? kExitOk : kExitNotConverged;
}

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
  Command cmd;
  cmd.threads = default_threads();
  cmd.steps = 0;
  auto app = build_app(cmd);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app->parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cmd.help_text = app->help();
    const auto subs = app->get_subcommands();
    cmd.subcommand = subs.empty() ? "" : subs.back()->get_name();
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  cmd.subcommand = app->get_subcommands().at(0)->get_name();
  return cmd;
}

int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
  if (!cmd.help_text.empty()) {
    out << cmd.help_text;
    return kExitOk;
  }
  try {
    if (cmd.subcommand == "spec") {
      emit(cmd, dump(to_json(resolve_spec(cmd))), out);
      return kExitOk;
    }
    if (cmd.subcommand == "lhv-check") return run_lhv(cmd, out);
    if (cmd.subcommand == "optimize") {
      const ParadoxSpec spec = resolve_spec(cmd);
      const int dim = cmd.dim > 0 ? cmd.dim : spec.scenario().d;
      const OptimizationResult res = maximize_ds(spec, dim, optimizer_config(cmd));
      emit(cmd, dump(to_json(res)), out);
      return res.converged ? kExitOk : kExitNotConverged;
    }
    if (cmd.subcommand == "table") {
      const auto rows = reproduce_table(parse_table_id(cmd.table_id), optimizer_config(cmd),
                                        {cmd.max_k, cmd.max_d});
      emit(cmd, dump(to_json(rows)), out);
      const bool ok = std::all_of(rows.begin(), rows.end(), [](const TableRow& r) {
        return !r.lb_found || r.converged;
      });
      return ok ? kExitOk : kExitNotConverged;
    }
    if (cmd.subcommand == "curve") return run_curve(cmd, out);
    if (cmd.subcommand == "equiv") {
      emit(cmd, dump(to_json(verify_equivalence(Scenario(cmd.k, cmd.d)))), out);
      return kExitOk;
    }
    if (cmd.subcommand == "npa-export") {
      const MomentProblem mp =
          build_moment_problem(resolve_spec(cmd), parse_npa_level(cmd.level));
      if (cmd.out.empty()) {
        write_sdpa(out, to_sdpa(mp));
      } else {
        export_sdpa(mp, cmd.out);
        out << dump(to_json(mp));
      }
      return kExitOk;
    }
    throw UsageError("unknown subcommand '" + cmd.subcommand + "'");
  } catch (const std::exception& e) {
    err << "hardy " << cmd.subcommand << ": " << e.what() << '\n';
    return kExitError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_args(args);
  } catch (const UsageError& e) {
    err << "hardy: " << e.what() << "\nRun 'hardy --help' for usage.\n";
    return kExitError;
  }
  return execute(cmd, out, err);
}

}  // namespace hardy::cli
