// Command-line entry point: constants, pmf tables, boundary curves, walk
// simulation snapshots, verification suites, and the fill-in experiment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "walklab/constants.hpp"
#include "walklab/distributions.hpp"
#include "walklab/mc_lab.hpp"
#include "walklab/rate_geometry.hpp"
#include "walklab/report_io.hpp"
#include "walklab/tally.hpp"
#include "walklab/walk.hpp"

namespace {

using namespace walklab;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  write_text_file(out_path, content);
  std::cerr << "wrote " << resolve_output_path(out_path) << "\n";
}

PmfKind parse_law(const std::string& name) {
  if (name == "geometric_site") return PmfKind::geometric_site;
  if (name == "joint_two_point") return PmfKind::joint_two_point;
  if (name == "ball_occupation") return PmfKind::ball_occupation;
  if (name == "joint_point_ball") return PmfKind::joint_point_ball;
  throw CLI::ValidationError("--law", "unknown law: " + name);
}

ExperimentReport constants_identity_report(const ExperimentPlan& plan) {
  ExperimentReport rep;
  rep.name = "constants_identities";
  rep.plan = plan;
  const DimensionConstants c = dimension_constants(plan.dimension);
  const double id_pe = c.p - (1.0 - 1.0 / (2.0 * c.d * (1.0 - c.gamma)));
  const double id_lp = c.lambda / (1.0 - c.p) - 2.0 * c.d * c.lambda * (1.0 - c.gamma);
  const double id_al = (1.0 - c.alpha) - 1.0 / (2.0 - c.gamma);
  const double gamma_up = compute_gamma(plan.dimension + 1);
  rep.estimates.push_back({"gamma", c.gamma, c.gamma_error});
  rep.estimates.push_back({"identity_p_residual", id_pe, 0.0});
  rep.estimates.push_back({"identity_lambda_residual", id_lp, 0.0});
  rep.estimates.push_back({"identity_alpha_residual", id_al, 0.0});
  rep.references.push_back({"gamma", c.gamma, "Green function quadrature"});
  auto band = [](double r) { return std::fabs(r) <= 1e-12; };
  rep.verdicts.push_back({"identity_p_residual",
                          band(id_pe) ? VerdictStatus::pass : VerdictStatus::fail, "|r| <= 1e-12"});
  rep.verdicts.push_back({"identity_lambda_residual",
                          band(id_lp) ? VerdictStatus::pass : VerdictStatus::fail, "|r| <= 1e-12"});
  rep.verdicts.push_back({"identity_alpha_residual",
                          band(id_al) ? VerdictStatus::pass : VerdictStatus::fail, "|r| <= 1e-12"});
  rep.verdicts.push_back({"gamma_monotone_in_d",
                          gamma_up > c.gamma ? VerdictStatus::pass : VerdictStatus::fail,
                          "gamma(d+1) > gamma(d)"});
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walklab: simulation and numerical checks for lattice walk local times"};
  app.require_subcommand(1);

  // shared plan flags, defaults documented in the README
  ExperimentPlan plan;
  plan.name = "";
  auto add_plan_flags = [&plan](CLI::App* sub, bool with_eps = true) {
    sub->add_option("--d,--dimension", plan.dimension, "lattice dimension (>= 3)")
        ->capture_default_str();
    sub->add_option("--n,--horizon", plan.horizon, "walk horizon in steps")
        ->capture_default_str();
    sub->add_option("--cap", plan.cap, "infinity-surrogate horizon (0: use --n)")
        ->capture_default_str();
    sub->add_option("--reps,--replications", plan.replications, "replication count")
        ->capture_default_str();
    sub->add_option("--seed", plan.seed, "base seed")->capture_default_str();
    if (with_eps)
      sub->add_option("--eps,--epsilon", plan.epsilon, "scaled-set margin")
          ->capture_default_str();
    sub->add_option("--significance", plan.significance, "test level for hard verdicts")
        ->capture_default_str();
    sub->add_option("--threads", plan.threads, "worker threads (0: hardware)")
        ->capture_default_str();
  };

  std::string out_path;
  std::string format = "json";
  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  // constants
  auto* cmd_constants = app.add_subcommand("constants", "derived constants for a dimension");
  int const_d = 3;
  double const_tol = 1e-10;
  cmd_constants->add_option("--d,--dimension", const_d, "lattice dimension (>= 3)")
      ->capture_default_str();
  cmd_constants->add_option("--tol", const_tol, "absolute tolerance for gamma")
      ->capture_default_str();
  add_output_flags(cmd_constants);

  // pmf
  auto* cmd_pmf = app.add_subcommand("pmf", "tabulate an exact law as CSV");
  std::string law_name = "geometric_site";
  int pmf_d = 3;
  std::int64_t kmax = 20, lmax = 20;
  cmd_pmf->add_option("--law", law_name,
                      "geometric_site | joint_two_point | ball_occupation | joint_point_ball")
      ->capture_default_str();
  cmd_pmf->add_option("--d,--dimension", pmf_d, "lattice dimension")->capture_default_str();
  cmd_pmf->add_option("--kmax", kmax, "largest k (or j)")->capture_default_str();
  cmd_pmf->add_option("--lmax", lmax, "largest l (joint laws)")->capture_default_str();
  add_output_flags(cmd_pmf);

  // boundary
  auto* cmd_boundary = app.add_subcommand("boundary", "rate-set boundary curve as CSV");
  std::string set_name = "B";
  int boundary_d = 3, grid = 200;
  cmd_boundary->add_option("--set", set_name, "B or D")->check(CLI::IsMember({"B", "D"}))
      ->capture_default_str();
  cmd_boundary->add_option("--d,--dimension", boundary_d, "lattice dimension")
      ->capture_default_str();
  cmd_boundary->add_option("--grid", grid, "grid rows")->capture_default_str();
  add_output_flags(cmd_boundary);

  // simulate
  auto* cmd_simulate = app.add_subcommand("simulate", "run one walk and emit the board snapshot");
  WalkConfig sim_cfg{3, 1'000'000, 0, 0};
  bool summary_only = false;
  cmd_simulate->add_option("--d,--dimension", sim_cfg.dimension, "lattice dimension")
      ->capture_default_str();
  cmd_simulate->add_option("--n,--horizon", sim_cfg.horizon, "steps")->capture_default_str();
  cmd_simulate->add_option("--seed", sim_cfg.seed, "seed")->capture_default_str();
  cmd_simulate->add_option("--stream", sim_cfg.stream_id, "stream id")->capture_default_str();
  cmd_simulate->add_flag("--summary-only", summary_only, "omit per-site records");
  add_output_flags(cmd_simulate);

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  cmd_verify->add_option("--suite", suite,
                         "constants | distributions | levelcounts | newpoints | containment | all")
      ->check(CLI::IsMember({"constants", "distributions", "levelcounts", "newpoints",
                             "containment", "all"}))
      ->capture_default_str();
  add_plan_flags(cmd_verify);
  add_output_flags(cmd_verify);

  // fillin
  auto* cmd_fillin = app.add_subcommand("fillin", "fill-in experiment for the scaled sets");
  std::vector<std::int64_t> checkpoints;
  add_plan_flags(cmd_fillin);
  cmd_fillin->add_option("--checkpoints", checkpoints,
                         "trajectory checkpoints (default n/100, n/10, n)")
      ->delimiter(',');
  add_output_flags(cmd_fillin);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_constants) {
      const DimensionConstants c = dimension_constants(const_d, const_tol);
      emit(out_path, constants_json(c));
      return 0;
    }
    if (*cmd_pmf) {
      const PmfSpec spec{parse_law(law_name), dimension_constants(pmf_d)};
      emit(out_path, pmf_csv(spec, kmax, lmax));
      return 0;
    }
    if (*cmd_boundary) {
      const RateSetDescriptor desc{set_name == "B" ? RateSet::B : RateSet::D,
                                   dimension_constants(boundary_d)};
      emit(out_path, boundary_csv(desc, grid));
      return 0;
    }
    if (*cmd_simulate) {
      Walk walk(sim_cfg);
      TallyBoard board(sim_cfg.dimension,
                       static_cast<std::int64_t>(0.75 * static_cast<double>(sim_cfg.horizon)) + 64);
      board.consume(walk);
      emit(out_path, board_json(board, sim_cfg, !summary_only));
      return 0;
    }
    if (*cmd_fillin) {
      const ExperimentReport rep = run_fillin_check(plan, checkpoints);
      emit(out_path, format == "csv" ? report_csv(rep) : report_json(rep));
      return rep.hard_fail() ? 1 : 0;
    }
    if (*cmd_verify) {
      std::vector<ExperimentReport> reports;
      const DimensionConstants c = dimension_constants(plan.dimension);
      if (suite == "constants" || suite == "all")
        reports.push_back(constants_identity_report(plan));
      if (suite == "distributions" || suite == "all") {
        ExperimentPlan p = plan;
        if (p.cap == 0) p.cap = p.horizon;
        p.horizon = std::min(p.horizon, p.cap);
        for (PmfKind kind : {PmfKind::geometric_site, PmfKind::joint_two_point,
                             PmfKind::ball_occupation, PmfKind::joint_point_ball})
          reports.push_back(run_distribution_check(p, PmfSpec{kind, c}));
      }
      if (suite == "levelcounts" || suite == "all")
        reports.push_back(run_level_count_check(plan));
      if (suite == "newpoints" || suite == "all")
        reports.push_back(run_newpoint_check(plan));
      if (suite == "containment" || suite == "all")
        reports.push_back(run_containment_check(plan));
      emit(out_path, format == "csv" ? reports_csv(reports) : reports_json(reports));
      for (const ExperimentReport& r : reports)
        if (r.hard_fail()) return 1;
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
