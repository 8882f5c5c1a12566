// Acceptance suite: exercises every agreed criterion at its stated tolerance
// and prints one verdict line per criterion. Exit code is nonzero when any
// hard criterion fails; diagnostic criteria report but never gate.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_values.hpp"
#include "walklab/constants.hpp"
#include "walklab/distributions.hpp"
#include "walklab/mc_lab.hpp"
#include "walklab/rate_geometry.hpp"
#include "walklab/report_io.hpp"
#include "walklab/rng.hpp"

using namespace walklab;

namespace {

int failures = 0;

void line(bool hard, bool ok, const std::string& name, const std::string& detail) {
  const char* tag = hard ? (ok ? "[PASS]" : "[FAIL]") : "[DIAG]";
  std::printf("%s %s: %s\n", tag, name.c_str(), detail.c_str());
  if (hard && !ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

const Verdict* verdict_of(const ExperimentReport& rep, const std::string& label) {
  for (const Verdict& v : rep.verdicts)
    if (v.label == label) return &v;
  return nullptr;
}

const Estimate* estimate_of(const ExperimentReport& rep, const std::string& label) {
  for (const Estimate& e : rep.estimates)
    if (e.label == label) return &e;
  return nullptr;
}

// Closed-form Watson integral for the d = 3 Green's function, evaluated from
// scratch with lgamma; fully independent of the quadrature path under test.
double watson_gamma_oracle() {
  const double lg = std::lgamma(1.0 / 24) + std::lgamma(5.0 / 24) + std::lgamma(7.0 / 24) +
                    std::lgamma(11.0 / 24);
  const double g0 = std::sqrt(6.0) / (32.0 * std::pow(std::numbers::pi, 3)) * std::exp(lg);
  return 1.0 / g0;
}

void criterion_constants() {
  const auto t0 = std::chrono::steady_clock::now();
  const double g = compute_gamma(3, 1e-10);
  const double g_watson = watson_gamma_oracle();
  const DimensionConstants c = derive_all(3, g);
  const double id_pe = std::fabs(c.p - (1.0 - 1.0 / (6.0 * (1.0 - c.gamma))));
  const double id_lp = std::fabs(c.lambda / (1.0 - c.p) - 6.0 * c.lambda * (1.0 - c.gamma));
  const double elapsed = seconds_since(t0);
  const bool ok = std::fabs(g - g_watson) <= 1e-6 && std::fabs(g - 0.659463) <= 1e-6 &&
                  id_pe <= 1e-12 && id_lp <= 1e-12 && elapsed < 10.0;
  line(true, ok, "1 constants",
       fmt("gamma=%.12f vs Watson oracle %.12f (|delta|=%.2e <= 1e-6); "
           "identities %.2e, %.2e <= 1e-12; runtime %.2fs < 10s",
           g, g_watson, std::fabs(g - g_watson), id_pe, id_lp, elapsed));
}

void criterion_exact_laws() {
  const DimensionConstants c = dimension_constants(3);
  bool ok = true;
  double worst_marginal = 0;
  for (std::int64_t k = 0; k <= 20; ++k) {
    double marginal = 0;
    for (std::int64_t l = 0; l <= 900; ++l) marginal += joint_two_point_pmf(c, k, l);
    worst_marginal = std::max(worst_marginal, std::fabs(marginal - geometric_site_pmf(c, k)));
  }
  ok = ok && worst_marginal <= 1e-12;

  double worst_row = 0;
  for (std::int64_t l = 0; l <= 30; ++l) {
    double row = 0;
    for (std::int64_t k = 0; k <= l; ++k) row += joint_point_ball_pmf(c, k, l);
    worst_row = std::max(worst_row, std::fabs(row - ball_occupation_pmf(c, l + 1)));
  }
  ok = ok && worst_row <= 1e-12;

  // normalization with certified geometric tails
  double geo = 0;
  for (int k = 0; k < 200; ++k) geo += geometric_site_pmf(c, k);
  const double geo_defect = std::fabs(geo + std::pow(1.0 - c.gamma, 200.0) - 1.0);
  double two = 0;
  for (std::int64_t m = 0; m <= 120; ++m)
    for (std::int64_t k = 0; k <= m; ++k) two += joint_two_point_pmf(c, k, m - k);
  const double two_defect = std::fabs(two + std::pow(2.0 * c.alpha, 121.0) - 1.0);
  double ball = 0;
  for (std::int64_t j = 1; j <= 400; ++j) ball += ball_occupation_pmf(c, j);
  const double ball_defect = std::fabs(ball + std::pow(c.p + 1.0 / 6.0, 400.0) - 1.0);
  double joint = 0;
  for (std::int64_t l = 0; l <= 400; ++l)
    for (std::int64_t k = 0; k <= std::min<std::int64_t>(l, 60); ++k)
      joint += joint_point_ball_pmf(c, k, l);
  const double joint_defect = std::fabs(joint + std::pow(c.p + 1.0 / 6.0, 401.0) - 1.0);
  const double worst_norm =
      std::max({geo_defect, two_defect, ball_defect, joint_defect});
  ok = ok && worst_norm <= 1e-10;

  line(true, ok, "2 exact-law identities",
       fmt("marginal defect %.2e <= 1e-12 (k<=20); row-sum defect %.2e <= 1e-12 (l<=30); "
           "normalization defect %.2e <= 1e-10",
           worst_marginal, worst_row, worst_norm));
}

void criterion_boundary_geometry() {
  const DimensionConstants c = dimension_constants(3);
  const RateSetDescriptor b{RateSet::B, c};
  const RateSetDescriptor d{RateSet::D, c};
  double worst_landmark = 0;
  for (const auto& desc : {b, d})
    for (const LabeledPoint& pt : extremal_points(desc))
      worst_landmark = std::max(worst_landmark, std::fabs(rate_value(desc, pt.x, pt.y) - 1.0));

  CounterRng rng(1234, 0);
  double worst_hom = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double x = 3.0 * rng.next_double();
    const double y = 3.0 * rng.next_double();
    const double s = 0.1 + 2.9 * rng.next_double();
    worst_hom = std::max(worst_hom, std::fabs(rate_g(c, s * x, s * y) - s * rate_g(c, x, y)));
    const double yy = x + y;
    worst_hom =
        std::max(worst_hom, std::fabs(rate_f(c, s * x, s * yy) - s * rate_f(c, x, yy)));
  }

  int convex_fail = 0;
  for (int i = 0; i < 10'000; ++i) {
    const double x = 2.0 * rng.next_double();
    const double y1 = 2.0 * rng.next_double();
    const double y2 = 2.0 * rng.next_double();
    if (rate_g(c, x, 0.5 * (y1 + y2)) >
        0.5 * (rate_g(c, x, y1) + rate_g(c, x, y2)) + 1e-12)
      ++convex_fail;
    if (rate_f(c, x, x + 0.5 * (y1 + y2)) >
        0.5 * (rate_f(c, x, x + y1) + rate_f(c, x, x + y2)) + 1e-12)
      ++convex_fail;
  }

  const bool ok = worst_landmark <= 1e-10 && worst_hom <= 1e-10 && convex_fail == 0;
  line(true, ok, "3 boundary geometry",
       fmt("landmark |rate-1| max %.2e <= 1e-10; homogeneity defect %.2e <= 1e-10 "
           "(1e4 triples); convexity violations %d/2e4 midpoints",
           worst_landmark, worst_hom, convex_fail));
}

void criterion_mc_vs_exact() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentPlan plan;
  plan.dimension = 3;
  plan.horizon = plan.cap = 10'000;
  plan.replications = 100'000;
  plan.seed = 20250810;
  plan.significance = 0.01;
  const DimensionConstants c = dimension_constants(3);

  const ExperimentReport two = run_distribution_check(plan, {PmfKind::joint_two_point, c});
  const ExperimentReport ball = run_distribution_check(plan, {PmfKind::joint_point_ball, c});
  const Verdict* chi_two = verdict_of(two, "chi_square");
  const Verdict* chi_ball = verdict_of(ball, "chi_square");
  const Verdict* escape = verdict_of(two, "escape_frequency");
  const double elapsed = seconds_since(t0);
  const bool ok = chi_two && chi_two->status == VerdictStatus::pass && chi_ball &&
                  chi_ball->status == VerdictStatus::pass && escape &&
                  escape->status == VerdictStatus::pass && elapsed <= 600.0;
  line(true, ok, "4 MC vs exact laws",
       fmt("two-point chi-square %s (%s); point-ball chi-square %s (%s); escape %.5f vs "
           "gamma %.5f (%s); runtime %.1fs <= 600s",
           chi_two ? to_string(chi_two->status).c_str() : "missing",
           chi_two ? chi_two->detail.c_str() : "",
           chi_ball ? to_string(chi_ball->status).c_str() : "missing",
           chi_ball ? chi_ball->detail.c_str() : "",
           estimate_of(two, "escape_frequency")->value, c.gamma,
           escape ? to_string(escape->status).c_str() : "missing", elapsed));
}

void criterion_level_counts() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentPlan plan;
  plan.dimension = 3;
  plan.horizon = 10'000'000;
  plan.replications = 10;
  plan.seed = 55;
  const ExperimentReport rep = run_level_count_check(plan, 4, 0.05);
  const double elapsed = seconds_since(t0);
  const bool ok = !rep.hard_fail() && elapsed <= 900.0;
  std::string detail;
  for (int k = 1; k <= 4; ++k) {
    const Estimate* e = estimate_of(rep, "Q(" + std::to_string(k) + ",n)/n");
    detail += fmt("Q(%d)/n=%.5f ", k, e ? e->value : -1.0);
  }
  line(true, ok, "5 level counts",
       detail + fmt("all within 5%% of gamma^2(1-gamma)^{k-1}; runtime %.1fs <= 900s", elapsed));
}

void criterion_new_points() {
  ExperimentPlan plan;
  plan.dimension = 3;
  plan.horizon = 1'000'000;
  plan.replications = 20;
  plan.seed = 66;
  const ExperimentReport rep = run_newpoint_check(plan, 0.01);
  const Estimate* z = estimate_of(rep, "zeta/n");
  const Estimate* n = estimate_of(rep, "nu/n");
  line(true, !rep.hard_fail(), "6 new-point densities",
       fmt("zeta/n=%.6f vs %.6f, nu/n=%.6f vs %.6f, both within 1%%", z->value,
           oracle::kOneMinusTwoAlpha3, n->value, oracle::kBallNewDensity3));
}

void criterion_asymptotic_diagnostics() {
  ExperimentPlan plan;
  plan.dimension = 3;
  plan.horizon = 1'000'000;
  plan.replications = 20;
  plan.seed = 77;
  plan.epsilon = 0.5;
  const ExperimentReport cont = run_containment_check(plan);
  const double bviol = estimate_of(cont, "b_violations")->value;
  const double dviol = estimate_of(cont, "d_violations")->value;
  const double xi_ratio = estimate_of(cont, "xi_max/log_n")->value;
  const double xs_ratio = estimate_of(cont, "xi_star/log_n")->value;
  line(false, bviol == 0 && dviol == 0, "7a containment (diagnostic)",
       fmt("violations of (1.5 log n)B: %.0f, of (1.5 log n)D: %.0f (zero expected); "
           "max rates %.3f / %.3f per log n",
           bviol, dviol, estimate_of(cont, "max_g_rate_per_log_n")->value,
           estimate_of(cont, "max_f_rate_per_log_n")->value));

  ExperimentPlan fill_plan = plan;
  fill_plan.epsilon = 0.7;
  const std::vector<std::int64_t> marks{10'000, 100'000, 1'000'000};
  const ExperimentReport fill = run_fillin_check(fill_plan, marks);
  const Verdict* mono_b = verdict_of(fill, "fill_fraction_B_monotone");
  const Verdict* mono_d = verdict_of(fill, "fill_fraction_D_monotone");
  std::string fr;
  for (std::int64_t m : marks) {
    const Estimate* fb = estimate_of(fill, "fill_fraction_B[n=" + std::to_string(m) + "]");
    fr += fmt("B@%lld=%.3f ", static_cast<long long>(m), fb->value);
  }
  const double final_b =
      estimate_of(fill, "fill_fraction_B[n=1000000]")->value;
  const double final_d =
      estimate_of(fill, "fill_fraction_D[n=1000000]")->value;
  line(false,
       final_b >= 0.9 && final_d >= 0.9 &&
           mono_b->detail.find("nondecreasing") != std::string::npos &&
           mono_d->detail.find("nondecreasing") != std::string::npos,
       "7b fill-in (diagnostic)",
       fr + fmt("final D=%.3f; monotone under extension: B %s, D %s", final_d,
                mono_b->detail.find("nondecreasing") != std::string::npos ? "yes" : "no",
                mono_d->detail.find("nondecreasing") != std::string::npos ? "yes" : "no"));

  line(false,
       xi_ratio >= 0.5 * oracle::kLambda3 && xi_ratio <= 1.5 * oracle::kLambda3 &&
           xs_ratio >= 1.0 && xs_ratio <= 1.6 * oracle::kKappa3,
       "7c growth rates (diagnostic)",
       fmt("xi(n)/log n = %.3f vs lambda %.3f [band 0.5..1.5x]; Xi*(S(1),n)/log n = %.3f vs "
           "kappa %.3f [band 1.0..1.6 kappa]",
           xi_ratio, oracle::kLambda3, xs_ratio, oracle::kKappa3));
}

void criterion_determinism() {
  namespace fs = std::filesystem;
  // library level: identical plans, different thread counts
  ExperimentPlan plan;
  plan.horizon = plan.cap = 2000;
  plan.replications = 2000;
  plan.seed = 7;
  plan.threads = 2;
  const DimensionConstants c = dimension_constants(3);
  const std::string a = report_json(run_distribution_check(plan, {PmfKind::joint_two_point, c}));
  plan.threads = 1;
  const std::string b = report_json(run_distribution_check(plan, {PmfKind::joint_two_point, c}));

  // CLI level: byte-identical files from identical flags
  const fs::path dir = fs::temp_directory_path() / "walklab_acceptance";
  fs::create_directories(dir);
  const std::string flags =
      " verify --suite distributions --d 3 --n 2000 --cap 2000 --reps 1500 --seed 7 --out ";
  const fs::path f1 = dir / "d1.json", f2 = dir / "d2.json";
  const int rc1 = std::system((std::string(WALKLAB_CLI_PATH) + flags + f1.string() +
                               " 2>/dev/null").c_str());
  const int rc2 = std::system((std::string(WALKLAB_CLI_PATH) + flags + f2.string() +
                               " 2>/dev/null").c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string s1 = slurp(f1), s2 = slurp(f2);
  fs::remove_all(dir);
  const bool ok = a == b && rc1 == 0 && rc2 == 0 && !s1.empty() && s1 == s2;
  line(true, ok, "8 determinism",
       fmt("library reports identical across thread counts: %s; CLI rerun byte-identical: "
           "%s (%zu bytes)",
           a == b ? "yes" : "no", s1 == s2 ? "yes" : "no", s1.size()));
}

}  // namespace

int main() {
  std::printf("walklab acceptance suite (d = 3 unless stated)\n");
  criterion_constants();
  criterion_exact_laws();
  criterion_boundary_geometry();
  criterion_mc_vs_exact();
  criterion_level_counts();
  criterion_new_points();
  criterion_asymptotic_diagnostics();
  criterion_determinism();
  if (failures == 0)
    std::printf("all hard criteria passed\n");
  else
    std::printf("%d hard criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
