#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "walklab/constants.hpp"
#include "walklab/distributions.hpp"
#include "walklab/rate_geometry.hpp"

namespace walklab {

struct ExperimentPlan {
  std::string name;
  int dimension = 3;
  std::int64_t horizon = 1'000'000;
  std::int64_t cap = 0;  // infinity surrogate; 0 means "use the horizon"
  std::int64_t replications = 20;
  std::uint64_t seed = 0;
  double epsilon = 0.5;       // scaled-set margin
  double significance = 0.01;  // test level for hard verdicts
  int threads = 0;            // 0 = hardware concurrency

  void validate() const;
};

/// Hard verdicts (pass/fail) are reserved for exact laws and identities;
/// finite-horizon checks of asymptotic statements carry `diagnostic`.
enum class VerdictStatus { pass, fail, diagnostic };

std::string to_string(VerdictStatus s);

struct Estimate {
  std::string label;
  double value = 0;
  double std_error = 0;
};

struct Reference {
  std::string label;
  double value = 0;
  std::string provenance;  // where the value comes from
};

struct Verdict {
  std::string label;
  VerdictStatus status = VerdictStatus::diagnostic;
  std::string detail;
};

/// Deterministic function of its plan: seeded streams, fixed reduction
/// order. wall_seconds is informational and never serialized, so reruns with
/// equal plans emit byte-identical files.
struct ExperimentReport {
  std::string name;
  ExperimentPlan plan;
  std::vector<Estimate> estimates;
  std::vector<Reference> references;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  double wall_seconds = 0;

  bool hard_fail() const;
};

/// Compares empirical frequencies of (xi(0,cap), xi(e1,cap)) or
/// (xi(0,cap), Xi(0,cap)) against the exact law: cell-wise 3-sigma bands and
/// a global chi-square over cells with expected count >= 5. The truncation
/// bias allowance cap^{1-d/2} is reported alongside.
ExperimentReport run_distribution_check(const ExperimentPlan& plan, const PmfSpec& law);

/// Q(k,n)/n against gamma^2 (1-gamma)^{k-1} for k = 1..k_max, with the
/// declared relative tolerance, plus consecutive-level ratios.
ExperimentReport run_level_count_check(const ExperimentPlan& plan, int k_max = 4,
                                       double rel_tol = 0.05);

/// zeta_n/n against 1-2alpha and nu_n/n against 1-p-1/(2d).
ExperimentReport run_newpoint_check(const ExperimentPlan& plan, double rel_tol = 0.01);

/// Containment of all observed neighbor pairs in ((1+eps) log n) B and of
/// all (center, sphere) pairs in ((1+eps) log n) D; also reports
/// xi(n)/log n and Xi*(S(1),n)/log n against lambda and kappa. Diagnostic.
ExperimentReport run_containment_check(const ExperimentPlan& plan);

/// Fraction of integer pairs of ((1-eps) log n) B realized as
/// (xi(z,n), xi(z+e1,n)) = (k+1, l), and of ((1-eps) log n) D realized as
/// (xi(z,n), Xi(z,n)) = (k, l+1), per checkpoint of the same trajectory.
/// Checkpoints default to {n/100, n/10, n}. Diagnostic.
ExperimentReport run_fillin_check(const ExperimentPlan& plan,
                                  std::span<const std::int64_t> checkpoints = {});

/// Mergeable per-replication summary used by the runners; merging R
/// single-replication results equals one R-replication run (associative and
/// commutative reduction).
struct RunSummary {
  std::vector<std::int64_t> level_hist;  // index k: Q(k, n), k >= 1
  std::int64_t upsilon_new = 0;
  std::int64_t gamma_new = 0;
  std::int64_t max_local_time = 0;
  std::int64_t steps = 0;
  std::int64_t distinct_sites = 0;

  RunSummary& merge(const RunSummary& other);
};

RunSummary summarize_board(const class TallyBoard& board);

}  // namespace walklab
