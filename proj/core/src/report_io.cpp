#include "walklab/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace walklab {

using ordered_json = nlohmann::ordered_json;

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double round_sig12(double v) { return std::strtod(format_sig12(v).c_str(), nullptr); }

namespace {

ordered_json plan_json(const ExperimentPlan& plan) {
  ordered_json j;
  j["name"] = plan.name;
  j["dimension"] = plan.dimension;
  j["horizon"] = plan.horizon;
  j["cap"] = plan.cap;
  j["replications"] = plan.replications;
  j["seed"] = plan.seed;
  j["epsilon"] = round_sig12(plan.epsilon);
  j["significance"] = round_sig12(plan.significance);
  return j;
}

ordered_json report_body(const ExperimentReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["plan"] = plan_json(report.plan);
  ordered_json est = ordered_json::array();
  for (const Estimate& e : report.estimates) {
    ordered_json row;
    row["label"] = e.label;
    row["value"] = round_sig12(e.value);
    row["std_error"] = round_sig12(e.std_error);
    est.push_back(row);
  }
  j["estimates"] = est;
  ordered_json refs = ordered_json::array();
  for (const Reference& r : report.references) {
    ordered_json row;
    row["label"] = r.label;
    row["value"] = round_sig12(r.value);
    row["provenance"] = r.provenance;
    refs.push_back(row);
  }
  j["references"] = refs;
  ordered_json verdicts = ordered_json::array();
  for (const Verdict& v : report.verdicts) {
    ordered_json row;
    row["label"] = v.label;
    row["status"] = to_string(v.status);
    row["detail"] = v.detail;
    verdicts.push_back(row);
  }
  j["verdicts"] = verdicts;
  j["notes"] = report.notes;
  // wall time stays out of serialized reports: reruns must be byte-identical
  return j;
}

void csv_rows(std::ostringstream& os, const ExperimentReport& report) {
  auto find_ref = [&](const std::string& label) -> const Reference* {
    for (const Reference& r : report.references)
      if (r.label == label) return &r;
    return nullptr;
  };
  auto find_verdict = [&](const std::string& label) -> const Verdict* {
    for (const Verdict& v : report.verdicts)
      if (v.label == label) return &v;
    return nullptr;
  };
  for (const Estimate& e : report.estimates) {
    const Reference* r = find_ref(e.label);
    const Verdict* v = find_verdict(e.label);
    os << report.name << ',' << e.label << ',' << format_sig12(e.value) << ','
       << format_sig12(e.std_error) << ',' << (r ? format_sig12(r->value) : "") << ','
       << (r ? r->provenance : "") << ',' << (v ? to_string(v->status) : "") << '\n';
  }
  for (const Verdict& v : report.verdicts) {
    bool has_estimate = false;
    for (const Estimate& e : report.estimates) has_estimate = has_estimate || e.label == v.label;
    if (has_estimate) continue;
    const Reference* r = find_ref(v.label);
    os << report.name << ',' << v.label << ",,," << (r ? format_sig12(r->value) : "") << ','
       << (r ? r->provenance : "") << ',' << to_string(v.status) << '\n';
  }
}

}  // namespace

std::string constants_json(const DimensionConstants& c) {
  ordered_json j;
  j["schema"] = "walklab.constants.v1";
  j["d"] = c.d;
  j["gamma"] = round_sig12(c.gamma);
  j["alpha"] = round_sig12(c.alpha);
  j["lambda"] = round_sig12(c.lambda);
  j["p"] = round_sig12(c.p);
  j["kappa"] = round_sig12(c.kappa);
  j["x0_b"] = round_sig12(c.x0_b);
  j["sum_max"] = round_sig12(c.sum_max);
  j["diff_max"] = round_sig12(c.diff_max);
  j["weight_c"] = round_sig12(c.weight_c);
  j["weight_a"] = round_sig12(c.weight_a);
  j["error_budget"] = {{"gamma_abs", round_sig12(c.gamma_error)}};
  return j.dump(2) + "\n";
}

std::string report_json(const ExperimentReport& report) {
  ordered_json out;
  out["schema"] = "walklab.report.v1";
  ordered_json body = report_body(report);
  for (auto& [k, v] : body.items()) out[k] = v;
  return out.dump(2) + "\n";
}

std::string reports_json(std::span<const ExperimentReport> reports) {
  ordered_json j;
  j["schema"] = "walklab.verify.v1";
  ordered_json arr = ordered_json::array();
  for (const ExperimentReport& r : reports) arr.push_back(report_body(r));
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "report,label,value,std_error,reference,provenance,verdict\n";
  csv_rows(os, report);
  return os.str();
}

std::string reports_csv(std::span<const ExperimentReport> reports) {
  std::ostringstream os;
  os << "report,label,value,std_error,reference,provenance,verdict\n";
  for (const ExperimentReport& r : reports) csv_rows(os, r);
  return os.str();
}

std::string board_json(const TallyBoard& board, const WalkConfig& config, bool include_sites) {
  ordered_json j;
  j["schema"] = "walklab.board.v1";
  j["dimension"] = board.dimension();
  j["horizon"] = config.horizon;
  j["seed"] = config.seed;
  j["stream_id"] = config.stream_id;
  j["steps_consumed"] = board.steps_consumed();
  j["distinct_sites"] = board.distinct_sites();
  j["max_local_time"] = board.max_local_time();
  const NewPointCounters counters = board.new_point_counters();
  j["counters"] = {{"upsilon_new", counters.upsilon_new}, {"gamma_new", counters.gamma_new}};
  const LevelCounts lc = board.level_counts();
  ordered_json levels;
  for (const auto& [k, cnt] : lc.q) levels[std::to_string(k)] = cnt;
  j["level_counts"] = levels;
  if (include_sites) {
    ordered_json sites = ordered_json::array();
    board.for_each_site([&](std::uint32_t, const std::int32_t* z, std::int64_t count,
                            std::int64_t first_visit) {
      ordered_json row;
      ordered_json coords = ordered_json::array();
      for (int i = 0; i < board.dimension(); ++i) coords.push_back(z[i]);
      row["z"] = coords;
      row["xi"] = count;
      row["first_visit"] = first_visit;
      sites.push_back(row);
    });
    j["sites"] = sites;
  }
  return j.dump(2) + "\n";
}

std::string pmf_csv(const PmfSpec& law, std::int64_t k_max, std::int64_t l_max) {
  std::ostringstream os;
  os << "k,l,probability\n";
  switch (law.kind) {
    case PmfKind::geometric_site:
      for (std::int64_t k = 0; k <= k_max; ++k)
        os << k << ",," << format_sig12(geometric_site_pmf(law.constants, k)) << '\n';
      break;
    case PmfKind::ball_occupation:
      for (std::int64_t j = 1; j <= k_max; ++j)
        os << j << ",," << format_sig12(ball_occupation_pmf(law.constants, j)) << '\n';
      break;
    case PmfKind::joint_two_point:
      for (std::int64_t k = 0; k <= k_max; ++k)
        for (std::int64_t l = 0; l <= l_max; ++l)
          os << k << ',' << l << ','
             << format_sig12(joint_two_point_pmf(law.constants, k, l)) << '\n';
      break;
    case PmfKind::joint_point_ball:
      for (std::int64_t k = 0; k <= k_max; ++k)
        for (std::int64_t l = k; l <= l_max; ++l)
          os << k << ',' << l << ','
             << format_sig12(joint_point_ball_pmf(law.constants, k, l)) << '\n';
      break;
  }
  return os.str();
}

std::string boundary_csv(const RateSetDescriptor& desc, int grid) {
  if (grid < 2) throw std::invalid_argument("boundary_csv: grid must be >= 2");
  std::ostringstream os;
  os << "x,y_low,y_high,label\n";
  const double lam = desc.constants.lambda;
  for (int i = 0; i < grid; ++i) {
    const double x = lam * i / (grid - 1);
    const BoundaryPoint bp = solve_boundary(desc, x);
    os << format_sig12(bp.x) << ',' << format_sig12(bp.y_low) << ','
       << format_sig12(bp.y_high) << ",\n";
  }
  for (const LabeledPoint& pt : extremal_points(desc))
    os << format_sig12(pt.x) << ',' << format_sig12(pt.y) << ',' << format_sig12(pt.y)
       << ',' << pt.label << '\n';
  return os.str();
}

std::string resolve_output_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty()) return path;
  const char* base = std::getenv("WALKLAB_OUT_DIR");
  if (base == nullptr || *base == '\0' || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).string();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::string resolved = resolve_output_path(path);
  std::ofstream out(resolved, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + resolved);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + resolved);
}

}  // namespace walklab
