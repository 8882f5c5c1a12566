#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "walklab/constants.hpp"
#include "walklab/distributions.hpp"
#include "walklab/mc_lab.hpp"
#include "walklab/rate_geometry.hpp"
#include "walklab/tally.hpp"
#include "walklab/walk.hpp"

namespace walklab {

/// Fixed 12-significant-digit formatting keeps reports diffable; JSON output
/// mirrors the same precision. Rerunning with equal flags and seed emits
/// byte-identical files.
std::string format_sig12(double v);
double round_sig12(double v);

std::string constants_json(const DimensionConstants& c);

std::string report_json(const ExperimentReport& report);
std::string reports_json(std::span<const ExperimentReport> reports);
std::string report_csv(const ExperimentReport& report);
std::string reports_csv(std::span<const ExperimentReport> reports);

/// Board snapshot: site records as coordinate arrays plus counts, first-visit
/// order, level counts, and the new-point counters.
std::string board_json(const TallyBoard& board, const WalkConfig& config, bool include_sites);

/// Tabulated PMF values as CSV (columns k, l, probability; l is empty for
/// the univariate laws).
std::string pmf_csv(const PmfSpec& law, std::int64_t k_max, std::int64_t l_max);

/// Boundary curve on a uniform x-grid plus the labeled landmark points
/// (columns x, y_low, y_high, label).
std::string boundary_csv(const RateSetDescriptor& desc, int grid);

/// Relative paths are placed under $WALKLAB_OUT_DIR when it is set.
std::string resolve_output_path(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace walklab
