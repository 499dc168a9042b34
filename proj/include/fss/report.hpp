#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fss/baselines.hpp"
#include "fss/indicators.hpp"
#include "fss/ranking.hpp"
#include "fss/run_config.hpp"

namespace fss {

inline constexpr const char* kToolName = "fss";
inline constexpr const char* kToolVersion = "1.0.0";
// Bumped when report columns change; columns are only ever appended.
inline constexpr int kReportFormatVersion = 1;

// Attribution header written at the top of every report.
struct RunMetadata {
  std::string config_hash;
  std::string inputs_hash;
  std::string window;
  double top_share = 0.10;
  std::int64_t researchers = 0;
  std::int64_t salary_defaulted = 0;
  std::int64_t years_defaulted = 0;

  // Ordered key/value pairs, as written.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

// "# key=value" lines; CSV readers in this project skip them.
void write_metadata_comment(std::ostream& out, const RunMetadata& meta);

// researcher_id, field_id, fss, n_pubs, h_index, mncs, hca_count, hca_share,
// total_normalized_impact, unit_id, salary_defaulted, years_defaulted.
// `indicators` must be parallel to `scores`.
void write_scores(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                  std::span<const ResearcherScore> scores, std::span<const ContrastIndicators> indicators);

// researcher_id, n_pubs, h_index, mncs, hca_count, hca_share, total_normalized_impact.
void write_indicators(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                      std::span<const ContrastIndicators> indicators);

void write_baseline_report(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                           const BaselineMap& baselines);

// field_id, rank, researcher_id, fss, percentile, ratio_to_avg.
void write_field_ranking(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                         std::span<const RankedList> lists);

// rank, unit_id, fss_u, rs, unstandardized_staff, field_breakdown.
void write_unit_ranking(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                        std::span<const UnitRankEntry> units);

// Reads a scores CSV produced by write_scores (researcher_id, field_id, fss,
// n_pubs, unit_id are used).
std::vector<ResearcherScore> read_scores(const std::filesystem::path& path);

// Shortest representation that reads back to the same double.
std::string format_double(double value);

}  // namespace fss
