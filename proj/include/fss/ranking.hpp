#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fss/indicators.hpp"

namespace fss {

struct RankedEntry {
  std::string researcher_id;
  double fss = 0.0;
  double percentile = 0.0;             // 0 (worst) .. 100 (best) within the field
  std::optional<double> ratio_to_avg;  // absent when the field has no productive researcher
};

struct RankedList {
  std::string field_id;
  std::vector<RankedEntry> entries;      // fss descending, then researcher_id ascending
  std::optional<double> productive_mean;  // mean fss over researchers with fss > 0
};

// Midrank percentile: 100 * (peers strictly below + 0.5 * tied peers) / (n - 1);
// a field of one researcher gets 100. Throws InvalidArgument on empty input.
RankedList rank_field(std::span<const ResearcherScore> scores);

// One list per classified field, ordered by field_id. Fields are ranked in
// parallel with OpenMP; unclassified researchers are skipped.
std::vector<RankedList> rank_fields(std::span<const ResearcherScore> scores, int jobs = 0);
std::vector<RankedList> rank_fields_serial(std::span<const ResearcherScore> scores);

// Copies percentile and ratio_to_avg from the lists back onto the scores.
void annotate_scores(std::vector<ResearcherScore>& scores, std::span<const RankedList> lists);

struct UnitRankEntry {
  std::int64_t rank = 0;
  UnitScore unit;
};

// Units by fss_u descending, ties by unit_id ascending. Only standardized fss
// enters; percentiles are never aggregated. Throws InvalidArgument on empty input.
std::vector<UnitRankEntry> rank_units(std::span<const UnitScore> unit_scores);

}  // namespace fss
