#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fss/corpus.hpp"

namespace fss {

struct CellKey {
  std::string field_id;
  int year = 0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

// Citation statistics of one (field, year) cell.
struct FieldBaseline {
  std::string field_id;
  int year = 0;
  std::optional<double> c_bar;  // mean over cited publications; absent when none is cited
  std::int64_t cited_count = 0;
  std::int64_t total_count = 0;
  // Every publication's citation count, ascending. May be empty for baselines
  // imported without a distribution; such cells cannot produce HCA thresholds.
  std::vector<std::int64_t> citation_values;

  bool has_distribution() const {
    return static_cast<std::int64_t>(citation_values.size()) == total_count && total_count > 0;
  }

  friend bool operator==(const FieldBaseline&, const FieldBaseline&) = default;
};

using BaselineMap = std::map<CellKey, FieldBaseline>;

// Builds a cell from raw citation counts (any order).
FieldBaseline make_baseline(std::string field_id, int year, std::vector<std::int64_t> citations);

// One baseline per (field, year) cell with at least one publication. Cells are
// reduced in parallel with OpenMP; jobs <= 0 uses the runtime default.
BaselineMap compute_baselines(const Corpus& corpus, int jobs = 0);

// Single-threaded reference for compute_baselines.
BaselineMap compute_baselines_serial(const Corpus& corpus);

// c_i / c_bar, or 0 for an uncited publication. Throws MissingBaseline when a
// cited publication has no cell or its cell has no cited publications.
double normalized_citation(const PublicationRecord& pub, const BaselineMap& baselines);

// Smallest citation value v such that the share of the cell with citations >= v
// is at most top_share. A publication is highly cited iff citations >= v and
// v > 0 (see is_hca).
std::int64_t hca_threshold(const FieldBaseline& baseline, double top_share);

inline bool is_hca(std::int64_t citations, std::int64_t threshold) {
  return threshold > 0 && citations >= threshold;
}

// HCA count within the cell itself, and the realized share.
struct HcaRealization {
  std::int64_t threshold = 0;
  std::int64_t count = 0;
  double share = 0.0;
};
HcaRealization realized_hca(const FieldBaseline& baseline, double top_share);

using ThresholdMap = std::map<CellKey, std::int64_t>;

// Thresholds for every cell that carries a distribution.
ThresholdMap hca_thresholds(const BaselineMap& baselines, double top_share);

// Explicit field when present, otherwise the modal field of the researcher's
// publications. Ties go to the field with the most recent publication, then
// to the lexicographically smallest field_id. Throws Unclassifiable.
std::string classify_researcher(const Corpus& corpus, const std::string& researcher_id);

// Baseline file: field_id,year,c_bar,cited_count,total_count,citation_values.
// citation_values is a space-separated list and is optional on import.
void write_baselines(const std::filesystem::path& path, const BaselineMap& baselines);
void write_baselines(std::ostream& out, const BaselineMap& baselines);
BaselineMap read_baselines(const std::filesystem::path& path);

// Cells in `overrides` replace those in `base`.
BaselineMap merge_baselines(BaselineMap base, const BaselineMap& overrides);

}  // namespace fss
