#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fss/baselines.hpp"
#include "fss/corpus.hpp"
#include "fss/credit.hpp"

namespace fss {

// Researcher-level Fractional Scientific Strength: salary- and time-normalized
// sum of field-normalized citations weighted by the researcher's byline share.
struct ResearcherScore {
  std::string researcher_id;
  std::string field_id;  // empty when the researcher cannot be classified
  std::string unit_id;
  double fss = 0.0;
  std::int64_t n_pubs = 0;
  bool salary_defaulted = false;
  bool years_defaulted = false;
  std::optional<double> percentile;    // filled by ranking
  std::optional<double> ratio_to_avg;  // filled by ranking
};

// Contribution of one field to a unit score.
struct FieldContribution {
  std::int64_t staff = 0;
  double standardized_sum = 0.0;  // sum of fss / field mean
};

// Unit-level FSS: mean over the research staff of fss standardized by the
// national mean of productive researchers in each member's field.
struct UnitScore {
  std::string unit_id;
  double fss_u = 0.0;
  std::int64_t rs = 0;
  std::map<std::string, FieldContribution> by_field;
  // Staff counted in rs but contributing 0 because their field has no
  // productive researcher or they are unclassified.
  std::vector<std::string> unstandardized_staff;
  // Which researcher-level quantities the aggregation read. Never contains
  // "percentile": percentile ranks are not interval data.
  std::vector<std::string> aggregation_inputs;
};

using FieldMeans = std::map<std::string, double>;

// Pointers to the researcher's publications, ordered by (year, pub_id).
std::vector<const PublicationRecord*> publications_of(const Corpus& corpus, const std::string& researcher_id);

ResearcherScore fss_researcher(const Corpus& corpus, const BaselineMap& baselines,
                               const PolicyTable& policies, const std::string& researcher_id);

// Every researcher of the corpus, in corpus order. OpenMP kernel.
std::vector<ResearcherScore> score_researchers(const Corpus& corpus, const BaselineMap& baselines,
                                               const PolicyTable& policies, int jobs = 0);
// Single-threaded reference for score_researchers.
std::vector<ResearcherScore> score_researchers_serial(const Corpus& corpus, const BaselineMap& baselines,
                                                      const PolicyTable& policies);

// Mean fss over researchers with fss > 0, per field. Fields without a
// productive researcher are absent.
FieldMeans productive_field_means(std::span<const ResearcherScore> scores);

// Throws InvalidArgument on an empty roster.
UnitScore fss_unit(const std::string& unit_id, std::span<const ResearcherScore> staff,
                   const FieldMeans& field_means);

// Groups scores by unit_id and scores each unit; ordered by unit_id.
std::vector<UnitScore> score_units(std::span<const ResearcherScore> scores, const FieldMeans& field_means);

// Largest h such that at least h entries are >= h.
std::int64_t h_index(std::span<const std::int64_t> citation_counts);

using PublicationList = std::span<const PublicationRecord* const>;

// Mean normalized citation score. Throws EmptyPortfolio.
double mncs(PublicationList pubs, const BaselineMap& baselines);

struct HcaShare {
  std::int64_t count = 0;
  double share = 0.0;
};

// Publications at or above their cell's HCA threshold. Throws EmptyPortfolio,
// and MissingBaseline for a cell without a threshold.
HcaShare hca_share(PublicationList pubs, const ThresholdMap& thresholds);
HcaShare hca_share(PublicationList pubs, const BaselineMap& baselines, double top_share);

double total_normalized_impact(PublicationList pubs, const BaselineMap& baselines);

// Size-independent and size-dependent contrast indicators of one researcher.
// Portfolio-ratio indicators are absent for researchers without publications.
struct ContrastIndicators {
  std::string researcher_id;
  std::int64_t n_pubs = 0;
  std::int64_t h_index = 0;
  std::optional<double> mncs;
  std::int64_t hca_count = 0;
  std::optional<double> hca_share;
  double total_normalized_impact = 0.0;
};

std::vector<ContrastIndicators> contrast_indicators(const Corpus& corpus, const BaselineMap& baselines,
                                                    const ThresholdMap& thresholds, int jobs = 0);
std::vector<ContrastIndicators> contrast_indicators_serial(const Corpus& corpus, const BaselineMap& baselines,
                                                           const ThresholdMap& thresholds);

}  // namespace fss
