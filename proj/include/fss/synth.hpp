#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fss/corpus.hpp"

namespace fss {

// Synthetic corpus parameters. Researcher output follows Lotka's law: the
// number of researchers with n publications is proportional to n^-lotka_exponent
// for n in [1, max_pubs]. Citations are floor(LogNormal) with a per-field mean.
struct SynthConfig {
  std::int64_t n_researchers = 1000;
  std::int64_t n_fields = 5;
  std::int64_t n_units = 10;
  double lotka_exponent = 2.0;
  std::int64_t max_pubs = 500;
  // Share of researchers with no publication at all (outside Lotka's law).
  double inactive_share = 0.05;
  // Mean citations per field; empty means 3 * 1.5^field_index.
  std::vector<double> citation_means;
  double citation_sigma = 1.0;
  // Co-authors beyond the lead are geometric with this mean, capped by max_byline.
  // One external author may be appended past the cap to realize the mural branch.
  double mean_coauthors = 2.0;
  std::int64_t max_byline = 20;
  // Probability that a co-author is a corpus researcher rather than an external name.
  double internal_coauthor_share = 0.5;
  // Probability that a multi-author byline has first and last author at one institution.
  double intramural_probability = 0.5;
  // Share of researchers written without salary / active_years.
  double missing_salary_share = 0.0;
  double missing_years_share = 0.0;
  YearRange window{2010, 2014};
  std::uint64_t seed = 42;

  // Throws InvalidArgument.
  void validate() const;
  double citation_mean(std::int64_t field_index) const;
};

struct SynthCorpus {
  std::vector<PublicationRecord> publications;
  std::vector<ResearcherRecord> researchers;
  std::vector<std::int64_t> target_pubs;  // Lotka draw per researcher
};

inline constexpr const char* kCitationModel = "lognormal-floor";

// Deterministic for a fixed config (including seed).
SynthCorpus generate_records(const SynthConfig& config);

struct SynthOutput {
  std::filesystem::path publications;
  std::filesystem::path researchers;
  std::filesystem::path metadata;
};

// Writes publications.{csv,jsonl}, researchers.{csv,jsonl} and synth_meta.json
// into `dir`, creating it when needed.
SynthOutput generate(const SynthConfig& config, const std::filesystem::path& dir,
                     FileFormat format = FileFormat::Csv);

}  // namespace fss
