#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fss {

// Inclusive calendar-year range.
struct YearRange {
  int first = 0;
  int last = 0;

  bool contains(int year) const { return year >= first && year <= last; }
  int length() const { return last - first + 1; }

  // Parses "Y1:Y2".
  static YearRange parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

// One byline position. researcher_id holds whatever the file carried; matched
// is set at load time when that id names a known researcher. Unmatched slots
// still count toward the byline length.
struct AuthorSlot {
  int position = 0;
  std::string researcher_id;
  std::string institution_id;
  bool matched = false;

  friend bool operator==(const AuthorSlot&, const AuthorSlot&) = default;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  std::string field_id;
  std::int64_t citations = 0;
  std::vector<AuthorSlot> byline;  // ordered by position, 1..n

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct ResearcherRecord {
  std::string researcher_id;
  std::string unit_id;
  std::string field_id;  // empty when the researcher has no explicit field
  std::optional<double> salary;
  std::optional<double> active_years;

  friend bool operator==(const ResearcherRecord&, const ResearcherRecord&) = default;
};

// A researcher's appearance on one publication.
struct Authorship {
  const PublicationRecord* publication = nullptr;
  int position = 0;
};

struct LoadStats {
  std::int64_t matched_slots = 0;
  std::int64_t unmatched_slots = 0;
  std::int64_t defaulted_salary = 0;
  std::int64_t defaulted_years = 0;
};

// Validated, immutable publication and researcher collections. Safe for
// concurrent reads once constructed.
class Corpus {
 public:
  // Validates the records and resolves byline slots against the researcher
  // list. Bylines are sorted by position before the 1..n check.
  static Corpus from_records(std::vector<PublicationRecord> publications,
                             std::vector<ResearcherRecord> researchers, YearRange window);

  Corpus(const Corpus&) = delete;
  Corpus& operator=(const Corpus&) = delete;
  Corpus(Corpus&&) noexcept = default;
  Corpus& operator=(Corpus&&) noexcept = default;

  const std::vector<PublicationRecord>& publications() const { return publications_; }
  const std::vector<ResearcherRecord>& researchers() const { return researchers_; }
  YearRange window() const { return window_; }
  const LoadStats& stats() const { return stats_; }

  const ResearcherRecord* find_researcher(const std::string& researcher_id) const;
  const ResearcherRecord& researcher(const std::string& researcher_id) const;

  // Publications authored by the researcher, ordered by (year, pub_id).
  // Throws UnknownResearcher.
  const std::vector<Authorship>& researcher_publications(const std::string& researcher_id) const;

  // Salary with the 1.0 default applied.
  double effective_salary(const ResearcherRecord& r) const { return r.salary.value_or(1.0); }
  // Active years with the window-length default applied.
  double effective_years(const ResearcherRecord& r) const {
    return r.active_years.value_or(static_cast<double>(window_.length()));
  }

 private:
  Corpus() = default;

  std::vector<PublicationRecord> publications_;
  std::vector<ResearcherRecord> researchers_;
  YearRange window_;
  LoadStats stats_;
  std::unordered_map<std::string, std::size_t> researcher_index_;
  std::vector<std::vector<Authorship>> authorships_;  // parallel to researchers_
};

enum class FileFormat { Csv, JsonLines };

// .jsonl / .ndjson / .json select JSON-lines, anything else CSV.
FileFormat detect_format(const std::filesystem::path& path);

std::vector<PublicationRecord> read_publications(const std::filesystem::path& path);
std::vector<ResearcherRecord> read_researchers(const std::filesystem::path& path);

Corpus load_corpus(const std::filesystem::path& pub_path, const std::filesystem::path& res_path,
                   YearRange window);

void write_publications(const std::filesystem::path& path,
                        const std::vector<PublicationRecord>& publications, FileFormat format);
void write_researchers(const std::filesystem::path& path,
                       const std::vector<ResearcherRecord>& researchers, FileFormat format);

// "position:researcher_id:institution_id;..." as used in the CSV byline column.
std::string format_byline(const std::vector<AuthorSlot>& byline);
std::vector<AuthorSlot> parse_byline(const std::string& text);

}  // namespace fss
