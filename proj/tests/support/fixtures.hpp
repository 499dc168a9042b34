#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fss/corpus.hpp"

namespace fss::testing {

// Solo-or-coauthored publication; authors are (researcher_id, institution_id).
inline PublicationRecord pub(std::string id, int year, std::string field, std::int64_t citations,
                             std::vector<std::pair<std::string, std::string>> authors) {
  PublicationRecord p{std::move(id), year, std::move(field), citations, {}};
  int pos = 1;
  for (auto& [rid, inst] : authors) p.byline.push_back(AuthorSlot{pos++, std::move(rid), std::move(inst)});
  return p;
}

inline ResearcherRecord researcher(std::string id, std::string unit, std::string field,
                                   std::optional<double> salary = 1.0, std::optional<double> years = 1.0) {
  return ResearcherRecord{std::move(id), std::move(unit), std::move(field), salary, years};
}

// Bylines of n slots; institutions drawn from `institutions`.
inline std::vector<AuthorSlot> byline(std::size_t n, const std::vector<std::string>& institutions) {
  std::vector<AuthorSlot> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(AuthorSlot{static_cast<int>(i + 1), "", institutions[i % institutions.size()]});
  }
  return out;
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("fss_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fss::testing
