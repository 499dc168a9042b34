#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fss::csv {

// One parsed record and the physical line it started on (1-based).
struct Row {
  std::int64_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// newlines. Blank lines are skipped; lines starting with '#' are skipped when
// skip_comments is set (used for report files that carry a metadata header).
class Reader {
 public:
  Reader(std::istream& in, std::string source, bool skip_comments = false);

  std::optional<Row> next();
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  bool skip_comments_;
  std::int64_t line_ = 0;
};

// Quotes a field only when it needs quoting.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace fss::csv
