#include "fss/csv.hpp"

#include "fss/error.hpp"

namespace fss::csv {

Reader::Reader(std::istream& in, std::string source, bool skip_comments)
    : in_(in), source_(std::move(source)), skip_comments_(skip_comments) {}

std::optional<Row> Reader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (skip_comments_ && line.front() == '#') continue;
    if (line_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

    Row row;
    row.line = line_;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    for (;;) {
      if (i == line.size()) {
        if (!quoted) break;
        // Quoted field spans a physical newline.
        std::string more;
        if (!std::getline(in_, more)) {
          throw MalformedRow(source_, row.line, "unterminated quoted field");
        }
        ++line_;
        if (!more.empty() && more.back() == '\r') more.pop_back();
        field.push_back('\n');
        line = std::move(more);
        i = 0;
        continue;
      }
      const char c = line[i++];
      if (quoted) {
        if (c == '"') {
          if (i < line.size() && line[i] == '"') {
            field.push_back('"');
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
      } else {
        field.push_back(c);
      }
    }
    row.fields.push_back(std::move(field));
    return row;
  }
  return std::nullopt;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace fss::csv
