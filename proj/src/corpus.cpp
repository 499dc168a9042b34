#include "fss/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "fss/csv.hpp"
#include "fss/error.hpp"

namespace fss {
namespace {

using nlohmann::json;

std::int64_t parse_int(std::string_view text, const char* what) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw InvalidArgument(fmt::format("{} is not an integer: '{}'", what, text));
  }
  return value;
}

std::optional<double> parse_optional_real(std::string_view text, const char* what) {
  if (text.empty()) return std::nullopt;
  double value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument(fmt::format("{} is not a number: '{}'", what, text));
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// Maps header names to column indices and checks that the required ones exist.
std::vector<std::size_t> resolve_columns(const csv::Row& header, const std::string& source,
                                         std::initializer_list<const char*> names) {
  std::vector<std::size_t> idx;
  for (const char* name : names) {
    auto it = std::find(header.fields.begin(), header.fields.end(), name);
    if (it == header.fields.end()) {
      throw MalformedRow(source, header.line, fmt::format("missing column '{}'", name));
    }
    idx.push_back(static_cast<std::size_t>(it - header.fields.begin()));
  }
  return idx;
}

// Sorts the byline by position and checks positions are exactly 1..n.
void normalize_byline(PublicationRecord& p) {
  std::stable_sort(p.byline.begin(), p.byline.end(),
                   [](const AuthorSlot& a, const AuthorSlot& b) { return a.position < b.position; });
  for (std::size_t k = 0; k < p.byline.size(); ++k) {
    if (p.byline[k].position != static_cast<int>(k + 1)) {
      throw InvalidArgument(fmt::format("byline positions of {} are not 1..{}", p.pub_id, p.byline.size()));
    }
  }
}

void check_researcher(const ResearcherRecord& r) {
  if (r.researcher_id.empty()) throw InvalidArgument("empty researcher_id");
  if (r.salary && !(*r.salary > 0)) throw InvalidArgument("salary must be > 0");
  if (r.active_years && !(*r.active_years > 0)) throw InvalidArgument("active_years must be > 0");
}

PublicationRecord publication_from_json(const json& j) {
  PublicationRecord p;
  p.pub_id = j.at("pub_id").get<std::string>();
  p.year = j.at("year").get<int>();
  p.field_id = j.at("field_id").get<std::string>();
  p.citations = j.at("citations").get<std::int64_t>();
  for (const auto& slot : j.at("byline")) {
    AuthorSlot a;
    a.position = slot.at("position").get<int>();
    if (auto it = slot.find("researcher_id"); it != slot.end() && !it->is_null()) {
      a.researcher_id = it->get<std::string>();
    }
    a.institution_id = slot.value("institution_id", std::string{});
    p.byline.push_back(std::move(a));
  }
  if (p.citations < 0) throw InvalidArgument("citations must be >= 0");
  normalize_byline(p);
  return p;
}

ResearcherRecord researcher_from_json(const json& j) {
  ResearcherRecord r;
  r.researcher_id = j.at("researcher_id").get<std::string>();
  r.unit_id = j.value("unit_id", std::string{});
  if (auto it = j.find("field_id"); it != j.end() && !it->is_null()) r.field_id = it->get<std::string>();
  if (auto it = j.find("salary"); it != j.end() && !it->is_null()) r.salary = it->get<double>();
  if (auto it = j.find("active_years"); it != j.end() && !it->is_null()) {
    r.active_years = it->get<double>();
  }
  check_researcher(r);
  return r;
}

template <typename Record, typename FromJson>
std::vector<Record> read_json_lines(const std::filesystem::path& path, FromJson from_json) {
  auto in = open_input(path);
  std::vector<Record> out;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw MalformedRow(path.string(), line_no, e.what());
    } catch (const InvalidArgument& e) {
      throw MalformedRow(path.string(), line_no, e.what());
    }
  }
  return out;
}

std::string format_real(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }

}  // namespace

YearRange YearRange::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("window must be Y1:Y2, got '" + text + "'");
  YearRange w;
  w.first = static_cast<int>(parse_int(std::string_view(text).substr(0, colon), "window start"));
  w.last = static_cast<int>(parse_int(std::string_view(text).substr(colon + 1), "window end"));
  if (w.first > w.last) throw InvalidArgument("window start after end: '" + text + "'");
  return w;
}

std::string YearRange::to_string() const { return fmt::format("{}:{}", first, last); }

std::string format_byline(const std::vector<AuthorSlot>& byline) {
  std::string out;
  for (const auto& slot : byline) {
    if (!out.empty()) out.push_back(';');
    out += fmt::format("{}:{}:{}", slot.position, slot.researcher_id, slot.institution_id);
  }
  return out;
}

std::vector<AuthorSlot> parse_byline(const std::string& text) {
  std::vector<AuthorSlot> byline;
  if (text.empty()) return byline;
  std::size_t start = 0;
  for (;;) {
    const auto end = text.find(';', start);
    const std::string_view triple =
        std::string_view(text).substr(start, end == std::string::npos ? std::string::npos : end - start);
    const auto c1 = triple.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : triple.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw InvalidArgument(fmt::format("byline entry '{}' is not position:researcher:institution", triple));
    }
    AuthorSlot slot;
    slot.position = static_cast<int>(parse_int(triple.substr(0, c1), "byline position"));
    slot.researcher_id = std::string(triple.substr(c1 + 1, c2 - c1 - 1));
    slot.institution_id = std::string(triple.substr(c2 + 1));
    byline.push_back(std::move(slot));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return byline;
}

FileFormat detect_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return FileFormat::JsonLines;
  return FileFormat::Csv;
}

std::vector<PublicationRecord> read_publications(const std::filesystem::path& path) {
  if (detect_format(path) == FileFormat::JsonLines) {
    return read_json_lines<PublicationRecord>(path, publication_from_json);
  }
  auto in = open_input(path);
  csv::Reader reader(in, path.string());
  auto header = reader.next();
  if (!header) throw MalformedRow(path.string(), 1, "missing header row");
  const auto col = resolve_columns(*header, path.string(),
                                   {"pub_id", "year", "field_id", "citations", "byline"});
  std::vector<PublicationRecord> out;
  while (auto row = reader.next()) {
    if (row->fields.size() != header->fields.size()) {
      throw MalformedRow(path.string(), row->line,
                         fmt::format("expected {} columns, found {}", header->fields.size(),
                                     row->fields.size()));
    }
    try {
      PublicationRecord p;
      p.pub_id = row->fields[col[0]];
      p.year = static_cast<int>(parse_int(row->fields[col[1]], "year"));
      p.field_id = row->fields[col[2]];
      p.citations = parse_int(row->fields[col[3]], "citations");
      p.byline = parse_byline(row->fields[col[4]]);
      if (p.citations < 0) throw InvalidArgument("citations must be >= 0");
      normalize_byline(p);
      out.push_back(std::move(p));
    } catch (const InvalidArgument& e) {
      throw MalformedRow(path.string(), row->line, e.what());
    }
  }
  return out;
}

std::vector<ResearcherRecord> read_researchers(const std::filesystem::path& path) {
  if (detect_format(path) == FileFormat::JsonLines) {
    return read_json_lines<ResearcherRecord>(path, researcher_from_json);
  }
  std::vector<ResearcherRecord> out;
  {
    auto in = open_input(path);
    csv::Reader reader(in, path.string());
    auto header = reader.next();
    if (!header) throw MalformedRow(path.string(), 1, "missing header row");
    const auto col = resolve_columns(*header, path.string(),
                                     {"researcher_id", "unit_id", "field_id", "salary", "active_years"});
    while (auto row = reader.next()) {
      if (row->fields.size() != header->fields.size()) {
        throw MalformedRow(path.string(), row->line,
                           fmt::format("expected {} columns, found {}", header->fields.size(),
                                       row->fields.size()));
      }
      try {
        ResearcherRecord r;
        r.researcher_id = row->fields[col[0]];
        r.unit_id = row->fields[col[1]];
        r.field_id = row->fields[col[2]];
        r.salary = parse_optional_real(row->fields[col[3]], "salary");
        r.active_years = parse_optional_real(row->fields[col[4]], "active_years");
        check_researcher(r);
        out.push_back(std::move(r));
      } catch (const InvalidArgument& e) {
        throw MalformedRow(path.string(), row->line, e.what());
      }
    }
  }
  return out;
}

Corpus Corpus::from_records(std::vector<PublicationRecord> publications,
                            std::vector<ResearcherRecord> researchers, YearRange window) {
  Corpus c;
  c.window_ = window;

  for (std::size_t i = 0; i < researchers.size(); ++i) {
    check_researcher(researchers[i]);
    if (!c.researcher_index_.emplace(researchers[i].researcher_id, i).second) {
      throw DuplicateId(researchers[i].researcher_id);
    }
    if (!researchers[i].salary) ++c.stats_.defaulted_salary;
    if (!researchers[i].active_years) ++c.stats_.defaulted_years;
  }

  std::unordered_set<std::string> pub_ids;
  for (auto& p : publications) {
    if (!pub_ids.insert(p.pub_id).second) throw DuplicateId(p.pub_id);
    if (p.byline.empty()) throw EmptyByline(p.pub_id);
    if (p.citations < 0) throw InvalidArgument("negative citations on " + p.pub_id);
    if (!window.contains(p.year)) throw YearOutOfWindow(p.pub_id, p.year);
    normalize_byline(p);
  }

  c.publications_ = std::move(publications);
  c.researchers_ = std::move(researchers);
  c.authorships_.resize(c.researchers_.size());

  for (auto& p : c.publications_) {
    std::unordered_set<std::string> seen;
    for (auto& slot : p.byline) {
      auto it = slot.researcher_id.empty() ? c.researcher_index_.end()
                                           : c.researcher_index_.find(slot.researcher_id);
      slot.matched = it != c.researcher_index_.end();
      if (!slot.matched) {
        ++c.stats_.unmatched_slots;
        continue;
      }
      if (!seen.insert(slot.researcher_id).second) {
        throw InvalidArgument(fmt::format("researcher {} appears twice on {}", slot.researcher_id, p.pub_id));
      }
      ++c.stats_.matched_slots;
      c.authorships_[it->second].push_back({&p, slot.position});
    }
  }

  for (auto& list : c.authorships_) {
    std::sort(list.begin(), list.end(), [](const Authorship& a, const Authorship& b) {
      if (a.publication->year != b.publication->year) return a.publication->year < b.publication->year;
      return a.publication->pub_id < b.publication->pub_id;
    });
  }
  return c;
}

const ResearcherRecord* Corpus::find_researcher(const std::string& researcher_id) const {
  auto it = researcher_index_.find(researcher_id);
  return it == researcher_index_.end() ? nullptr : &researchers_[it->second];
}

const ResearcherRecord& Corpus::researcher(const std::string& researcher_id) const {
  const auto* r = find_researcher(researcher_id);
  if (!r) throw UnknownResearcher(researcher_id);
  return *r;
}

const std::vector<Authorship>& Corpus::researcher_publications(const std::string& researcher_id) const {
  auto it = researcher_index_.find(researcher_id);
  if (it == researcher_index_.end()) throw UnknownResearcher(researcher_id);
  return authorships_[it->second];
}

Corpus load_corpus(const std::filesystem::path& pub_path, const std::filesystem::path& res_path,
                   YearRange window) {
  auto researchers = read_researchers(res_path);
  auto publications = read_publications(pub_path);
  return Corpus::from_records(std::move(publications), std::move(researchers), window);
}

void write_publications(const std::filesystem::path& path,
                        const std::vector<PublicationRecord>& publications, FileFormat format) {
  auto out = open_output(path);
  if (format == FileFormat::JsonLines) {
    for (const auto& p : publications) {
      json byline = json::array();
      for (const auto& s : p.byline) {
        byline.push_back({{"position", s.position},
                          {"researcher_id", s.researcher_id.empty() ? json(nullptr) : json(s.researcher_id)},
                          {"institution_id", s.institution_id}});
      }
      json j = {{"pub_id", p.pub_id},
                {"year", p.year},
                {"field_id", p.field_id},
                {"citations", p.citations},
                {"byline", std::move(byline)}};
      out << j.dump() << '\n';
    }
  } else {
    out << "pub_id,year,field_id,citations,byline\n";
    for (const auto& p : publications) {
      out << csv::join({p.pub_id, std::to_string(p.year), p.field_id, std::to_string(p.citations),
                        format_byline(p.byline)})
          << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_researchers(const std::filesystem::path& path,
                       const std::vector<ResearcherRecord>& researchers, FileFormat format) {
  auto out = open_output(path);
  if (format == FileFormat::JsonLines) {
    for (const auto& r : researchers) {
      json j = {{"researcher_id", r.researcher_id},
                {"unit_id", r.unit_id},
                {"field_id", r.field_id},
                {"salary", r.salary ? json(*r.salary) : json(nullptr)},
                {"active_years", r.active_years ? json(*r.active_years) : json(nullptr)}};
      out << j.dump() << '\n';
    }
  } else {
    out << "researcher_id,unit_id,field_id,salary,active_years\n";
    for (const auto& r : researchers) {
      out << csv::join({r.researcher_id, r.unit_id, r.field_id, format_real(r.salary),
                        format_real(r.active_years)})
          << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace fss
