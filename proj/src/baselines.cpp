#include "fss/baselines.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "fss/csv.hpp"
#include "fss/error.hpp"
#include "fss/parallel.hpp"

namespace fss {
namespace {

// Publications grouped by cell, in a deterministic cell order.
std::vector<std::pair<CellKey, std::vector<std::int64_t>>> group_cells(const Corpus& corpus) {
  std::map<CellKey, std::vector<std::int64_t>> cells;
  for (const auto& p : corpus.publications()) {
    cells[CellKey{p.field_id, p.year}].push_back(p.citations);
  }
  return {std::make_move_iterator(cells.begin()), std::make_move_iterator(cells.end())};
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw InvalidArgument(fmt::format("{} is not a number: '{}'", what, text));
  }
  return value;
}

}  // namespace

FieldBaseline make_baseline(std::string field_id, int year, std::vector<std::int64_t> citations) {
  FieldBaseline b;
  b.field_id = std::move(field_id);
  b.year = year;
  std::sort(citations.begin(), citations.end());
  b.total_count = static_cast<std::int64_t>(citations.size());
  std::int64_t cited_sum = 0;
  for (auto c : citations) {
    if (c > 0) {
      ++b.cited_count;
      cited_sum += c;
    }
  }
  if (b.cited_count > 0) {
    b.c_bar = static_cast<double>(cited_sum) / static_cast<double>(b.cited_count);
  }
  b.citation_values = std::move(citations);
  return b;
}

BaselineMap compute_baselines_serial(const Corpus& corpus) {
  BaselineMap out;
  for (auto& [key, values] : group_cells(corpus)) {
    out.emplace(key, make_baseline(key.field_id, key.year, std::move(values)));
  }
  return out;
}

BaselineMap compute_baselines(const Corpus& corpus, int jobs) {
  auto cells = group_cells(corpus);
  std::vector<FieldBaseline> reduced(cells.size());
  const auto n = static_cast<std::int64_t>(cells.size());
  const int threads = resolve_jobs(jobs);

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& [key, values] = cells[static_cast<std::size_t>(i)];
    reduced[static_cast<std::size_t>(i)] = make_baseline(key.field_id, key.year, std::move(values));
  }

  BaselineMap out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.emplace(std::move(cells[i].first), std::move(reduced[i]));
  }
  return out;
}

double normalized_citation(const PublicationRecord& pub, const BaselineMap& baselines) {
  if (pub.citations == 0) return 0.0;
  auto it = baselines.find(CellKey{pub.field_id, pub.year});
  if (it == baselines.end() || !it->second.c_bar) throw MissingBaseline(pub.field_id, pub.year);
  return static_cast<double>(pub.citations) / *it->second.c_bar;
}

std::int64_t hca_threshold(const FieldBaseline& baseline, double top_share) {
  if (!(top_share > 0.0 && top_share < 1.0)) {
    throw InvalidArgument(fmt::format("top_share must lie in (0,1), got {}", top_share));
  }
  if (baseline.total_count < 1) throw InvalidArgument("hca_threshold on an empty cell");
  if (!baseline.has_distribution()) {
    throw InvalidArgument(fmt::format("baseline ({}, {}) carries no citation distribution",
                                      baseline.field_id, baseline.year));
  }
  const auto& values = baseline.citation_values;
  const double total = static_cast<double>(values.size());
  // Absorbs representation error in top_share * total (e.g. 0.29 * 100).
  const double allowed = top_share * total + 1e-9;

  // count(>= v) is constant for v in (d_{j-1}, d_j]; walk distinct values upward
  // and stop at the first whose tail fits within the allowed count.
  std::int64_t previous = values.front() - 1;
  for (std::size_t i = 0; i < values.size();) {
    const std::int64_t value = values[i];
    const double tail = total - static_cast<double>(i);
    if (tail <= allowed) return previous + 1;
    previous = value;
    while (i < values.size() && values[i] == value) ++i;
  }
  return values.back() + 1;
}

HcaRealization realized_hca(const FieldBaseline& baseline, double top_share) {
  HcaRealization r;
  r.threshold = hca_threshold(baseline, top_share);
  for (auto c : baseline.citation_values) {
    if (is_hca(c, r.threshold)) ++r.count;
  }
  r.share = static_cast<double>(r.count) / static_cast<double>(baseline.total_count);
  return r;
}

ThresholdMap hca_thresholds(const BaselineMap& baselines, double top_share) {
  ThresholdMap out;
  for (const auto& [key, b] : baselines) {
    if (b.has_distribution()) out.emplace(key, hca_threshold(b, top_share));
  }
  return out;
}

std::string classify_researcher(const Corpus& corpus, const std::string& researcher_id) {
  const auto& r = corpus.researcher(researcher_id);
  if (!r.field_id.empty()) return r.field_id;
  const auto& pubs = corpus.researcher_publications(researcher_id);
  if (pubs.empty()) throw Unclassifiable(researcher_id);

  struct Tally {
    int count = 0;
    int latest_year = 0;
  };
  std::map<std::string, Tally> tally;
  for (const auto& a : pubs) {
    auto& t = tally[a.publication->field_id];
    if (t.count == 0 || a.publication->year > t.latest_year) t.latest_year = a.publication->year;
    ++t.count;
  }
  // std::map iterates in ascending field_id order, so strict comparisons keep
  // the lexicographically smallest field on a full tie.
  const std::string* best = nullptr;
  Tally best_tally;
  for (const auto& [field, t] : tally) {
    if (!best || t.count > best_tally.count ||
        (t.count == best_tally.count && t.latest_year > best_tally.latest_year)) {
      best = &field;
      best_tally = t;
    }
  }
  return *best;
}

void write_baselines(std::ostream& out, const BaselineMap& baselines) {
  out << "field_id,year,c_bar,cited_count,total_count,citation_values\n";
  for (const auto& [key, b] : baselines) {
    std::string values;
    for (std::size_t i = 0; i < b.citation_values.size(); ++i) {
      if (i) values.push_back(' ');
      values += std::to_string(b.citation_values[i]);
    }
    out << csv::join({b.field_id, std::to_string(b.year), b.c_bar ? fmt::format("{}", *b.c_bar) : "",
                      std::to_string(b.cited_count), std::to_string(b.total_count), values})
        << '\n';
  }
}

void write_baselines(const std::filesystem::path& path, const BaselineMap& baselines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  write_baselines(out, baselines);
  if (!out) throw IoError("write failed: " + path.string());
}

BaselineMap read_baselines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  csv::Reader reader(in, path.string(), /*skip_comments=*/true);
  auto header = reader.next();
  if (!header) throw MalformedRow(path.string(), 1, "missing header row");
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header->fields.size(); ++i) col[header->fields[i]] = i;
  for (const char* name : {"field_id", "year", "c_bar", "cited_count", "total_count"}) {
    if (!col.contains(name)) throw MalformedRow(path.string(), header->line, fmt::format("missing column '{}'", name));
  }
  const bool has_values = col.contains("citation_values");

  BaselineMap out;
  while (auto row = reader.next()) {
    if (row->fields.size() != header->fields.size()) {
      throw MalformedRow(path.string(), row->line, "column count differs from header");
    }
    try {
      FieldBaseline b;
      b.field_id = row->fields[col["field_id"]];
      b.year = parse_number<int>(row->fields[col["year"]], "year");
      const auto& c_bar = row->fields[col["c_bar"]];
      if (!c_bar.empty()) b.c_bar = parse_number<double>(c_bar, "c_bar");
      b.cited_count = parse_number<std::int64_t>(row->fields[col["cited_count"]], "cited_count");
      b.total_count = parse_number<std::int64_t>(row->fields[col["total_count"]], "total_count");
      if (has_values) {
        std::istringstream values(row->fields[col["citation_values"]]);
        std::string token;
        while (values >> token) b.citation_values.push_back(parse_number<std::int64_t>(token, "citation value"));
        std::sort(b.citation_values.begin(), b.citation_values.end());
      }
      if (b.cited_count > b.total_count || b.cited_count < 0) throw InvalidArgument("cited_count out of range");
      if (b.cited_count > 0 && !(b.c_bar && *b.c_bar > 0)) throw InvalidArgument("c_bar must be > 0 for cited cells");
      if (!b.citation_values.empty() && static_cast<std::int64_t>(b.citation_values.size()) != b.total_count) {
        throw InvalidArgument("citation_values length differs from total_count");
      }
      CellKey key{b.field_id, b.year};
      if (!out.emplace(key, std::move(b)).second) {
        throw InvalidArgument(fmt::format("duplicate cell ({}, {})", key.field_id, key.year));
      }
    } catch (const InvalidArgument& e) {
      throw MalformedRow(path.string(), row->line, e.what());
    }
  }
  return out;
}

BaselineMap merge_baselines(BaselineMap base, const BaselineMap& overrides) {
  for (const auto& [key, b] : overrides) base.insert_or_assign(key, b);
  return base;
}

}  // namespace fss
