#include "fss/report.hpp"

#include <charconv>
#include <fstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "fss/csv.hpp"
#include "fss/error.hpp"

namespace fss {
namespace {

using nlohmann::ordered_json;

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

ordered_json optional_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json metadata_json(const RunMetadata& meta) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : meta.entries()) j[k] = v;
  return j;
}

void write_json(std::ostream& out, const RunMetadata& meta, const char* key, ordered_json rows) {
  ordered_json doc = {{"metadata", metadata_json(meta)}, {key, std::move(rows)}};
  out << doc.dump(2) << '\n';
}

}  // namespace

std::string format_double(double value) { return fmt::format("{}", value); }

std::vector<std::pair<std::string, std::string>> RunMetadata::entries() const {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"format_version", std::to_string(kReportFormatVersion)},
          {"config_hash", config_hash},
          {"inputs_hash", inputs_hash},
          {"window", window},
          {"top_share", format_double(top_share)},
          {"researchers", std::to_string(researchers)},
          {"salary_defaulted", std::to_string(salary_defaulted)},
          {"years_defaulted", std::to_string(years_defaulted)},
          {"cost_normalization", salary_defaulted == researchers && researchers > 0 ? "inactive"
                                 : salary_defaulted > 0                               ? "partial"
                                                                                      : "active"}};
}

void write_metadata_comment(std::ostream& out, const RunMetadata& meta) {
  for (const auto& [k, v] : meta.entries()) out << "# " << k << '=' << v << '\n';
}

void write_scores(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                  std::span<const ResearcherScore> scores, std::span<const ContrastIndicators> indicators) {
  if (scores.size() != indicators.size()) throw InvalidArgument("scores and indicators differ in length");
  if (format == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const auto& s = scores[i];
      const auto& c = indicators[i];
      rows.push_back({{"researcher_id", s.researcher_id},
                      {"field_id", s.field_id},
                      {"fss", s.fss},
                      {"n_pubs", s.n_pubs},
                      {"h_index", c.h_index},
                      {"mncs", optional_json(c.mncs)},
                      {"hca_count", c.hca_count},
                      {"hca_share", optional_json(c.hca_share)},
                      {"total_normalized_impact", c.total_normalized_impact},
                      {"unit_id", s.unit_id},
                      {"salary_defaulted", s.salary_defaulted},
                      {"years_defaulted", s.years_defaulted}});
    }
    write_json(out, meta, "scores", std::move(rows));
    return;
  }
  write_metadata_comment(out, meta);
  out << "researcher_id,field_id,fss,n_pubs,h_index,mncs,hca_count,hca_share,total_normalized_impact,"
         "unit_id,salary_defaulted,years_defaulted\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& s = scores[i];
    const auto& c = indicators[i];
    out << csv::join({s.researcher_id, s.field_id, format_double(s.fss), std::to_string(s.n_pubs),
                      std::to_string(c.h_index), optional_cell(c.mncs), std::to_string(c.hca_count),
                      optional_cell(c.hca_share), format_double(c.total_normalized_impact), s.unit_id,
                      s.salary_defaulted ? "1" : "0", s.years_defaulted ? "1" : "0"})
        << '\n';
  }
}

void write_indicators(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                      std::span<const ContrastIndicators> indicators) {
  if (format == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (const auto& c : indicators) {
      rows.push_back({{"researcher_id", c.researcher_id},
                      {"n_pubs", c.n_pubs},
                      {"h_index", c.h_index},
                      {"mncs", optional_json(c.mncs)},
                      {"hca_count", c.hca_count},
                      {"hca_share", optional_json(c.hca_share)},
                      {"total_normalized_impact", c.total_normalized_impact}});
    }
    write_json(out, meta, "indicators", std::move(rows));
    return;
  }
  write_metadata_comment(out, meta);
  out << "researcher_id,n_pubs,h_index,mncs,hca_count,hca_share,total_normalized_impact\n";
  for (const auto& c : indicators) {
    out << csv::join({c.researcher_id, std::to_string(c.n_pubs), std::to_string(c.h_index), optional_cell(c.mncs),
                      std::to_string(c.hca_count), optional_cell(c.hca_share),
                      format_double(c.total_normalized_impact)})
        << '\n';
  }
}

void write_baseline_report(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                           const BaselineMap& baselines) {
  if (format == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (const auto& [key, b] : baselines) {
      rows.push_back({{"field_id", b.field_id},
                      {"year", b.year},
                      {"c_bar", optional_json(b.c_bar)},
                      {"cited_count", b.cited_count},
                      {"total_count", b.total_count},
                      {"citation_values", b.citation_values}});
    }
    write_json(out, meta, "baselines", std::move(rows));
    return;
  }
  write_metadata_comment(out, meta);
  write_baselines(out, baselines);
}

void write_field_ranking(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                         std::span<const RankedList> lists) {
  if (format == OutputFormat::Json) {
    ordered_json fields = ordered_json::array();
    for (const auto& list : lists) {
      ordered_json entries = ordered_json::array();
      for (std::size_t i = 0; i < list.entries.size(); ++i) {
        const auto& e = list.entries[i];
        entries.push_back({{"rank", i + 1},
                           {"researcher_id", e.researcher_id},
                           {"fss", e.fss},
                           {"percentile", e.percentile},
                           {"ratio_to_avg", optional_json(e.ratio_to_avg)}});
      }
      fields.push_back({{"field_id", list.field_id},
                        {"productive_mean", optional_json(list.productive_mean)},
                        {"entries", std::move(entries)}});
    }
    write_json(out, meta, "fields", std::move(fields));
    return;
  }
  write_metadata_comment(out, meta);
  out << "field_id,rank,researcher_id,fss,percentile,ratio_to_avg\n";
  for (const auto& list : lists) {
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      const auto& e = list.entries[i];
      out << csv::join({list.field_id, std::to_string(i + 1), e.researcher_id, format_double(e.fss),
                        format_double(e.percentile), optional_cell(e.ratio_to_avg)})
          << '\n';
    }
  }
}

void write_unit_ranking(std::ostream& out, OutputFormat format, const RunMetadata& meta,
                        std::span<const UnitRankEntry> units) {
  if (format == OutputFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : units) {
      ordered_json breakdown = ordered_json::array();
      for (const auto& [field, c] : r.unit.by_field) {
        breakdown.push_back({{"field_id", field}, {"staff", c.staff}, {"standardized_sum", c.standardized_sum}});
      }
      rows.push_back({{"rank", r.rank},
                      {"unit_id", r.unit.unit_id},
                      {"fss_u", r.unit.fss_u},
                      {"rs", r.unit.rs},
                      {"unstandardized_staff", r.unit.unstandardized_staff},
                      {"aggregation_inputs", r.unit.aggregation_inputs},
                      {"fields", std::move(breakdown)}});
    }
    write_json(out, meta, "units", std::move(rows));
    return;
  }
  write_metadata_comment(out, meta);
  out << "rank,unit_id,fss_u,rs,unstandardized_staff,field_breakdown\n";
  for (const auto& r : units) {
    std::string staff;
    for (const auto& id : r.unit.unstandardized_staff) {
      if (!staff.empty()) staff.push_back(';');
      staff += id;
    }
    std::string breakdown;
    for (const auto& [field, c] : r.unit.by_field) {
      if (!breakdown.empty()) breakdown.push_back(';');
      breakdown += fmt::format("{}:{}:{}", field, c.staff, format_double(c.standardized_sum));
    }
    out << csv::join({std::to_string(r.rank), r.unit.unit_id, format_double(r.unit.fss_u), std::to_string(r.unit.rs),
                      staff, breakdown})
        << '\n';
  }
}

std::vector<ResearcherScore> read_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  csv::Reader reader(in, path.string(), /*skip_comments=*/true);
  auto header = reader.next();
  if (!header) throw MalformedRow(path.string(), 1, "missing header row");
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header->fields.size(); ++i) col[header->fields[i]] = i;
  for (const char* name : {"researcher_id", "field_id", "fss", "n_pubs", "unit_id"}) {
    if (!col.contains(name)) {
      throw MalformedRow(path.string(), header->line, fmt::format("missing column '{}'", name));
    }
  }
  std::vector<ResearcherScore> out;
  while (auto row = reader.next()) {
    if (row->fields.size() != header->fields.size()) {
      throw MalformedRow(path.string(), row->line, "column count differs from header");
    }
    ResearcherScore s;
    s.researcher_id = row->fields[col["researcher_id"]];
    s.field_id = row->fields[col["field_id"]];
    s.unit_id = row->fields[col["unit_id"]];
    const auto& fss_text = row->fields[col["fss"]];
    auto [p1, e1] = std::from_chars(fss_text.data(), fss_text.data() + fss_text.size(), s.fss);
    const auto& n_text = row->fields[col["n_pubs"]];
    auto [p2, e2] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), s.n_pubs);
    if (e1 != std::errc{} || p1 != fss_text.data() + fss_text.size() || e2 != std::errc{} ||
        p2 != n_text.data() + n_text.size() || s.fss < 0.0) {
      throw MalformedRow(path.string(), row->line, "fss / n_pubs are not valid numbers");
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fss
