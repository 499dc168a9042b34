#include "fss/paradox.hpp"

#include <numeric>

#include <fmt/format.h>

#include "fss/baselines.hpp"
#include "fss/indicators.hpp"

namespace fss {
namespace {

constexpr int kYear = 2015;
constexpr const char* kField = "PHY/01";
constexpr std::int64_t kStaff = 10;
constexpr double kTopShare = 0.10;

// National reference cell: citations 1..19, so the mean over cited
// publications is 10 and the top-10% threshold is 19.
FieldBaseline reference_cell() {
  std::vector<std::int64_t> values(19);
  std::iota(values.begin(), values.end(), 1);
  return make_baseline(kField, kYear, std::move(values));
}

struct University {
  std::string unit_id;
  std::string prefix;
  std::vector<std::int64_t> citations;  // one solo publication each
};

// Publications are dealt round-robin to the staff of each university.
Corpus build_corpus(const std::vector<University>& universities) {
  std::vector<ResearcherRecord> researchers;
  std::vector<PublicationRecord> publications;
  for (const auto& u : universities) {
    for (std::int64_t k = 0; k < kStaff; ++k) {
      researchers.push_back({fmt::format("{}{:02}", u.prefix, k + 1), u.unit_id, kField, 1.0, 1.0});
    }
    for (std::size_t i = 0; i < u.citations.size(); ++i) {
      const auto author = fmt::format("{}{:02}", u.prefix, static_cast<std::int64_t>(i) % kStaff + 1);
      publications.push_back({fmt::format("{}-P{:03}", u.prefix, i + 1), kYear, kField, u.citations[i],
                              {AuthorSlot{1, author, u.unit_id}}});
    }
  }
  return Corpus::from_records(std::move(publications), std::move(researchers), YearRange{kYear, kYear});
}

std::vector<const PublicationRecord*> unit_publications(const Corpus& corpus, const std::string& prefix) {
  std::vector<const PublicationRecord*> out;
  for (const auto& p : corpus.publications()) {
    if (p.pub_id.starts_with(prefix + "-")) out.push_back(&p);
  }
  return out;
}

std::vector<std::int64_t> repeat(std::int64_t value, std::int64_t n) {
  return std::vector<std::int64_t>(static_cast<std::size_t>(n), value);
}

std::vector<std::int64_t> concat(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ParadoxReport paradox_demo() {
  ParadoxReport r;
  r.staff_per_university = kStaff;

  const auto reference = reference_cell();
  BaselineMap national;
  national.emplace(CellKey{kField, kYear}, reference);

  // Impact scenario.
  const auto impact = build_corpus({
      {"UNI-A", "A", repeat(10, 100)},
      {"UNI-B", "B", concat(repeat(10, 100), repeat(5, 100))},
  });
  const auto baselines = merge_baselines(compute_baselines(impact, 1), national);
  const auto pubs_a = unit_publications(impact, "A");
  const auto pubs_b = unit_publications(impact, "B");
  r.pubs_a = static_cast<std::int64_t>(pubs_a.size());
  r.pubs_b = static_cast<std::int64_t>(pubs_b.size());
  r.mncs_a = mncs(pubs_a, baselines);
  r.mncs_b = mncs(pubs_b, baselines);
  r.impact_a = total_normalized_impact(pubs_a, baselines);
  r.impact_b = total_normalized_impact(pubs_b, baselines);

  const auto scores = score_researchers_serial(impact, baselines, PolicyTable{});
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (const auto& s : scores) (s.unit_id == "UNI-A" ? sum_a : sum_b) += s.fss;
  r.fss_a = sum_a / static_cast<double>(kStaff);
  r.fss_b = sum_b / static_cast<double>(kStaff);
  const auto units = score_units(scores, productive_field_means(scores));
  for (const auto& u : units) (u.unit_id == "UNI-A" ? r.fss_u_a : r.fss_u_b) = u.fss_u;

  // HCA scenario: 25 citations clears the threshold of 19, 10 does not.
  const auto hca = build_corpus({
      {"UNI-A", "HA", concat(repeat(25, 10), repeat(10, 90))},
      {"UNI-B", "HB", concat(repeat(25, 15), repeat(10, 185))},
  });
  const auto thresholds = hca_thresholds(national, kTopShare);
  const auto hca_a = unit_publications(hca, "HA");
  const auto hca_b = unit_publications(hca, "HB");
  r.hca_pubs_a = static_cast<std::int64_t>(hca_a.size());
  r.hca_pubs_b = static_cast<std::int64_t>(hca_b.size());
  const auto share_a = hca_share(hca_a, thresholds);
  const auto share_b = hca_share(hca_b, thresholds);
  r.hca_count_a = share_a.count;
  r.hca_count_b = share_b.count;
  r.hca_share_a = share_a.share;
  r.hca_share_b = share_b.share;

  r.mncs_ratio = r.mncs_b / r.mncs_a;
  r.hca_ratio = static_cast<double>(r.hca_count_b * r.hca_pubs_a) /
                static_cast<double>(r.hca_count_a * r.hca_pubs_b);
  r.impact_ratio = r.impact_b / r.impact_a;
  r.fss_ratio = r.fss_b / r.fss_a;
  r.fss_u_ratio = r.fss_u_b / r.fss_u_a;
  return r;
}

std::string format_paradox(const ParadoxReport& r) {
  std::string out;
  out += fmt::format("Two universities, {} staff each, equal salary and observation time\n",
                     r.staff_per_university);
  out += fmt::format("A: {} articles x 10 citations; B: 100 x 10 + 100 x 5 (field mean 10)\n", r.pubs_a);
  out += fmt::format("HCA scenario: A {} HCAs of {}; B {} HCAs of {}\n\n", r.hca_count_a, r.hca_pubs_a,
                     r.hca_count_b, r.hca_pubs_b);
  out += fmt::format("{:<28}{:>12}{:>12}{:>10}  {}\n", "indicator", "A", "B", "B/A", "verdict");
  auto row = [&](const char* name, double a, double b, double ratio) {
    out += fmt::format("{:<28}{:>12.4f}{:>12.4f}{:>10.2f}  {}\n", name, a, b, ratio,
                       ratio < 1.0 ? "B ranks lower" : "B ranks higher");
  };
  row("MNCS", r.mncs_a, r.mncs_b, r.mncs_ratio);
  row("HCA share", r.hca_share_a, r.hca_share_b, r.hca_ratio);
  row("total normalized impact", r.impact_a, r.impact_b, r.impact_ratio);
  row("FSS (mean researcher)", r.fss_a, r.fss_b, r.fss_ratio);
  row("FSS_U (standardized)", r.fss_u_a, r.fss_u_b, r.fss_u_ratio);
  out += "\nMNCS and HCA share fall although B produces more with the same inputs;\n"
         "FSS rises with output.\n";
  return out;
}

}  // namespace fss
