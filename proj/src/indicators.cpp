#include "fss/indicators.hpp"

#include <algorithm>
#include <functional>

#include "fss/error.hpp"
#include "fss/parallel.hpp"

namespace fss {

std::vector<const PublicationRecord*> publications_of(const Corpus& corpus, const std::string& researcher_id) {
  const auto& authorships = corpus.researcher_publications(researcher_id);
  std::vector<const PublicationRecord*> out;
  out.reserve(authorships.size());
  for (const auto& a : authorships) out.push_back(a.publication);
  return out;
}

ResearcherScore fss_researcher(const Corpus& corpus, const BaselineMap& baselines,
                               const PolicyTable& policies, const std::string& researcher_id) {
  const auto& record = corpus.researcher(researcher_id);
  const auto& authorships = corpus.researcher_publications(researcher_id);

  ResearcherScore s;
  s.researcher_id = record.researcher_id;
  s.unit_id = record.unit_id;
  s.n_pubs = static_cast<std::int64_t>(authorships.size());
  s.salary_defaulted = !record.salary.has_value();
  s.years_defaulted = !record.active_years.has_value();
  try {
    s.field_id = classify_researcher(corpus, researcher_id);
  } catch (const Unclassifiable&) {
    s.field_id.clear();
  }

  double weighted = 0.0;
  for (const auto& a : authorships) {
    const auto& pub = *a.publication;
    const double impact = normalized_citation(pub, baselines);
    if (impact == 0.0) continue;
    weighted += impact * fractional_contribution(pub.byline, a.position, policies.for_field(pub.field_id));
  }
  s.fss = weighted / (corpus.effective_salary(record) * corpus.effective_years(record));
  return s;
}

std::vector<ResearcherScore> score_researchers_serial(const Corpus& corpus, const BaselineMap& baselines,
                                                      const PolicyTable& policies) {
  std::vector<ResearcherScore> out;
  out.reserve(corpus.researchers().size());
  for (const auto& r : corpus.researchers()) {
    out.push_back(fss_researcher(corpus, baselines, policies, r.researcher_id));
  }
  return out;
}

std::vector<ResearcherScore> score_researchers(const Corpus& corpus, const BaselineMap& baselines,
                                               const PolicyTable& policies, int jobs) {
  const auto& researchers = corpus.researchers();
  std::vector<ResearcherScore> out(researchers.size());
  parallel_for(static_cast<std::int64_t>(researchers.size()), jobs, [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = fss_researcher(corpus, baselines, policies, researchers[k].researcher_id);
  });
  return out;
}

FieldMeans productive_field_means(std::span<const ResearcherScore> scores) {
  std::map<std::string, std::pair<double, std::int64_t>> acc;
  for (const auto& s : scores) {
    if (s.fss > 0.0 && !s.field_id.empty()) {
      auto& [sum, count] = acc[s.field_id];
      sum += s.fss;
      ++count;
    }
  }
  FieldMeans out;
  for (const auto& [field, sc] : acc) out.emplace(field, sc.first / static_cast<double>(sc.second));
  return out;
}

UnitScore fss_unit(const std::string& unit_id, std::span<const ResearcherScore> staff,
                   const FieldMeans& field_means) {
  if (staff.empty()) throw InvalidArgument("empty roster for unit '" + unit_id + "'");
  UnitScore u;
  u.unit_id = unit_id;
  u.rs = static_cast<std::int64_t>(staff.size());
  u.aggregation_inputs = {"fss", "field_mean"};

  double total = 0.0;
  for (const auto& s : staff) {
    auto mean = field_means.find(s.field_id);
    auto& contribution = u.by_field[s.field_id];
    ++contribution.staff;
    if (s.field_id.empty() || mean == field_means.end()) {
      u.unstandardized_staff.push_back(s.researcher_id);
      continue;
    }
    const double standardized = s.fss / mean->second;
    contribution.standardized_sum += standardized;
    total += standardized;
  }
  u.fss_u = total / static_cast<double>(u.rs);
  return u;
}

std::vector<UnitScore> score_units(std::span<const ResearcherScore> scores, const FieldMeans& field_means) {
  std::map<std::string, std::vector<ResearcherScore>> rosters;
  for (const auto& s : scores) rosters[s.unit_id].push_back(s);
  std::vector<UnitScore> out;
  out.reserve(rosters.size());
  for (const auto& [unit, staff] : rosters) out.push_back(fss_unit(unit, staff, field_means));
  return out;
}

std::int64_t h_index(std::span<const std::int64_t> citation_counts) {
  std::vector<std::int64_t> sorted(citation_counts.begin(), citation_counts.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::int64_t h = 0;
  while (h < static_cast<std::int64_t>(sorted.size()) && sorted[static_cast<std::size_t>(h)] >= h + 1) ++h;
  return h;
}

double total_normalized_impact(PublicationList pubs, const BaselineMap& baselines) {
  double total = 0.0;
  for (const auto* p : pubs) total += normalized_citation(*p, baselines);
  return total;
}

double mncs(PublicationList pubs, const BaselineMap& baselines) {
  if (pubs.empty()) throw EmptyPortfolio();
  return total_normalized_impact(pubs, baselines) / static_cast<double>(pubs.size());
}

HcaShare hca_share(PublicationList pubs, const ThresholdMap& thresholds) {
  if (pubs.empty()) throw EmptyPortfolio();
  HcaShare out;
  for (const auto* p : pubs) {
    auto it = thresholds.find(CellKey{p->field_id, p->year});
    if (it == thresholds.end()) throw MissingBaseline(p->field_id, p->year);
    if (is_hca(p->citations, it->second)) ++out.count;
  }
  out.share = static_cast<double>(out.count) / static_cast<double>(pubs.size());
  return out;
}

HcaShare hca_share(PublicationList pubs, const BaselineMap& baselines, double top_share) {
  return hca_share(pubs, hca_thresholds(baselines, top_share));
}

namespace {

ContrastIndicators researcher_contrast(const Corpus& corpus, const BaselineMap& baselines,
                                       const ThresholdMap& thresholds, const std::string& researcher_id) {
  const auto pubs = publications_of(corpus, researcher_id);
  ContrastIndicators c;
  c.researcher_id = researcher_id;
  c.n_pubs = static_cast<std::int64_t>(pubs.size());
  std::vector<std::int64_t> counts;
  counts.reserve(pubs.size());
  for (const auto* p : pubs) counts.push_back(p->citations);
  c.h_index = h_index(counts);
  c.total_normalized_impact = total_normalized_impact(pubs, baselines);
  if (!pubs.empty()) {
    c.mncs = c.total_normalized_impact / static_cast<double>(pubs.size());
    const auto hca = hca_share(pubs, thresholds);
    c.hca_count = hca.count;
    c.hca_share = hca.share;
  }
  return c;
}

}  // namespace

std::vector<ContrastIndicators> contrast_indicators_serial(const Corpus& corpus, const BaselineMap& baselines,
                                                           const ThresholdMap& thresholds) {
  std::vector<ContrastIndicators> out;
  out.reserve(corpus.researchers().size());
  for (const auto& r : corpus.researchers()) {
    out.push_back(researcher_contrast(corpus, baselines, thresholds, r.researcher_id));
  }
  return out;
}

std::vector<ContrastIndicators> contrast_indicators(const Corpus& corpus, const BaselineMap& baselines,
                                                    const ThresholdMap& thresholds, int jobs) {
  const auto& researchers = corpus.researchers();
  std::vector<ContrastIndicators> out(researchers.size());
  parallel_for(static_cast<std::int64_t>(researchers.size()), jobs, [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = researcher_contrast(corpus, baselines, thresholds, researchers[k].researcher_id);
  });
  return out;
}

}  // namespace fss
