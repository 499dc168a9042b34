#include "fss/ranking.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "fss/error.hpp"
#include "fss/parallel.hpp"

namespace fss {

RankedList rank_field(std::span<const ResearcherScore> scores) {
  if (scores.empty()) throw InvalidArgument("rank_field on an empty field");
  RankedList list;
  list.field_id = scores.front().field_id;

  double productive_sum = 0.0;
  std::int64_t productive = 0;
  for (const auto& s : scores) {
    if (s.fss > 0.0) {
      productive_sum += s.fss;
      ++productive;
    }
  }
  if (productive > 0) list.productive_mean = productive_sum / static_cast<double>(productive);

  list.entries.reserve(scores.size());
  for (const auto& s : scores) {
    RankedEntry e;
    e.researcher_id = s.researcher_id;
    e.fss = s.fss;
    if (list.productive_mean) e.ratio_to_avg = s.fss / *list.productive_mean;
    list.entries.push_back(std::move(e));
  }
  std::sort(list.entries.begin(), list.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.fss != b.fss) return a.fss > b.fss;
    return a.researcher_id < b.researcher_id;
  });

  const std::size_t n = list.entries.size();
  if (n == 1) {
    list.entries.front().percentile = 100.0;
    return list;
  }
  // Entries are descending, so the peers strictly below a tie group are the
  // entries after it.
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo;
    while (hi < n && list.entries[hi].fss == list.entries[lo].fss) ++hi;
    const double below = static_cast<double>(n - hi);
    const double tied = static_cast<double>(hi - lo - 1);
    const double pct = 100.0 * (below + 0.5 * tied) / static_cast<double>(n - 1);
    for (std::size_t k = lo; k < hi; ++k) list.entries[k].percentile = pct;
    lo = hi;
  }
  return list;
}

namespace {

std::vector<std::vector<ResearcherScore>> split_by_field(std::span<const ResearcherScore> scores) {
  std::map<std::string, std::vector<ResearcherScore>> fields;
  for (const auto& s : scores) {
    if (!s.field_id.empty()) fields[s.field_id].push_back(s);
  }
  std::vector<std::vector<ResearcherScore>> out;
  out.reserve(fields.size());
  for (auto& [field, members] : fields) out.push_back(std::move(members));
  return out;
}

}  // namespace

std::vector<RankedList> rank_fields_serial(std::span<const ResearcherScore> scores) {
  std::vector<RankedList> out;
  for (const auto& members : split_by_field(scores)) out.push_back(rank_field(members));
  return out;
}

std::vector<RankedList> rank_fields(std::span<const ResearcherScore> scores, int jobs) {
  const auto groups = split_by_field(scores);
  std::vector<RankedList> out(groups.size());
  parallel_for(static_cast<std::int64_t>(groups.size()), jobs, [&](std::int64_t i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = rank_field(groups[k]);
  });
  return out;
}

void annotate_scores(std::vector<ResearcherScore>& scores, std::span<const RankedList> lists) {
  std::unordered_map<std::string, const RankedEntry*> lookup;
  for (const auto& list : lists) {
    for (const auto& e : list.entries) lookup.emplace(e.researcher_id, &e);
  }
  for (auto& s : scores) {
    auto it = lookup.find(s.researcher_id);
    if (it == lookup.end()) continue;
    s.percentile = it->second->percentile;
    s.ratio_to_avg = it->second->ratio_to_avg;
  }
}

std::vector<UnitRankEntry> rank_units(std::span<const UnitScore> unit_scores) {
  if (unit_scores.empty()) throw InvalidArgument("rank_units on an empty unit list");
  std::vector<UnitRankEntry> out;
  out.reserve(unit_scores.size());
  for (const auto& u : unit_scores) out.push_back({0, u});
  std::sort(out.begin(), out.end(), [](const UnitRankEntry& a, const UnitRankEntry& b) {
    if (a.unit.fss_u != b.unit.fss_u) return a.unit.fss_u > b.unit.fss_u;
    return a.unit.unit_id < b.unit.unit_id;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<std::int64_t>(i + 1);
  return out;
}

}  // namespace fss
