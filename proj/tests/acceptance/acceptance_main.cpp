// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Tolerances and trial counts are fixed here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fss/baselines.hpp"
#include "fss/cli.hpp"
#include "fss/credit.hpp"
#include "fss/indicators.hpp"
#include "fss/paradox.hpp"
#include "fss/ranking.hpp"
#include "fss/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace fss {
namespace {

constexpr double kParadoxSeconds = 1.0;
constexpr int kMonotonicityTrials = 10000;
constexpr double kMonotonicitySeconds = 10.0;
constexpr int kMncsTrials = 10000;
constexpr int kHIndexLists = 1000;
constexpr std::size_t kHIndexMaxLength = 500;
constexpr double kCreditTolerance = 1e-12;
constexpr std::int64_t kLargeCorpus = 10000;
constexpr std::uint64_t kSeed = 42;
constexpr double kRatioMeanTolerance = 1e-9;
constexpr double kUnitTolerance = 1e-12;
constexpr double kScaleTolerance = 1e-12;
constexpr double kLotkaTarget = 2.0;
constexpr double kLotkaTolerance = 0.3;
constexpr double kLotkaSeconds = 30.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome paradox() {
  const auto t0 = Clock::now();
  const auto r = paradox_demo();
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = r.mncs_ratio == 0.75 && r.hca_ratio == 0.75 && r.hca_count_a == 10 && r.hca_pubs_a == 100 &&
           r.hca_count_b == 15 && r.hca_pubs_b == 200 && r.impact_ratio == 1.5 && r.fss_ratio == 1.5 &&
           secs < kParadoxSeconds;
  o.detail = fmt::format("mncs {} hca {} ({}/{} vs {}/{}) impact {} fss {} in {:.3f}s", r.mncs_ratio, r.hca_ratio,
                         r.hca_count_a, r.hca_pubs_a, r.hca_count_b, r.hca_pubs_b, r.impact_ratio, r.fss_ratio,
                         secs);
  return o;
}

// Random solo or co-authored publication of researcher R in one of three
// fields, with a byline of up to 8 authors at two institutions.
PublicationRecord random_pub(std::mt19937_64& rng, const std::string& id) {
  static const char* fields[] = {"A", "B", "C"};
  PublicationRecord p;
  p.pub_id = id;
  p.year = 2010 + static_cast<int>(rng() % 3);
  p.field_id = fields[rng() % 3];
  p.citations = static_cast<std::int64_t>(rng() % 60);
  const int n = 1 + static_cast<int>(rng() % 8);
  const int me = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  for (int k = 1; k <= n; ++k) {
    p.byline.push_back(AuthorSlot{k, k == me ? "R" : "", rng() % 2 ? "I" : "J"});
  }
  return p;
}

Outcome monotonicity() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed);
  // Baselines are national reference values: fixed while the portfolio grows.
  BaselineMap baselines;
  for (const char* f : {"A", "B", "C"}) {
    for (int y = 2010; y <= 2012; ++y) {
      std::vector<std::int64_t> ref(50);
      for (auto& v : ref) v = static_cast<std::int64_t>(rng() % 80);
      ref[0] = 1 + static_cast<std::int64_t>(rng() % 80);
      baselines.emplace(CellKey{f, y}, make_baseline(f, y, ref));
    }
  }
  PolicyTable policies;
  policies.set("B", BylinePolicy{BylineKind::FirstLastEmphasis, {}});

  int violations = 0;
  for (int trial = 0; trial < kMonotonicityTrials; ++trial) {
    std::vector<PublicationRecord> pubs(rng() % 12);
    for (std::size_t i = 0; i < pubs.size(); ++i) pubs[i] = random_pub(rng, "P" + std::to_string(i));
    const double salary = 1.0 + static_cast<double>(rng() % 100000);
    const double years = 1.0 + static_cast<double>(rng() % 5);
    std::vector<ResearcherRecord> res{{"R", "U", "A", salary, years}};

    const auto before_corpus = Corpus::from_records(pubs, res, {2010, 2012});
    const double before = fss_researcher(before_corpus, baselines, policies, "R").fss;
    pubs.push_back(random_pub(rng, "NEW"));
    const auto after_corpus = Corpus::from_records(std::move(pubs), std::move(res), {2010, 2012});
    const double after = fss_researcher(after_corpus, baselines, policies, "R").fss;
    if (!(after >= before)) ++violations;
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < kMonotonicitySeconds,
          fmt::format("{} violations in {} trials, {:.2f}s", violations, kMonotonicityTrials, secs)};
}

Outcome mncs_dilution() {
  std::mt19937_64 rng(kSeed + 1);
  const std::int64_t c_bar_cites = 20;  // cell of a single cited value
  BaselineMap baselines{{CellKey{"F", 2012}, make_baseline("F", 2012, {c_bar_cites})}};
  int decreased = 0;
  for (int trial = 0; trial < kMncsTrials; ++trial) {
    std::vector<std::int64_t> cites(1 + rng() % 200);
    for (auto& c : cites) c = static_cast<std::int64_t>(rng() % 100);
    cites[0] = 1 + static_cast<std::int64_t>(rng() % 100);  // current MNCS > 0
    std::vector<PublicationRecord> records;
    for (std::size_t i = 0; i < cites.size(); ++i) {
      records.push_back(testing::pub("P" + std::to_string(i), 2012, "F", cites[i], {{"R", "I"}}));
    }
    records.reserve(records.size() + 1);
    std::vector<const PublicationRecord*> ptrs;
    for (const auto& r : records) ptrs.push_back(&r);
    const double current = mncs(ptrs, baselines);

    // Largest integer count whose normalized score is strictly below current.
    const auto ceiling = static_cast<std::int64_t>(std::ceil(current * static_cast<double>(c_bar_cites))) - 1;
    const std::int64_t c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ceiling + 1));
    records.push_back(testing::pub("NEW", 2012, "F", c, {{"R", "I"}}));
    ptrs.clear();
    for (const auto& r : records) ptrs.push_back(&r);
    if (normalized_citation(records.back(), baselines) < current && mncs(ptrs, baselines) < current) ++decreased;
  }
  return {decreased == kMncsTrials, fmt::format("{}/{} trials decreased", decreased, kMncsTrials)};
}

Outcome h_index_oracle() {
  std::mt19937_64 rng(kSeed + 2);
  int mismatches = 0;
  for (int i = 0; i < kHIndexLists; ++i) {
    std::vector<std::int64_t> counts(rng() % (kHIndexMaxLength + 1));
    const auto spread = 1 + rng() % 1000;
    for (auto& c : counts) c = static_cast<std::int64_t>(rng() % spread);
    if (h_index(counts) != oracle::h_index(counts)) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} mismatches over {} lists", mismatches, kHIndexLists)};
}

Outcome credit_sums() {
  const BylinePolicy policies[] = {{BylineKind::EqualSplit, {}}, {BylineKind::FirstLastEmphasis, {}}};
  double worst = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    for (bool intramural : {true, false}) {
      auto b = testing::byline(n, {"I", "J"});
      b.back().institution_id = intramural ? "I" : "X";
      for (const auto& p : policies) {
        const auto w = byline_weights(b, p);
        worst = std::max(worst, std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0));
      }
    }
  }
  auto close = [](const std::vector<double>& got, const std::vector<double>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (std::abs(got[i] - want[i]) > kCreditTolerance) return false;
    }
    return true;
  };
  const BylinePolicy emphasis{BylineKind::FirstLastEmphasis, {}};
  const bool five = close(byline_weights(testing::byline(5, {"I"}), emphasis),
                          {0.40, 0.20 / 3, 0.20 / 3, 0.20 / 3, 0.40});
  const bool six = close(byline_weights(testing::byline(6, {"I", "J", "K", "L", "M", "N"}), emphasis),
                         {0.30, 0.15, 0.05, 0.05, 0.15, 0.30});
  return {worst <= kCreditTolerance && five && six,
          fmt::format("max |sum-1| = {:.3g}, n=5 intramural {}, n=6 extramural {}", worst, five ? "ok" : "wrong",
                      six ? "ok" : "wrong")};
}

struct Scored {
  Corpus corpus;
  BaselineMap baselines;
  std::vector<ResearcherScore> scores;
};

Corpus corpus_from(SynthCorpus records, YearRange window) {
  return Corpus::from_records(std::move(records.publications), std::move(records.researchers), window);
}

Outcome ratio_means() {
  SynthConfig cfg;
  cfg.n_researchers = kLargeCorpus;
  cfg.seed = kSeed;
  const auto corpus = corpus_from(generate_records(cfg), cfg.window);
  const auto baselines = compute_baselines(corpus);
  auto scores = score_researchers(corpus, baselines, PolicyTable{});
  const auto lists = rank_fields(scores);

  double worst = 0.0;
  for (const auto& list : lists) {
    double sum = 0.0;
    std::int64_t productive = 0;
    for (const auto& e : list.entries) {
      if (e.fss > 0.0) {
        sum += *e.ratio_to_avg;
        ++productive;
      }
    }
    worst = std::max(worst, std::abs(sum / static_cast<double>(productive) - 1.0));
  }

  // Move the first productive researcher into a unit of their own.
  const auto means = productive_field_means(scores);
  std::size_t solo = 0;
  while (scores[solo].fss <= 0.0) ++solo;
  scores[solo].unit_id = "SOLO";
  const auto units = score_units(scores, means);
  double unit_error = 1.0;
  for (const auto& u : units) {
    if (u.unit_id == "SOLO") {
      unit_error = std::abs(u.fss_u - scores[solo].fss / means.at(scores[solo].field_id));
    }
  }
  return {worst <= kRatioMeanTolerance && unit_error <= kUnitTolerance && lists.size() == 5,
          fmt::format("{} fields, max |mean ratio - 1| = {:.3g}, single-member unit error {:.3g}", lists.size(),
                      worst, unit_error)};
}

Outcome rescaling() {
  SynthConfig cfg;
  cfg.n_researchers = 2000;
  cfg.seed = kSeed;
  const auto records = generate_records(cfg);
  const std::string field = "F02";
  const double k = 1.37;

  auto scaled_salary = records;
  for (auto& r : scaled_salary.researchers) {
    if (r.field_id == field) r.salary = *r.salary * k;
  }
  const auto base_corpus = corpus_from(records, cfg.window);
  const auto scaled_corpus = corpus_from(scaled_salary, cfg.window);
  const auto base_scores = score_researchers(base_corpus, compute_baselines(base_corpus), PolicyTable{});
  const auto scaled_scores = score_researchers(scaled_corpus, compute_baselines(scaled_corpus), PolicyTable{});
  auto field_list = [&](const std::vector<ResearcherScore>& s) {
    std::vector<ResearcherScore> in_field;
    for (const auto& x : s) {
      if (x.field_id == field) in_field.push_back(x);
    }
    return rank_field(in_field);
  };
  const auto a = field_list(base_scores);
  const auto b = field_list(scaled_scores);
  bool order_equal = a.entries.size() == b.entries.size();
  bool percentiles_equal = order_equal;
  double ratio_error = 0.0;
  for (std::size_t i = 0; order_equal && i < a.entries.size(); ++i) {
    order_equal = order_equal && a.entries[i].researcher_id == b.entries[i].researcher_id;
    percentiles_equal = percentiles_equal && a.entries[i].percentile == b.entries[i].percentile;
    if (a.entries[i].ratio_to_avg) {
      ratio_error = std::max(ratio_error, std::abs(*a.entries[i].ratio_to_avg - *b.entries[i].ratio_to_avg) /
                                              std::max(1.0, *a.entries[i].ratio_to_avg));
    }
  }

  // Citation rescaling in one cell.
  const CellKey cell{"F01", 2012};
  const std::int64_t factor = 7;
  auto scaled_cites = records;
  for (auto& p : scaled_cites.publications) {
    if (p.field_id == cell.field_id && p.year == cell.year) p.citations *= factor;
  }
  const auto cite_corpus = corpus_from(scaled_cites, cfg.window);
  const auto base_baselines = compute_baselines(base_corpus);
  const auto cite_baselines = compute_baselines(cite_corpus);
  double norm_error = 0.0;
  std::int64_t in_cell = 0;
  for (std::size_t i = 0; i < base_corpus.publications().size(); ++i) {
    const auto& p = base_corpus.publications()[i];
    if (p.field_id != cell.field_id || p.year != cell.year) continue;
    ++in_cell;
    norm_error = std::max(norm_error, std::abs(normalized_citation(p, base_baselines) -
                                               normalized_citation(cite_corpus.publications()[i], cite_baselines)));
  }
  return {order_equal && percentiles_equal && ratio_error <= kScaleTolerance && norm_error <= kScaleTolerance &&
              in_cell > 0,
          fmt::format("salary x{}: order {}, percentiles {}, ratio error {:.3g}; citations x{} over {} pubs: "
                      "error {:.3g}",
                      k, order_equal ? "equal" : "changed", percentiles_equal ? "equal" : "changed", ratio_error,
                      factor, in_cell, norm_error)};
}

Outcome lotka() {
  const auto t0 = Clock::now();
  SynthConfig cfg;
  cfg.n_researchers = kLargeCorpus;
  cfg.seed = kSeed;
  testing::TempDir d1;
  testing::TempDir d2;
  const auto a = generate(cfg, d1.path());
  const auto b = generate(cfg, d2.path());
  const bool identical = testing::read_file(a.publications) == testing::read_file(b.publications) &&
                         testing::read_file(a.researchers) == testing::read_file(b.researchers) &&
                         testing::read_file(a.metadata) == testing::read_file(b.metadata);

  const auto corpus = load_corpus(a.publications, a.researchers, cfg.window);
  std::vector<std::int64_t> counts;
  for (const auto& r : corpus.researchers()) {
    counts.push_back(static_cast<std::int64_t>(corpus.researcher_publications(r.researcher_id).size()));
  }
  const double exponent = -oracle::lotka_slope(counts);
  const double secs = seconds_since(t0);
  return {identical && std::abs(exponent - kLotkaTarget) <= kLotkaTolerance && secs < kLotkaSeconds,
          fmt::format("fitted exponent {:.3f}, files {}, {:.2f}s", exponent, identical ? "identical" : "differ",
                      secs)};
}

std::vector<std::string> pipeline(const std::filesystem::path& dir) {
  const auto data = (dir / "data").string();
  const auto out = (dir / "out").string();
  const std::string pubs = data + "/publications.csv";
  const std::string res = data + "/researchers.csv";
  const std::vector<std::vector<std::string>> steps{
      {"synth", "--researchers", "2000", "--seed", std::to_string(kSeed), "--out", data},
      {"ingest", "--pubs", pubs, "--res", res, "--window", "2010:2014"},
      {"baseline", "--pubs", pubs, "--res", res, "--window", "2010:2014", "--out", out},
      {"score", "--pubs", pubs, "--res", res, "--window", "2010:2014", "--policy", "F01=first-last", "--out", out},
      {"rank", "--scores", out + "/scores.csv", "--out", out}};
  std::vector<std::string> produced;
  for (const auto& args : steps) {
    std::ostringstream o;
    std::ostringstream e;
    if (run_cli(args, o, e) != kExitOk) return {"step " + args[0] + " failed: " + e.str()};
    if (args[0] == "ingest") produced.push_back(o.str());
  }
  for (const char* name : {"baselines.csv", "scores.csv", "ranking.csv", "units.csv"}) {
    produced.push_back(testing::read_file(dir / "out" / name));
  }
  return produced;
}

Outcome reproducible_pipeline() {
  testing::TempDir d1;
  testing::TempDir d2;
  const auto a = pipeline(d1.path());
  const auto b = pipeline(d2.path());
  const bool ok = a.size() == 5 && a == b;
  return {ok, ok ? "ingest summary and 4 report files identical" : (a.size() == 5 ? "reports differ" : a.front())};
}

}  // namespace
}  // namespace fss

int main() {
  using fss::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"paradox ratios", fss::paradox},
      {"FSS monotone under appended publications", fss::monotonicity},
      {"MNCS falls when a below-average publication is added", fss::mncs_dilution},
      {"h-index agrees with brute force", fss::h_index_oracle},
      {"byline credit sums to one", fss::credit_sums},
      {"productive ratio means and single-member units", fss::ratio_means},
      {"salary and citation rescaling invariance", fss::rescaling},
      {"Lotka exponent and synthetic determinism", fss::lotka},
      {"pipeline reproducibility", fss::reproducible_pipeline},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
