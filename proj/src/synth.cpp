#include "fss/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numbers>
#include <random>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "fss/error.hpp"

namespace fss {
namespace {

// Draws from the raw 64-bit engine output only, so a seed produces the same
// corpus under any standard library (std:: distributions are implementation
// defined).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // (0, 1]
  double uniform_open() { return 1.0 - uniform(); }

  std::int64_t below(std::int64_t n) {
    return std::min<std::int64_t>(static_cast<std::int64_t>(uniform() * static_cast<double>(n)), n - 1);
  }

  bool chance(double p) { return uniform() < p; }

  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  // Failures before the first success, mean `mean`.
  std::int64_t geometric(double mean) {
    if (mean <= 0.0) return 0;
    const double p = 1.0 / (1.0 + mean);
    return static_cast<std::int64_t>(std::floor(std::log(uniform_open()) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 engine_;
};

// Inverse-CDF table for P(n) proportional to n^-exponent on [1, max_n].
class LotkaTable {
 public:
  LotkaTable(double exponent, std::int64_t max_n) {
    cdf_.reserve(static_cast<std::size_t>(max_n));
    double acc = 0.0;
    for (std::int64_t n = 1; n <= max_n; ++n) {
      acc += std::pow(static_cast<double>(n), -exponent);
      cdf_.push_back(acc);
    }
    for (double& c : cdf_) c /= acc;
  }

  std::int64_t draw(Sampler& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
  }

 private:
  std::vector<double> cdf_;
};

std::string field_name(std::int64_t i) { return fmt::format("F{:02}", i + 1); }
std::string unit_name(std::int64_t i) { return fmt::format("U{:03}", i + 1); }

nlohmann::json config_json(const SynthConfig& c) {
  std::vector<double> means;
  for (std::int64_t f = 0; f < c.n_fields; ++f) means.push_back(c.citation_mean(f));
  return {{"n_researchers", c.n_researchers},
          {"n_fields", c.n_fields},
          {"n_units", c.n_units},
          {"lotka_exponent", c.lotka_exponent},
          {"max_pubs", c.max_pubs},
          {"inactive_share", c.inactive_share},
          {"citation_model", kCitationModel},
          {"citation_means", means},
          {"citation_sigma", c.citation_sigma},
          {"mean_coauthors", c.mean_coauthors},
          {"max_byline", c.max_byline},
          {"internal_coauthor_share", c.internal_coauthor_share},
          {"intramural_probability", c.intramural_probability},
          {"missing_salary_share", c.missing_salary_share},
          {"missing_years_share", c.missing_years_share},
          {"window", c.window.to_string()},
          {"seed", c.seed}};
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("synth config: " + what); };
  if (n_researchers < 1 || n_fields < 1 || n_units < 1) fail("counts must be >= 1");
  if (!(lotka_exponent > 1.0)) fail("lotka_exponent must be > 1");
  if (max_pubs < 1) fail("max_pubs must be >= 1");
  if (max_byline < 1) fail("max_byline must be >= 1");
  if (window.first > window.last) fail("window start after end");
  if (!(citation_sigma >= 0.0) || !(mean_coauthors >= 0.0)) fail("sigma and mean_coauthors must be >= 0");
  for (double p : {inactive_share, internal_coauthor_share, intramural_probability, missing_salary_share,
                   missing_years_share}) {
    if (!(p >= 0.0 && p <= 1.0)) fail("probabilities must lie in [0,1]");
  }
  if (!citation_means.empty() && static_cast<std::int64_t>(citation_means.size()) != n_fields) {
    fail("citation_means must list one mean per field");
  }
  for (double m : citation_means) {
    if (!(m > 0.0)) fail("citation means must be > 0");
  }
}

double SynthConfig::citation_mean(std::int64_t field_index) const {
  if (!citation_means.empty()) return citation_means[static_cast<std::size_t>(field_index)];
  return 3.0 * std::pow(1.5, static_cast<double>(field_index));
}

SynthCorpus generate_records(const SynthConfig& config) {
  config.validate();
  Sampler rng(config.seed);
  SynthCorpus out;
  const auto years = config.window.length();

  std::vector<std::int64_t> field_of(static_cast<std::size_t>(config.n_researchers));
  out.researchers.reserve(static_cast<std::size_t>(config.n_researchers));
  for (std::int64_t i = 0; i < config.n_researchers; ++i) {
    ResearcherRecord r;
    r.researcher_id = fmt::format("R{:06}", i + 1);
    r.unit_id = unit_name(rng.below(config.n_units));
    field_of[static_cast<std::size_t>(i)] = rng.below(config.n_fields);
    r.field_id = field_name(field_of[static_cast<std::size_t>(i)]);
    const double salary = std::round(30000.0 + 70000.0 * rng.uniform());
    if (!rng.chance(config.missing_salary_share)) r.salary = salary;
    const double active = rng.chance(0.8) ? static_cast<double>(years) : static_cast<double>(1 + rng.below(years));
    if (!rng.chance(config.missing_years_share)) r.active_years = active;
    out.researchers.push_back(std::move(r));
  }

  const LotkaTable lotka(config.lotka_exponent, config.max_pubs);
  out.target_pubs.resize(out.researchers.size());
  std::vector<std::int64_t> slots;
  for (std::size_t i = 0; i < out.researchers.size(); ++i) {
    const std::int64_t n = rng.chance(config.inactive_share) ? 0 : lotka.draw(rng);
    out.target_pubs[i] = n;
    slots.insert(slots.end(), static_cast<std::size_t>(n), static_cast<std::int64_t>(i));
  }
  for (std::size_t i = slots.size(); i > 1; --i) {
    std::swap(slots[i - 1], slots[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(i)))]);
  }

  // Every slot is consumed exactly once, as a lead or as an internal
  // co-author, so each researcher ends with exactly target_pubs publications.
  std::deque<std::int64_t> queue(slots.begin(), slots.end());
  auto external_institution = [&] { return fmt::format("EXT{:04}", rng.below(500)); };

  while (!queue.empty()) {
    const std::int64_t lead = queue.front();
    queue.pop_front();

    struct Member {
      std::int64_t researcher = -1;  // -1 for external authors
      std::string institution;
    };
    std::vector<Member> members{{lead, out.researchers[static_cast<std::size_t>(lead)].unit_id}};
    std::unordered_set<std::int64_t> on_byline{lead};

    const std::int64_t extra = std::min(rng.geometric(config.mean_coauthors), config.max_byline - 1);
    for (std::int64_t k = 0; k < extra; ++k) {
      if (rng.chance(config.internal_coauthor_share) && !queue.empty()) {
        const std::int64_t candidate = queue.front();
        queue.pop_front();
        if (on_byline.insert(candidate).second) {
          members.push_back({candidate, out.researchers[static_cast<std::size_t>(candidate)].unit_id});
          continue;
        }
        queue.push_back(candidate);
      }
      members.push_back({-1, external_institution()});
    }
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(i)))]);
    }
    if (members.size() >= 2) {
      const bool intramural = rng.chance(config.intramural_probability);
      const auto& first_inst = members.front().institution;
      const bool same = members.back().institution == first_inst;
      if (intramural && !same) {
        if (members.back().researcher < 0) {
          members.back().institution = first_inst;
        } else {
          members.push_back({-1, first_inst});
        }
      } else if (!intramural && same) {
        std::string other;
        do {
          other = external_institution();
        } while (other == first_inst);
        if (members.back().researcher < 0) {
          members.back().institution = other;
        } else {
          members.push_back({-1, other});
        }
      }
    }

    PublicationRecord p;
    p.pub_id = fmt::format("P{:07}", out.publications.size() + 1);
    p.year = config.window.first + static_cast<int>(rng.below(years));
    const auto field = field_of[static_cast<std::size_t>(lead)];
    p.field_id = field_name(field);
    const double sigma = config.citation_sigma;
    const double mu = std::log(config.citation_mean(field)) - 0.5 * sigma * sigma;
    p.citations = static_cast<std::int64_t>(std::floor(std::exp(mu + sigma * rng.normal())));
    for (std::size_t i = 0; i < members.size(); ++i) {
      AuthorSlot slot;
      slot.position = static_cast<int>(i + 1);
      slot.institution_id = members[i].institution;
      if (members[i].researcher >= 0) {
        slot.researcher_id = out.researchers[static_cast<std::size_t>(members[i].researcher)].researcher_id;
      }
      p.byline.push_back(std::move(slot));
    }
    out.publications.push_back(std::move(p));
  }
  return out;
}

SynthOutput generate(const SynthConfig& config, const std::filesystem::path& dir, FileFormat format) {
  const auto records = generate_records(config);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const char* ext = format == FileFormat::JsonLines ? ".jsonl" : ".csv";
  SynthOutput out{dir / (std::string("publications") + ext), dir / (std::string("researchers") + ext),
                  dir / "synth_meta.json"};
  write_publications(out.publications, records.publications, format);
  write_researchers(out.researchers, records.researchers, format);

  nlohmann::json meta = {{"config", config_json(config)},
                         {"publications", records.publications.size()},
                         {"researchers", records.researchers.size()}};
  std::ofstream m(out.metadata, std::ios::binary | std::ios::trunc);
  if (!m) throw IoError("cannot write " + out.metadata.string());
  m << meta.dump(2) << '\n';
  if (!m) throw IoError("write failed: " + out.metadata.string());
  return out;
}

}  // namespace fss
