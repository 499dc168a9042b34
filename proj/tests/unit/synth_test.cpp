#include "fss/synth.hpp"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "fss/credit.hpp"
#include "fss/error.hpp"
#include "support/fixtures.hpp"

namespace fss {
namespace {

SynthConfig small() {
  SynthConfig c;
  c.n_researchers = 300;
  c.max_pubs = 60;
  return c;
}

TEST(Synth, SameSeedSameRecords) {
  const auto a = generate_records(small());
  const auto b = generate_records(small());
  EXPECT_EQ(a.publications, b.publications);
  EXPECT_EQ(a.researchers, b.researchers);
  auto other = small();
  other.seed = 43;
  EXPECT_NE(generate_records(other).publications, a.publications);
}

TEST(Synth, SameSeedSameFiles) {
  testing::TempDir d1;
  testing::TempDir d2;
  const auto a = generate(small(), d1.path());
  const auto b = generate(small(), d2.path());
  EXPECT_EQ(testing::read_file(a.publications), testing::read_file(b.publications));
  EXPECT_EQ(testing::read_file(a.researchers), testing::read_file(b.researchers));
  EXPECT_EQ(testing::read_file(a.metadata), testing::read_file(b.metadata));
}

TEST(Synth, OutputLoadsAndMatchesTargets) {
  testing::TempDir dir;
  const auto cfg = small();
  const auto records = generate_records(cfg);
  const auto files = generate(cfg, dir.path());
  auto corpus = load_corpus(files.publications, files.researchers, cfg.window);
  ASSERT_EQ(corpus.researchers().size(), static_cast<std::size_t>(cfg.n_researchers));
  for (std::size_t i = 0; i < records.researchers.size(); ++i) {
    const auto& id = records.researchers[i].researcher_id;
    EXPECT_EQ(static_cast<std::int64_t>(corpus.researcher_publications(id).size()), records.target_pubs[i]) << id;
  }
}

TEST(Synth, JsonLinesOutputLoads) {
  testing::TempDir dir;
  const auto files = generate(small(), dir.path(), FileFormat::JsonLines);
  EXPECT_EQ(files.publications.extension(), ".jsonl");
  EXPECT_NO_THROW(load_corpus(files.publications, files.researchers, small().window));
}

TEST(Synth, DegenerateShapes) {
  auto c = small();
  c.n_fields = 1;
  c.n_units = 1;
  const auto r = generate_records(c);
  std::set<std::string> fields;
  std::set<std::string> units;
  for (const auto& x : r.researchers) {
    fields.insert(x.field_id);
    units.insert(x.unit_id);
  }
  EXPECT_EQ(fields.size(), 1u);
  EXPECT_EQ(units.size(), 1u);
}

TEST(Synth, BothMuralBranchesAppear) {
  const auto r = generate_records(small());
  std::int64_t intra = 0;
  std::int64_t extra = 0;
  for (const auto& p : r.publications) {
    if (p.byline.size() < 2) continue;
    (is_intramural(p.byline) ? intra : extra) += 1;
  }
  EXPECT_GT(intra, 0);
  EXPECT_GT(extra, 0);
}

TEST(Synth, CitationMeansGrowByField) {
  SynthConfig c;
  EXPECT_DOUBLE_EQ(c.citation_mean(0), 3.0);
  EXPECT_DOUBLE_EQ(c.citation_mean(2), 3.0 * 1.5 * 1.5);
  c.citation_means = {7.0};
  EXPECT_DOUBLE_EQ(c.citation_mean(0), 7.0);
}

TEST(Synth, MissingAttributesShare) {
  auto c = small();
  c.missing_salary_share = 1.0;
  c.missing_years_share = 1.0;
  for (const auto& r : generate_records(c).researchers) {
    EXPECT_FALSE(r.salary.has_value());
    EXPECT_FALSE(r.active_years.has_value());
  }
}

TEST(Synth, InvalidConfigRejected) {
  auto c = small();
  c.n_researchers = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small();
  c.lotka_exponent = 0.5;
  EXPECT_THROW(generate_records(c), InvalidArgument);
  c = small();
  c.inactive_share = 1.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

}  // namespace
}  // namespace fss
