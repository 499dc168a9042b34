#include "fss/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "fss/baselines.hpp"
#include "fss/corpus.hpp"
#include "fss/error.hpp"
#include "fss/indicators.hpp"
#include "fss/paradox.hpp"
#include "fss/ranking.hpp"
#include "fss/report.hpp"
#include "fss/run_config.hpp"
#include "fss/synth.hpp"

namespace fss {
namespace {

// Missing or conflicting flags: reported with the subcommand usage.
class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct Flags {
  std::string pubs;
  std::string res;
  std::string window;
  std::string config;
  std::vector<std::string> policies;
  double top_share = 0.10;
  std::string format = "csv";
  std::string out;
  std::string baselines;
  int jobs = 0;
  std::uint64_t seed = 42;
  std::string scores;
  std::int64_t researchers = 0;
  std::int64_t fields = 0;
  std::int64_t units = 0;
  double exponent = 0.0;
};

RunConfig build_config(const CLI::App& app, const CLI::App& sub, const Flags& f) {
  auto given = [&](const char* name) {
    for (const CLI::App* a : {&app, &sub}) {
      if (const auto* o = a->get_option_no_throw(name); o && o->count() > 0) return true;
    }
    return false;
  };
  RunConfig c;
  if (!f.config.empty()) apply_config_file(c, f.config);
  if (!f.pubs.empty()) c.pubs = f.pubs;
  if (!f.res.empty()) c.res = f.res;
  if (!f.scores.empty()) c.scores = f.scores;
  if (!f.window.empty()) c.window = YearRange::parse(f.window);
  for (const auto& p : f.policies) apply_policy_flag(c, p);
  if (given("--top-share")) c.top_share = f.top_share;
  if (given("--format")) c.format = parse_output_format(f.format);
  if (!f.out.empty()) c.out_dir = f.out;
  if (!f.baselines.empty()) c.baselines = f.baselines;
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--seed")) c.synth.seed = f.seed;
  if (given("--researchers")) c.synth.n_researchers = f.researchers;
  if (given("--fields")) c.synth.n_fields = f.fields;
  if (given("--units")) c.synth.n_units = f.units;
  if (given("--exponent")) c.synth.lotka_exponent = f.exponent;
  if (c.window) c.synth.window = *c.window;
  c.validate();
  return c;
}

Corpus load_inputs(const RunConfig& c) {
  if (c.pubs.empty() || c.res.empty()) throw UsageError("--pubs and --res are required");
  if (c.window) return load_corpus(c.pubs, c.res, *c.window);
  // No window given: span the publication years.
  auto pubs = read_publications(c.pubs);
  auto researchers = read_researchers(c.res);
  YearRange w{0, 0};
  if (!pubs.empty()) {
    const auto [lo, hi] = std::minmax_element(pubs.begin(), pubs.end(),
                                              [](const auto& a, const auto& b) { return a.year < b.year; });
    w = {lo->year, hi->year};
  }
  return Corpus::from_records(std::move(pubs), std::move(researchers), w);
}

RunMetadata metadata_for(const RunConfig& c, const Corpus* corpus) {
  RunMetadata m;
  m.config_hash = c.hash();
  m.top_share = c.top_share;
  if (corpus) {
    m.inputs_hash = fnv1a_hex(file_digest(c.pubs) + file_digest(c.res));
    m.window = corpus->window().to_string();
    m.researchers = static_cast<std::int64_t>(corpus->researchers().size());
    m.salary_defaulted = corpus->stats().defaulted_salary;
    m.years_defaulted = corpus->stats().defaulted_years;
  } else if (!c.scores.empty()) {
    m.inputs_hash = file_digest(c.scores);
    m.window = c.window ? c.window->to_string() : "";
  }
  return m;
}

BaselineMap baselines_for(const RunConfig& c, const Corpus& corpus) {
  auto baselines = compute_baselines(corpus, c.jobs);
  if (!c.baselines.empty()) baselines = merge_baselines(std::move(baselines), read_baselines(c.baselines));
  return baselines;
}

const char* extension(OutputFormat f) { return f == OutputFormat::Json ? ".json" : ".csv"; }

// Writes to <out_dir>/<stem><ext>, or to `fallback` when no --out was given.
void emit(const RunConfig& c, std::ostream& fallback, std::ostream& log, const std::string& stem,
          const std::function<void(std::ostream&)>& write) {
  if (c.out_dir.empty()) {
    write(fallback);
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  if (ec) throw IoError("cannot create " + c.out_dir.string() + ": " + ec.message());
  const auto path = c.out_dir / (stem + extension(c.format));
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  write(file);
  if (!file) throw IoError("write failed: " + path.string());
  log << "wrote " << path.string() << '\n';
}

void cmd_ingest(const RunConfig& c, std::ostream& out) {
  const auto corpus = load_inputs(c);
  const auto& st = corpus.stats();
  nlohmann::ordered_json j = {{"publications", corpus.publications().size()},
                              {"researchers", corpus.researchers().size()},
                              {"window", corpus.window().to_string()},
                              {"matched_slots", st.matched_slots},
                              {"unmatched_slots", st.unmatched_slots},
                              {"salary_defaulted", st.defaulted_salary},
                              {"years_defaulted", st.defaulted_years}};
  if (c.format == OutputFormat::Json) {
    out << j.dump(2) << '\n';
  } else {
    for (const auto& [k, v] : j.items()) out << k << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
}

void cmd_baseline(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const auto corpus = load_inputs(c);
  const auto baselines = baselines_for(c, corpus);
  const auto meta = metadata_for(c, &corpus);
  emit(c, out, log, "baselines", [&](std::ostream& o) { write_baseline_report(o, c.format, meta, baselines); });
}

void cmd_score(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const auto corpus = load_inputs(c);
  const auto baselines = baselines_for(c, corpus);
  const auto thresholds = hca_thresholds(baselines, c.top_share);
  const auto scores = score_researchers(corpus, baselines, c.policies, c.jobs);
  const auto indicators = contrast_indicators(corpus, baselines, thresholds, c.jobs);
  const auto meta = metadata_for(c, &corpus);
  emit(c, out, log, "scores", [&](std::ostream& o) { write_scores(o, c.format, meta, scores, indicators); });
}

void cmd_indicators(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const auto corpus = load_inputs(c);
  const auto baselines = baselines_for(c, corpus);
  const auto thresholds = hca_thresholds(baselines, c.top_share);
  const auto indicators = contrast_indicators(corpus, baselines, thresholds, c.jobs);
  const auto meta = metadata_for(c, &corpus);
  emit(c, out, log, "indicators", [&](std::ostream& o) { write_indicators(o, c.format, meta, indicators); });
}

void cmd_rank(const RunConfig& c, std::ostream& out, std::ostream& log) {
  std::vector<ResearcherScore> scores;
  RunMetadata meta;
  if (!c.scores.empty()) {
    scores = read_scores(c.scores);
    meta = metadata_for(c, nullptr);
    meta.researchers = static_cast<std::int64_t>(scores.size());
  } else {
    if (c.pubs.empty() || c.res.empty()) {
      throw UsageError("rank needs --scores FILE, or --pubs and --res to score first");
    }
    const auto corpus = load_inputs(c);
    const auto baselines = baselines_for(c, corpus);
    scores = score_researchers(corpus, baselines, c.policies, c.jobs);
    meta = metadata_for(c, &corpus);
  }
  if (scores.empty()) throw InvalidArgument("no researchers to rank");

  const auto lists = rank_fields(scores, c.jobs);
  const auto units = rank_units(score_units(scores, productive_field_means(scores)));
  emit(c, out, log, "ranking", [&](std::ostream& o) { write_field_ranking(o, c.format, meta, lists); });
  if (c.out_dir.empty()) out << '\n';
  emit(c, out, log, "units", [&](std::ostream& o) { write_unit_ranking(o, c.format, meta, units); });
}

void cmd_synth(const RunConfig& c, std::ostream& log) {
  if (c.out_dir.empty()) throw UsageError("synth needs --out DIR");
  const auto written =
      generate(c.synth, c.out_dir, c.format == OutputFormat::Json ? FileFormat::JsonLines : FileFormat::Csv);
  log << "wrote " << written.publications.string() << '\n'
      << "wrote " << written.researchers.string() << '\n'
      << "wrote " << written.metadata.string() << '\n';
}

void cmd_paradox(const RunConfig& c, std::ostream& out) {
  const auto r = paradox_demo();
  if (c.format != OutputFormat::Json) {
    out << format_paradox(r);
    return;
  }
  nlohmann::ordered_json j = {
      {"A", {{"pubs", r.pubs_a}, {"mncs", r.mncs_a}, {"total_normalized_impact", r.impact_a}, {"fss", r.fss_a},
             {"fss_u", r.fss_u_a}, {"hca_count", r.hca_count_a}, {"hca_pubs", r.hca_pubs_a}, {"hca_share", r.hca_share_a}}},
      {"B", {{"pubs", r.pubs_b}, {"mncs", r.mncs_b}, {"total_normalized_impact", r.impact_b}, {"fss", r.fss_b},
             {"fss_u", r.fss_u_b}, {"hca_count", r.hca_count_b}, {"hca_pubs", r.hca_pubs_b}, {"hca_share", r.hca_share_b}}},
      {"ratios", {{"mncs", r.mncs_ratio}, {"hca_share", r.hca_ratio}, {"total_normalized_impact", r.impact_ratio},
                  {"fss", r.fss_ratio}, {"fss_u", r.fss_u_ratio}}}};
  out << j.dump(2) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Research productivity (FSS) and contrast bibliometric indicators", "fss"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;

  app.add_option("--pubs", f.pubs, "Publications file (.csv or .jsonl)");
  app.add_option("--res", f.res, "Researchers file (.csv or .jsonl)");
  app.add_option("--window", f.window, "Observation window Y1:Y2");
  app.add_option("--config", f.config, "JSON config file");
  app.add_option("--policy", f.policies, "Byline policy per field, FIELD=equal|first-last")->take_all();
  app.add_option("--top-share", f.top_share, "Highly-cited share in (0,1)");
  app.add_option("--format", f.format, "Output format csv|json");
  app.add_option("--out", f.out, "Output directory");
  app.add_option("--baselines", f.baselines, "External baseline CSV to import");
  app.add_option("--jobs", f.jobs, "Worker threads (0 = all cores)");
  app.add_option("--seed", f.seed, "Synthetic corpus seed");

  auto* ingest = app.add_subcommand("ingest", "Validate inputs and report corpus statistics");
  auto* baseline = app.add_subcommand("baseline", "Emit per (field, year) citation baselines");
  auto* score = app.add_subcommand("score", "Emit researcher FSS and contrast indicators");
  auto* rank = app.add_subcommand("rank", "Emit field rankings and unit rankings");
  rank->add_option("--scores", f.scores, "Scores CSV from `score` (instead of --pubs/--res)");
  auto* indicators = app.add_subcommand("indicators", "Emit h-index, MNCS and HCA columns");
  auto* synth = app.add_subcommand("synth", "Write a synthetic Lotka-distributed corpus");
  synth->add_option("--researchers", f.researchers, "Number of researchers");
  synth->add_option("--fields", f.fields, "Number of fields");
  synth->add_option("--units", f.units, "Number of units");
  synth->add_option("--exponent", f.exponent, "Lotka exponent (> 1)");
  auto* paradox = app.add_subcommand("paradox-demo", "Show how size-independent indicators reward producing less");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const auto config = build_config(app, *sub, f);
    if (sub == ingest) cmd_ingest(config, out);
    else if (sub == baseline) cmd_baseline(config, out, err);
    else if (sub == score) cmd_score(config, out, err);
    else if (sub == rank) cmd_rank(config, out, err);
    else if (sub == indicators) cmd_indicators(config, out, err);
    else if (sub == synth) cmd_synth(config, err);
    else if (sub == paradox) cmd_paradox(config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace fss
