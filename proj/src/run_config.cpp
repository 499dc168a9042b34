#include "fss/run_config.hpp"

#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <json.hpp>

#include "fss/error.hpp"

namespace fss {
namespace {

using nlohmann::json;

BylinePolicy policy_from_json(const json& j) {
  BylinePolicy p;
  if (j.is_string()) {
    p.kind = parse_byline_kind(j.get<std::string>());
    return p;
  }
  p.kind = parse_byline_kind(j.at("kind").get<std::string>());
  if (auto w = j.find("weights"); w != j.end()) {
    auto& t = p.weights;
    t.intramural_end = w->value("intramural_end", t.intramural_end);
    t.intramural_rest = w->value("intramural_rest", t.intramural_rest);
    t.extramural_end = w->value("extramural_end", t.extramural_end);
    t.extramural_near_end = w->value("extramural_near_end", t.extramural_near_end);
    t.extramural_rest = w->value("extramural_rest", t.extramural_rest);
  }
  p.weights.validate();
  return p;
}

json policy_to_json(const BylinePolicy& p) {
  const auto& t = p.weights;
  return {{"kind", to_string(p.kind)},
          {"weights",
           {{"intramural_end", t.intramural_end},
            {"intramural_rest", t.intramural_rest},
            {"extramural_end", t.extramural_end},
            {"extramural_near_end", t.extramural_near_end},
            {"extramural_rest", t.extramural_rest}}}};
}

void apply_synth(SynthConfig& s, const json& j) {
  s.n_researchers = j.value("n_researchers", s.n_researchers);
  s.n_fields = j.value("n_fields", s.n_fields);
  s.n_units = j.value("n_units", s.n_units);
  s.lotka_exponent = j.value("lotka_exponent", s.lotka_exponent);
  s.max_pubs = j.value("max_pubs", s.max_pubs);
  s.inactive_share = j.value("inactive_share", s.inactive_share);
  s.citation_means = j.value("citation_means", s.citation_means);
  s.citation_sigma = j.value("citation_sigma", s.citation_sigma);
  s.mean_coauthors = j.value("mean_coauthors", s.mean_coauthors);
  s.max_byline = j.value("max_byline", s.max_byline);
  s.internal_coauthor_share = j.value("internal_coauthor_share", s.internal_coauthor_share);
  s.intramural_probability = j.value("intramural_probability", s.intramural_probability);
  s.missing_salary_share = j.value("missing_salary_share", s.missing_salary_share);
  s.missing_years_share = j.value("missing_years_share", s.missing_years_share);
  s.seed = j.value("seed", s.seed);
  if (auto w = j.find("window"); w != j.end()) s.window = YearRange::parse(w->get<std::string>());
}

}  // namespace

void RunConfig::validate() const {
  if (!(top_share > 0.0 && top_share < 1.0)) {
    throw InvalidArgument(fmt::format("top_share must lie in (0,1), got {}", top_share));
  }
  if (jobs < 0) throw InvalidArgument("jobs must be >= 0");
}

std::string RunConfig::hash() const {
  json policies_json = json::object();
  for (const auto& [field, p] : policies.entries()) policies_json[field] = policy_to_json(p);
  json canonical = {{"window", window ? window->to_string() : std::string("auto")},
                    {"top_share", top_share},
                    {"default_policy", policy_to_json(policies.fallback())},
                    {"policies", policies_json},
                    {"baselines", baselines.empty() ? std::string() : file_digest(baselines)}};
  return fnv1a_hex(canonical.dump());
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
    if (auto w = j.find("window"); w != j.end()) config.window = YearRange::parse(w->get<std::string>());
    config.top_share = j.value("top_share", config.top_share);
    if (auto f = j.find("format"); f != j.end()) config.format = parse_output_format(f->get<std::string>());
    config.jobs = j.value("jobs", config.jobs);
    if (auto d = j.find("default_policy"); d != j.end()) {
      config.policies = PolicyTable(policy_from_json(*d));
    }
    if (auto p = j.find("policies"); p != j.end()) {
      for (const auto& [field, entry] : p->items()) config.policies.set(field, policy_from_json(entry));
    }
    if (auto s = j.find("synth"); s != j.end()) apply_synth(config.synth, *s);
  } catch (const json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void apply_policy_flag(RunConfig& config, const std::string& flag) {
  const auto eq = flag.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidArgument("--policy expects FIELD=KIND, got '" + flag + "'");
  BylinePolicy p;
  p.kind = parse_byline_kind(flag.substr(eq + 1));
  config.policies.set(flag.substr(0, eq), p);
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw InvalidArgument("format must be csv or json, got '" + text + "'");
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return fnv1a_hex(bytes);
}

}  // namespace fss
