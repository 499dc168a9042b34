#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fss/corpus.hpp"
#include "fss/credit.hpp"
#include "fss/synth.hpp"

namespace fss {

enum class OutputFormat { Csv, Json };

// Effective settings of one CLI run: the config file, then flags on top.
struct RunConfig {
  std::filesystem::path pubs;
  std::filesystem::path res;
  std::filesystem::path scores;  // rank input alternative to pubs/res
  std::optional<YearRange> window;
  PolicyTable policies;
  double top_share = 0.10;
  OutputFormat format = OutputFormat::Csv;
  std::filesystem::path out_dir;
  std::filesystem::path baselines;  // external baseline import
  int jobs = 0;
  SynthConfig synth;

  // Throws InvalidArgument.
  void validate() const;

  // Stable hash of every setting that affects analysis output. Paths, jobs and
  // the output directory are excluded so that identical inputs reproduce
  // identical reports.
  std::string hash() const;
};

// Applies a JSON config file:
//   {"window": "2010:2014", "top_share": 0.1, "format": "csv", "jobs": 4,
//    "default_policy": "equal",
//    "policies": {"BIO/11": "first-last",
//                 "BIO/12": {"kind": "first-last", "weights": {"intramural_end": 0.4, ...}}},
//    "synth": {"n_researchers": 10000, "seed": 7, ...}}
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

// Parses one --policy FIELD=KIND flag.
void apply_policy_flag(RunConfig& config, const std::string& flag);

OutputFormat parse_output_format(const std::string& text);

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

}  // namespace fss
