#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fss/corpus.hpp"

namespace fss {

enum class BylineKind { EqualSplit, FirstLastEmphasis };

// Role weights for position-sensitive bylines. Intramural bylines (first and
// last author share an institution) give intramural_end to each end and split
// intramural_rest among the middle. Extramural bylines give extramural_end to
// each end, extramural_near_end to the second and second-to-last authors and
// split extramural_rest among everyone else.
struct EmphasisWeights {
  double intramural_end = 0.40;
  double intramural_rest = 0.20;
  double extramural_end = 0.30;
  double extramural_near_end = 0.15;
  double extramural_rest = 0.10;

  // Throws InvalidArgument on a negative weight.
  void validate() const;

  friend bool operator==(const EmphasisWeights&, const EmphasisWeights&) = default;
};

struct BylinePolicy {
  BylineKind kind = BylineKind::EqualSplit;
  EmphasisWeights weights;

  friend bool operator==(const BylinePolicy&, const BylinePolicy&) = default;
};

const char* to_string(BylineKind kind);
// Accepts "equal" / "equal-split" and "first-last" / "first-last-emphasis".
BylineKind parse_byline_kind(const std::string& text);

// True when the first and last authors share an institution. Single-author
// bylines count as intramural.
bool is_intramural(std::span<const AuthorSlot> byline);

// Credit share of every position. Roles are assigned one per position; when
// the roles present do not consume the whole unit (short bylines) the weights
// are rescaled to sum to 1.
std::vector<double> byline_weights(std::span<const AuthorSlot> byline, const BylinePolicy& policy);

// Share of the author at 1-based `position`. Throws InvalidArgument when the
// position is outside the byline.
double fractional_contribution(std::span<const AuthorSlot> byline, int position,
                               const BylinePolicy& policy);

// Per-field policy selection with a fallback for unlisted fields.
class PolicyTable {
 public:
  PolicyTable() = default;
  explicit PolicyTable(BylinePolicy fallback) : fallback_(fallback) {}

  void set(const std::string& field_id, BylinePolicy policy);
  const BylinePolicy& for_field(const std::string& field_id) const;
  const BylinePolicy& fallback() const { return fallback_; }
  const std::map<std::string, BylinePolicy>& entries() const { return by_field_; }

 private:
  BylinePolicy fallback_;
  std::map<std::string, BylinePolicy> by_field_;
};

}  // namespace fss
