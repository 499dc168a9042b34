#include "fss/credit.hpp"

#include <fmt/format.h>

#include "fss/error.hpp"

namespace fss {

void EmphasisWeights::validate() const {
  for (double w : {intramural_end, intramural_rest, extramural_end, extramural_near_end, extramural_rest}) {
    if (!(w >= 0.0)) throw InvalidArgument(fmt::format("byline weight must be >= 0, got {}", w));
  }
}

const char* to_string(BylineKind kind) {
  return kind == BylineKind::EqualSplit ? "equal" : "first-last";
}

BylineKind parse_byline_kind(const std::string& text) {
  if (text == "equal" || text == "equal-split" || text == "EqualSplit") return BylineKind::EqualSplit;
  if (text == "first-last" || text == "first-last-emphasis" || text == "FirstLastEmphasis") {
    return BylineKind::FirstLastEmphasis;
  }
  throw InvalidArgument("unknown byline policy '" + text + "'");
}

bool is_intramural(std::span<const AuthorSlot> byline) {
  return byline.empty() || byline.front().institution_id == byline.back().institution_id;
}

std::vector<double> byline_weights(std::span<const AuthorSlot> byline, const BylinePolicy& policy) {
  const std::size_t n = byline.size();
  if (n == 0) throw InvalidArgument("empty byline");
  std::vector<double> w(n, 0.0);

  if (policy.kind == BylineKind::EqualSplit || n == 1) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
    return w;
  }

  const auto& t = policy.weights;
  t.validate();
  if (is_intramural(byline)) {
    w.front() = t.intramural_end;
    w.back() = t.intramural_end;
    if (n > 2) {
      const double middle = t.intramural_rest / static_cast<double>(n - 2);
      for (std::size_t i = 1; i + 1 < n; ++i) w[i] = middle;
    }
  } else {
    w.front() = t.extramural_end;
    w.back() = t.extramural_end;
    // Second and second-to-last collapse into one slot at n = 3 and vanish at n = 2.
    if (n > 2) {
      w[1] = t.extramural_near_end;
      w[n - 2] = t.extramural_near_end;
    }
    if (n > 4) {
      const double other = t.extramural_rest / static_cast<double>(n - 4);
      for (std::size_t i = 2; i + 2 < n; ++i) w[i] = other;
    }
  }

  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) throw InvalidArgument("byline weights sum to zero");
  for (double& x : w) x /= total;
  return w;
}

double fractional_contribution(std::span<const AuthorSlot> byline, int position,
                               const BylinePolicy& policy) {
  if (position < 1 || static_cast<std::size_t>(position) > byline.size()) {
    throw InvalidArgument(fmt::format("position {} outside byline of {}", position, byline.size()));
  }
  if (policy.kind == BylineKind::EqualSplit) return 1.0 / static_cast<double>(byline.size());
  return byline_weights(byline, policy)[static_cast<std::size_t>(position - 1)];
}

void PolicyTable::set(const std::string& field_id, BylinePolicy policy) {
  policy.weights.validate();
  by_field_.insert_or_assign(field_id, policy);
}

const BylinePolicy& PolicyTable::for_field(const std::string& field_id) const {
  auto it = by_field_.find(field_id);
  return it == by_field_.end() ? fallback_ : it->second;
}

}  // namespace fss
