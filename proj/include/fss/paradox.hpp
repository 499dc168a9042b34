#pragma once

#include <cstdint>
#include <string>

namespace fss {

// Two universities of equal size, salary and observation time. In the impact
// scenario A publishes 100 articles at the field average (10 citations) and B
// publishes the same 100 plus 100 at half the average. In the HCA scenario A
// has 10 highly cited articles out of 100 and B 15 out of 200.
struct ParadoxReport {
  std::int64_t staff_per_university = 0;

  std::int64_t pubs_a = 0;
  std::int64_t pubs_b = 0;
  double mncs_a = 0.0;
  double mncs_b = 0.0;
  double impact_a = 0.0;  // total normalized impact
  double impact_b = 0.0;
  double fss_a = 0.0;  // mean researcher FSS of the university
  double fss_b = 0.0;
  double fss_u_a = 0.0;  // unit FSS standardized by the joint field mean
  double fss_u_b = 0.0;

  std::int64_t hca_pubs_a = 0;
  std::int64_t hca_pubs_b = 0;
  std::int64_t hca_count_a = 0;
  std::int64_t hca_count_b = 0;
  double hca_share_a = 0.0;
  double hca_share_b = 0.0;

  double mncs_ratio = 0.0;    // B / A
  double hca_ratio = 0.0;     // B / A, from integer counts
  double impact_ratio = 0.0;  // B / A
  double fss_ratio = 0.0;     // B / A
  double fss_u_ratio = 0.0;   // B / A
};

// Builds the fixture corpora and runs every indicator through the library.
ParadoxReport paradox_demo();

std::string format_paradox(const ParadoxReport& report);

}  // namespace fss
