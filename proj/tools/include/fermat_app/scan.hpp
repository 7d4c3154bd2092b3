#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "fermat/count.hpp"
#include "fermat_app/json_io.hpp"

namespace fermat::app {

enum class Sampling { kRepresentatives, kExhaustive };

/// A parameter grid. Exponent tuples are non-decreasing (the count is
/// symmetric under permuting variables).
struct ScanJob {
  std::uint32_t p_min = 2;
  std::uint32_t p_max = 3;
  std::uint32_t n_min = 1;
  std::uint32_t n_max = 4;
  std::vector<std::uint32_t> s_values{2, 4, 5};
  std::uint32_t max_d = 10;
  bool require_gcd_gt2 = false;
  /// kRepresentatives: b = 1 and a_i = g^c, c in [0, d_i), one per class of
  /// F_q^* modulo d_i-th powers, classes non-decreasing across equal d_i.
  /// kExhaustive: every nonzero a_i and b.
  Sampling sampling = Sampling::kRepresentatives;
  std::string output = "catalog.jsonl";
  /// Fraction of Maximal/Minimal rows re-counted with the character sum.
  double verify_sample_rate = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t max_specs = 1'000'000;
  std::uint64_t max_field_size = 0;  // 0: take FERMAT_MAX_Q / default
  unsigned threads = 0;              // 0: hardware concurrency
};

/// Reads a job file object; unknown keys are rejected.
ScanJob scan_job_from_json(const Json& j);
Json to_json(const ScanJob& job);

struct ScanSummary {
  std::uint64_t rows = 0;
  std::map<std::string, std::uint64_t> per_status;
  std::uint64_t verified = 0;
  std::vector<Json> mismatches;
  bool truncated = false;
};

Json to_json(const ScanSummary& summary);

/// Field contexts keyed by (p, n), built on first use. A cap of 0 defers to
/// FERMAT_MAX_Q / the default.
class FieldCache {
 public:
  explicit FieldCache(std::uint64_t max_field_size) : max_field_size_(max_field_size) {}
  FieldPtr get(std::uint32_t p, std::uint32_t n);

 private:
  std::uint64_t max_field_size_;
  std::mutex mutex_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> fields_;
};

/// Calls `sink` for every spec of the grid in catalog order until it returns false.
void enumerate_specs(const ScanJob& job, FieldCache& fields,
                     const std::function<bool(const HypersurfaceSpec&)>& sink);

Json catalog_row(const HypersurfaceSpec& spec, const ClassificationResult& result);
HypersurfaceSpec spec_from_row(const Json& row, FieldCache& fields);

/// Writes one JSON line per spec to `catalog`; on hitting max_specs appends a
/// {"truncated": true} marker line.
ScanSummary run_scan(const ScanJob& job, std::ostream& catalog);

}  // namespace fermat::app
