#include "fermat_app/scan.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include "fermat/error.hpp"
#include "fermat/numtheory.hpp"

namespace fermat::app {
namespace {

constexpr std::size_t kBatchSize = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool sampled(std::uint64_t seed, std::uint64_t index, double rate) {
  if (rate <= 0.0) return false;
  if (rate >= 1.0) return true;
  const double u = static_cast<double>(splitmix64(seed ^ splitmix64(index)) >> 11) * 0x1.0p-53;
  return u < rate;
}

// Calls visit(tuple) for every non-decreasing tuple of `values` of length s.
template <typename Visit>
bool for_each_multiset(const std::vector<std::uint32_t>& values, std::size_t s, Visit&& visit) {
  if (values.empty()) return true;
  std::vector<std::size_t> idx(s, 0);
  std::vector<std::uint32_t> tuple(s);
  while (true) {
    for (std::size_t i = 0; i < s; ++i) tuple[i] = values[idx[i]];
    if (!visit(tuple)) return false;
    std::size_t i = s;
    while (i-- > 0) {
      if (idx[i] + 1 < values.size()) {
        ++idx[i];
        for (std::size_t k = i + 1; k < s; ++k) idx[k] = idx[i];
        break;
      }
    }
    if (i == static_cast<std::size_t>(-1)) return true;
  }
}

// Odometer over [0, radix_i) for every i, last position fastest.
template <typename Visit>
bool for_each_index(const std::vector<std::uint32_t>& radix, Visit&& visit) {
  std::vector<std::uint32_t> idx(radix.size(), 0);
  while (true) {
    if (!visit(idx)) return false;
    std::size_t i = radix.size();
    while (i-- > 0) {
      if (++idx[i] < radix[i]) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return true;
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

ScanJob scan_job_from_json(const Json& j) {
  static const std::set<std::string> kKeys{"p_min",   "p_max",         "n_min",           "n_max",
                                           "s_values", "max_d",        "require_gcd_gt2", "sampling",
                                           "output",  "verify_sample_rate", "seed",       "max_specs",
                                           "max_field_size", "threads"};
  if (!j.is_object()) fail(ErrorCode::kInvalidArgument, "job file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) fail(ErrorCode::kInvalidArgument, "unknown job key \"" + key + "\"");
  }
  ScanJob job;
  try {
    job.p_min = get_or(j, "p_min", job.p_min);
    job.p_max = get_or(j, "p_max", job.p_max);
    job.n_min = get_or(j, "n_min", job.n_min);
    job.n_max = get_or(j, "n_max", job.n_max);
    job.s_values = get_or(j, "s_values", job.s_values);
    job.max_d = get_or(j, "max_d", job.max_d);
    job.require_gcd_gt2 = get_or(j, "require_gcd_gt2", job.require_gcd_gt2);
    const auto sampling = get_or<std::string>(j, "sampling", "representatives");
    if (sampling == "representatives") {
      job.sampling = Sampling::kRepresentatives;
    } else if (sampling == "exhaustive") {
      job.sampling = Sampling::kExhaustive;
    } else {
      fail(ErrorCode::kInvalidArgument, "sampling must be representatives or exhaustive");
    }
    job.output = get_or(j, "output", job.output);
    job.verify_sample_rate = get_or(j, "verify_sample_rate", job.verify_sample_rate);
    job.seed = get_or(j, "seed", job.seed);
    job.max_specs = get_or(j, "max_specs", job.max_specs);
    job.max_field_size = get_or(j, "max_field_size", job.max_field_size);
    job.threads = get_or(j, "threads", job.threads);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad job file: ") + e.what());
  }
  if (job.verify_sample_rate < 0.0 || job.verify_sample_rate > 1.0) {
    fail(ErrorCode::kInvalidArgument, "verify_sample_rate must lie in [0, 1]");
  }
  for (const auto s : job.s_values) {
    if (s < 2) fail(ErrorCode::kInvalidArgument, "every s must be >= 2");
  }
  return job;
}

Json to_json(const ScanJob& job) {
  Json j;
  j["p_min"] = job.p_min;
  j["p_max"] = job.p_max;
  j["n_min"] = job.n_min;
  j["n_max"] = job.n_max;
  j["s_values"] = job.s_values;
  j["max_d"] = job.max_d;
  j["require_gcd_gt2"] = job.require_gcd_gt2;
  j["sampling"] = job.sampling == Sampling::kRepresentatives ? "representatives" : "exhaustive";
  j["output"] = job.output;
  j["verify_sample_rate"] = job.verify_sample_rate;
  j["seed"] = job.seed;
  j["max_specs"] = job.max_specs;
  j["max_field_size"] = job.max_field_size;
  j["threads"] = job.threads;
  return j;
}

Json to_json(const ScanSummary& summary) {
  Json j;
  j["rows"] = summary.rows;
  Json per_status = Json::object();
  for (const auto st : {Status::kMaximal, Status::kMinimal, Status::kNotAttained, Status::kHypothesesNotMet}) {
    const std::string key(to_string(st));
    const auto it = summary.per_status.find(key);
    per_status[key] = it == summary.per_status.end() ? 0 : it->second;
  }
  j["per_status"] = per_status;
  j["verified"] = summary.verified;
  j["mismatches"] = summary.mismatches;
  j["truncated"] = summary.truncated;
  return j;
}

FieldPtr FieldCache::get(std::uint32_t p, std::uint32_t n) {
  std::lock_guard lock(mutex_);
  auto& slot = fields_[{p, n}];
  if (!slot) {
    FieldOptions options;
    options.max_field_size = max_field_size_ == 0 ? max_field_size_from_env() : max_field_size_;
    slot = build_field(p, n, options);
  }
  return slot;
}

void enumerate_specs(const ScanJob& job, FieldCache& fields,
                     const std::function<bool(const HypersurfaceSpec&)>& sink) {
  const std::uint64_t cap = job.max_field_size == 0 ? max_field_size_from_env() : job.max_field_size;
  for (std::uint32_t p = job.p_min; p <= job.p_max; ++p) {
    if (!is_prime(p)) continue;
    for (std::uint32_t n = std::max<std::uint32_t>(1, job.n_min); n <= job.n_max; ++n) {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < n && q <= cap; ++i) q *= p;
      if (q > cap) break;
      std::vector<std::uint32_t> usable;
      for (const auto d : divisors(q - 1)) {
        if (d >= 2 && d <= job.max_d) usable.push_back(static_cast<std::uint32_t>(d));
      }
      if (usable.empty()) continue;
      const FieldPtr ctx = fields.get(p, n);
      for (const auto s : job.s_values) {
        const bool keep_going = for_each_multiset(usable, s, [&](const std::vector<std::uint32_t>& d) {
          if (job.require_gcd_gt2) {
            const auto g = std::accumulate(d.begin(), d.end(), 0U, [](auto x, auto y) { return std::gcd(x, y); });
            if (g <= 2) return true;
          }
          HypersurfaceSpec spec{ctx, d, std::vector<FieldElement>(s), ctx->one()};
          if (job.sampling == Sampling::kRepresentatives) {
            return for_each_index(d, [&](const std::vector<std::uint32_t>& c) {
              // Equal exponents are interchangeable, so keep their classes sorted.
              for (std::size_t i = 1; i < s; ++i) {
                if (d[i] == d[i - 1] && c[i] < c[i - 1]) return true;
              }
              for (std::size_t i = 0; i < s; ++i) spec.a[i] = ctx->exp(c[i]);
              return sink(spec);
            });
          }
          std::vector<std::uint32_t> radix(s + 1, q - 1);
          return for_each_index(radix, [&](const std::vector<std::uint32_t>& c) {
            for (std::size_t i = 0; i < s; ++i) spec.a[i] = FieldElement{c[i] + 1};
            spec.b = FieldElement{c[s] + 1};
            return sink(spec);
          });
        });
        if (!keep_going) return;
      }
    }
  }
}

Json catalog_row(const HypersurfaceSpec& spec, const ClassificationResult& result) {
  const FieldContext& ctx = *spec.ctx;
  Json row;
  row["p"] = ctx.p();
  row["n"] = ctx.n();
  row["q"] = ctx.q();
  row["s"] = spec.s();
  row["d"] = spec.d;
  Json a = Json::array();
  for (const auto x : spec.a) a.push_back(x.encoded());
  row["a"] = a;
  row["b"] = spec.b.encoded();
  row["status"] = std::string(to_string(result.status));
  row["r"] = result.r ? Json(*result.r) : Json(nullptr);
  row["epsilon"] = result.epsilon ? Json(*result.epsilon) : Json(nullptr);
  row["i_value"] = result.bound.i_value;
  row["lower"] = result.bound.lower;
  row["upper"] = result.bound.upper;
  row["count"] = result.verified_count ? Json(result.verified_count->n_points) : Json(nullptr);
  row["reasons"] = result.reasons;
  return row;
}

HypersurfaceSpec spec_from_row(const Json& row, FieldCache& fields) {
  try {
    const FieldPtr ctx = fields.get(row.at("p").get<std::uint32_t>(), row.at("n").get<std::uint32_t>());
    HypersurfaceSpec spec;
    spec.ctx = ctx;
    spec.d = row.at("d").get<std::vector<std::uint32_t>>();
    for (const auto v : row.at("a").get<std::vector<std::uint32_t>>()) spec.a.push_back(ctx->decode(v));
    spec.b = ctx->decode(row.at("b").get<std::uint32_t>());
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad catalog row: ") + e.what());
  }
}

ScanSummary run_scan(const ScanJob& job, std::ostream& catalog) {
  const std::uint64_t cap = job.max_field_size == 0 ? max_field_size_from_env() : job.max_field_size;
  FieldCache fields(cap);
  ScanSummary summary;
  const unsigned threads = job.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : job.threads;

  std::vector<HypersurfaceSpec> batch;
  std::uint64_t next_index = 0;

  auto flush = [&] {
    const std::size_t count = batch.size();
    std::vector<ClassificationResult> results(count);
    std::vector<std::string> errors(count);
    std::atomic<std::size_t> cursor{0};
    const std::uint64_t base = next_index;
    auto work = [&] {
      for (std::size_t i = cursor++; i < count; i = cursor++) {
        try {
          results[i] = classify(batch[i], ClassifyOptions{false});
          const bool extremal =
              results[i].status == Status::kMaximal || results[i].status == Status::kMinimal;
          if (extremal && sampled(job.seed, base + i, job.verify_sample_rate)) {
            if (charsum_feasible(batch[i])) {
              results[i].verified_count = count_charsum(batch[i]);
            } else if (bruteforce_feasible(batch[i])) {
              results[i].verified_count = count_bruteforce(batch[i]);
            }
          }
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::jthread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, count)));
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    pool.clear();

    // Single writer, catalog order.
    for (std::size_t i = 0; i < count; ++i) {
      if (!errors[i].empty()) {
        Json m = catalog_row(batch[i], results[i]);
        m["error"] = errors[i];
        summary.mismatches.push_back(std::move(m));
        continue;
      }
      const auto& res = results[i];
      Json row = catalog_row(batch[i], res);
      catalog << row.dump() << '\n';
      ++summary.rows;
      ++summary.per_status[std::string(to_string(res.status))];
      if (res.verified_count) {
        ++summary.verified;
        const bool maximal = res.status == Status::kMaximal;
        const std::int64_t endpoint = maximal ? res.bound.upper : res.bound.raw_lower;
        if (res.verified_count->n_points != endpoint) summary.mismatches.push_back(row);
      }
    }
    next_index += count;
    batch.clear();
  };

  std::uint64_t seen = 0;
  enumerate_specs(job, fields, [&](const HypersurfaceSpec& spec) {
    if (seen == job.max_specs) {
      summary.truncated = true;
      return false;
    }
    ++seen;
    batch.push_back(spec);
    if (batch.size() == kBatchSize) flush();
    return true;
  });
  flush();
  if (summary.truncated) catalog << Json{{"truncated", true}, {"rows_written", summary.rows}}.dump() << '\n';
  catalog.flush();
  return summary;
}

}  // namespace fermat::app
