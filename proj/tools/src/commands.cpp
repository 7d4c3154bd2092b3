#include "fermat_app/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "fermat/char_sums.hpp"
#include "fermat/characters.hpp"
#include "fermat/count.hpp"
#include "fermat/field.hpp"
#include "fermat_app/json_io.hpp"
#include "fermat_app/scan.hpp"

namespace fermat::app {
namespace {

struct FieldArgs {
  std::uint32_t p = 0;
  std::uint32_t n = 1;
  std::vector<std::uint32_t> modulus;
  std::optional<std::uint64_t> max_q;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "Characteristic")->required();
    cmd->add_option("--n", n, "Extension degree")->check(CLI::PositiveNumber);
    cmd->add_option("--modulus", modulus, "Monic modulus, ascending coefficients")->delimiter(',');
    cmd->add_option("--max-q", max_q, "Field size cap (default FERMAT_MAX_Q or 2^20)");
  }

  FieldPtr build() const {
    FieldOptions options;
    if (!modulus.empty()) options.modulus = modulus;
    options.max_field_size = max_q.value_or(max_field_size_from_env());
    return build_field(p, n, options);
  }
};

struct SpecArgs {
  FieldArgs field;
  std::vector<std::uint32_t> d;
  std::vector<std::string> a;
  std::string b = "1";

  void attach(CLI::App* cmd) {
    field.attach(cmd);
    cmd->add_option("--d", d, "Exponents d_1,...,d_s")->delimiter(',')->required();
    cmd->add_option("--a", a, "Coefficients (encoded integers or g^k); default all 1")->delimiter(',');
    cmd->add_option("--b", b, "Right-hand side (encoded integer or g^k)");
  }

  HypersurfaceSpec build() const {
    HypersurfaceSpec spec;
    spec.ctx = field.build();
    spec.d = d;
    if (a.empty()) {
      spec.a.assign(d.size(), spec.ctx->one());
    } else {
      for (const auto& text : a) spec.a.push_back(spec.ctx->parse(text));
    }
    spec.b = spec.ctx->parse(b);
    spec.validate();
    return spec;
  }
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNumericalFailure: return kExitNumerical;
    case ErrorCode::kTooLarge:
    case ErrorCode::kFieldTooLarge: return kExitResourceGuard;
    default: return kExitBadInput;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point counts and Weil-bound extremality for diagonal hypersurfaces over finite fields", "fermat"};
  app.require_subcommand(1);

  SpecArgs count_args;
  std::string method = "charsum";
  auto* count_cmd = app.add_subcommand("count", "Count F_q-points of a_1 x_1^d_1 + ... + a_s x_s^d_s = b");
  count_args.attach(count_cmd);
  count_cmd->add_option("--method", method, "brute | charsum | formula")
      ->check(CLI::IsMember({"brute", "bruteforce", "charsum", "formula"}));

  FieldArgs bound_args;
  std::optional<std::uint32_t> bound_s;
  std::vector<std::uint32_t> bound_d;
  auto* bound_cmd = app.add_subcommand("bound", "Weil interval and the invariant I(d)");
  bound_args.attach(bound_cmd);
  bound_cmd->add_option("--s", bound_s, "Number of variables (must match --d)");
  bound_cmd->add_option("--d", bound_d, "Exponents")->delimiter(',')->required();

  SpecArgs classify_args;
  bool no_verify = false;
  auto* classify_cmd = app.add_subcommand("classify", "Decide maximality / minimality");
  classify_args.attach(classify_cmd);
  classify_cmd->add_flag("--no-verify", no_verify, "Skip the attached point count");

  FieldArgs verify_args;
  std::uint64_t budget = IdentitySuiteOptions{}.direct_budget;
  auto* verify_cmd = app.add_subcommand("verify", "Run the character-sum identity suite on one field");
  verify_args.attach(verify_cmd);
  verify_cmd->add_option("--budget", budget, "Direct-summation terms per Jacobi identity");

  FieldArgs gauss_args;
  std::string chi_text;
  auto* gauss_cmd = app.add_subcommand("gauss", "Gauss sum and purity of one character chi:d:j");
  gauss_args.attach(gauss_cmd);
  gauss_cmd->add_option("--chi", chi_text, "Character as chi:d:j")->required();

  ScanJob job;
  std::string job_file;
  std::string sampling = "representatives";
  auto* scan_cmd = app.add_subcommand("scan", "Classify a parameter grid into a JSONL catalog");
  scan_cmd->add_option("--job", job_file, "Job file (JSON); flags are ignored when given");
  scan_cmd->add_option("--p-min", job.p_min);
  scan_cmd->add_option("--p-max", job.p_max);
  scan_cmd->add_option("--n-min", job.n_min);
  scan_cmd->add_option("--n-max", job.n_max);
  scan_cmd->add_option("--s", job.s_values, "Values of s")->delimiter(',');
  scan_cmd->add_option("--max-d", job.max_d);
  scan_cmd->add_flag("--require-gcd-gt2", job.require_gcd_gt2);
  scan_cmd->add_option("--sampling", sampling)->check(CLI::IsMember({"representatives", "exhaustive"}));
  scan_cmd->add_option("--output", job.output, "Catalog path");
  scan_cmd->add_option("--verify-rate", job.verify_sample_rate)->check(CLI::Range(0.0, 1.0));
  scan_cmd->add_option("--seed", job.seed);
  scan_cmd->add_option("--max-specs", job.max_specs);
  scan_cmd->add_option("--max-q", job.max_field_size);
  scan_cmd->add_option("--threads", job.threads);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*count_cmd) {
      const auto spec = count_args.build();
      const auto result = count_points(spec, parse_count_method(method));
      emit(out, to_json(result, spec.ctx->q()));
    } else if (*bound_cmd) {
      if (bound_s && *bound_s != bound_d.size()) {
        fail(ErrorCode::kInvalidArgument, "--s does not match the number of exponents");
      }
      const auto ctx = bound_args.build();
      const auto bound = weil_bound(ctx->q(), bound_d);
      emit(out, to_json(bound));
    } else if (*classify_cmd) {
      const auto spec = classify_args.build();
      emit(out, to_json(classify(spec, ClassifyOptions{!no_verify})));
    } else if (*verify_cmd) {
      const auto ctx = verify_args.build();
      IdentitySuiteOptions options;
      options.direct_budget = budget;
      const auto checks = run_identity_suite(ctx, options);
      Json report;
      report["p"] = ctx->p();
      report["n"] = ctx->n();
      report["q"] = ctx->q();
      Json list = Json::array();
      bool all_pass = true;
      for (const auto& c : checks) {
        list.push_back(to_json(c));
        all_pass = all_pass && c.pass;
      }
      report["identities"] = list;
      report["pass"] = all_pass;
      emit(out, report);
      if (!all_pass) return kExitNumerical;
    } else if (*gauss_cmd) {
      const auto ctx = gauss_args.build();
      const auto chi = parse_character(ctx, chi_text);
      const auto g = gauss_sum(chi);
      Json j;
      j["q"] = ctx->q();
      j["character"] = {{"d", chi.d()}, {"j", chi.j()}};
      j["value"] = {{"re", g.value.real()}, {"im", g.value.imag()}};
      j["abs"] = std::abs(g.value);
      j["purity"] = to_json(purity_order(g.value, std::uint64_t{4} * chi.d() * ctx->p()));
      emit(out, j);
    } else if (*scan_cmd) {
      if (!job_file.empty()) {
        std::ifstream in(job_file);
        if (!in) fail(ErrorCode::kInvalidArgument, "cannot open job file " + job_file);
        Json parsed;
        try {
          parsed = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          fail(ErrorCode::kInvalidArgument, std::string("job file is not JSON: ") + e.what());
        }
        job = scan_job_from_json(parsed);
      } else {
        job.sampling = sampling == "exhaustive" ? Sampling::kExhaustive : Sampling::kRepresentatives;
      }
      std::ofstream catalog(job.output);
      if (!catalog) fail(ErrorCode::kInvalidArgument, "cannot write catalog " + job.output);
      const auto summary = run_scan(job, catalog);
      emit(out, to_json(summary));
      if (summary.truncated) {
        err << "fermat: scan stopped at max_specs = " << job.max_specs << "\n";
        return kExitResourceGuard;
      }
      if (!summary.mismatches.empty()) return kExitNumerical;
    }
  } catch (const Error& e) {
    err << "fermat: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitOk;
}

}  // namespace fermat::app
