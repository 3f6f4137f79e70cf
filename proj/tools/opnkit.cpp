// opnkit: bound tables, candidate audits, property suites and range scans.
//
// Exit statuses:
//   0  success (check: Viable; verify: no violations; scan: completed)
//   1  check: Refuted; verify: violations found; scan: radical-chain violations
//   2  invalid arguments, parse or compositeness errors
//   3  check: Undecided
//   4  scan: unreadable or mismatched checkpoint
//   5  scan: stopped early by --stop-after-blocks (resumable)

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "opnkit/arith.hpp"
#include "opnkit/bounds.hpp"
#include "opnkit/constraints.hpp"
#include "opnkit/lab.hpp"
#include "opnkit/scan.hpp"

namespace {

enum class Format { Text, Json };

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kUndecided = 3;
constexpr int kCheckpoint = 4;
constexpr int kIncomplete = 5;

std::size_t default_precision_cap() {
  if (const char* env = std::getenv("OPNKIT_PRECISION_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed OPNKIT_PRECISION_CAP='" << env << "'\n";
    }
  }
  return opn::kDefaultPrecisionCapBits;
}

void add_format(CLI::App* cmd, Format& format) {
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}}));
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

int run_bounds(std::uint64_t r, std::size_t digits, Format format) {
  const auto report = opn::bounds_report(r, opn::digits_to_bits(digits));
  const auto j = opn::to_json(report, digits);
  if (format == Format::Json) {
    print_json(j);
    return kOk;
  }
  std::cout << "r = " << r << " (" << report.precision_bits << " bits, " << digits << " digits)\n";
  for (const char* key : {"alpha_lb", "beta_lb", "n_lb"})
    std::cout << key << " in [" << j[key]["lo"].get<std::string>() << ", " << j[key]["hi"].get<std::string>() << "]\n";
  std::cout << "n_ub = 2^" << report.n_ub.log2.get_str() << '\n';
  return kOk;
}

int run_check(const std::string& text, Format format, const opn::AuditOptions& options) {
  const auto f = opn::parse_factorization(text);
  const auto report = opn::audit(f, options);
  if (format == Format::Json)
    print_json(opn::to_json(report));
  else
    std::cout << opn::explain(report);
  switch (report.overall) {
    case opn::Overall::Viable: return kOk;
    case opn::Overall::Refuted: return kFailed;
    case opn::Overall::Undecided: return kUndecided;
  }
  return kUndecided;
}

int run_verify(const std::string& suite, const opn::SuiteOptions& options, Format format) {
  const auto summary = opn::run_suite(opn::parse_suite(suite), options);
  if (format == Format::Json) {
    print_json(opn::to_json(summary));
  } else {
    std::cout << "suite " << suite << ": checked " << summary.checked << ", violations "
              << summary.counterexamples.size() << '\n';
    for (const auto& c : summary.counterexamples) std::cout << "counterexample: " << c << '\n';
  }
  return summary.passed() ? kOk : kFailed;
}

int run_scan(std::uint64_t lo, std::uint64_t hi, const std::string& parity, const std::string& property,
             const opn::ScanOptions& options, Format format) {
  const auto prop = opn::parse_scan_property(property);
  const auto report = prop == opn::ScanProperty::Perfect ? opn::scan_perfect(lo, hi, opn::parse_parity(parity), options)
                                                         : opn::scan_radical_chain(lo, hi, options);
  if (format == Format::Json) {
    print_json(opn::to_json(report));
  } else {
    std::cout << "scan " << property << " [" << lo << ", " << hi << "] parity " << opn::to_string(report.parity)
              << ": tested " << report.tested_count << (report.complete ? "" : " (incomplete)") << '\n';
    for (const auto& v : report.violations) std::cout << (prop == opn::ScanProperty::Perfect ? "found " : "violation ") << v.n << ": " << v.detail << '\n';
    if (report.violations.empty()) std::cout << (prop == opn::ScanProperty::Perfect ? "found nothing\n" : "no violations\n");
    std::cout << "elapsed " << report.elapsed.count() << " s\n";
  }
  if (!report.complete) return kIncomplete;
  if (prop == opn::ScanProperty::RadicalChain && !report.violations.empty()) return kFailed;
  return kOk;
}

int run_sk(const std::string& text, Format format) {
  const auto f = opn::parse_factorization(text);
  const auto sums = opn::symmetric_reciprocal_sums(f);
  opn::Ratio lhs = 1;
  for (const auto& s : sums) lhs += s;
  opn::Natural num = 1;
  for (const auto& t : f.terms()) num *= t.prime + 1;
  const opn::Ratio rhs = opn::make_ratio(num, opn::alpha(f));
  if (format == Format::Json) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < sums.size(); ++k)
      rows.push_back({{"k", k + 1}, {"numerator", sums[k].get_num().get_str()}, {"denominator", sums[k].get_den().get_str()}});
    print_json({{"factorization", opn::render(f)},
                {"sums", rows},
                {"identity", {{"lhs", opn::render(lhs)}, {"rhs", opn::render(rhs)}, {"holds", lhs == rhs}}}});
  } else {
    for (std::size_t k = 0; k < sums.size(); ++k) std::cout << "S_" << k + 1 << " = " << opn::render(sums[k]) << '\n';
    std::cout << "1 + sum S_k = " << opn::render(lhs) << ", prod(1+p_i)/prod(p_i) = " << opn::render(rhs)
              << (lhs == rhs ? " (identity holds)" : " (IDENTITY FAILS)") << '\n';
  }
  return lhs == rhs ? kOk : kFailed;
}

int run_compare(const std::string& x, const std::string& bound, std::uint64_t r, const opn::RefinementPolicy& policy) {
  opn::Ratio q;
  if (x.find('/') == std::string::npos) {
    q = opn::parse_decimal(x);
  } else {
    q = opn::Ratio(x, 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
  }
  if (sgn(q) < 0) throw std::invalid_argument("x must be >= 0");
  const auto o = opn::compare_rational_to_bound(q, opn::parse_bound_kind(bound), r, policy);
  std::cout << opn::to_string(o) << '\n';
  return o == opn::Ordering3::Undecided ? kUndecided : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic toolkit for odd perfect number bounds and necessary conditions"};
  app.require_subcommand(1);
  Format format = Format::Text;

  auto* bounds = app.add_subcommand("bounds", "Lower/upper size bounds for r distinct prime factors");
  std::uint64_t r = 1;
  std::size_t digits = opn::kDefaultReportDigits;
  bounds->add_option("-r", r, "Number of distinct prime factors")->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
  bounds->add_option("--digits", digits, "Significant decimal digits")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  add_format(bounds, format);

  auto* check = app.add_subcommand("check", "Audit a factorization against odd perfect number conditions");
  std::string factorization;
  opn::AuditOptions audit_options;
  audit_options.precision_cap_bits = default_precision_cap();
  check->add_option("factorization", factorization, "e.g. \"3^2*5*7^2\"")->required();
  check->add_option("--precision-cap", audit_options.precision_cap_bits, "Interval refinement cap in bits");
  check->add_option("--max-digits", audit_options.max_exact_digits, "Largest N (in digits) evaluated exactly");
  add_format(check, format);

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  opn::SuiteOptions suite_options;
  suite_options.precision_cap_bits = std::size_t{1} << 16;
  verify->add_option("suite", suite, "keyineq | chain | gmhm | thm1 | thm2 | thm3")
      ->required()
      ->check(CLI::IsMember({"keyineq", "chain", "gmhm", "thm1", "thm2", "thm3"}));
  verify->add_option("--trials", suite_options.trials, "Randomized instances");
  verify->add_option("--seed", suite_options.seed, "Random seed");
  verify->add_option("--limit", suite_options.limit, "chain: check every odd n up to this");
  verify->add_option("--prime-cap", suite_options.prime_cap, "Prime-set suites: sample odd primes below this")
      ->check(CLI::Range(std::uint32_t{8}, std::uint32_t{1} << 30));
  verify->add_option("--max-r", suite_options.max_r, "Prime-set suites: largest set size")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  verify->add_option("--precision-cap", suite_options.precision_cap_bits, "Interval refinement cap in bits");
  add_format(verify, format);

  auto* scan = app.add_subcommand("scan", "Exhaustive range scan");
  std::uint64_t lo = 2, hi = 10000;
  std::string parity = "all", property = "perfect";
  opn::ScanOptions scan_options;
  std::string checkpoint;
  std::uint64_t stop_after = 0;
  scan->add_option("--lo", lo, "First integer")->required();
  scan->add_option("--hi", hi, "Last integer")->required();
  scan->add_option("--parity", parity, "odd | even | all")->check(CLI::IsMember({"odd", "even", "all"}));
  scan->add_option("--property", property, "perfect | radical-chain")->check(CLI::IsMember({"perfect", "radical-chain"}));
  scan->add_option("--jobs", scan_options.jobs, "Worker threads (default: all cores)");
  scan->add_option("--block-size", scan_options.block_size, "Integers per block")->check(CLI::PositiveNumber);
  scan->add_option("--max-range", scan_options.max_range, "Largest allowed hi - lo");
  scan->add_option("--checkpoint", checkpoint, "Line-delimited JSON checkpoint to resume from and append to");
  scan->add_option("--stop-after-blocks", stop_after, "Stop after computing this many new blocks")->check(CLI::PositiveNumber);
  add_format(scan, format);

  auto* sk = app.add_subcommand("sk", "Elementary symmetric sums S_k of the reciprocal primes");
  sk->add_option("factorization", factorization, "e.g. \"3*5*7\"")->required();
  add_format(sk, format);

  auto* cmp = app.add_subcommand("compare", "Decide x against a bound expression by interval refinement");
  std::string x, bound = "alpha_lb";
  opn::RefinementPolicy policy;
  policy.cap_bits = default_precision_cap();
  cmp->add_option("x", x, "Non-negative rational, e.g. 15, 7/2 or 5.5")->required();
  cmp->add_option("--bound", bound, "alpha_lb | beta_lb | n_lb");
  cmp->add_option("-r", r, "Number of distinct prime factors")->required()->check(CLI::PositiveNumber);
  cmp->add_option("--start-bits", policy.start_bits, "Initial precision in bits");
  cmp->add_option("--precision-cap", policy.cap_bits, "Precision cap in bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bounds) return run_bounds(r, digits, format);
    if (*check) return run_check(factorization, format, audit_options);
    if (*verify) return run_verify(suite, suite_options, format);
    if (*scan) {
      if (!checkpoint.empty()) scan_options.checkpoint = checkpoint;
      if (stop_after) scan_options.stop_after_blocks = stop_after;
      return run_scan(lo, hi, parity, property, scan_options, format);
    }
    if (*sk) return run_sk(factorization, format);
    if (*cmp) return run_compare(x, bound, r, policy);
  } catch (const opn::CheckpointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckpoint;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
