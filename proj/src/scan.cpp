#include "opnkit/scan.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include "opnkit/primes.hpp"

namespace opn {

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::Odd: return "odd";
    case Parity::Even: return "even";
    case Parity::All: return "all";
  }
  return "?";
}

Parity parse_parity(std::string_view text) {
  for (Parity p : {Parity::Odd, Parity::Even, Parity::All})
    if (to_string(p) == text) return p;
  throw std::invalid_argument("parity must be odd, even or all");
}

std::string_view to_string(ScanProperty p) {
  return p == ScanProperty::Perfect ? "perfect" : "radical-chain";
}

ScanProperty parse_scan_property(std::string_view text) {
  if (text == "perfect") return ScanProperty::Perfect;
  if (text == "radical-chain") return ScanProperty::RadicalChain;
  throw std::invalid_argument("property must be perfect or radical-chain");
}

bool same_results(const ScanReport& a, const ScanReport& b) {
  return a.property == b.property && a.parity == b.parity && a.range_lo == b.range_lo && a.range_hi == b.range_hi &&
         a.tested_count == b.tested_count && a.violations == b.violations && a.complete == b.complete;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct BlockResult {
  u64 tested = 0;
  std::vector<ScanFinding> findings;
};

struct ScanPlan {
  ScanProperty property;
  Parity parity;
  u64 lo;
  u64 hi;
  u64 block_size;

  u64 block_count() const { return (hi - lo) / block_size + 1; }
  u64 block_lo(u64 i) const { return lo + i * block_size; }
  u64 block_hi(u64 i) const { return std::min(hi, block_lo(i) + block_size - 1); }

  nlohmann::json header() const {
    return {{"kind", "opnkit-scan-checkpoint"}, {"property", std::string(to_string(property))},
            {"parity", std::string(to_string(parity))}, {"lo", lo}, {"hi", hi}, {"block_size", block_size}};
  }
};

bool matches(Parity parity, u64 n) {
  switch (parity) {
    case Parity::Odd: return n & 1;
    case Parity::Even: return !(n & 1);
    case Parity::All: return true;
  }
  return false;
}

// sigma(n), rad(n) and sigma(rad(n)) for every n in [a, b].
class DivisorSieve {
 public:
  DivisorSieve(u64 a, u64 b, const std::vector<std::uint32_t>& primes)
      : rest_(b - a + 1), sigma_(b - a + 1, 1), rad_(b - a + 1, 1), sigma_rad_(b - a + 1, 1) {
    for (u64 i = 0; i < rest_.size(); ++i) rest_[i] = a + i;
    for (std::uint32_t p : primes) {
      if (u64{p} * p > b) break;
      for (u64 m = (a + p - 1) / p * p; m <= b; m += p) {
        const u64 i = m - a;
        u64 r = rest_[i], pk = 1, sum = 1;
        do {
          r /= p;
          pk *= p;
          sum += pk;
        } while (r % p == 0);
        rest_[i] = r;
        sigma_[i] *= sum;
        rad_[i] *= p;
        sigma_rad_[i] *= p + 1;
      }
    }
    for (u64 i = 0; i < rest_.size(); ++i) {
      if (rest_[i] > 1) {
        sigma_[i] *= rest_[i] + 1;
        rad_[i] *= rest_[i];
        sigma_rad_[i] *= rest_[i] + 1;
      }
    }
  }

  u64 sigma(u64 i) const { return sigma_[i]; }
  u64 rad(u64 i) const { return rad_[i]; }
  u64 sigma_rad(u64 i) const { return sigma_rad_[i]; }

 private:
  std::vector<u64> rest_, sigma_, rad_, sigma_rad_;
};

BlockResult run_block(const ScanPlan& plan, u64 index, const std::vector<std::uint32_t>& primes) {
  const u64 a = plan.block_lo(index), b = plan.block_hi(index);
  const DivisorSieve sieve(a, b, primes);
  BlockResult out;
  for (u64 n = a; n <= b; ++n) {
    const u64 i = n - a;
    if (plan.property == ScanProperty::Perfect) {
      if (!matches(plan.parity, n)) continue;
      ++out.tested;
      if (sieve.sigma(i) == 2 * n)
        out.findings.push_back({n, "sigma(n) = 2n = " + std::to_string(2 * n)});
    } else {
      if (!(n & 1)) continue;
      ++out.tested;
      // abundancy(rad) vs abundancy(n): sigma(rad)/2rad vs sigma(n)/2n.
      const u128 lhs = u128{sieve.sigma_rad(i)} * n;
      const u128 rhs = u128{sieve.sigma(i)} * sieve.rad(i);
      const bool squarefree = sieve.rad(i) == n;
      const bool ok = squarefree ? lhs == rhs : lhs < rhs;
      if (!ok)
        out.findings.push_back({n, "sigma(rad)/2rad = " + std::to_string(sieve.sigma_rad(i)) + "/" +
                                       std::to_string(2 * sieve.rad(i)) + " vs sigma(n)/2n = " +
                                       std::to_string(sieve.sigma(i)) + "/" + std::to_string(2 * n)});
    }
  }
  return out;
}

nlohmann::json block_line(u64 index, const BlockResult& r) {
  nlohmann::json findings = nlohmann::json::array();
  for (const auto& f : r.findings) findings.push_back({{"n", f.n}, {"detail", f.detail}});
  return {{"block", index}, {"tested", r.tested}, {"findings", findings}};
}

// Loads completed blocks and rewrites the file without any torn final line.
void load_checkpoint(const std::filesystem::path& path, const ScanPlan& plan, std::vector<std::optional<BlockResult>>& done) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CheckpointError("cannot create checkpoint " + path.string());
    out << plan.header().dump() << '\n';
    return;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    const auto end = content.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(content.substr(start));
      break;
    }
    lines.push_back(content.substr(start, end - start));
    start = end + 1;
  }
  const bool torn_tail = !content.empty() && content.back() != '\n';
  if (lines.empty()) throw CheckpointError("checkpoint " + path.string() + " is empty");

  auto parse = [&](std::size_t i) -> std::optional<nlohmann::json> {
    auto j = nlohmann::json::parse(lines[i], nullptr, false);
    if (j.is_discarded()) {
      if (torn_tail && i + 1 == lines.size()) return std::nullopt;
      throw CheckpointError("malformed checkpoint line " + std::to_string(i + 1));
    }
    return j;
  };
  const auto header = parse(0);
  if (!header || *header != plan.header())
    throw CheckpointError("checkpoint " + path.string() + " belongs to a different scan");

  std::string rewritten = plan.header().dump() + "\n";
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = parse(i);
    if (!line) break;
    try {
      const u64 index = line->at("block").get<u64>();
      if (index >= done.size()) throw CheckpointError("checkpoint block index out of range");
      BlockResult r;
      r.tested = line->at("tested").get<u64>();
      for (const auto& f : line->at("findings")) r.findings.push_back({f.at("n").get<u64>(), f.at("detail").get<std::string>()});
      done[index] = std::move(r);
      rewritten += line->dump() + "\n";
    } catch (const nlohmann::json::exception&) {
      throw CheckpointError("malformed checkpoint line " + std::to_string(i + 1));
    }
  }
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw CheckpointError("cannot rewrite checkpoint " + path.string());
  out << rewritten;
}

ScanReport run_scan(const ScanPlan& plan, const ScanOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const u64 blocks = plan.block_count();
  std::vector<std::optional<BlockResult>> done(blocks);
  if (options.checkpoint) load_checkpoint(*options.checkpoint, plan, done);

  std::vector<u64> pending;
  for (u64 i = 0; i < blocks; ++i)
    if (!done[i]) pending.push_back(i);
  if (options.stop_after_blocks && pending.size() > *options.stop_after_blocks) pending.resize(*options.stop_after_blocks);

  const auto primes = primes_up_to(static_cast<std::uint32_t>(isqrt_u64(plan.hi)));
  std::ofstream checkpoint;
  if (options.checkpoint) {
    checkpoint.open(*options.checkpoint, std::ios::app | std::ios::binary);
    if (!checkpoint) throw CheckpointError("cannot append to checkpoint " + options.checkpoint->string());
  }

  std::mutex io;
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = cursor.fetch_add(1);
      if (slot >= pending.size()) return;
      const u64 index = pending[slot];
      BlockResult r = run_block(plan, index, primes);
      if (checkpoint.is_open()) {
        const std::string line = block_line(index, r).dump();
        std::lock_guard lock(io);
        checkpoint << line << '\n' << std::flush;
      }
      done[index] = std::move(r);  // distinct slots per worker
    }
  };

  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, pending.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  ScanReport report;
  report.property = plan.property;
  report.parity = plan.parity;
  report.range_lo = plan.lo;
  report.range_hi = plan.hi;
  for (auto& block : done) {
    if (!block) {
      report.complete = false;
      continue;
    }
    report.tested_count += block->tested;
    report.violations.insert(report.violations.end(), block->findings.begin(), block->findings.end());
  }
  report.elapsed = std::chrono::steady_clock::now() - started;
  return report;
}

void validate(u64 lo, u64 hi, const ScanOptions& options) {
  if (lo < 2) throw InvalidRange("scan range must start above 1");
  if (lo > hi) throw InvalidRange("scan range has lo > hi");
  if (hi > kMaxScanValue) throw InvalidRange("scan range exceeds 2^50");
  if (hi - lo > options.max_range) throw InvalidRange("scan range wider than the configured maximum");
  if (options.block_size == 0) throw InvalidRange("block size must be positive");
}

}  // namespace

ScanReport scan_perfect(std::uint64_t lo, std::uint64_t hi, Parity parity, const ScanOptions& options) {
  validate(lo, hi, options);
  return run_scan({ScanProperty::Perfect, parity, lo, hi, options.block_size}, options);
}

ScanReport scan_radical_chain(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options) {
  validate(lo, hi, options);
  return run_scan({ScanProperty::RadicalChain, Parity::Odd, lo, hi, options.block_size}, options);
}

nlohmann::json to_json(const ScanReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) violations.push_back({{"n", v.n}, {"detail", v.detail}});
  return {{"property", std::string(to_string(report.property))},
          {"parity", std::string(to_string(report.parity))},
          {"range_lo", report.range_lo},
          {"range_hi", report.range_hi},
          {"tested_count", report.tested_count},
          {"violations", violations},
          {"complete", report.complete},
          {"elapsed_seconds", report.elapsed.count()}};
}

}  // namespace opn
