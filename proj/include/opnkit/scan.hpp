#pragma once

// Exhaustive range scans driven by a segmented divisor-sum sieve. Blocks are
// processed by a worker pool and merged in block order, so the report does not
// depend on the worker count. Completed blocks can be appended to a
// line-delimited JSON checkpoint and skipped on resume.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace opn {

inline constexpr std::uint64_t kMaxScanValue = std::uint64_t{1} << 50;
inline constexpr std::uint64_t kDefaultBlockSize = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kDefaultMaxRange = 1'000'000'000;

enum class Parity { Odd, Even, All };
enum class ScanProperty { Perfect, RadicalChain };

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view text);
std::string_view to_string(ScanProperty p);
ScanProperty parse_scan_property(std::string_view text);

class InvalidRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanFinding {
  std::uint64_t n = 0;
  std::string detail;

  friend bool operator==(const ScanFinding&, const ScanFinding&) = default;
};

struct ScanReport {
  ScanProperty property = ScanProperty::Perfect;
  Parity parity = Parity::All;
  std::uint64_t range_lo = 0;
  std::uint64_t range_hi = 0;
  std::uint64_t tested_count = 0;
  /// Perfect scan: every perfect number found. Radical-chain scan: every n
  /// where the radical comparison failed.
  std::vector<ScanFinding> violations;
  /// False when stopped early via ScanOptions::stop_after_blocks.
  bool complete = true;
  std::chrono::duration<double> elapsed{};
};

/// Equal in everything except elapsed time.
bool same_results(const ScanReport& a, const ScanReport& b);

struct ScanOptions {
  /// 0 means std::thread::hardware_concurrency().
  unsigned jobs = 0;
  std::uint64_t block_size = kDefaultBlockSize;
  std::uint64_t max_range = kDefaultMaxRange;
  std::optional<std::filesystem::path> checkpoint;
  /// Compute at most this many not-yet-checkpointed blocks, then stop.
  std::optional<std::uint64_t> stop_after_blocks;
};

/// All perfect n in [lo, hi] with the requested parity.
ScanReport scan_perfect(std::uint64_t lo, std::uint64_t hi, Parity parity, const ScanOptions& options = {});

/// For every odd n in [lo, hi]: abundancy(rad n) < abundancy(n) when n is not
/// squarefree, equality when it is.
ScanReport scan_radical_chain(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options = {});

nlohmann::json to_json(const ScanReport& report);

}  // namespace opn
