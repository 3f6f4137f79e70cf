#pragma once

// Audits a candidate factorization against known necessary conditions for an
// odd perfect number. Every check always runs; the report lists all of them.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "opnkit/arith.hpp"
#include "opnkit/bounds.hpp"

namespace opn {

enum class Verdict { Pass, Fail, NotApplicable, Undecided };
enum class Overall { Viable, Refuted, Undecided };

std::string_view to_string(Verdict v);
std::string_view to_string(Overall o);

struct ConstraintVerdict {
  std::string id;
  Verdict verdict = Verdict::Undecided;
  std::string detail;
};

struct ConstraintReport {
  Factorization candidate;
  std::vector<ConstraintVerdict> verdicts;
  Overall overall = Overall::Undecided;

  const ConstraintVerdict* find(std::string_view id) const;
};

struct AuditOptions {
  /// Interval refinement cap for the alpha/beta bound checks.
  std::size_t precision_cap_bits = kDefaultPrecisionCapBits;
  /// perfect_exact evaluates sigma(N) = 2N only when N has at most this many
  /// decimal digits.
  std::size_t max_exact_digits = 100'000;
  /// brent_size/nielsen_size materialize N only below this many bits.
  std::size_t max_eval_bits = std::size_t{1} << 24;
};

/// Stable verdict ids, in report order.
const std::vector<std::string_view>& constraint_ids();

ConstraintReport audit(const Factorization& f, const AuditOptions& options = {});

/// Refuted iff any Fail; Viable iff every verdict is Pass or NotApplicable.
Overall combine(const std::vector<ConstraintVerdict>& verdicts);

/// One line per verdict ("PASS id: detail", "FAIL ...", "N/A ...",
/// "UNDECIDED ..."), then "overall: <Viable|Refuted|Undecided>".
std::string explain(const ConstraintReport& report);

nlohmann::json to_json(const ConstraintReport& report);

}  // namespace opn
