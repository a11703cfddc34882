#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invis/verify.hpp"

namespace invis::io {

/// Rim hits above this fraction of a flow's rays fail the verdict.
inline constexpr double kMaxSingularFraction = 1e-3;

/// Machine-readable verification output. One block per flow direction.
struct ReportFile {
  int version = 1;
  std::string scene_hash;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::vector<VerificationReport> flows;
  std::optional<double> timing_seconds;

  /// Every flow invisible, with rim hits at or below kMaxSingularFraction.
  bool all_pass() const;
};

std::string serialize(const ReportFile& r);
ReportFile parse_report(const std::string& text);

}  // namespace invis::io
