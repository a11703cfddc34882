#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace invis::cli {

/// Exit codes. Stable; scripts depend on them.
enum ExitCode : int {
  kPass = 0,
  kUsage = 1,
  kInput = 2,    // unreadable or malformed scene, invalid parameters
  kAnomaly = 3,  // tracer anomaly (bounce cap, wall hit)
  kVerdict = 4,  // ran cleanly but a direction is not invisible
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace invis::cli
