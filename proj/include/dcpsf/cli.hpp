#pragma once

// Text formats and the command-line driver.

#include <iosfwd>
#include <string>
#include <string_view>

#include "dcpsf/summation.hpp"
#include "dcpsf/theta.hpp"
#include "dcpsf/transform.hpp"

namespace dcpsf::cli {

enum ExitCode : int {
  kOk = 0,
  kFail = 1,
  kUsage = 2,
  kCap = 3,
};

/// {"dim_d": d, "terms": [{"coeff": c, "factors": [{"kind": 2|3|4,
///   "power": p, "scale": [num, den]}]}]}
ThetaSpec parse_spec(std::string_view json_text);
std::string spec_to_json(const ThetaSpec& spec);

/// "c,k,alpha;c,k,alpha;..." -> sum c r^{2k} e^{-alpha r^2}
GaussPoly parse_gausspoly(std::string_view text);

std::string report_to_json(const VerificationReport& report);

/// Runs one subcommand; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcpsf::cli
