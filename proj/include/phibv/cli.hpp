#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace phibv::cli {

/// Exit codes: 0 success, 1 input could not be processed, 2 a computed
/// certificate or check came out FAIL.
enum ExitCode : int { Ok = 0, Malformed = 1, CertificateFail = 2 };

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ReproduceRow {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

/// Worked-value regression set plus seeded fuzz rows.
std::vector<ReproduceRow> reproduce_rows(unsigned seed);

}  // namespace phibv::cli
