#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "entbounds/bounds.hpp"

namespace entb {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

/// Full command line: `figure`, `verify` or `bounds` followed by options.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "auto", "1" or a comma-separated list of explicit values.
PChoice parse_p_choice(const std::string& text);

std::string report_text(const BoundReport& r);
std::string report_csv_header();
std::string report_csv_row(const BoundReport& r);

}  // namespace entb
