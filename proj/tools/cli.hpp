#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "report.hpp"

namespace lvk::cli {

/// Runs one command line (without the program name) and returns the exit
/// code: 0 ok, 2 parse or usage error, 3 verification or solution failure,
/// 4 unavailable (algebraic extension), 5 form not closed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Whitespace-separated words with double quotes grouping, as used on the
/// catalog's "#!" lines.
std::vector<std::string> split_words(const std::string& line);

}  // namespace lvk::cli
