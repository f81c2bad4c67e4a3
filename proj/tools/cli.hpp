#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kParameterError = 3,
    kNumericalError = 4,
};

/// Runs one command line (program name excluded). Diagnostics go to `err`, the list of
/// written files to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2,4,6,8", "2..9" or a mix such as "2..4,8". Throws symdyn::Error(BadParameter).
[[nodiscard]] std::vector<int> parse_word_lengths(std::string_view text);

}  // namespace symdyn::cli
