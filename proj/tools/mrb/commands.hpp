#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace mrb::cli {

enum ExitCode : int { ok = 0, violations = 1, input_error = 2 };

/// Runs one invocation (arguments without the program name) and writes the
/// JSON report to `out`. Relative file arguments resolve against `base`, or
/// against the working directory when `base` is empty.
int run(const std::vector<std::string>& args, std::ostream& out, const std::filesystem::path& base = {});

}  // namespace mrb::cli
