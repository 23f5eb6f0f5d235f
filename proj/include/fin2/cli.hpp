#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fin2 {

struct OutputFile {
  std::string path;
  std::string content;
};

/// Exit codes: 0 success, 1 domain error (report names the error), 2 usage.
/// run() touches no files except its inputs; `output` is written by the caller.
struct CommandResult {
  int exit_code = 0;
  std::string report;
  std::optional<OutputFile> output;
};

/// Arguments exclude the program name.
CommandResult run(const std::vector<std::string>& args);

/// Canonical JSON text of every file written or printed: two-space indent,
/// keys sorted, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace fin2
