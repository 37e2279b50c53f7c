#ifndef KQ_REPORTS_HPP
#define KQ_REPORTS_HPP

#include <json.hpp>

#include <string>

namespace kq {

// Exit/status codes shared by the library API and the CLI.
enum : int {
  KQ_OK = 0,
  KQ_VERIFY_FAILED = 1,
  KQ_PARSE_ERROR = 2,
  KQ_EXTENSION_REQUIRED = 3,
};

struct CommandResult {
  int code = KQ_OK;
  nlohmann::json report;
};

// Runs one named command ("segre", "nodes", ..., "verify-paper") with a JSON
// config; never throws, errors are encoded in code/report.
CommandResult run_command(const std::string& command,
                          const nlohmann::json& config);

std::string render_markdown(const nlohmann::json& report);

}  // namespace kq

#endif
