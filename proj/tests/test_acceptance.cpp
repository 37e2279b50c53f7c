// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.
#include <cstdio>

#include "core/reports.hpp"

int main() {
  auto result = kq::run_command("verify-paper", nlohmann::json::object());
  if (!result.report.contains("criteria")) {
    std::printf("FAIL verify-paper did not run: %s\n",
                result.report.value("error", "unknown error").c_str());
    return 1;
  }
  for (auto& c : result.report.at("criteria")) {
    bool pass = c.at("pass");
    std::printf("%s criterion %2d (%s): %s [%.1fs]\n",
                pass ? "PASS" : "FAIL", c.at("index").get<int>(),
                c.at("name").get<std::string>().c_str(),
                c.at("summary").get<std::string>().c_str(),
                c.at("seconds").get<double>());
    if (!pass)
      std::printf("       details: %s\n", c.at("details").dump().c_str());
  }
  return result.code == kq::KQ_OK ? 0 : 1;
}
