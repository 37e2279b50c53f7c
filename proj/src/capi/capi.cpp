#include "kummerquartic.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/reports.hpp"

struct kq_context {
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

kq_context* kq_context_new(void) { return new (std::nothrow) kq_context; }

void kq_context_free(kq_context* ctx) { delete ctx; }

int kq_run(kq_context* ctx, const char* command, const char* config_json,
           char** out) {
  if (out) *out = nullptr;
  if (!ctx || !command) return KQ_PARSE_ERROR;
  nlohmann::json config;
  if (config_json && *config_json) {
    config = nlohmann::json::parse(config_json, nullptr, false);
    if (config.is_discarded()) {
      ctx->last_error = "config is not valid JSON";
      if (out) *out = dup_string("{\"error\":\"config is not valid JSON\"}");
      return KQ_PARSE_ERROR;
    }
  } else {
    config = nlohmann::json::object();
  }
  auto result = kq::run_command(command, config);
  ctx->last_error =
      result.code == KQ_OK ? "" : result.report.value("error", "");
  if (out) {
    std::string text = config.value("format", "json") == "markdown"
                           ? kq::render_markdown(result.report)
                           : result.report.dump(2);
    *out = dup_string(text);
  }
  return result.code;
}

const char* kq_last_error(const kq_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

const char* kq_strerror(int code) {
  switch (code) {
    case KQ_OK:
      return "ok";
    case KQ_VERIFY_FAILED:
      return "verification failed";
    case KQ_PARSE_ERROR:
      return "input or parse error";
    case KQ_EXTENSION_REQUIRED:
      return "field extension required";
    default:
      return "unknown status";
  }
}

void kq_string_free(char* s) { std::free(s); }

}  // extern "C"
