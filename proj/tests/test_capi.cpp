#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <string>

#include "kummerquartic.h"

static std::string run(const char* command, const char* config, int* code,
                       kq_context* ctx) {
  char* out = nullptr;
  *code = kq_run(ctx, command, config, &out);
  std::string text = out ? out : "";
  kq_string_free(out);
  return text;
}

TEST_CASE("status codes and reports") {
  kq_context* ctx = kq_context_new();
  int code;
  auto ok = run("segre", R"({"preset":"fermat-i"})", &code, ctx);
  CHECK(code == KQ_OK);
  auto j = nlohmann::json::parse(ok);
  CHECK(j["residual"] == "0");
  CHECK(j["pass"] == true);
  CHECK(std::string(kq_last_error(ctx)).empty());

  auto fail = run("segre", R"({"preset":"magma-s4-raw"})", &code, ctx);
  CHECK(code == KQ_VERIFY_FAILED);
  CHECK(nlohmann::json::parse(fail)["residual"] == "16");

  run("segre", R"({"preset":"no-such"})", &code, ctx);
  CHECK(code == KQ_PARSE_ERROR);
  CHECK(std::string(kq_last_error(ctx)).find("no-such") != std::string::npos);

  run("frobnicate", "{}", &code, ctx);
  CHECK(code == KQ_PARSE_ERROR);

  run("segre", "not json", &code, ctx);
  CHECK(code == KQ_PARSE_ERROR);

  auto explicit_params = run(
      "segre", R"x({"params":["1","0","0","0","-i"],"field":"Q(i)"})x", &code,
      ctx);
  CHECK(code == KQ_OK);

  kq_context_free(ctx);
}

TEST_CASE("extension-required surfaces report code 3") {
  kq_context* ctx = kq_context_new();
  int code;
  auto text = run("sheets", R"({"preset":"example-class-group-t"})", &code,
                  ctx);
  CHECK(code == KQ_EXTENSION_REQUIRED);
  auto j = nlohmann::json::parse(text);
  CHECK(j.contains("missing_root"));
  CHECK(j["hint"].get<std::string>().find("s-parameterized") !=
        std::string::npos);
  kq_context_free(ctx);
}

TEST_CASE("markdown rendering") {
  kq_context* ctx = kq_context_new();
  int code;
  auto md = run("quadrics", R"({"format":"markdown"})", &code, ctx);
  CHECK(code == KQ_OK);
  CHECK(md.find("# quadrics") == 0);
  CHECK(md.find("-x1*x3 + x0*x2") != std::string::npos);
  kq_context_free(ctx);
}

TEST_CASE("strerror table") {
  CHECK(std::string(kq_strerror(KQ_OK)) == "ok");
  CHECK(std::string(kq_strerror(KQ_EXTENSION_REQUIRED)) ==
        "field extension required");
}
