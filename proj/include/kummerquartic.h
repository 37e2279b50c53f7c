#ifndef KUMMERQUARTIC_H
#define KUMMERQUARTIC_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by kq_run. */
enum {
  KQ_OK = 0,
  KQ_VERIFY_FAILED = 1,
  KQ_PARSE_ERROR = 2,
  KQ_EXTENSION_REQUIRED = 3
};

typedef struct kq_context kq_context;

kq_context* kq_context_new(void);
void kq_context_free(kq_context* ctx);

/*
 * Runs one command ("segre", "nodes", "tropes", "recover-curve", "aut",
 * "sheets", "gram", "class-rank", "lines", "quadrics", "incidence",
 * "orbits", "classify-point", "verify-paper") with a JSON configuration
 * (NULL or empty means {}). On return *out, when non-NULL, holds the report
 * as JSON, or as markdown when the config sets "format": "markdown"; free
 * it with kq_string_free. Returns a status code.
 */
int kq_run(kq_context* ctx, const char* command, const char* config_json,
           char** out);

/* Message of the last failing kq_run on this context, empty on success. */
const char* kq_last_error(const kq_context* ctx);

const char* kq_strerror(int code);

void kq_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
