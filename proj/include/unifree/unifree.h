#ifndef UNIFREE_UNIFREE_H
#define UNIFREE_UNIFREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(UNIFREE_BUILDING_LIBRARY)
#define UNIFREE_API __attribute__((visibility("default")))
#else
#define UNIFREE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum unifree_status {
  UNIFREE_OK = 0,
  UNIFREE_CHECK_FAILED = 1, /* the report was produced and some check failed */
  UNIFREE_INPUT_ERROR = 2,  /* malformed input, unknown names, violated preconditions */
  UNIFREE_INTERNAL_ERROR = 3
} unifree_status;

/* Matches unifree::ErrorCode; UNIFREE_ERR_NONE when the last call succeeded. */
typedef enum unifree_error_code {
  UNIFREE_ERR_NONE = -1,
  UNIFREE_ERR_ELEMENT_NOT_IN_MONOID = 0,
  UNIFREE_ERR_EMPTY_CARRIER,
  UNIFREE_ERR_BOUND_EXCEEDED,
  UNIFREE_ERR_MALFORMED_TEMPLATE,
  UNIFREE_ERR_MALFORMED_INPUT,
  UNIFREE_ERR_NO_FIXED_POINT,
  UNIFREE_ERR_NOT_ENOUGH_NATURAL_COMPONENTS,
  UNIFREE_ERR_INDEX_OUT_OF_DOMAIN,
  UNIFREE_ERR_NOT_IN_UNIT_BALL,
  UNIFREE_ERR_NOT_NON_EXPANSIVE,
  UNIFREE_ERR_SQUARE_DOES_NOT_COMMUTE,
  UNIFREE_ERR_PRECONDITION_VIOLATED,
  UNIFREE_ERR_DOES_NOT_GENERATE,
  UNIFREE_ERR_USAGE
} unifree_error_code;

typedef struct unifree_report unifree_report;
typedef struct unifree_description unifree_description;

typedef struct unifree_options {
  uint64_t seed;
  int has_bound;
  size_t bound;
} unifree_options;

UNIFREE_API const char* unifree_version(void);

/* Message and code of the most recent failure on this thread. */
UNIFREE_API const char* unifree_last_error(void);
UNIFREE_API unifree_error_code unifree_last_error_code(void);
UNIFREE_API const char* unifree_error_name(unifree_error_code code);

/* Commands. Inputs are JSON texts; options may be NULL. On UNIFREE_OK and
   UNIFREE_CHECK_FAILED *out holds a report owned by the caller. */
UNIFREE_API unifree_status unifree_analyze(const char* description_json, const unifree_options* options,
                                           unifree_report** out);
UNIFREE_API unifree_status unifree_lift(const char* source_json, const char* target_json, size_t depth,
                                        const unifree_options* options, unifree_report** out);
UNIFREE_API unifree_status unifree_certify(const char* certificate_json, const unifree_options* options,
                                           unifree_report** out);
/* monoid_json may be NULL. */
UNIFREE_API unifree_status unifree_laws(const char* category, const char* mode, const char* monoid_json,
                                        const unifree_options* options, unifree_report** out);
UNIFREE_API unifree_status unifree_ellone_lift(const char* matrix_json, const char* seed_json, size_t depth,
                                               const unifree_options* options, unifree_report** out);
/* action_json may be NULL. */
UNIFREE_API unifree_status unifree_universal(const char* category, const char* monoid_json, const char* action_json,
                                             const unifree_options* options, unifree_report** out);

UNIFREE_API int unifree_report_passed(const unifree_report* report);
/* Sorted-key JSON; pretty-printed with the given indent, compact when < 0. */
UNIFREE_API const char* unifree_report_json(unifree_report* report, int indent);
UNIFREE_API const char* unifree_report_text(const unifree_report* report);
UNIFREE_API void unifree_report_free(unifree_report* report);

/* A parsed self-map description, reusable across queries. */
UNIFREE_API unifree_status unifree_description_parse(const char* json, unifree_description** out);
UNIFREE_API size_t unifree_description_listed_components(const unifree_description* d);
/* 1 if universal, 0 if not, -1 on error. */
UNIFREE_API int unifree_description_is_universal(const unifree_description* d);
UNIFREE_API void unifree_description_free(unifree_description* d);

#ifdef __cplusplus
}
#endif

#endif
