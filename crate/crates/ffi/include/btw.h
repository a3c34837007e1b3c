#ifndef BTW_H
#define BTW_H

/* Generated from the btw-ffi crate; regenerate with cargo build, do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result discriminant of every call.
 *
 * `Ok`, `Violation`, and `Unsat` mirror the CLI exit codes; the remaining
 * values flag misuse of the boundary itself.
 */
typedef enum BtwStatus {
  BTW_STATUS_OK = 0,
  BTW_STATUS_VIOLATION = 1,
  BTW_STATUS_UNSAT = 2,
  BTW_STATUS_INVALID_INPUT = 3,
  BTW_STATUS_NULL_ARGUMENT = 4,
  BTW_STATUS_PANIC = 5,
} BtwStatus;

/**
 * A parsed finite map (opaque).
 */
typedef struct BtwMap BtwMap;

/**
 * A parsed projective transform (opaque).
 */
typedef struct BtwTransform BtwTransform;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the underlying library, as a static string (do not free).
 */
const char *btw_version(void);

/**
 * Releases a string returned by any function here. NULL is a no-op.
 */
void btw_string_free(char *s);

/**
 * Parses a finite-map JSON document
 * (`{"structure":"euclidean"|"discrete","pairs":[[point,target],...]}`).
 * On `BTW_STATUS_INVALID_INPUT` the error message lands in `out_error`.
 */
enum BtwStatus btw_map_parse(const char *json, struct BtwMap **out_map, char **out_error);

void btw_map_free(struct BtwMap *map);

/**
 * Number of domain points of the map.
 */
size_t btw_map_len(const struct BtwMap *map);

/**
 * Exhaustively verifies betweenness preservation (and, when `injective`
 * is set, injectivity). `out_verdict` receives the verdict JSON — `"ok"`
 * or `{"violation":{...witness...}}` — and the status mirrors it.
 */
enum BtwStatus btw_map_check(const struct BtwMap *map, bool injective, char **out_verdict);

/**
 * Classifies the map's planar image; `out_class` receives the tagged
 * class JSON. A `violation` class yields `BTW_STATUS_VIOLATION`; a map without
 * planar targets yields `BTW_STATUS_INVALID_INPUT`.
 */
enum BtwStatus btw_map_classify(const struct BtwMap *map, char **out_class);

/**
 * Parses a transform JSON document (`{"m":[[...],[...],[...]]}`).
 */
enum BtwStatus btw_transform_parse(const char *json,
                                   struct BtwTransform **out_transform,
                                   char **out_error);

void btw_transform_free(struct BtwTransform *transform);

/**
 * Fits the transform through two JSON quadruples (4 source points, 4
 * target points, no three collinear on either side).
 */
enum BtwStatus btw_transform_fit(const char *source,
                                 const char *target,
                                 struct BtwTransform **out_transform,
                                 char **out_error);

/**
 * Serializes the transform back to `{"m":[...]}` JSON.
 */
enum BtwStatus btw_transform_to_json(const struct BtwTransform *transform, char **out_json);

/**
 * Applies the transform to a JSON point list; `out_points` receives the
 * image list. A point on the vanishing line is `BTW_STATUS_INVALID_INPUT`.
 */
enum BtwStatus btw_transform_eval(const struct BtwTransform *transform,
                                  const char *points,
                                  char **out_points);

/**
 * Grows the segment-intersection closure of `base` for `generations`
 * rounds, replays it through the transform fitted on `base ↦ image`, and
 * demands exact agreement. `out_report` receives
 * `{"rigidity":"ok","points":n}` or the mismatch record
 * (`BTW_STATUS_VIOLATION`). Both arguments are JSON quadruples: a triangle
 * followed by a strictly interior point.
 */
enum BtwStatus btw_rigidity_check(const char *base,
                                  const char *image,
                                  size_t generations,
                                  char **out_report);

/**
 * Embeds a JSON point list through the injective monotone functional
 * `x + t·y`; `out_result` receives `{"u":...,"v":...,"values":[...]}`.
 */
enum BtwStatus btw_projection_embed(const char *points, char **out_result);

/**
 * Renders a scene JSON document to an SVG string.
 */
enum BtwStatus btw_render_svg(const char *scene, char **out_svg);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BTW_H */
