#ifndef MASSCALC_H
#define MASSCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_POINTER = 1,
  MC_STATUS_INVALID_UTF8 = 2,
  MC_STATUS_PARSE = 3,
  MC_STATUS_FIELD_MISMATCH = 4,
  MC_STATUS_DIMENSION_MISMATCH = 5,
  MC_STATUS_DIVISION_BY_ZERO = 6,
  MC_STATUS_NO_CENTER = 7,
  MC_STATUS_UNSUPPORTED_CHARACTERISTIC = 8,
  MC_STATUS_DEGENERATE = 9,
  MC_STATUS_SCHEMA = 10,
  MC_STATUS_OTHER = 11,
} McStatus;

/**
 * A scalar field.
 */
typedef struct McField McField;

/**
 * A weighty point or a mass dipole.
 */
typedef struct McMassElement McMassElement;

/**
 * A finite weighted set of points.
 */
typedef struct McWeightedSet McWeightedSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *mc_last_error(void);

/**
 * Frees a string returned by the library.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void mc_string_free(char *s);

/**
 * Creates a field from `"rational"`, `"fp:<p>"`, `"float"` or
 * `"float:<eps>"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum McStatus mc_field_new(const char *spec, struct McField **out);

/**
 * # Safety
 * `field` must be null or a handle from [`mc_field_new`], not yet freed.
 */
void mc_field_free(struct McField *field);

/**
 * Creates an empty weighted set in dimension `dim`.
 *
 * # Safety
 * `field` must be a live field handle and `out` a valid pointer.
 */
enum McStatus mc_weighted_set_new(const struct McField *field,
                                  uintptr_t dim,
                                  struct McWeightedSet **out);

/**
 * Adds `mass` at the point with the given `dim` coordinates. Masses at an
 * existing point are summed.
 *
 * # Safety
 * `set` must be a live handle, `coords` an array of `dim` NUL-terminated
 * strings and `mass` a NUL-terminated string.
 */
enum McStatus mc_weighted_set_insert(struct McWeightedSet *set,
                                     const char *const *coords,
                                     uintptr_t dim,
                                     const char *mass);

/**
 * Number of distinct points carrying nonzero mass.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
uintptr_t mc_weighted_set_len(const struct McWeightedSet *set);

/**
 * # Safety
 * `set` must be null or a handle from [`mc_weighted_set_new`], not yet freed.
 */
void mc_weighted_set_free(struct McWeightedSet *set);

/**
 * The weighty point or dipole a weighted set reduces to.
 *
 * # Safety
 * `set` must be a live handle and `out` a valid pointer.
 */
enum McStatus mc_reduce(const struct McWeightedSet *set, struct McMassElement **out);

/**
 * A weighty point. Zero mass gives the zero dipole.
 *
 * # Safety
 * `field` must be a live handle, `coords` an array of `dim` strings, `mass`
 * a string and `out` a valid pointer.
 */
enum McStatus mc_weighty_new(const struct McField *field,
                             const char *const *coords,
                             uintptr_t dim,
                             const char *mass,
                             struct McMassElement **out);

/**
 * A mass dipole with the given vector.
 *
 * # Safety
 * As for [`mc_weighty_new`].
 */
enum McStatus mc_dipole_new(const struct McField *field,
                            const char *const *coords,
                            uintptr_t dim,
                            struct McMassElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum McStatus mc_mass_add(const struct McMassElement *a,
                          const struct McMassElement *b,
                          struct McMassElement **out);

/**
 * # Safety
 * `e` must be a live handle, `factor` a string and `out` a valid pointer.
 */
enum McStatus mc_mass_scale(const struct McMassElement *e,
                            const char *factor,
                            struct McMassElement **out);

/**
 * Whether `e` is a weighty point. False for null.
 *
 * # Safety
 * `e` must be null or a live handle.
 */
bool mc_mass_is_weighty(const struct McMassElement *e);

/**
 * JSON text of `e`, for example
 * `{"type":"weighty","point":["4","0"],"mass":"3"}`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer. The string is freed
 * with [`mc_string_free`].
 */
enum McStatus mc_mass_to_json(const struct McMassElement *e, char **out);

/**
 * # Safety
 * `e` must be null or a handle from this library, not yet freed.
 */
void mc_mass_free(struct McMassElement *e);

/**
 * Executes a JSON query document. On success `*out_json` receives the
 * report and `*exit_code` is 0 when every verdict passed, 1 otherwise.
 * On failure `*exit_code` holds the command-line exit code of the error.
 * `field` may be null to keep the document's own field.
 *
 * # Safety
 * `text` must be a NUL-terminated string, `field` null or a live handle,
 * and both output pointers valid.
 */
enum McStatus mc_run_document(const char *text,
                              const struct McField *field,
                              char **out_json,
                              int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MASSCALC_H */
