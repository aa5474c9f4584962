#ifndef GAMMA_DESK_H
#define GAMMA_DESK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GdStatus {
    GD_STATUS_OK = 0,
    GD_STATUS_NULL_POINTER = 1,
    GD_STATUS_INVALID_ARGUMENT = 2,
    GD_STATUS_INVALID_PERMUTATION = 3,
    GD_STATUS_LIMIT_EXCEEDED = 4,
    GD_STATUS_NOT_PALINDROMIC = 5,
    GD_STATUS_ARITHMETIC = 6,
    GD_STATUS_CORRUPT_TABLE = 7,
    GD_STATUS_IO = 8,
    GD_STATUS_OUT_OF_RANGE = 9,
    GD_STATUS_PANIC = 10,
} GdStatus;

typedef struct GdGamma GdGamma;

typedef struct GdPermutation GdPermutation;

typedef struct GdTable GdTable;

// Descent statistics of one permutation.
typedef struct GdStats {
    uint32_t des;
    uint32_t maj;
    uint32_t dd;
    uint32_t dd0;
    uint32_t ddinf;
    uint32_t desp;
    uint32_t ddp;
} GdStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *gd_version(void);

// Message of the last failed call on this thread, or NULL. The caller owns
// the returned string.
char *gd_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library, freed once.
void gd_string_free(char *s);

// Parses a one-line permutation such as "3142" or "3 1 4 2".
//
// # Safety
// `word` must be a NUL-terminated string and `out` a valid pointer.
enum GdStatus gd_perm_parse(const char *word, struct GdPermutation **out);

// Builds a permutation from `len` letters.
//
// # Safety
// `letters` must point to `len` readable values and `out` must be valid.
enum GdStatus gd_perm_new(const uint32_t *letters, size_t len, struct GdPermutation **out);

// # Safety
// `p` must be NULL or a handle from this library, freed once.
void gd_perm_free(struct GdPermutation *p);

// # Safety
// `p` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_perm_len(const struct GdPermutation *p, size_t *out);

// # Safety
// `p` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_perm_stats(const struct GdPermutation *p, struct GdStats *out);

// Whether `p` contains `pattern` as a classical pattern.
//
// # Safety
// Both handles must be valid and `out` a valid pointer.
enum GdStatus gd_perm_contains(const struct GdPermutation *p,
                               const struct GdPermutation *pattern,
                               bool *out);

// # Safety
// `p` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_perm_to_string(const struct GdPermutation *p, char **out);

// Descent polynomial of a class, e.g. "all", "involutions",
// "avoiding:2413,3142", rendered as text.
//
// # Safety
// `class` must be a NUL-terminated string and `out` a valid pointer.
enum GdStatus gd_descent_polynomial(const char *class_, size_t n, char **out);

// γ-vector of a class's descent polynomial.
//
// # Safety
// `class` must be a NUL-terminated string and `out` a valid pointer.
enum GdStatus gd_class_gamma(const char *class_, size_t n, struct GdGamma **out);

// Computes rows 1..=max_n of family 'a' or 'b'.
//
// # Safety
// `out` must be a valid pointer.
enum GdStatus gd_table_compute(char family, uint32_t max_n, struct GdTable **out);

// # Safety
// `t` must be NULL or a handle from this library, freed once.
void gd_table_free(struct GdTable *t);

// Decimal value of entry (n, k); zero outside the support of a stored row.
//
// # Safety
// `t` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_table_entry(const struct GdTable *t, uint32_t n, int64_t k, char **out);

// γ-vector encoded by row `n`.
//
// # Safety
// `t` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_table_gamma(const struct GdTable *t, uint32_t n, struct GdGamma **out);

// # Safety
// `g` must be NULL or a handle from this library, freed once.
void gd_gamma_free(struct GdGamma *g);

// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_gamma_is_nonnegative(const struct GdGamma *g, bool *out);

// Comma-separated coefficients γ_0, γ_1, ...
//
// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_gamma_to_string(const struct GdGamma *g, char **out);

// Twice the center of symmetry of the expanded polynomial.
//
// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum GdStatus gd_gamma_center2(const struct GdGamma *g, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMMA_DESK_H */
