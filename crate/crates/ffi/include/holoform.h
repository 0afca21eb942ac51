#ifndef HOLOFORM_H
#define HOLOFORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum HfStatus {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_POINTER = 1,
  HF_STATUS_INVALID_UTF8 = 2,
  HF_STATUS_PARSE = 3,
  HF_STATUS_DIMENSION_MISMATCH = 4,
  HF_STATUS_WRONG_DEGREE = 5,
  HF_STATUS_NOT_CLOSED = 6,
  HF_STATUS_UNKNOWN = 7,
  HF_STATUS_NO_SOLUTION = 8,
  HF_STATUS_INVALID = 9,
  HF_STATUS_PANIC = 10,
} HfStatus;

typedef enum HfStructure {
  HF_STRUCTURE_G2 = 0,
  HF_STRUCTURE_SPIN7 = 1,
  HF_STRUCTURE_CY3 = 2,
} HfStructure;

// A constant form on ℝⁿ.
typedef struct HfForm HfForm;

// A cone or cylinder preset.
typedef struct HfPreset HfPreset;

// The outcome of a verification suite.
typedef struct HfReport HfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or NULL after a
// successful one. Valid until the next call on the same thread.
const char *hf_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and must not be freed twice.
void hf_string_free(char *s);

// Library version, statically allocated.
const char *hf_version(void);

// Parses `e12 + 2/3 e47 - (1+i) e5` on ℝⁿ, axis labels starting at
// `base` (0 or 1).
//
// # Safety
// `src` must be a nul-terminated string; `out` must be writable.
enum HfStatus hf_form_parse(const char *src, size_t n, size_t base, struct HfForm **out);

// A form of the canonical structure: "phi" and "psi" (G2, Spin7),
// "Omega" (Spin7), "omega", "Omega30", "ReOmega" and "ImOmega" (CY3).
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum HfStatus hf_structure_form(enum HfStructure kind, const char *name, struct HfForm **out);

// # Safety
// `form` must come from this library and must not be freed twice.
void hf_form_free(struct HfForm *form);

// Dimension of the ambient ℝⁿ, 0 for NULL.
//
// # Safety
// `form` must be NULL or a live handle.
size_t hf_form_dim(const struct HfForm *form);

// # Safety
// `a` and `b` must be NULL or live handles.
bool hf_form_equal(const struct HfForm *a, const struct HfForm *b);

// # Safety
// `form` must be a live handle; `out` must be writable.
enum HfStatus hf_form_to_string(const struct HfForm *form, size_t base, char **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HfStatus hf_form_add(const struct HfForm *a, const struct HfForm *b, struct HfForm **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HfStatus hf_form_wedge(const struct HfForm *a, const struct HfForm *b, struct HfForm **out);

// Hodge star of the Euclidean metric and standard orientation.
//
// # Safety
// `form` must be a live handle; `out` must be writable.
enum HfStatus hf_form_star(const struct HfForm *form, struct HfForm **out);

// The bilinear pairing ⟨a, b⟩, written as an exact Gaussian rational.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HfStatus hf_form_inner(const struct HfForm *a, const struct HfForm *b, char **out);

// Splits a 2-form into irreducible components; JSON on success.
//
// # Safety
// `form` must be a live handle; `out` must be writable.
enum HfStatus hf_decompose_json(const struct HfForm *form,
                                enum HfStructure kind,
                                size_t base,
                                char **out);

// Runs a named suite (`all` for every suite). A report with failing
// checks is still `HF_STATUS_OK`; inspect it with `hf_report_counts`.
// `samples` 0 selects the default.
//
// # Safety
// `suite` must be a nul-terminated string; `out` must be writable.
enum HfStatus hf_run_suite(const char *suite, uint64_t seed, size_t samples, struct HfReport **out);

// # Safety
// `report` must come from this library and must not be freed twice.
void hf_report_free(struct HfReport *report);

// Check tallies; any output pointer may be NULL.
//
// # Safety
// `report` must be a live handle; non-NULL outputs must be writable.
enum HfStatus hf_report_counts(const struct HfReport *report,
                               size_t *pass,
                               size_t *fail,
                               size_t *mismatch);

// # Safety
// `report` must be a live handle; `out` must be writable.
enum HfStatus hf_report_to_json(const struct HfReport *report, char **out);

// Loads a shipped preset by name or alias.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum HfStatus hf_preset_load(const char *name, struct HfPreset **out);

// Parses a preset from TOML source; `extends` may name a shipped preset.
//
// # Safety
// `src` must be a nul-terminated string; `out` must be writable.
enum HfStatus hf_preset_from_toml(const char *src, struct HfPreset **out);

// # Safety
// `preset` must come from this library and must not be freed twice.
void hf_preset_free(struct HfPreset *preset);

// Solves dβ = target over the preset's declared ansatz for that target,
// or over r^a·g and r^a·dr∧g for every generator g with a in
// [lo, hi]. Writes β.
//
// # Safety
// `preset` must be a live handle, `target` a nul-terminated string and
// `out` writable.
enum HfStatus hf_preset_solve(const struct HfPreset *preset,
                              const char *target,
                              int32_t lo,
                              int32_t hi,
                              char **out);

// Growth class of an element, e.g. "linear" or "r^-2".
//
// # Safety
// `preset` must be a live handle, `element` a nul-terminated string and
// `out` writable.
enum HfStatus hf_preset_classify(const struct HfPreset *preset, const char *element, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOLOFORM_H */
