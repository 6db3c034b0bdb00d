/* knotcurv: geometric invariants and certified inequalities for sampled
 * space curves. C interface over the C++ core; every entry point returns a
 * kc_status and leaves a human-readable message in kc_last_error() on
 * failure. Handles are opaque and freed with kc_curve_free; strings
 * returned through char** are freed with kc_string_free.
 */
#ifndef KNOTCURV_H
#define KNOTCURV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kc_status {
    KC_OK = 0,
    KC_ERR_INVALID_ARGUMENT = 1,
    KC_ERR_INVALID_CURVE = 2,
    KC_ERR_SELF_INTERSECTION = 3,
    KC_ERR_PRECONDITION = 4,
    KC_ERR_PARSE = 5,
    KC_ERR_IO = 6,
    KC_ERR_INTERNAL = 7
} kc_status;

typedef struct kc_curve kc_curve;

const char* kc_status_name(kc_status status);

/* Message for the most recent failure on the calling thread. */
const char* kc_last_error(void);

/* Curve I/O. The JSON format is
 *   {"closed": bool, "vertices": [[x,y,z], ...], "meta": {...}}
 * and serialization is deterministic (round-trips byte-identically). */
kc_status kc_curve_from_json(const char* json_text, kc_curve** out);
kc_status kc_curve_to_json(const kc_curve* curve, char** json_out);
kc_status kc_curve_read(const char* path, kc_curve** out);
kc_status kc_curve_write(const kc_curve* curve, const char* path);
void kc_curve_free(kc_curve* curve);
void kc_string_free(char* text);

/* Generator dispatch. spec_json:
 *   {"family": "...", "samples": N, "params": {...}}
 * with families torus_knot, helix_composite, spiral, rounded_polygon,
 * fourier_random, circle, line_segment. */
kc_status kc_generate(const char* spec_json, kc_curve** out);

kc_status kc_resample(const kc_curve* curve, size_t n, kc_curve** out);

size_t kc_curve_vertex_count(const kc_curve* curve);
int kc_curve_is_closed(const kc_curve* curve);

kc_status kc_arclength(const kc_curve* curve, double* out);
kc_status kc_total_curvature(const kc_curve* curve, double* out);
kc_status kc_thickness(const kc_curve* curve, double* out);
kc_status kc_min_enclosing_ball(const kc_curve* curve, double center[3], double* radius);
kc_status kc_illumination(const kc_curve* curve, const double basepoint[3], double* value,
                          double* error_estimate);

/* Full invariant report as JSON (fields: length, total_curvature,
 * thickness, ropelength, acn, writhe, mobius_energy, near, far,
 * error_estimates; closed-curve-only fields are null for open curves).
 * refine != 0 adds Richardson "<name>_refine" error entries; workers <= 0
 * means use the hardware. */
kc_status kc_invariants(const kc_curve* curve, int refine, int workers, char** report_json);

/* Certified inequalities. which is one of
 *   packing | oscillation | illumination | main_theorem | shells | all
 * ("all" runs packing, illumination, shells, and - for closed curves -
 * main_theorem; oscillation only runs when selected explicitly since it
 * needs its sphere radii). params_json (may be NULL or "{}") recognizes:
 *   "rho": number            packing ball radius (default: enclosing ball)
 *   "a", "b": numbers        oscillation sphere radii (required for it)
 *   "center": [x,y,z]        oscillation sphere center (default origin)
 *   "basepoint": [x,y,z]     illumination / shells basepoint (default: a
 *                            point 2.5 beyond the enclosing ball)
 *   "subarcs": N             shells sub-arc count (default: smallest valid)
 * Returns a JSON array of certificates {name, lhs, rhs, margin, pass,
 * tolerance_used, inputs_digest}; *all_pass is 1 iff every one passed. */
kc_status kc_verify(const kc_curve* curve, const char* which, const char* params_json,
                    int workers, char** certificates_json, int* all_pass);

/* Projection-count crossing oracle over seeded random directions.
 * Result JSON: {"mean", "min_observed", "directions", "retries"}. */
kc_status kc_oracle(const kc_curve* curve, size_t directions, unsigned long long seed,
                    int workers, char** result_json);

/* Shell-label diagnostics about a basepoint: the label string, phi/Phi
 * profile with beta bounds, string energy, extremal-string energy.
 * subarcs = 0 picks the smallest valid count. */
kc_status kc_shell_analysis(const kc_curve* curve, const double basepoint[3], size_t subarcs,
                            char** result_json);

/* Shell-occupancy exponent fit over seeded basepoints on the curve.
 * Result JSON: {"beta_hat", "in_conjectured_range", "mean_residual",
 * "per_point": [{vertex, slope, residual, shells}]}. */
kc_status kc_shell_exponent(const kc_curve* curve, size_t basepoints, unsigned long long seed,
                            char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* KNOTCURV_H */
