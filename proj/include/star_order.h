/* star_order.h - C interface to the star-order-lab library.
 *
 * All functions return a sol_status; results are JSON documents allocated by
 * the library and released with sol_string_free. Objects travel as opaque
 * handles with explicit create/free pairs. Error details for the most recent
 * failing call on the current thread are available via sol_last_error.
 *
 * Status values deliberately match the CLI exit-code contract:
 *   0 ok / feasible, 1 negative outcome (non-member, witness not found, ...),
 *   2 bad input, 3 solver undecided, 4 internal failure.
 */
#ifndef STAR_ORDER_H
#define STAR_ORDER_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SOL_OK = 0,
    SOL_NEGATIVE = 1,
    SOL_BAD_INPUT = 2,
    SOL_UNDECIDED = 3,
    SOL_INTERNAL = 4
} sol_status;

typedef struct sol_poly sol_poly;
typedef struct sol_moments sol_moments;
typedef struct sol_cone sol_cone;

/* Message for the last failing call on this thread; empty string if none. */
const char* sol_last_error(void);

void sol_string_free(char* s);

sol_status sol_poly_parse(const char* json_text, sol_poly** out);
void sol_poly_free(sol_poly* p);
sol_status sol_poly_to_json(const sol_poly* p, char** json_out);

sol_status sol_moments_parse(const char* json_text, sol_moments** out);
void sol_moments_free(sol_moments* m);
sol_status sol_moments_to_json(const sol_moments* m, char** json_out);

sol_status sol_cone_parse(const char* json_text, sol_cone** out);
void sol_cone_free(sol_cone* c);

/* Options are a JSON object; unknown keys are ignored. Recognized keys:
 * "tol" (number), "max_iter" (integer), "seed" (integer), "exact" (bool),
 * "degree" (integer). Pass NULL or "{}" for defaults. */

/* SOS cone: feasibility check (payload carries a certificate when feasible),
 * certificate verification, dual non-membership witness. */
sol_status sol_sos_check(const sol_poly* p, const char* options, char** payload);
sol_status sol_sos_verify(const sol_poly* p, const char* certificate_json,
                          const char* options, char** payload);
sol_status sol_sos_witness(const sol_poly* p, const char* options, char** payload);
sol_status sol_sos_nonradical_demo(const char* options, char** payload);

/* GNS: representation build, quadrature extraction, residual report. */
sol_status sol_gns_build(const sol_moments* m, const char* options, char** payload);
sol_status sol_gns_quadrature(const sol_moments* m, const char* options, char** payload);
sol_status sol_gns_check(const sol_moments* m, const char* options, char** payload);

/* Polyhedral cones: membership, separating functional, dual extreme rays,
 * decomposition over the rays. Vectors are JSON arrays of numbers. */
sol_status sol_cone_member(const sol_cone* c, const char* vector_json, char** payload);
sol_status sol_cone_separate(const sol_cone* c, const char* vector_json, char** payload);
sol_status sol_cone_rays(const sol_cone* c, char** payload);
sol_status sol_cone_decompose(const sol_cone* c, const char* vector_json, char** payload);

/* Riesz spaces R^X at |X| = size: extremal positive functionals and the
 * standard-representation value matrix. elements_json is a JSON array of
 * {"space": n, "values": [...]} objects, or NULL for the canonical basis. */
sol_status sol_riesz_extremal(int size, char** payload);
sol_status sol_riesz_stdrep(int size, const char* elements_json, char** payload);

#ifdef __cplusplus
}
#endif

#endif /* STAR_ORDER_H */
