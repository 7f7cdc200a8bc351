/*
 * rieszprod C API.
 *
 * The core is a C++ library; this header is the stable surface for
 * embedding it. Conventions:
 *
 *   - Opaque handles (rzp_ctx, rzp_seq, rzp_spec) own their resources and
 *     are released with the matching *_free function.
 *   - Every fallible call returns an rzp_status; on failure a message is
 *     available from rzp_last_error(ctx) until the next call on that ctx.
 *   - Strings returned through char** are heap-allocated; release them
 *     with rzp_string_free.
 *   - Structured inputs and outputs are JSON documents (UTF-8). Numeric
 *     values that must be exact travel as decimal strings; rigorous reals
 *     travel as {"mid_hex", "rad_hex", "prec"} with dyadic hex literals
 *     of the form -0x1bp-7.
 *
 * Beyond the typed handle calls, rzp_run(ctx, op, request, &reply) exposes
 * the analysis operations by name ("kernel.coeff_table", "group.scan",
 * "ip.window", "oracle.expand", "experiment.run", ...); the op table is
 * documented next to rzp_run below.
 */

#ifndef RIESZPROD_H
#define RIESZPROD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rzp_status {
  RZP_OK = 0,
  RZP_ERROR_PARSE = 1,      /* malformed literal, JSON, or CSV */
  RZP_ERROR_INVALID = 2,    /* precondition violated */
  RZP_ERROR_ARITHMETIC = 3, /* division by zero and friends */
  RZP_ERROR_PRECISION = 4,  /* enclosure too wide / comparison undecidable */
  RZP_ERROR_GUARD = 5,      /* enumeration or expansion size guard */
  RZP_ERROR_INFEASIBLE = 6, /* construction admissibility failed */
  RZP_ERROR_VIOLATION = 7,  /* internal invariant refuted (library bug) */
  RZP_ERROR_NOMEM = 8,
  RZP_ERROR_INTERNAL = 9
} rzp_status;

typedef struct rzp_ctx rzp_ctx;
typedef struct rzp_seq rzp_seq;
typedef struct rzp_spec rzp_spec;

const char* rzp_version(void);

/* precision_bits <= 0 selects the default working precision (128). */
rzp_ctx* rzp_ctx_new(int precision_bits);
void rzp_ctx_free(rzp_ctx* ctx);
int rzp_ctx_precision(const rzp_ctx* ctx);
const char* rzp_last_error(const rzp_ctx* ctx);

void rzp_string_free(char* text);

/* ---- integer sequences ---- */

/* Families: erdos-taylor, complete-sumset, pow2sq, geometric,
 * divergent-blocks, blocks, custom. params_json may be NULL or "{}". */
rzp_status rzp_seq_generate(rzp_ctx* ctx, const char* family,
                            const char* params_json, size_t count,
                            rzp_seq** out);
rzp_status rzp_seq_from_json(rzp_ctx* ctx, const char* json_text,
                             rzp_seq** out);
rzp_status rzp_seq_to_json(rzp_ctx* ctx, const rzp_seq* seq, char** out_json);
size_t rzp_seq_size(const rzp_seq* seq);
/* index is 1-based; the term is returned as a decimal string. */
rzp_status rzp_seq_term(rzp_ctx* ctx, const rzp_seq* seq, size_t index,
                        char** out_decimal);
void rzp_seq_free(rzp_seq* seq);

/* ---- generalized product specs ---- */

/* min_tail_product is an optional rational "a/b" (NULL to skip). */
rzp_status rzp_spec_choose_m(rzp_ctx* ctx, const rzp_seq* seq,
                             const char* min_tail_product, rzp_spec** out);
rzp_status rzp_spec_block(rzp_ctx* ctx, const rzp_seq* seq,
                          const char* min_tail_product, rzp_spec** out);
rzp_status rzp_spec_from_json(rzp_ctx* ctx, const char* json_text,
                              rzp_spec** out);
rzp_status rzp_spec_to_json(rzp_ctx* ctx, const rzp_spec* spec,
                            char** out_json);
/* Gap certificate: {"first", "last", "gap_lengths", "lengths_increasing"}. */
rzp_status rzp_spec_certify(rzp_ctx* ctx, const rzp_spec* spec,
                            char** out_json);
/* Coefficient at n: {"n", "value", "radius", "mid_hex", "rad_hex",
 * "digits": {index: digit} | null}. */
rzp_status rzp_spec_coeff(rzp_ctx* ctx, const rzp_spec* spec,
                          const char* n_decimal, char** out_json);
void rzp_spec_free(rzp_spec* spec);

/* ---- generic operation runner ----
 *
 * Ops (request -> reply, both JSON objects):
 *   kernel.coeff_table   {"m"}                       -> {"rows", "csv"}
 *   kernel.eval          {"m", "t"}                  -> ball
 *   kernel.floor         {"m", "p_cap"}              -> ball
 *   kernel.phi           {"x"}                       -> {"value"}
 *   kernel.poly          {"j"}                       -> {"degree", "coeff"}
 *   kernel.nonneg        {"j", "grid"}               -> minimum report
 *   kernel.phi_bound     {}                          -> {"c", "gamma", "j0"}
 *   seq.ratio_series     {"seq", "exponent", "terms", "S"?}
 *   seq.divisibility     {"seq"}                     -> {"S"}
 *   seq.factor_chain     {"seq", "S"?}               -> chain report
 *   riesz.coeffs         {"spec", "targets"}         -> {"rows", "csv"}
 *   riesz.bound          {"spec", "F"}               -> ball
 *   oracle.expand        {"spec"}                    -> {"size", "csv"}
 *   oracle.expand_kahane {"seq", "j_first", "j_last"} -> {"size", "csv"}
 *   oracle.quadrature    {"spec"|"m"|"csv", "n", "nodes"} -> ball
 *   oracle.compare       {"a_csv", "b_csv", "tol"}   -> diff report
 *   group.scan           {"theta", "seq", "p", "terms"} -> scan + series
 *   group.witness        {"bases"|"seq", "C", "depth", "block_counts"?}
 *   group.et_check       {"theta", "terms"}          -> report
 *   group.block_scan     {"seq", "thetas", "terms"}  -> samples
 *   ip.window            {"spec"|"atoms"|"table_csv", "seq"?, "k0", "width"}
 *   ip.subset_sums       {"seq", "lo", "hi"}         -> {"sums"}
 *   ip.sumset_identity   {"l", "q"}                  -> certificate
 *   ip.atomic            {"atoms", "seq", "k0", "width"} -> report
 *   ip.sumset_union      {"qmax"}                    -> {"seq"}
 *   ip.ginf_scan         {"thetas"|"seed", "qmax"}   -> samples
 *   experiment.list      {}                          -> {"experiments"}
 *   experiment.run       {"experiment", "params"?, "seed"?}
 *                                                    -> {"pass", "report",
 *                                                        "files"}
 *   plotdata             {"report", "kind"}          -> {"csv"}
 */
rzp_status rzp_run(rzp_ctx* ctx, const char* op, const char* request_json,
                   char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* RIESZPROD_H */
