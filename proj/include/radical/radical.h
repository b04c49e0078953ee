/*
 * radical: continued radicals a0*sqrt(2 + a1*sqrt(2 + ...)) with signs in
 * {-1,+1}. Evaluation of finite depths, closed-form limits through the
 * parity/binary-digit correspondence, inversion from targets back to sign
 * sequences, and Chebyshev fixed-point verification for periodic inputs.
 *
 * All handles are opaque; functions return radical_status. On failure the
 * thread-local message (and, for parse errors, byte offset) is available
 * through radical_last_error() / radical_last_error_offset(). Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with radical_string_free().
 */

#ifndef RADICAL_RADICAL_H
#define RADICAL_RADICAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum radical_status {
    RADICAL_OK = 0,
    RADICAL_EPARSE = 2,   /* malformed sequence text */
    RADICAL_EDOMAIN = 3,  /* precondition or domain violation */
    RADICAL_EINTERNAL = 4 /* broken internal invariant */
} radical_status;

typedef struct radical_ctx radical_ctx;
typedef struct radical_seq radical_seq;
typedef struct radical_approx radical_approx;
typedef struct radical_converge_table radical_converge_table;
typedef struct radical_cheb_report radical_cheb_report;

const char* radical_last_error(void);
size_t radical_last_error_offset(void);
void radical_string_free(char* s);

/* ----- precision context ------------------------------------------------ */

/* working_bits >= 53 (0 picks the default 128); trig_guard_bits >= 1
 * (0 picks the default 16). */
radical_status radical_ctx_new(unsigned working_bits, unsigned trig_guard_bits,
                               radical_ctx** out);
void radical_ctx_free(radical_ctx* ctx);
unsigned radical_ctx_working_bits(const radical_ctx* ctx);

/* ----- sign sequences ----------------------------------------------------
 * Text grammar: SEQ := SIGNS | SIGNS? '(' SIGNS ')', SIGNS := ('+'|'-')+.
 * "+-+" is finite, "(+-)" purely periodic, "+-(+)" eventually periodic.   */

radical_status radical_seq_parse(const char* text, radical_seq** out);
/* sign_at receives indices 0..index_bound-1 and must return +1 or -1. */
radical_status radical_seq_stream_new(int (*sign_at)(uint64_t index,
                                                     void* user),
                                      void* user, uint64_t index_bound,
                                      radical_seq** out);
void radical_seq_free(radical_seq* s);

radical_status radical_seq_term(const radical_seq* s, uint64_t index,
                                int* out_sign);
/* Canonical closed-form text; fails with RADICAL_EDOMAIN for streams. */
radical_status radical_seq_print(const radical_seq* s, char** out);
/* First `length` signs as finite-sequence text (works for streams). */
radical_status radical_seq_print_truncated(const radical_seq* s,
                                           uint64_t length, char** out);
radical_status radical_seq_canonicalize(const radical_seq* s,
                                        radical_seq** out);

int radical_seq_is_finite(const radical_seq* s);
int radical_seq_is_purely_periodic(const radical_seq* s);
uint64_t radical_seq_prefix_len(const radical_seq* s);
/* 0 for non-periodic kinds. */
uint64_t radical_seq_period_len(const radical_seq* s);
/* Finite length or stream bound; UINT64_MAX for periodic sequences. */
uint64_t radical_seq_length_limit(const radical_seq* s);

/* ----- parities and dyadic digits ---------------------------------------- */

/* Binary digit prefix "0.Q0Q1..." over `count` digits. */
radical_status radical_q_digits(const radical_seq* s, uint64_t count,
                                char** out);
/* Exact rational Q as "p/q" (eventually periodic sequences only). */
radical_status radical_q_exact(const radical_seq* s, char** out);
/* max(64, output_bits + 8): default digit count for a requested output
 * precision. */
uint64_t radical_default_digit_count(uint64_t output_bits);

/* ----- evaluation --------------------------------------------------------
 * Results carry a value at the context's working precision and a rigorous
 * absolute error bound. */

radical_status radical_partial_radical(const radical_seq* s, uint64_t depth,
                                       const radical_ctx* ctx,
                                       radical_approx** out);
radical_status radical_partial_sine(const radical_seq* s, uint64_t depth,
                                    const radical_ctx* ctx,
                                    radical_approx** out);
/* digit_count of 0 picks radical_default_digit_count(working_bits).
 * Eventually periodic sequences use the exact rational Q. */
radical_status radical_limit(const radical_seq* s, const radical_ctx* ctx,
                             uint64_t digit_count, radical_approx** out);
/* pi * 2^-depth as an approx whose value is itself an upper bound. */
radical_status radical_tail_bound(uint64_t depth, radical_approx** out);

/* Fixed-format decimal value with `decimal_digits` places. */
radical_status radical_approx_value_str(const radical_approx* a,
                                        long decimal_digits, char** out);
/* Scientific-format decimal value with `decimal_digits` places. */
radical_status radical_approx_value_sci_str(const radical_approx* a,
                                            long decimal_digits, char** out);
/* Error bound in scientific notation, rounded up. */
radical_status radical_approx_bound_str(const radical_approx* a, char** out);
double radical_approx_value_d(const radical_approx* a);
double radical_approx_bound_d(const radical_approx* a);
unsigned radical_approx_precision_bits(const radical_approx* a);
/* |a - b| rounded up, as a new approx holding the combined bounds. */
radical_status radical_approx_abs_diff(const radical_approx* a,
                                       const radical_approx* b,
                                       radical_approx** out);
/* Sign of value - x: negative, zero, positive. */
int radical_approx_cmp_d(const radical_approx* a, double x);
void radical_approx_free(radical_approx* a);

/* ----- convergence table -------------------------------------------------
 * Row n holds x_n = partial_radical(n), the gap |x - x_n| and the tail
 * bound pi * 2^-n; `within` flags gap <= tail + reported bounds. */

radical_status radical_converge(const radical_seq* s, uint64_t max_depth,
                                uint64_t digit_count, const radical_ctx* ctx,
                                radical_converge_table** out);
uint64_t radical_converge_rows(const radical_converge_table* t);
radical_status radical_converge_limit(const radical_converge_table* t,
                                      radical_approx** out);
radical_status radical_converge_row(const radical_converge_table* t,
                                    uint64_t row, uint64_t* depth,
                                    radical_approx** x_n, radical_approx** gap,
                                    radical_approx** tail, int* within);
int radical_converge_all_within(const radical_converge_table* t);
void radical_converge_free(radical_converge_table* t);

/* ----- Chebyshev fixed points -------------------------------------------- */

/* T_{2^n}(t) by composition of T_2; t_text is a decimal in [-1,1]. */
radical_status radical_cheb_pow2(const char* t_text, unsigned n,
                                 const radical_ctx* ctx, radical_approx** out);
/* Residual T_{2^n}(x/2) - x/2 for a purely periodic sequence of period n. */
radical_status radical_fixed_point_check(const radical_seq* s,
                                         const radical_ctx* ctx,
                                         radical_cheb_report** out);
uint64_t radical_cheb_period(const radical_cheb_report* r);
radical_status radical_cheb_limit(const radical_cheb_report* r,
                                  radical_approx** out);
radical_status radical_cheb_residual(const radical_cheb_report* r,
                                     radical_approx** out);
radical_status radical_cheb_tolerance(const radical_cheb_report* r,
                                      radical_approx** out);
int radical_cheb_pass(const radical_cheb_report* r);
void radical_cheb_free(radical_cheb_report* r);

/* ----- inversion ----------------------------------------------------------
 * Sign sequences from Q or from a target value x = -2 cos(Q pi). Dyadic Q
 * in (0,1] uses the trailing-ones binary expansion (so Q=1 is 0.111... and
 * maps to "(+)"); Q=0 is all zeros. */

/* q_text: "p/q", integer, or decimal in [0,1]. Always a closed form.
 * Nonzero use_trailing_zeros picks the alternative expansion at dyadic Q
 * (fails for Q=1, which has no trailing-zeros form). */
radical_status radical_invert_from_q(const char* q_text,
                                     int use_trailing_zeros,
                                     radical_seq** out);
/* digit_text: "0.1011" or "1011"; yields the finite sign prefix those
 * digits determine. */
radical_status radical_invert_from_digits(const char* digit_text,
                                          radical_seq** out);
/* x_text: decimal in [-2,2]. When the Q enclosure pins a rational with
 * denominator <= 10^6 the closed form is returned and *out_exact_q is set
 * to "p/q"; otherwise a finite prefix of `terms` signs (*out_exact_q NULL). */
radical_status radical_invert_from_value(const char* x_text, uint64_t terms,
                                         const radical_ctx* ctx,
                                         radical_seq** out,
                                         char** out_exact_q);

/* ----- finite-depth identity check ---------------------------------------
 * Max |partial_radical - partial_sine| over all 2^n sign tuples, with the
 * pass threshold 1e-12 below 64 working bits and 2^-(wb-2n) at or above. */

radical_status radical_lemma_check(unsigned n, const radical_ctx* ctx,
                                   radical_approx** max_deviation,
                                   radical_approx** threshold, int* pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RADICAL_RADICAL_H */
