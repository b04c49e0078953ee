#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Exercises the shared-library surface only.
#include <radical/radical.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

struct CtxGuard {
    radical_ctx* ctx = nullptr;
    CtxGuard(unsigned bits = 0, unsigned guard = 0) {
        REQUIRE(radical_ctx_new(bits, guard, &ctx) == RADICAL_OK);
    }
    ~CtxGuard() { radical_ctx_free(ctx); }
};

std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    radical_string_free(s);
    return out;
}

std::string take_print(const radical_seq* s) {
    char* txt = nullptr;
    REQUIRE(radical_seq_print(s, &txt) == RADICAL_OK);
    return take(txt);
}

} // namespace

TEST_CASE("sequence parsing, printing, terms") {
    radical_seq* s = nullptr;
    REQUIRE(radical_seq_parse("+-(+)", &s) == RADICAL_OK);
    CHECK(radical_seq_is_finite(s) == 0);
    CHECK(radical_seq_prefix_len(s) == 2);
    CHECK(radical_seq_period_len(s) == 1);

    int sign = 0;
    CHECK(radical_seq_term(s, 0, &sign) == RADICAL_OK);
    CHECK(sign == 1);
    CHECK(radical_seq_term(s, 5, &sign) == RADICAL_OK);
    CHECK(sign == 1);

    CHECK(take_print(s) == "+-(+)");
    radical_seq_free(s);
}

TEST_CASE("parse errors set status, message and offset") {
    radical_seq* s = nullptr;
    CHECK(radical_seq_parse("+*", &s) == RADICAL_EPARSE);
    CHECK(radical_last_error_offset() == 1);
    CHECK(std::strlen(radical_last_error()) > 0);

    CHECK(radical_seq_parse("()", &s) == RADICAL_EPARSE);
    CHECK(radical_last_error_offset() == 1);
}

TEST_CASE("canonicalization through the C surface") {
    radical_seq* s = nullptr;
    REQUIRE(radical_seq_parse("+-(--)", &s) == RADICAL_OK);
    radical_seq* c = nullptr;
    REQUIRE(radical_seq_canonicalize(s, &c) == RADICAL_OK);
    CHECK(take_print(c) == "+(-)");
    radical_seq_free(c);
    radical_seq_free(s);
}

TEST_CASE("digits, exact Q, limit") {
    CtxGuard g;
    radical_seq* s = nullptr;
    REQUIRE(radical_seq_parse("(-)", &s) == RADICAL_OK);

    char* digits = nullptr;
    REQUIRE(radical_q_digits(s, 6, &digits) == RADICAL_OK);
    CHECK(take(digits) == "0.010101");

    char* q = nullptr;
    REQUIRE(radical_q_exact(s, &q) == RADICAL_OK);
    CHECK(take(q) == "1/3");

    radical_approx* x = nullptr;
    REQUIRE(radical_limit(s, g.ctx, 0, &x) == RADICAL_OK);
    char* v = nullptr;
    REQUIRE(radical_approx_value_str(x, 20, &v) == RADICAL_OK);
    CHECK(take(v) == "-1.00000000000000000000");
    CHECK(radical_approx_bound_d(x) < 1e-30);
    CHECK(radical_approx_precision_bits(x) == 128);
    radical_approx_free(x);
    radical_seq_free(s);
}

TEST_CASE("finite sequences refuse limits with EDOMAIN") {
    CtxGuard g;
    radical_seq* s = nullptr;
    REQUIRE(radical_seq_parse("+-", &s) == RADICAL_OK);
    radical_approx* x = nullptr;
    CHECK(radical_limit(s, g.ctx, 0, &x) == RADICAL_EDOMAIN);
    radical_seq_free(s);
}

TEST_CASE("partials and the tail bound") {
    CtxGuard g;
    radical_seq* s = nullptr;
    REQUIRE(radical_seq_parse("(+)", &s) == RADICAL_OK);

    radical_approx *r = nullptr, *n = nullptr;
    REQUIRE(radical_partial_radical(s, 3, g.ctx, &r) == RADICAL_OK);
    REQUIRE(radical_partial_sine(s, 3, g.ctx, &n) == RADICAL_OK);
    radical_approx* d = nullptr;
    REQUIRE(radical_approx_abs_diff(r, n, &d) == RADICAL_OK);
    CHECK(radical_approx_value_d(d) < 1e-30);
    CHECK(radical_approx_value_d(r) == doctest::Approx(1.9615705608064609));

    radical_approx* t = nullptr;
    REQUIRE(radical_tail_bound(10, &t) == RADICAL_OK);
    CHECK(radical_approx_value_d(t) == doctest::Approx(M_PI / 1024.0));

    radical_approx_free(t);
    radical_approx_free(d);
    radical_approx_free(n);
    radical_approx_free(r);
    radical_seq_free(s);
}

TEST_CASE("streams through the callback interface") {
    CtxGuard g;
    int calls = 0;
    auto cb = [](uint64_t m, void* user) -> int {
        ++*static_cast<int*>(user);
        return (m % 3 == 0) ? 1 : -1;
    };
    radical_seq* s = nullptr;
    REQUIRE(radical_seq_stream_new(cb, &calls, 70, &s) == RADICAL_OK);
    CHECK(radical_seq_length_limit(s) == 70);

    int sign = 0;
    CHECK(radical_seq_term(s, 3, &sign) == RADICAL_OK);
    CHECK(sign == 1);
    CHECK(radical_seq_term(s, 70, &sign) == RADICAL_EDOMAIN);

    char* txt = nullptr;
    CHECK(radical_seq_print(s, &txt) == RADICAL_EDOMAIN);
    REQUIRE(radical_seq_print_truncated(s, 6, &txt) == RADICAL_OK);
    CHECK(take(txt) == "+--+--");

    radical_approx* x = nullptr;
    REQUIRE(radical_limit(s, g.ctx, 64, &x) == RADICAL_OK);
    CHECK(calls > 0);
    radical_approx_free(x);
    radical_seq_free(s);
}

TEST_CASE("convergence table") {
    CtxGuard g;
    radical_seq* s = nullptr;
    REQUIRE(radical_seq_parse("(+-)", &s) == RADICAL_OK);
    radical_converge_table* t = nullptr;
    REQUIRE(radical_converge(s, 8, 0, g.ctx, &t) == RADICAL_OK);
    CHECK(radical_converge_rows(t) == 8);
    CHECK(radical_converge_all_within(t) == 1);

    uint64_t depth = 0;
    radical_approx *xn = nullptr, *gap = nullptr, *tail = nullptr;
    int within = 0;
    REQUIRE(radical_converge_row(t, 7, &depth, &xn, &gap, &tail, &within) ==
            RADICAL_OK);
    CHECK(depth == 8);
    CHECK(within == 1);
    CHECK(radical_approx_value_d(gap) <= radical_approx_value_d(tail));
    radical_approx_free(xn);
    radical_approx_free(gap);
    radical_approx_free(tail);

    CHECK(radical_converge_row(t, 8, &depth, nullptr, nullptr, nullptr,
                               nullptr) == RADICAL_EDOMAIN);
    radical_converge_free(t);
    radical_seq_free(s);
}

TEST_CASE("chebyshev surface") {
    CtxGuard g;
    radical_approx* v = nullptr;
    REQUIRE(radical_cheb_pow2("1", 5, g.ctx, &v) == RADICAL_OK);
    CHECK(radical_approx_value_d(v) == 1.0);
    radical_approx_free(v);

    radical_seq* s = nullptr;
    REQUIRE(radical_seq_parse("(+-)", &s) == RADICAL_OK);
    radical_cheb_report* r = nullptr;
    REQUIRE(radical_fixed_point_check(s, g.ctx, &r) == RADICAL_OK);
    CHECK(radical_cheb_period(r) == 2);
    CHECK(radical_cheb_pass(r) == 1);

    radical_approx* res = nullptr;
    REQUIRE(radical_cheb_residual(r, &res) == RADICAL_OK);
    radical_approx* tol = nullptr;
    REQUIRE(radical_cheb_tolerance(r, &tol) == RADICAL_OK);
    CHECK(std::fabs(radical_approx_value_d(res)) <=
          radical_approx_value_d(tol));
    radical_approx_free(res);
    radical_approx_free(tol);
    radical_cheb_free(r);
    radical_seq_free(s);
}

TEST_CASE("inversion surface") {
    CtxGuard g;
    radical_seq* s = nullptr;
    REQUIRE(radical_invert_from_q("1/3", 0, &s) == RADICAL_OK);
    CHECK(take_print(s) == "(-)");
    radical_seq_free(s);

    REQUIRE(radical_invert_from_q("0.5", 0, &s) == RADICAL_OK);
    CHECK(take_print(s) == "--(+)");
    radical_seq_free(s);

    REQUIRE(radical_invert_from_q("0.5", 1, &s) == RADICAL_OK);
    CHECK(take_print(s) == "+-(+)");
    radical_seq_free(s);

    CHECK(radical_invert_from_q("7/3", 0, &s) == RADICAL_EDOMAIN);
    CHECK(radical_invert_from_q("1", 1, &s) == RADICAL_EDOMAIN);

    REQUIRE(radical_invert_from_digits("0.1011", &s) == RADICAL_OK);
    CHECK(radical_seq_is_finite(s) == 1);
    radical_seq_free(s);

    char* q = nullptr;
    REQUIRE(radical_invert_from_value("2", 64, g.ctx, &s, &q) == RADICAL_OK);
    CHECK(take(q) == "1");
    CHECK(take_print(s) == "(+)");
    radical_seq_free(s);

    CHECK(radical_invert_from_value("2.5", 64, g.ctx, &s, &q) ==
          RADICAL_EDOMAIN);
}

TEST_CASE("lemma check") {
    CtxGuard g;
    radical_approx *dev = nullptr, *thr = nullptr;
    int pass = 0;
    REQUIRE(radical_lemma_check(6, g.ctx, &dev, &thr, &pass) == RADICAL_OK);
    CHECK(pass == 1);
    CHECK(radical_approx_value_d(dev) <= radical_approx_value_d(thr));
    radical_approx_free(dev);
    radical_approx_free(thr);
}

TEST_CASE("context validation") {
    radical_ctx* ctx = nullptr;
    CHECK(radical_ctx_new(40, 0, &ctx) == RADICAL_EDOMAIN);
    REQUIRE(radical_ctx_new(0, 0, &ctx) == RADICAL_OK);
    CHECK(radical_ctx_working_bits(ctx) == 128);
    radical_ctx_free(ctx);
}
