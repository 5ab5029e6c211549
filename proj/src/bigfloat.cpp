// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qseries/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace qseries {

std::string BigFloat::str(long digits) const {
    if (digits < 2) digits = 2;
    // %.*Re prints one digit before the point plus (digits-1) after it.
    const int frac = static_cast<int>(digits - 1);
    char* out = nullptr;
    const int n = mpfr_asprintf(&out, "%.*Re", frac, v_);
    if (n < 0 || !out) return "nan";
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

#define QSERIES_BIGFLOAT_BINOP(NAME, MPFR_FN)                                        \
    BigFloat BigFloat::NAME(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec,  \
                            mpfr_rnd_t rnd, int* ternary) {                          \
        BigFloat r(prec);                                                            \
        int t = MPFR_FN(r.v_, a.v_, b.v_, rnd);                                      \
        if (ternary) *ternary = t;                                                   \
        return r;                                                                    \
    }

QSERIES_BIGFLOAT_BINOP(add, mpfr_add)
QSERIES_BIGFLOAT_BINOP(sub, mpfr_sub)
QSERIES_BIGFLOAT_BINOP(mul, mpfr_mul)
QSERIES_BIGFLOAT_BINOP(div, mpfr_div)

#undef QSERIES_BIGFLOAT_BINOP

#define QSERIES_BIGFLOAT_QOP(NAME, MPFR_FN)                                          \
    BigFloat BigFloat::NAME(const BigFloat& a, const Rational& x, mpfr_prec_t prec,  \
                            mpfr_rnd_t rnd, int* ternary) {                          \
        BigFloat r(prec);                                                            \
        int t = MPFR_FN(r.v_, a.v_, x.get_mpq_t(), rnd);                             \
        if (ternary) *ternary = t;                                                   \
        return r;                                                                    \
    }

QSERIES_BIGFLOAT_QOP(add_q, mpfr_add_q)
QSERIES_BIGFLOAT_QOP(mul_q, mpfr_mul_q)
QSERIES_BIGFLOAT_QOP(div_q, mpfr_div_q)

#undef QSERIES_BIGFLOAT_QOP

BigFloat BigFloat::abs(const BigFloat& a, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_abs(r.v_, a.v_, MPFR_RNDU);
    return r;
}

BigFloat BigFloat::neg(const BigFloat& a, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::mul_2si(const BigFloat& a, long e, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    BigFloat r(prec);
    mpfr_mul_2si(r.v_, a.v_, e, rnd);
    return r;
}

}  // namespace qseries
