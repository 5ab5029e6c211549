// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "qseries/rational.hpp"

namespace qseries {

// Owning wrapper around one mpfr_t. Every operation takes an explicit target
// precision and rounding mode; nothing reads MPFR's global default precision,
// so values are safe to use across threads (each object is still single-
// thread mutable, as usual).
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw() { return v_; }

    static BigFloat of(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd,
                       int* ternary = nullptr) {
        BigFloat r(prec);
        int t = mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
        if (ternary) *ternary = t;
        return r;
    }
    static BigFloat of_long(long x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat zero(mpfr_prec_t prec) { return of_long(0, prec); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Three-way compares; exact regardless of precision.
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    int cmpabs(const BigFloat& o) const { return mpfr_cmpabs(v_, o.v_); }
    int cmp_long(long x) const { return mpfr_cmp_si(v_, x); }
    int cmp_rational(const Rational& x) const { return mpfr_cmp_q(v_, x.get_mpq_t()); }

    // Exact conversion; requires a finite value.
    Rational to_rational() const {
        Rational r;
        mpfr_get_q(r.get_mpq_t(), v_);
        return r;
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Scientific-notation string with the given significant digit count.
    std::string str(long digits) const;

    static BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec,
                        mpfr_rnd_t rnd, int* ternary = nullptr);
    static BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec,
                        mpfr_rnd_t rnd, int* ternary = nullptr);
    static BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec,
                        mpfr_rnd_t rnd, int* ternary = nullptr);
    static BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec,
                        mpfr_rnd_t rnd, int* ternary = nullptr);
    static BigFloat add_q(const BigFloat& a, const Rational& x, mpfr_prec_t prec,
                          mpfr_rnd_t rnd, int* ternary = nullptr);
    static BigFloat mul_q(const BigFloat& a, const Rational& x, mpfr_prec_t prec,
                          mpfr_rnd_t rnd, int* ternary = nullptr);
    static BigFloat div_q(const BigFloat& a, const Rational& x, mpfr_prec_t prec,
                          mpfr_rnd_t rnd, int* ternary = nullptr);
    static BigFloat abs(const BigFloat& a, mpfr_prec_t prec);
    static BigFloat neg(const BigFloat& a, mpfr_prec_t prec);
    // a * 2^e, exact apart from the final rounding.
    static BigFloat mul_2si(const BigFloat& a, long e, mpfr_prec_t prec, mpfr_rnd_t rnd);

private:
    mpfr_t v_;
};

}  // namespace qseries
