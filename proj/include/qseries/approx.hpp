// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qseries/bigfloat.hpp"
#include "qseries/rational.hpp"

namespace qseries {

// Working precision and certification target for approximate evaluation.
// target_eps is an absolute bound: every certified result must satisfy
// |true - value| <= err <= target_eps. bits is the starting mantissa width;
// evaluators escalate it internally when rounding alone would breach the
// target, so results may carry more precision than requested.
struct PrecisionContext {
    mpfr_prec_t bits = 256;
    Rational target_eps = Rational(1, mpz_class("1000000000000000000000000000000"));  // 1e-30

    PrecisionContext();
    PrecisionContext(mpfr_prec_t bits_, Rational eps);
};

// A certified enclosure: the true value lies within [value - err, value + err].
// All arithmetic widens err conservatively (every intermediate rounds outward
// and each op adds one ulp bound for its own rounding), so the invariant is
// maintained without exact rational bookkeeping.
class ApproxValue {
public:
    // Exact zero at the given precision.
    explicit ApproxValue(mpfr_prec_t prec);
    // Exact embedding of a rational (err is the representation error, 0 when
    // the value fits the mantissa).
    static ApproxValue of(const Rational& x, mpfr_prec_t prec);
    static ApproxValue of_long(long x, mpfr_prec_t prec);
    // Raw constructor; err must already be a valid outward bound.
    ApproxValue(BigFloat value, BigFloat err);

    const BigFloat& value() const { return value_; }
    const BigFloat& err() const { return err_; }
    mpfr_prec_t prec() const { return value_.prec(); }
    bool exact() const { return err_.is_zero(); }

    static ApproxValue add(const ApproxValue& a, const ApproxValue& b);
    static ApproxValue sub(const ApproxValue& a, const ApproxValue& b);
    static ApproxValue mul(const ApproxValue& a, const ApproxValue& b);
    // Throws DomainError when the divisor's enclosure contains zero.
    static ApproxValue div(const ApproxValue& a, const ApproxValue& b);
    static ApproxValue add_exact(const ApproxValue& a, const Rational& x);
    static ApproxValue mul_exact(const ApproxValue& a, const Rational& x);
    // Throws DomainError for x == 0.
    static ApproxValue div_exact(const ApproxValue& a, const Rational& x);
    static ApproxValue neg(const ApproxValue& a);

    // Exact rational upper bound on |true value|: |value| + err, rounded up.
    Rational upper_abs() const;
    // Exact rational bound on err.
    Rational err_upper() const;
    // True if the enclosure contains exactly {x} (value == x and err == 0).
    bool is_exactly(const Rational& x) const;
    // Widens err by a nonnegative rational amount.
    ApproxValue widened(const Rational& extra) const;

private:
    BigFloat value_;
    BigFloat err_;
};

// |a.value - b.value| as an upper-rounded float: together with the two err
// fields this is the certified residual of a comparison.
BigFloat abs_diff_upper(const ApproxValue& a, const ApproxValue& b);

// Certified comparison |a - b| <= a.err + b.err + tol, evaluated so that a
// true "no" can never come out as "yes" (residual rounds up, budget down).
bool agree_within(const ApproxValue& a, const ApproxValue& b, const Rational& tol);

}  // namespace qseries
