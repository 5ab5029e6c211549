// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qseries/approx.hpp"

#include <algorithm>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

// err fields never need more resolution than this; all err math rounds up.
constexpr mpfr_prec_t kErrPrec = 64;

mpfr_prec_t join_prec(const ApproxValue& a, const ApproxValue& b) {
    return std::max(a.prec(), b.prec());
}

// Upper bound on the rounding error of a result computed at precision p:
// one ulp is below |v| * 2^(1-p). ternary == 0 means the op was exact.
BigFloat round_err(const BigFloat& v, mpfr_prec_t p, int ternary) {
    if (ternary == 0) return BigFloat::zero(kErrPrec);
    BigFloat a = BigFloat::abs(v, kErrPrec);
    return BigFloat::mul_2si(a, 1 - static_cast<long>(p), kErrPrec, MPFR_RNDU);
}

BigFloat err_sum(const BigFloat& a, const BigFloat& b) {
    return BigFloat::add(a, b, kErrPrec, MPFR_RNDU);
}

}  // namespace

PrecisionContext::PrecisionContext() = default;

PrecisionContext::PrecisionContext(mpfr_prec_t bits_, Rational eps)
    : bits(bits_), target_eps(std::move(eps)) {
    if (bits < 64) throw DomainError("PrecisionContext: bits must be at least 64");
    if (target_eps <= 0) throw DomainError("PrecisionContext: target_eps must be positive");
}

ApproxValue::ApproxValue(mpfr_prec_t prec)
    : value_(BigFloat::zero(prec)), err_(BigFloat::zero(kErrPrec)) {}

ApproxValue::ApproxValue(BigFloat value, BigFloat err)
    : value_(std::move(value)), err_(std::move(err)) {
    if (err_.sign() < 0 || !err_.is_finite())
        throw DomainError("ApproxValue: err must be finite and nonnegative");
}

ApproxValue ApproxValue::of(const Rational& x, mpfr_prec_t prec) {
    int t = 0;
    BigFloat v = BigFloat::of(x, prec, MPFR_RNDN, &t);
    BigFloat e = round_err(v, prec, t);
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::of_long(long x, mpfr_prec_t prec) {
    return ApproxValue(BigFloat::of_long(x, prec), BigFloat::zero(kErrPrec));
}

ApproxValue ApproxValue::add(const ApproxValue& a, const ApproxValue& b) {
    const mpfr_prec_t p = join_prec(a, b);
    int t = 0;
    BigFloat v = BigFloat::add(a.value_, b.value_, p, MPFR_RNDN, &t);
    BigFloat e = err_sum(err_sum(a.err_, b.err_), round_err(v, p, t));
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::sub(const ApproxValue& a, const ApproxValue& b) {
    const mpfr_prec_t p = join_prec(a, b);
    int t = 0;
    BigFloat v = BigFloat::sub(a.value_, b.value_, p, MPFR_RNDN, &t);
    BigFloat e = err_sum(err_sum(a.err_, b.err_), round_err(v, p, t));
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::mul(const ApproxValue& a, const ApproxValue& b) {
    // |ab - a'b'| <= |a'| eb + |b'| ea + ea eb for |a-a'| <= ea, |b-b'| <= eb.
    const mpfr_prec_t p = join_prec(a, b);
    int t = 0;
    BigFloat v = BigFloat::mul(a.value_, b.value_, p, MPFR_RNDN, &t);
    BigFloat aa = BigFloat::abs(a.value_, kErrPrec);
    BigFloat ab = BigFloat::abs(b.value_, kErrPrec);
    BigFloat e = err_sum(BigFloat::mul(aa, b.err_, kErrPrec, MPFR_RNDU),
                         BigFloat::mul(ab, a.err_, kErrPrec, MPFR_RNDU));
    e = err_sum(e, BigFloat::mul(a.err_, b.err_, kErrPrec, MPFR_RNDU));
    e = err_sum(e, round_err(v, p, t));
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::div(const ApproxValue& a, const ApproxValue& b) {
    if (b.value_.cmpabs(b.err_) <= 0)
        throw DomainError("ApproxValue::div: divisor enclosure contains zero");
    const mpfr_prec_t p = join_prec(a, b);
    int t = 0;
    BigFloat v = BigFloat::div(a.value_, b.value_, p, MPFR_RNDN, &t);
    // |a/b - a'/b'| <= (|a'| eb + |b'| ea) / (|b'| (|b'| - eb)).
    BigFloat aa = BigFloat::abs(a.value_, kErrPrec);
    BigFloat ab = BigFloat::abs(b.value_, kErrPrec);
    BigFloat num = err_sum(BigFloat::mul(aa, b.err_, kErrPrec, MPFR_RNDU),
                           BigFloat::mul(ab, a.err_, kErrPrec, MPFR_RNDU));
    BigFloat gap = BigFloat::sub(ab, b.err_, kErrPrec, MPFR_RNDD);
    BigFloat den = BigFloat::mul(ab, gap, kErrPrec, MPFR_RNDD);
    if (den.sign() <= 0)
        throw DomainError("ApproxValue::div: divisor enclosure contains zero");
    BigFloat e = BigFloat::div(num, den, kErrPrec, MPFR_RNDU);
    e = err_sum(e, round_err(v, p, t));
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::add_exact(const ApproxValue& a, const Rational& x) {
    const mpfr_prec_t p = a.prec();
    int t = 0;
    BigFloat v = BigFloat::add_q(a.value_, x, p, MPFR_RNDN, &t);
    BigFloat e = err_sum(a.err_, round_err(v, p, t));
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::mul_exact(const ApproxValue& a, const Rational& x) {
    const mpfr_prec_t p = a.prec();
    int t = 0;
    BigFloat v = BigFloat::mul_q(a.value_, x, p, MPFR_RNDN, &t);
    BigFloat xa = BigFloat::of(abs(x), kErrPrec, MPFR_RNDU);
    BigFloat e = BigFloat::mul(xa, a.err_, kErrPrec, MPFR_RNDU);
    e = err_sum(e, round_err(v, p, t));
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::div_exact(const ApproxValue& a, const Rational& x) {
    if (x == 0) throw DomainError("ApproxValue::div_exact: division by zero");
    const mpfr_prec_t p = a.prec();
    int t = 0;
    BigFloat v = BigFloat::div_q(a.value_, x, p, MPFR_RNDN, &t);
    BigFloat xa = BigFloat::of(abs(x), kErrPrec, MPFR_RNDD);
    BigFloat e = BigFloat::div(a.err_, xa, kErrPrec, MPFR_RNDU);
    e = err_sum(e, round_err(v, p, t));
    return ApproxValue(std::move(v), std::move(e));
}

ApproxValue ApproxValue::neg(const ApproxValue& a) {
    return ApproxValue(BigFloat::neg(a.value_, a.prec()), a.err_);
}

Rational ApproxValue::upper_abs() const {
    BigFloat m = BigFloat::add(BigFloat::abs(value_, kErrPrec), err_, kErrPrec, MPFR_RNDU);
    return m.to_rational();
}

Rational ApproxValue::err_upper() const { return err_.to_rational(); }

bool ApproxValue::is_exactly(const Rational& x) const {
    return err_.is_zero() && value_.cmp_rational(x) == 0;
}

ApproxValue ApproxValue::widened(const Rational& extra) const {
    if (extra < 0) throw DomainError("ApproxValue::widened: negative widening");
    BigFloat x = BigFloat::of(extra, kErrPrec, MPFR_RNDU);
    return ApproxValue(value_, err_sum(err_, x));
}

BigFloat abs_diff_upper(const ApproxValue& a, const ApproxValue& b) {
    int t = 0;
    BigFloat d = BigFloat::sub(a.value(), b.value(), kErrPrec, MPFR_RNDN, &t);
    BigFloat ad = BigFloat::abs(d, kErrPrec);
    if (t != 0) {
        // One extra ulp covers the rounding of the subtraction itself.
        BigFloat ulp = BigFloat::mul_2si(ad, 1 - kErrPrec, kErrPrec, MPFR_RNDU);
        ad = BigFloat::add(ad, ulp, kErrPrec, MPFR_RNDU);
    }
    return ad;
}

bool agree_within(const ApproxValue& a, const ApproxValue& b, const Rational& tol) {
    const BigFloat residual = abs_diff_upper(a, b);
    BigFloat budget = BigFloat::add(a.err(), b.err(), 64, MPFR_RNDD);
    budget = BigFloat::add_q(budget, tol, 64, MPFR_RNDD);
    return residual.cmp(budget) <= 0;
}

}  // namespace qseries
