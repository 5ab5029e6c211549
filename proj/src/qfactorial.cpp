// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qseries/qfactorial.hpp"

#include <string>

namespace qseries {

QBase::QBase(Rational q_) : q(std::move(q_)) {
    if (q == 0) throw DomainError("QBase: q must be nonzero");
    if (abs(q) >= 1) throw DomainError("QBase: |q| must be less than 1");
}

const Rational& PochValue::rational() const {
    if (pole_) throw DomainError("PochValue: Pole has no rational value");
    return v_;
}

Rational poch_finite(const Rational& a, long k, const QBase& base) {
    if (k < 0) throw DomainError("poch_finite: negative index");
    Rational prod(1);
    Rational aqj = a;  // a q^j for the current j
    for (long j = 0; j < k; ++j) {
        prod *= (1 - aqj);
        aqj *= base.q;
    }
    return prod;
}

PochValue poch_int(const Rational& a, long k, const QBase& base) {
    if (k >= 0) return PochValue::of(poch_finite(a, k, base));
    Rational prod(1);
    Rational aqj = a;
    for (long j = 1; j <= -k; ++j) {
        aqj /= base.q;  // a q^{-j}
        const Rational f = 1 - aqj;
        if (f == 0) return PochValue::pole();
        prod *= f;
    }
    return PochValue::of(1 / prod);
}

PochFactorList poch_factors(const Rational& a, long k, const QBase& base,
                            Placement intended) {
    PochFactorList out;
    if (k >= 0) {
        out.placement = intended;
        out.factors.reserve(static_cast<std::size_t>(k));
        Rational aqj = a;
        for (long j = 0; j < k; ++j) {
            out.factors.push_back(1 - aqj);
            aqj *= base.q;
        }
    } else {
        out.placement = (intended == Placement::Numerator) ? Placement::Denominator
                                                           : Placement::Numerator;
        out.factors.reserve(static_cast<std::size_t>(-k));
        Rational aqj = a;
        for (long j = 1; j <= -k; ++j) {
            aqj /= base.q;
            out.factors.push_back(1 - aqj);
        }
    }
    return out;
}

ApproxValue poch_infinite(const Rational& a, const QBase& base, const PrecisionContext& ctx) {
    if (a == 0) return ApproxValue::of_long(1, ctx.bits);
    // Exact zero: a = q^{-j} makes the factor at j vanish. as_q_power only
    // reports nonpositive exponents for |a| >= 1, which is exactly when a
    // factor can vanish.
    if (auto j = as_q_power(a, base.q); j && *j <= 0) {
        return ApproxValue(BigFloat::zero(ctx.bits), BigFloat::zero(64));
    }
    const Rational qa = abs(base.q);
    const Rational eps_half = ctx.target_eps / 2;

    mpfr_prec_t bits = ctx.bits;
    for (int attempt = 0; attempt < 6; ++attempt, bits *= 2) {
        ApproxValue prod = ApproxValue::of_long(1, bits);
        Rational aqn = a;  // a q^N at the head of the remaining tail
        long n = 0;
        bool certified = false;
        Rational tail_bound;
        while (n < 1000000) {
            // Tail criterion: t = 2 |a q^N| / (1 - |q|) <= 1/2 and
            // |P_N| * 2t <= eps/2.
            const Rational t = 2 * abs(aqn) / (1 - qa);
            if (2 * t <= 1) {
                tail_bound = prod.upper_abs() * 2 * t;
                if (tail_bound <= eps_half) {
                    certified = true;
                    break;
                }
            }
            prod = ApproxValue::mul_exact(prod, 1 - aqn);
            aqn *= base.q;
            ++n;
        }
        if (!certified) throw MaxTermsExceeded("poch_infinite: no certification within budget");
        ApproxValue result = prod.widened(tail_bound);
        if (result.err_upper() <= ctx.target_eps) return result;
        // Rounding dominated the budget; retry with twice the mantissa.
    }
    throw DomainError("poch_infinite: target_eps unreachable by precision escalation");
}

PochValue poch_multi(std::span<const Rational> as, long k, const QBase& base) {
    bool pole = false;
    bool zero = false;
    Rational prod(1);
    for (const Rational& a : as) {
        PochValue v = poch_int(a, k, base);
        if (v.is_pole()) {
            pole = true;
            continue;
        }
        if (v.rational() == 0) zero = true;
        prod *= v.rational();
    }
    if (pole && zero)
        throw IndeterminateError("poch_multi: zero factor multiplied with a Pole");
    if (pole) return PochValue::pole();
    return PochValue::of(std::move(prod));
}

ApproxValue poch_multi_infinite(std::span<const Rational> as, const QBase& base,
                                const PrecisionContext& ctx) {
    ApproxValue prod = ApproxValue::of_long(1, ctx.bits);
    for (const Rational& a : as) prod = ApproxValue::mul(prod, poch_infinite(a, base, ctx));
    return prod;
}

}  // namespace qseries
