// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

// Independent oracles for the test suite. These deliberately avoid the
// library's pochhammer/series code paths: plain loops over gmp rationals
// and raw mpfr products, so a shared bug cannot hide in both sides.

#pragma once

#include <mpfr.h>

#include <optional>
#include <string>
#include <vector>

#include "qseries/rational.hpp"

namespace oracle {

using qseries::Rational;

// Canonical num/den construction; mpq_class(num, den) alone does not reduce.
inline Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// prod_{j=0}^{k-1} (1 - a q^j), k >= 0.
inline Rational poch_rising(const Rational& a, long k, const Rational& q) {
    Rational p(1), aq = a;
    for (long j = 0; j < k; ++j) {
        p *= 1 - aq;
        aq *= q;
    }
    return p;
}

// 1 / prod_{j=1}^{n} (1 - a q^{-j}); nullopt when some factor vanishes.
inline std::optional<Rational> poch_falling(const Rational& a, long n, const Rational& q) {
    Rational p(1), aq = a;
    for (long j = 1; j <= n; ++j) {
        aq /= q;
        if (aq == 1) return std::nullopt;
        p *= 1 - aq;
    }
    return 1 / p;
}

inline Rational pow_int(const Rational& x, long e) {
    Rational p(1);
    for (long i = 0; i < (e < 0 ? -e : e); ++i) p *= x;
    return e < 0 ? 1 / p : p;
}

// One term of a basic hypergeometric sum, built from scratch: the quotient
// prod (u_i)_k / prod (l_j)_k times arg^k, with (q)_k appended to the lower
// row when unilateral. nullopt when a factorial on either side vanishes or
// blows up in a way that does not cancel against the other side.
inline std::optional<Rational> series_term(const std::vector<Rational>& upper,
                                           const std::vector<Rational>& lower, bool unilateral,
                                           const Rational& arg, const Rational& q, long k) {
    std::vector<Rational> lo = lower;
    if (unilateral) lo.push_back(q);
    Rational num(1), den(1);
    if (k >= 0) {
        for (const Rational& u : upper) num *= poch_rising(u, k, q);
        for (const Rational& l : lo) den *= poch_rising(l, k, q);
    } else {
        for (const Rational& u : upper) {
            auto p = poch_falling(u, -k, q);
            if (!p) return std::nullopt;  // pole
            num *= *p;
        }
        for (const Rational& l : lo) {
            auto p = poch_falling(l, -k, q);
            if (!p) return Rational(0);  // denominator pole kills the term
            den *= *p;
        }
    }
    if (num == 0) return Rational(0);
    if (den == 0) return std::nullopt;
    return num / den * pow_int(arg, k);
}

// Finite window sum over k in [k_lo, k_hi].
inline Rational series_window(const std::vector<Rational>& upper,
                              const std::vector<Rational>& lower, bool unilateral,
                              const Rational& arg, const Rational& q, long k_lo, long k_hi) {
    Rational s(0);
    for (long k = k_lo; k <= k_hi; ++k) {
        auto t = series_term(upper, lower, unilateral, arg, q, k);
        if (!t) throw std::runtime_error("oracle: indeterminate term in window");
        s += *t;
    }
    return s;
}

// Raw mpfr product prod_{j=0}^{factors-1} (1 - a q^j) at a fixed precision,
// no error tracking. Meant for comparison looser than the library's bound.
inline double poch_inf_double(const Rational& a, const Rational& q, int factors, int bits) {
    mpfr_t p, aq, f;
    mpfr_inits2(bits, p, aq, f, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(p, 1, MPFR_RNDN);
    mpfr_set_q(aq, a.get_mpq_t(), MPFR_RNDN);
    for (int j = 0; j < factors; ++j) {
        mpfr_si_sub(f, 1, aq, MPFR_RNDN);
        mpfr_mul(p, p, f, MPFR_RNDN);
        mpfr_mul_q(aq, aq, q.get_mpq_t(), MPFR_RNDN);
    }
    double out = mpfr_get_d(p, MPFR_RNDN);
    mpfr_clears(p, aq, f, static_cast<mpfr_ptr>(nullptr));
    return out;
}

}  // namespace oracle
