// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <variant>
#include <vector>

#include "qseries/approx.hpp"
#include "qseries/errors.hpp"
#include "qseries/rational.hpp"

namespace qseries {

// Base of all q-shifted factorials. Construction validates 0 < |q| < 1.
struct QBase {
    Rational q;
    explicit QBase(Rational q_);
};

// Value of a q-shifted factorial at an integer index: either a rational or
// Pole. Pole is a first-class value, produced when a negative index hits a
// vanishing factor ((a;q)_{-n} with a = q^j, 1 <= j <= n); it means the
// factorial is infinite there, and a term with a Pole in its denominator is
// legally zero.
class PochValue {
public:
    static PochValue pole() { return PochValue(true, Rational(0)); }
    static PochValue of(Rational v) { return PochValue(false, std::move(v)); }

    bool is_pole() const { return pole_; }
    // Throws DomainError on Pole.
    const Rational& rational() const;

private:
    PochValue(bool pole, Rational v) : pole_(pole), v_(std::move(v)) {}
    bool pole_;
    Rational v_;
};

// (a; q)_k for k >= 0: prod_{j=0}^{k-1} (1 - a q^j). Empty product is 1.
Rational poch_finite(const Rational& a, long k, const QBase& base);

// (a; q)_k for any integer k. Negative indices use
// (a; q)_{-n} = 1 / prod_{j=1}^{n} (1 - a q^{-j}) and yield Pole when a
// vanishing factor appears. Satisfies (a;q)_k = (a;q)_{k+1} / (1 - a q^k)
// wherever both sides are finite.
PochValue poch_int(const Rational& a, long k, const QBase& base);

// The factors of (a; q)_k together with the side of a term's fraction bar
// they land on. For k < 0 the factors are those of the reciprocal product,
// so the placement flips; a vanishing factor then means Pole, not zero.
enum class Placement { Numerator, Denominator };
struct PochFactorList {
    std::vector<Rational> factors;  // 1 - a q^j, in increasing |j|
    Placement placement;            // effective side after any k < 0 flip
};
PochFactorList poch_factors(const Rational& a, long k, const QBase& base,
                            Placement intended);

// (a; q)_infinity with a certified absolute error bound <= ctx.target_eps.
// An exact vanishing factor (a on the lattice q^{-j}, j >= 0) returns the
// exact zero enclosure. Certification: once t = 2 |a| |q|^N / (1 - |q|)
// <= 1/2, the remaining factors multiply the partial product P_N by
// something within a factor e^t of 1, and |e^t - 1| <= 2t, so the absolute
// tail is at most |P_N| * 2t. Working precision escalates until the total
// err (tail + accumulated rounding) meets the target.
ApproxValue poch_infinite(const Rational& a, const QBase& base, const PrecisionContext& ctx);

// Product of (a_i; q)_k over a parameter list; Pole absorbs unless a zero
// factor also appears (the caller's construction should prevent that mix,
// which raises IndeterminateError).
PochValue poch_multi(std::span<const Rational> as, long k, const QBase& base);

// Product of (a_i; q)_infinity with propagated error bounds.
ApproxValue poch_multi_infinite(std::span<const Rational> as, const QBase& base,
                                const PrecisionContext& ctx);

}  // namespace qseries
