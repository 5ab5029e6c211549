// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace qseries {

// Exact rational scalar. mpq_class keeps values canonical (reduced, den > 0)
// as long as construction goes through the helpers below.
using Rational = mpq_class;

// x^e for signed e. Throws DomainError for 0 raised to a negative power.
Rational rational_pow(const Rational& x, long e);

// Parses "p/q", "p", decimal ("0.25") and scientific ("1e-30") forms exactly.
// Throws DomainError on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical "p/q" (bare "p" when the denominator is 1).
std::string to_string(const Rational& x);

// Exponent j with x == q^j, if one exists. Exact and depth-unbounded: with
// q = p/r in lowest terms and r >= 2, x == q^j forces den(x) = r^j (j >= 0)
// or den(x) = |p|^(-j) (j < 0), so j is read off by repeated exact division
// and confirmed by one exponentiation. Requires 0 < |q| < 1; returns nullopt
// for x == 0 and for x off the lattice.
std::optional<long> as_q_power(const Rational& x, const Rational& q);

}  // namespace qseries
