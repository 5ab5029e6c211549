// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <string>

#include "qseries/cauchy.hpp"
#include "qseries/identities.hpp"

namespace qseries {

using OrderedJson = nlohmann::ordered_json;

// Decimal digits sufficient to reproduce a binary value of the given
// precision: ceil(prec * log10(2)) + 1.
long round_trip_digits(mpfr_prec_t prec);

// Scientific-notation rendering at round-trip digits for the value's own
// precision. Deterministic for a given value.
std::string decimal_string(const BigFloat& x);

// Short upper bound rendering for nonnegative error terms and measured
// deviations: rounded up, a few significant digits.
std::string error_string(const Rational& err);

// Evaluation result: exact values render as "p/q" strings, certified values
// as {"value": ..., "err": ...} with decimal strings.
OrderedJson json_of(const EvalResult& value);

// {id, params, mode, lhs, rhs, residual, budget, verdict} with parameters in
// declaration order followed by n (terminating ids) and q. Exact residuals
// render as "p/q", certified ones as decimal strings. A nonempty detail
// note appends a "detail" key.
OrderedJson json_of(const VerificationReport& report);

// {target, steps: [{kind, description, residual, exact, pass}], verdict}.
OrderedJson json_of(const ProofTrace& trace);

// Tab-separated renderings of the same keys in fixed column order. Certified
// values render as "value ± err" in a single cell.
std::string tsv_of(const EvalResult& value);
std::string report_tsv_header();
std::string tsv_row(const VerificationReport& report);
std::string trace_tsv(const ProofTrace& trace);

}  // namespace qseries
