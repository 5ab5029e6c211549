// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qseries/approx.hpp"
#include "qseries/qfactorial.hpp"
#include "qseries/rational.hpp"

namespace qseries {

enum class SeriesKind { Unilateral, Bilateral };

enum class ConvergenceDomain { Converges, DivergesAbove, DivergesBelow, Terminating };

// Stopping rules for certified summation. target_eps is the truncation
// budget: each side's certified geometric tail must fall below
// target_eps / 4. ratio_margin is the fraction of the gap between the
// asymptotic term-ratio limit and 1 conceded before the geometric tail
// bound is applied: certification waits until the rigorous per-term ratio
// bound falls below limit + ratio_margin * (1 - limit).
struct TruncationPolicy {
    long max_terms = 10000;
    Rational target_eps = Rational(1, mpz_class("1000000000000000000000000000000"));  // 1e-30
    Rational ratio_margin = Rational(1, 2);
};

// One exact series term. annihilated marks a term killed by a vanishing
// numerator factorial or an infinite denominator factorial; such zeros are
// structural (they persist for all indices beyond the first hit).
struct TermValue {
    Rational value;
    bool annihilated;
};

// Term shape: prod (u_i; q)_k / prod (l_i; q)_k * arg^k, summed over k >= 0
// (Unilateral, with an implicit (q; q)_k in the denominator) or over all
// integers k (Bilateral). Construction rejects parameter points where a
// denominator factorial vanishes at a reachable index, or a numerator
// factorial has a reachable Pole, since every term past such a point is
// undefined:
//   - lower l = q^{-m} (m >= 0) with k = m+1 reachable before termination;
//   - Bilateral upper u = q^{j} (j >= 1) with k = -j reachable from below.
// Bilateral also requires arg != 0.
struct SeriesSpec {
    SeriesKind kind;
    std::vector<Rational> upper;
    std::vector<Rational> lower;
    Rational arg;
    QBase base;

    SeriesSpec(SeriesKind kind_, std::vector<Rational> upper_, std::vector<Rational> lower_,
               Rational arg_, QBase base_);
};

// Very-well-poised bilateral shape rooted at a:
//   sum_k ((1 - a q^{2k}) / (1 - a)) prod_i (t_i; q)_k / (a q / t_i; q)_k * arg^k.
// The fused prefactor (1 - a q^{2k})/(1 - a) is the collapsed form of the
// (q sqrt a, -q sqrt a)_k / (sqrt a, -sqrt a)_k column pair and keeps every
// term rational. Construction requires a and the tail nonzero, a off the
// even lattice q^{2m} (where the collapse divides by zero somewhere in the
// range), the same reachability rules as SeriesSpec for the implied columns,
// and, for the four-parameter shape, the natural argument
// arg = q a^2 / (t_1 t_2 t_3 t_4).
struct VWPSpec {
    Rational a;
    std::vector<Rational> tail;
    Rational arg;
    QBase base;

    VWPSpec(Rational a_, std::vector<Rational> tail_, Rational arg_, QBase base_);
};

// Classification by the limiting term ratios: |t_{k+1}/t_k| -> |arg| upward
// and |t_{k-1}/t_k| -> (prod |l_i| / prod |u_i|) / |arg| downward (counting
// nonzero parameters; a surplus of lower parameters diverges, a surplus of
// upper parameters converges). Terminating requires an upper q^{-m} above
// and, for Bilateral, a lower q^{m'} below. A failed lower condition is
// reported before a failed upper one.
ConvergenceDomain convergence_domain(const SeriesSpec& spec);
ConvergenceDomain convergence_domain(const VWPSpec& spec);

// Exact term at index k. Vanishing-factor resolution: a factor on the
// numerator side of the bar (upper factorial zero, or lower factorial Pole)
// annihilates the term; a factor on the denominator side raises
// IndeterminateError, as does a simultaneous pair at the same factor index.
TermValue term(const SeriesSpec& spec, long k);
TermValue vwp_term(const VWPSpec& spec, long k);

// Exact sum of a Terminating spec over its live index range.
Rational eval_terminating(const SeriesSpec& spec);

// Certified evaluation: result err <= ctx.target_eps, combining exact
// per-term generation (so annihilation is detected exactly), geometric tail
// bounds from rigorous monotone ratio envelopes, and accumulated rounding.
// Working precision escalates internally when rounding dominates.
// Preconditions: convergence_domain in {Converges, Terminating}.
ApproxValue eval_unilateral(const SeriesSpec& spec, const TruncationPolicy& policy,
                            const PrecisionContext& ctx);
ApproxValue eval_bilateral(const SeriesSpec& spec, const TruncationPolicy& policy,
                           const PrecisionContext& ctx);
ApproxValue eval_vwp_bilateral(const VWPSpec& spec, const TruncationPolicy& policy,
                               const PrecisionContext& ctx);

// Exact terminating very-well-poised unilateral sum
//   sum_{k=0}^{n} ((1-a q^{2k})/(1-a)) ((a)_k/(q)_k)
//                 prod_i (t_i)_k/(aq/t_i)_k * arg^k,
// the shape of the classical summation/transformation formulas. The extra
// (a)_k/(q)_k column is what distinguishes the unilateral shape from the
// bilateral one.
Rational vwp_unilateral_sum(const Rational& a, std::span<const Rational> tail,
                            const Rational& arg, long n, const QBase& base);

// Generic certified bilateral engine, exposed for series-shaped sums that do
// not fit SeriesSpec (theta sums and similar). Callbacks deliver exact step
// ratios and rigorous envelope bounds:
//   up_ratio(k):  t_{k+1}/t_k, nullopt once every later term vanishes;
//   down_ratio(n): t_{-(n+1)}/t_{-n}, same convention;
//   up_bound(k):  upper bound on |t_{j+1}/t_j| valid for all j >= k,
//                 nonincreasing in k, nullopt while unavailable;
//   down_bound(n): the downward counterpart.
// Factories are invoked afresh on each precision-escalation attempt.
struct BilateralCallbacks {
    std::function<std::optional<Rational>(long)> up_ratio;
    std::function<std::optional<Rational>(long)> down_ratio;
    std::function<std::optional<Rational>(long)> up_bound;
    std::function<std::optional<Rational>(long)> down_bound;
    Rational up_limit;    // asymptotic |t_{k+1}/t_k|, must be < 1
    Rational down_limit;  // asymptotic |t_{-(n+1)}/t_{-n}|, must be < 1
};
ApproxValue eval_bilateral_custom(const std::function<BilateralCallbacks()>& make,
                                  const TruncationPolicy& policy, const PrecisionContext& ctx);

}  // namespace qseries
