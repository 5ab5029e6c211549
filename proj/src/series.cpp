// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qseries/series.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

// Smallest m >= bound such that some parameter equals q^{-m} (for uppers)
// or q^{m} (for lowers, bound 1). nullopt when no parameter is on the
// relevant half of the lattice.
std::optional<long> first_zero_above(std::span<const Rational> upper, const QBase& base) {
    std::optional<long> best;
    for (const Rational& u : upper) {
        auto e = as_q_power(u, base.q);
        if (e && *e <= 0) {
            long m = -*e;
            if (!best || m < *best) best = m;
        }
    }
    return best;
}

std::optional<long> first_pole_below(std::span<const Rational> lower, const QBase& base) {
    std::optional<long> best;
    for (const Rational& l : lower) {
        auto e = as_q_power(l, base.q);
        if (e && *e >= 1) {
            if (!best || *e < *best) best = *e;
        }
    }
    return best;
}

// A lower parameter on the q^{-m} half of the lattice (m >= 0) makes a
// denominator factor vanish at k = m + 1; that index is unreachable only
// when some upper parameter terminates the sum at n <= m first. Upper
// parameters on the q^{+j} half produce Poles below; those are legal at
// construction (single terms stay queryable) and surface as errors from
// evaluation when an unbounded term is actually reached.
void check_lower_zeros(std::span<const Rational> upper, std::span<const Rational> lower,
                       const QBase& base) {
    const std::optional<long> n_above = first_zero_above(upper, base);
    for (const Rational& l : lower) {
        auto e = as_q_power(l, base.q);
        if (e && *e <= 0) {
            const long m = -*e;
            if (!n_above || m < *n_above)
                throw DomainError("series: lower parameter " + to_string(l) + " = q^" +
                                  std::to_string(*e) +
                                  " vanishes in a denominator at a reachable index");
        }
    }
}

}  // namespace

SeriesSpec::SeriesSpec(SeriesKind kind_, std::vector<Rational> upper_,
                       std::vector<Rational> lower_, Rational arg_, QBase base_)
    : kind(kind_),
      upper(std::move(upper_)),
      lower(std::move(lower_)),
      arg(std::move(arg_)),
      base(std::move(base_)) {
    if (kind == SeriesKind::Unilateral) {
        if (lower.size() + 1 != upper.size())
            throw DomainError("series: unilateral shape needs one more upper than lower");
    } else {
        if (lower.size() != upper.size())
            throw DomainError("series: bilateral shape needs matching row lengths");
        if (arg == 0) throw DomainError("series: bilateral argument must be nonzero");
    }
    check_lower_zeros(upper, lower, base);
}

namespace {

// The implied factorial columns of a very-well-poised spec, beyond the fused
// prefactor: tail entries above, a q / t_i below.
std::vector<Rational> vwp_lowers(const Rational& a, std::span<const Rational> tail,
                                 const QBase& base) {
    std::vector<Rational> lowers;
    lowers.reserve(tail.size());
    for (const Rational& t : tail) lowers.push_back(a * base.q / t);
    return lowers;
}

}  // namespace

VWPSpec::VWPSpec(Rational a_, std::vector<Rational> tail_, Rational arg_, QBase base_)
    : a(std::move(a_)), tail(std::move(tail_)), arg(std::move(arg_)), base(std::move(base_)) {
    if (a == 0) throw DomainError("vwp: a must be nonzero");
    if (a == 1) throw DomainError("vwp: a = 1 degenerates the prefactor");
    for (const Rational& t : tail)
        if (t == 0) throw DomainError("vwp: tail parameters must be nonzero");
    if (arg == 0) throw DomainError("vwp: argument must be nonzero");
    if (auto e = as_q_power(a, base.q); e && *e % 2 == 0)
        throw DomainError("vwp: a = q^" + std::to_string(*e) +
                          " makes the prefactor collapse 0/0 in range");
    if (tail.size() == 4) {
        Rational prod = tail[0] * tail[1] * tail[2] * tail[3];
        if (arg * prod != base.q * a * a)
            throw DomainError("vwp: argument must equal q a^2 / (t1 t2 t3 t4)");
    }
    check_lower_zeros(tail, vwp_lowers(a, tail, base), base);
}

namespace {

Rational abs_prod_nonzero(std::span<const Rational> xs, std::size_t* count) {
    Rational p(1);
    std::size_t c = 0;
    for (const Rational& x : xs)
        if (x != 0) {
            p *= abs(x);
            ++c;
        }
    if (count) *count = c;
    return p;
}

ConvergenceDomain classify(bool bilateral, bool term_above, bool term_below,
                           const Rational& arg_abs, std::span<const Rational> upper,
                           std::span<const Rational> lower) {
    if (!bilateral) {
        if (term_above) return ConvergenceDomain::Terminating;
        return arg_abs < 1 ? ConvergenceDomain::Converges : ConvergenceDomain::DivergesAbove;
    }
    if (term_above && term_below) return ConvergenceDomain::Terminating;
    bool conv_below = term_below;
    if (!conv_below) {
        std::size_t nu = 0, nl = 0;
        const Rational pu = abs_prod_nonzero(upper, &nu);
        const Rational pl = abs_prod_nonzero(lower, &nl);
        if (nl < nu)
            conv_below = true;
        else if (nl == nu)
            conv_below = (pl < arg_abs * pu);
    }
    if (!conv_below) return ConvergenceDomain::DivergesBelow;
    if (!term_above && arg_abs >= 1) return ConvergenceDomain::DivergesAbove;
    return ConvergenceDomain::Converges;
}

}  // namespace

ConvergenceDomain convergence_domain(const SeriesSpec& spec) {
    const bool bilateral = (spec.kind == SeriesKind::Bilateral);
    if (!bilateral && spec.arg == 0) return ConvergenceDomain::Terminating;
    const bool term_above = first_zero_above(spec.upper, spec.base).has_value();
    const bool term_below = bilateral && first_pole_below(spec.lower, spec.base).has_value();
    return classify(bilateral, term_above, term_below, abs(spec.arg), spec.upper, spec.lower);
}

ConvergenceDomain convergence_domain(const VWPSpec& spec) {
    // The prefactor cannot terminate either side (a off the even lattice).
    // Its step ratio (1 - a q^{2k+2}) / (1 - a q^{2k}) tends to 1 upward but
    // to q^{-2} downward, so the downward asymptotic ratio carries an extra
    // |q|^{-2} beyond the column quotient.
    const std::vector<Rational> lowers = vwp_lowers(spec.a, spec.tail, spec.base);
    const bool term_above = first_zero_above(spec.tail, spec.base).has_value();
    const bool term_below = first_pole_below(lowers, spec.base).has_value();
    if (term_above && term_below) return ConvergenceDomain::Terminating;
    const Rational arg_abs = abs(spec.arg);
    const Rational qa = abs(spec.base.q);
    bool conv_below = term_below;
    if (!conv_below) {
        Rational pt(1), pl(1);
        for (const Rational& t : spec.tail) pt *= abs(t);
        for (const Rational& l : lowers) pl *= abs(l);
        conv_below = (pl < qa * qa * pt * arg_abs);
    }
    if (!conv_below) return ConvergenceDomain::DivergesBelow;
    if (!term_above && arg_abs >= 1) return ConvergenceDomain::DivergesAbove;
    return ConvergenceDomain::Converges;
}

namespace {

struct FactorScan {
    std::vector<long> num_zeros;  // lattice indexes j of vanishing numerator-side factors
    std::vector<long> den_zeros;  // same, denominator side; each column yields at most one
    Rational num{1};
    Rational den{1};
};

void scan_column(const Rational& param, long k, const QBase& base, Placement intended,
                 FactorScan& scan) {
    const PochFactorList fl = poch_factors(param, k, base, intended);
    for (std::size_t i = 0; i < fl.factors.size(); ++i) {
        const Rational& f = fl.factors[i];
        if (f == 0) {
            (fl.placement == Placement::Numerator ? scan.num_zeros : scan.den_zeros)
                .push_back(static_cast<long>(i));
        } else if (fl.placement == Placement::Numerator) {
            scan.num *= f;
        } else {
            scan.den *= f;
        }
    }
}

// Shared zero/pole resolution: a vanishing factor at the same lattice index
// on both sides means two parameters collide there (an exact 0/0), which no
// convention resolves; otherwise any numerator-side zero annihilates the
// term, and a denominator-side zero alone marks an unbounded term.
TermValue resolve_term(const FactorScan& scan, const Rational& extra_num,
                       const Rational& extra_den, const Rational& arg, long k) {
    for (long jn : scan.num_zeros)
        for (long jd : scan.den_zeros)
            if (jn == jd)
                throw IndeterminateError(
                    "term: numerator and denominator factors vanish at the same index j=" +
                    std::to_string(jn));
    if (!scan.num_zeros.empty()) return TermValue{Rational(0), true};
    if (!scan.den_zeros.empty())
        throw IndeterminateError("term: denominator factor vanishes at index j=" +
                                 std::to_string(scan.den_zeros.front()) +
                                 " (invalid parameter point)");
    if (extra_den == 0) throw IndeterminateError("term: prefactor denominator vanishes");
    Rational v = scan.num * extra_num / (scan.den * extra_den);
    return TermValue{v * rational_pow(arg, k), extra_num == 0};
}

}  // namespace

TermValue term(const SeriesSpec& spec, long k) {
    if (spec.kind == SeriesKind::Unilateral && k < 0)
        throw DomainError("term: unilateral index must be nonnegative");
    FactorScan scan;
    for (const Rational& u : spec.upper) scan_column(u, k, spec.base, Placement::Numerator, scan);
    for (const Rational& l : spec.lower) scan_column(l, k, spec.base, Placement::Denominator, scan);
    if (spec.kind == SeriesKind::Unilateral)
        scan_column(spec.base.q, k, spec.base, Placement::Denominator, scan);
    return resolve_term(scan, Rational(1), Rational(1), spec.arg, k);
}

TermValue vwp_term(const VWPSpec& spec, long k) {
    FactorScan scan;
    for (const Rational& t : spec.tail) scan_column(t, k, spec.base, Placement::Numerator, scan);
    const std::vector<Rational> lowers = vwp_lowers(spec.a, spec.tail, spec.base);
    for (const Rational& l : lowers) scan_column(l, k, spec.base, Placement::Denominator, scan);
    const Rational pref_num = 1 - spec.a * rational_pow(spec.base.q, 2 * k);
    const Rational pref_den = 1 - spec.a;
    return resolve_term(scan, pref_num, pref_den, spec.arg, k);
}

Rational eval_terminating(const SeriesSpec& spec) {
    if (convergence_domain(spec) != ConvergenceDomain::Terminating)
        throw DomainError("eval_terminating: series does not terminate");
    long k_hi = 0;
    if (spec.kind == SeriesKind::Unilateral && spec.arg == 0 &&
        !first_zero_above(spec.upper, spec.base)) {
        k_hi = 0;  // only the k = 0 term survives
    } else {
        k_hi = *first_zero_above(spec.upper, spec.base);
    }
    long k_lo = 0;
    if (spec.kind == SeriesKind::Bilateral)
        k_lo = 1 - *first_pole_below(spec.lower, spec.base);
    Rational sum(0);
    for (long k = k_lo; k <= k_hi; ++k) sum += term(spec, k).value;
    return sum;
}

Rational vwp_unilateral_sum(const Rational& a, std::span<const Rational> tail,
                            const Rational& arg, long n, const QBase& base) {
    if (n < 0) throw DomainError("vwp_unilateral_sum: n must be nonnegative");
    if (a == 1) throw DomainError("vwp_unilateral_sum: a = 1 degenerates the prefactor");
    const Rational pref_den = 1 - a;
    const std::vector<Rational> lowers = vwp_lowers(a, tail, base);
    Rational sum(0);
    for (long k = 0; k <= n; ++k) {
        FactorScan scan;
        scan_column(a, k, base, Placement::Numerator, scan);
        scan_column(base.q, k, base, Placement::Denominator, scan);
        for (const Rational& t : tail) scan_column(t, k, base, Placement::Numerator, scan);
        for (const Rational& l : lowers) scan_column(l, k, base, Placement::Denominator, scan);
        const Rational pref_num = 1 - a * rational_pow(base.q, 2 * k);
        sum += resolve_term(scan, pref_num, pref_den, arg, k).value;
    }
    return sum;
}

namespace {

// One certified side of a bilateral sum: accumulates terms t_1, t_2, ... (or
// t_{-1}, t_{-2}, ...) onto sum until annihilation or a certified geometric
// tail below eps_quarter. Returns the tail bound contribution. A side whose
// ratio limit is not below 1 must terminate by annihilation; the threshold
// gate keeps the geometric bound from being applied while the envelope is
// still far above its limit.
Rational sum_side(ApproxValue& sum, const std::function<std::optional<Rational>(long)>& ratio,
                  const std::function<std::optional<Rational>(long)>& bound,
                  const Rational& limit, const Rational& eps_quarter,
                  const TruncationPolicy& policy, mpfr_prec_t bits) {
    std::optional<Rational> threshold;
    if (limit < 1) threshold = limit + policy.ratio_margin * (1 - limit);
    ApproxValue term = ApproxValue::of_long(1, bits);
    long count = 0;
    for (long k = 0;; ++k) {
        if (count >= policy.max_terms)
            throw MaxTermsExceeded("eval: no certification within max_terms = " +
                                   std::to_string(policy.max_terms));
        const std::optional<Rational> r = ratio(k);
        if (!r || *r == 0) return Rational(0);  // side terminates exactly
        term = ApproxValue::mul_exact(term, *r);
        sum = ApproxValue::add(sum, term);
        ++count;
        if (!threshold) continue;
        const std::optional<Rational> b = bound(k + 1);
        if (b && *b <= *threshold && *b < 1) {
            const Rational tail = term.upper_abs() * *b / (1 - *b);
            if (tail <= eps_quarter) return tail;
        }
    }
}

}  // namespace

ApproxValue eval_bilateral_custom(const std::function<BilateralCallbacks()>& make,
                                  const TruncationPolicy& policy, const PrecisionContext& ctx) {
    if (policy.ratio_margin <= 0 || policy.ratio_margin >= 1)
        throw DomainError("eval: ratio_margin must lie in (0, 1)");
    if (policy.max_terms < 1) throw DomainError("eval: max_terms must be positive");
    if (policy.target_eps <= 0) throw DomainError("eval: target_eps must be positive");
    mpfr_prec_t bits = ctx.bits;
    const Rational eps_quarter = policy.target_eps / 4;
    for (int attempt = 0; attempt < 6; ++attempt, bits *= 2) {
        const BilateralCallbacks cb = make();
        ApproxValue sum = ApproxValue::of_long(1, bits);  // t_0 = 1
        const Rational tail_up =
            sum_side(sum, cb.up_ratio, cb.up_bound, cb.up_limit, eps_quarter, policy, bits);
        const Rational tail_dn =
            sum_side(sum, cb.down_ratio, cb.down_bound, cb.down_limit, eps_quarter, policy, bits);
        ApproxValue result = sum.widened(tail_up + tail_dn);
        if (result.err_upper() <= ctx.target_eps) return result;
    }
    throw DomainError("eval: target_eps unreachable by precision escalation");
}

namespace {

// Incremental factor state for one side of a sum: a parameter x and the
// running power x q^{j} entering the next step's factor.
struct Shifted {
    Rational param;
    Rational cur;
};

std::vector<Shifted> shifted_initial(std::span<const Rational> params, const Rational& start) {
    std::vector<Shifted> v;
    v.reserve(params.size());
    for (const Rational& p : params) v.push_back(Shifted{p, p * start});
    return v;
}

// Ratio callbacks for the plain bilateral/unilateral shape. The upward step
// k -> k+1 multiplies by arg * prod (1 - u q^k) / prod (1 - l q^k); the
// downward step -n -> -(n+1) by (1/arg) * prod (1 - l q^{-(n+1)}) / prod
// (1 - u q^{-(n+1)}). A vanishing upper factor annihilates upward, a
// vanishing lower factor annihilates downward; the opposite cases are
// unreachable for validated specs.
BilateralCallbacks make_series_callbacks(const SeriesSpec& spec) {
    BilateralCallbacks cb;
    std::vector<Rational> lower = spec.lower;
    if (spec.kind == SeriesKind::Unilateral) lower.push_back(spec.base.q);
    const Rational q = spec.base.q;
    const Rational qa = abs(q);
    const Rational arg = spec.arg;

    auto up_u = std::make_shared<std::vector<Shifted>>(shifted_initial(spec.upper, Rational(1)));
    auto up_l = std::make_shared<std::vector<Shifted>>(shifted_initial(lower, Rational(1)));
    cb.up_ratio = [up_u, up_l, q, arg](long) -> std::optional<Rational> {
        Rational num(1), den(1);
        for (Shifted& s : *up_u) {
            num *= (1 - s.cur);
            s.cur *= q;
        }
        bool dead = (num == 0);
        for (Shifted& s : *up_l) {
            den *= (1 - s.cur);
            s.cur *= q;
        }
        if (dead) return std::nullopt;
        if (den == 0)
            throw IndeterminateError("eval: lower factorial vanishes during upward summation");
        return arg * num / den;
    };

    auto dn_u = std::make_shared<std::vector<Shifted>>(shifted_initial(spec.upper, 1 / q));
    auto dn_l = std::make_shared<std::vector<Shifted>>(shifted_initial(lower, 1 / q));
    cb.down_ratio = [dn_u, dn_l, q, arg](long) -> std::optional<Rational> {
        Rational num(1), den(1);
        for (Shifted& s : *dn_l) {
            num *= (1 - s.cur);
            s.cur /= q;
        }
        bool dead = (num == 0);
        for (Shifted& s : *dn_u) {
            den *= (1 - s.cur);
            s.cur /= q;
        }
        if (dead) return std::nullopt;
        if (den == 0)
            throw IndeterminateError("eval: upper factorial Pole during downward summation");
        return num / (den * arg);
    };

    // Envelope bounds: |1 - x q^k| <= 1 + |x| |q|^k above the bar and
    // >= 1 - |x| |q|^k (upward) or |x| |q|^{-n} - 1 (downward) below it,
    // each factor monotone in the step index.
    std::vector<Rational> up_abs, lo_abs;
    for (const Rational& u : spec.upper) up_abs.push_back(abs(u));
    for (const Rational& l : lower) lo_abs.push_back(abs(l));
    const Rational arg_abs = abs(arg);

    cb.up_bound = [up_abs, lo_abs, qa, arg_abs](long k) -> std::optional<Rational> {
        const Rational qk = rational_pow(qa, k);
        Rational num(1), den(1);
        for (const Rational& u : up_abs) num *= 1 + u * qk;
        for (const Rational& l : lo_abs) {
            const Rational f = 1 - l * qk;
            if (f <= 0) return std::nullopt;
            den *= f;
        }
        return arg_abs * num / den;
    };
    cb.down_bound = [up_abs, lo_abs, qa, arg_abs](long n) -> std::optional<Rational> {
        const Rational R = rational_pow(qa, -(n + 1));
        Rational num(1), den(1);
        for (const Rational& l : lo_abs) num *= 1 + l * R;
        for (const Rational& u : up_abs) {
            if (u == 0) continue;  // factor is exactly 1
            const Rational f = u * R - 1;
            if (f <= 0) return std::nullopt;
            den *= f;
        }
        return num / (den * arg_abs);
    };

    cb.up_limit = arg_abs;
    std::size_t nu = 0, nl = 0;
    const Rational pu = abs_prod_nonzero(spec.upper, &nu);
    const Rational pl = abs_prod_nonzero(lower, &nl);
    if (nl < nu)
        cb.down_limit = Rational(0);
    else if (nl == nu)
        cb.down_limit = pl / (pu * arg_abs);
    else
        cb.down_limit = Rational(1);  // rejected by the precondition unless terminating
    return cb;
}

BilateralCallbacks make_vwp_callbacks(const VWPSpec& spec) {
    BilateralCallbacks cb;
    const Rational q = spec.base.q;
    const Rational qa = abs(q);
    const Rational arg = spec.arg;
    const Rational a = spec.a;
    const std::vector<Rational> lowers = vwp_lowers(spec.a, spec.tail, spec.base);

    auto up_t = std::make_shared<std::vector<Shifted>>(shifted_initial(spec.tail, Rational(1)));
    auto up_l = std::make_shared<std::vector<Shifted>>(shifted_initial(lowers, Rational(1)));
    // a q^{2k} for the prefactor ratio (1 - a q^{2k+2}) / (1 - a q^{2k}).
    auto up_a = std::make_shared<Rational>(a);
    cb.up_ratio = [up_t, up_l, up_a, q, arg](long) -> std::optional<Rational> {
        const Rational pd = 1 - *up_a;
        const Rational pn = 1 - *up_a * q * q;
        *up_a *= q * q;
        Rational num(1), den(1);
        for (Shifted& s : *up_t) {
            num *= (1 - s.cur);
            s.cur *= q;
        }
        bool dead = (num == 0);
        for (Shifted& s : *up_l) {
            den *= (1 - s.cur);
            s.cur *= q;
        }
        if (pd == 0 || pn == 0)
            throw InvalidInstance("eval: very-well-poised prefactor vanishes in range");
        if (dead) return std::nullopt;
        if (den == 0)
            throw IndeterminateError("eval: lower factorial vanishes during upward summation");
        return arg * pn * num / (pd * den);
    };

    auto dn_t = std::make_shared<std::vector<Shifted>>(shifted_initial(spec.tail, 1 / q));
    auto dn_l = std::make_shared<std::vector<Shifted>>(shifted_initial(lowers, 1 / q));
    auto dn_a = std::make_shared<Rational>(a);
    cb.down_ratio = [dn_t, dn_l, dn_a, q, arg](long) -> std::optional<Rational> {
        const Rational pd = 1 - *dn_a;
        *dn_a /= q * q;
        const Rational pn = 1 - *dn_a;
        Rational num(1), den(1);
        for (Shifted& s : *dn_l) {
            num *= (1 - s.cur);
            s.cur /= q;
        }
        bool dead = (num == 0);
        for (Shifted& s : *dn_t) {
            den *= (1 - s.cur);
            s.cur /= q;
        }
        if (pd == 0 || pn == 0)
            throw InvalidInstance("eval: very-well-poised prefactor vanishes in range");
        if (dead) return std::nullopt;
        if (den == 0)
            throw IndeterminateError("eval: upper factorial Pole during downward summation");
        return pn * num / (pd * den * arg);
    };

    std::vector<Rational> t_abs, l_abs;
    for (const Rational& t : spec.tail) t_abs.push_back(abs(t));
    for (const Rational& l : lowers) l_abs.push_back(abs(l));
    const Rational a_abs = abs(a);
    const Rational arg_abs = abs(arg);

    cb.up_bound = [t_abs, l_abs, a_abs, qa, arg_abs](long k) -> std::optional<Rational> {
        const Rational qk = rational_pow(qa, k);
        const Rational q2k = qk * qk;
        const Rational pd = 1 - a_abs * q2k;
        if (pd <= 0) return std::nullopt;
        Rational num = 1 + a_abs * q2k * qa * qa;
        Rational den = pd;
        for (const Rational& t : t_abs) num *= 1 + t * qk;
        for (const Rational& l : l_abs) {
            const Rational f = 1 - l * qk;
            if (f <= 0) return std::nullopt;
            den *= f;
        }
        return arg_abs * num / den;
    };
    cb.down_bound = [t_abs, l_abs, a_abs, qa, arg_abs](long n) -> std::optional<Rational> {
        const Rational R = rational_pow(qa, -(n + 1));
        const Rational R2_lo = rational_pow(qa, -2 * n);      // in |1 - a q^{-2n}|
        const Rational R2_hi = rational_pow(qa, -2 * (n + 1));  // in the numerator
        const Rational pd = a_abs * R2_lo - 1;
        if (pd <= 0) return std::nullopt;
        Rational num = 1 + a_abs * R2_hi;
        Rational den = pd;
        for (const Rational& l : l_abs) num *= 1 + l * R;
        for (const Rational& t : t_abs) {
            const Rational f = t * R - 1;
            if (f <= 0) return std::nullopt;
            den *= f;
        }
        return num / (den * arg_abs);
    };

    // Downward, the prefactor ratio tends to q^{-2} and the columns to
    // prod lowers / prod tail; at the natural argument both limits reduce
    // to |arg|.
    cb.up_limit = arg_abs;
    Rational pl(1), pt(1);
    for (const Rational& l : l_abs) pl *= l;
    for (const Rational& t : t_abs) pt *= t;
    cb.down_limit = pl / (pt * arg_abs * qa * qa);
    return cb;
}

void require_summable(ConvergenceDomain d, const char* what) {
    if (d == ConvergenceDomain::DivergesAbove)
        throw DomainError(std::string(what) + ": series diverges above (|arg| >= 1)");
    if (d == ConvergenceDomain::DivergesBelow)
        throw DomainError(std::string(what) +
                          ": series diverges below (lower/upper product ratio >= |arg|)");
}

}  // namespace

ApproxValue eval_unilateral(const SeriesSpec& spec, const TruncationPolicy& policy,
                            const PrecisionContext& ctx) {
    if (spec.kind != SeriesKind::Unilateral)
        throw DomainError("eval_unilateral: spec is not unilateral");
    require_summable(convergence_domain(spec), "eval_unilateral");
    if (spec.arg == 0) return ApproxValue::of_long(1, ctx.bits);
    return eval_bilateral_custom(
        [&spec]() {
            BilateralCallbacks cb = make_series_callbacks(spec);
            cb.down_ratio = [](long) -> std::optional<Rational> { return std::nullopt; };
            cb.down_bound = [](long) -> std::optional<Rational> { return std::nullopt; };
            cb.down_limit = Rational(0);
            return cb;
        },
        policy, ctx);
}

ApproxValue eval_bilateral(const SeriesSpec& spec, const TruncationPolicy& policy,
                           const PrecisionContext& ctx) {
    if (spec.kind != SeriesKind::Bilateral)
        throw DomainError("eval_bilateral: spec is not bilateral");
    const ConvergenceDomain d = convergence_domain(spec);
    require_summable(d, "eval_bilateral");
    return eval_bilateral_custom([&spec]() { return make_series_callbacks(spec); }, policy, ctx);
}

ApproxValue eval_vwp_bilateral(const VWPSpec& spec, const TruncationPolicy& policy,
                               const PrecisionContext& ctx) {
    require_summable(convergence_domain(spec), "eval_vwp_bilateral");
    return eval_bilateral_custom([&spec]() { return make_vwp_callbacks(spec); }, policy, ctx);
}

}  // namespace qseries
