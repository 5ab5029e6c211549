// Copyright 2026 The qseries Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "qseries/identities.hpp"

#include <initializer_list>
#include <utility>

#include "qseries/errors.hpp"

namespace qseries {

namespace {

constexpr long kSampleTries = 5000;

Rational qpow(const QBase& base, long e) { return rational_pow(base.q, e); }

// x = q^j with j >= 1. Such an upper parameter of a bilateral series puts a
// vanishing factor into the denominator of (x;q)_{-m} for m >= j, so every
// term below k = -j is undefined.
bool upper_pole(const Rational& x, const QBase& base) {
    auto e = as_q_power(x, base.q);
    return e.has_value() && *e >= 1;
}

// x = q^{-m} with m >= 0, the zero set of (x;q)_infinity. A lower parameter
// on this lattice kills the term denominator at every k > m.
bool lower_lattice(const Rational& x, const QBase& base) {
    auto e = as_q_power(x, base.q);
    return e.has_value() && *e <= 0;
}

// (x;q)_n = 0 for some 0 <= k <= n, i.e. x = q^{-m} with 0 <= m <= n - 1.
bool finite_vanishes(const Rational& x, long n, const QBase& base) {
    if (n <= 0) return false;
    auto e = as_q_power(x, base.q);
    return e.has_value() && *e <= 0 && -*e <= n - 1;
}

bool even_lattice(const Rational& x, const QBase& base) {
    auto e = as_q_power(x, base.q);
    return e.has_value() && (*e % 2 == 0);
}

struct Named {
    const char* label;
    Rational value;
};

std::optional<std::string> any_zero(std::initializer_list<Named> xs) {
    for (const auto& x : xs)
        if (x.value == 0) return std::string(x.label) + " must be nonzero";
    return std::nullopt;
}

// Lower parameters of a bilateral series must avoid q^{<=0}; uppers must
// avoid q^{>=1}. Violations leave a term of the series undefined.
std::optional<std::string> bilateral_poles(std::initializer_list<Named> uppers,
                                           std::initializer_list<Named> lowers,
                                           const QBase& base) {
    for (const auto& u : uppers)
        if (upper_pole(u.value, base))
            return std::string(u.label) +
                   " is a positive power of q; terms far below k = 0 are undefined";
    for (const auto& l : lowers)
        if (lower_lattice(l.value, base))
            return std::string(l.label) +
                   " lies on the q^{-m} lattice; terms far above k = 0 are undefined";
    return std::nullopt;
}

std::optional<std::string> finite_lower_poles(std::initializer_list<Named> lowers,
                                              long n, const QBase& base) {
    for (const auto& l : lowers)
        if (finite_vanishes(l.value, n, base))
            return std::string(l.label) + " vanishes at some order <= " + std::to_string(n);
    return std::nullopt;
}

std::optional<std::string> infinite_den_zeros(std::initializer_list<Named> dens,
                                              const QBase& base) {
    for (const auto& d : dens)
        if (lower_lattice(d.value, base))
            return std::string(d.label) +
                   " lies on the q^{-m} lattice; an infinite denominator factor vanishes";
    return std::nullopt;
}

Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : Rational(x); }

// Certified value of prod (num_i;q)_inf / prod (den_i;q)_inf.
ApproxValue certified_ratio(const std::vector<Rational>& num, const std::vector<Rational>& den,
                            const QBase& base, const PrecisionContext& ctx) {
    ApproxValue top = poch_multi_infinite(num, base, ctx);
    if (den.empty()) return top;
    return ApproxValue::div(top, poch_multi_infinite(den, base, ctx));
}

// prod (num_i;q)_n / prod (den_i;q)_n in Q. The caller guarantees a nonzero
// denominator through validity_violation.
Rational finite_ratio(const std::vector<Rational>& num, const std::vector<Rational>& den,
                      long n, const QBase& base) {
    Rational top(1);
    for (const auto& x : num) top *= poch_finite(x, n, base);
    Rational bot(1);
    for (const auto& x : den) bot *= poch_finite(x, n, base);
    if (bot == 0) throw DomainError("finite product denominator vanishes");
    return top / bot;
}

// sum_{k in Z} (-1)^k q^{k(k-1)/2} z^k via certified two-sided summation.
// Both step ratios shrink superexponentially, so the envelope limits are 0.
ApproxValue triple_product_sum(const Rational& z, const QBase& base,
                               const TruncationPolicy& policy, const PrecisionContext& ctx) {
    const Rational q = base.q;
    const Rational za = rat_abs(z);
    const Rational qa = rat_abs(q);
    auto make = [z, q, za, qa]() {
        BilateralCallbacks cb;
        cb.up_ratio = [z, q](long k) {
            return std::optional<Rational>(-z * rational_pow(q, k));
        };
        cb.down_ratio = [z, q](long m) {
            return std::optional<Rational>(-rational_pow(q, m + 1) / z);
        };
        cb.up_bound = [za, qa](long k) {
            return std::optional<Rational>(za * rational_pow(qa, k));
        };
        cb.down_bound = [za, qa](long m) {
            return std::optional<Rational>(rational_pow(qa, m + 1) / za);
        };
        cb.up_limit = Rational(0);
        cb.down_limit = Rational(0);
        return cb;
    };
    return eval_bilateral_custom(make, policy, ctx);
}

Rational bilateral_arg(const IdentityInstance& inst) {
    return inst.base.q * inst.at("a") * inst.at("a") /
           (inst.at("c") * inst.at("d") * inst.at("e") * inst.at("f"));
}

}  // namespace

const char* to_string(IdentityId id) {
    switch (id) {
        case IdentityId::I1_1psi1: return "I1_1psi1";
        case IdentityId::I2_6psi6: return "I2_6psi6";
        case IdentityId::I3_qPfaffSaalschutz: return "I3_qPfaffSaalschutz";
        case IdentityId::I4_qBinomial: return "I4_qBinomial";
        case IdentityId::I5_TripleProduct: return "I5_TripleProduct";
        case IdentityId::I6_Jackson8phi7: return "I6_Jackson8phi7";
        case IdentityId::I7_Bailey10phi9: return "I7_Bailey10phi9";
        case IdentityId::I8_Transform6psi6: return "I8_Transform6psi6";
        case IdentityId::I9_IteratedTransform: return "I9_IteratedTransform";
    }
    return "unknown";
}

std::optional<IdentityId> parse_identity_id(const std::string& name) {
    static const IdentityId all[] = {
        IdentityId::I1_1psi1,           IdentityId::I2_6psi6,
        IdentityId::I3_qPfaffSaalschutz, IdentityId::I4_qBinomial,
        IdentityId::I5_TripleProduct,   IdentityId::I6_Jackson8phi7,
        IdentityId::I7_Bailey10phi9,    IdentityId::I8_Transform6psi6,
        IdentityId::I9_IteratedTransform,
    };
    for (IdentityId id : all) {
        const std::string full = to_string(id);
        const std::string shortname = full.substr(0, full.find('_'));
        if (name == full || name == shortname) return id;
    }
    return std::nullopt;
}

bool is_terminating(IdentityId id) {
    switch (id) {
        case IdentityId::I3_qPfaffSaalschutz:
        case IdentityId::I4_qBinomial:
        case IdentityId::I6_Jackson8phi7:
        case IdentityId::I7_Bailey10phi9:
            return true;
        default:
            return false;
    }
}

const std::vector<std::string>& parameter_names(IdentityId id) {
    static const std::vector<std::string> abz = {"a", "b", "z"};
    static const std::vector<std::string> abcde = {"a", "b", "c", "d", "e"};
    static const std::vector<std::string> abc = {"a", "b", "c"};
    static const std::vector<std::string> z = {"z"};
    static const std::vector<std::string> abcd = {"a", "b", "c", "d"};
    static const std::vector<std::string> abcdef = {"a", "b", "c", "d", "e", "f"};
    static const std::vector<std::string> abcdef_bp = {"a", "b", "c", "d", "e", "f", "bp"};
    switch (id) {
        case IdentityId::I1_1psi1: return abz;
        case IdentityId::I2_6psi6: return abcde;
        case IdentityId::I3_qPfaffSaalschutz: return abc;
        case IdentityId::I4_qBinomial: return z;
        case IdentityId::I5_TripleProduct: return z;
        case IdentityId::I6_Jackson8phi7: return abcd;
        case IdentityId::I7_Bailey10phi9: return abcdef;
        case IdentityId::I8_Transform6psi6: return abcdef;
        case IdentityId::I9_IteratedTransform: return abcdef_bp;
    }
    return z;
}

long sample_max_n(IdentityId id) {
    switch (id) {
        case IdentityId::I3_qPfaffSaalschutz: return 8;
        case IdentityId::I4_qBinomial: return 10;
        case IdentityId::I6_Jackson8phi7: return 6;
        case IdentityId::I7_Bailey10phi9: return 5;
        default: return 0;
    }
}

IdentityInstance::IdentityInstance(IdentityId id_, std::map<std::string, Rational> params_,
                                   std::optional<long> n_, QBase base_)
    : id(id_), params(std::move(params_)), n(n_), base(std::move(base_)) {
    const auto& names = parameter_names(id);
    if (params.size() != names.size())
        throw InvalidInstance(std::string(to_string(id)) + " takes " +
                              std::to_string(names.size()) + " parameters, got " +
                              std::to_string(params.size()));
    for (const auto& name : names)
        if (params.find(name) == params.end())
            throw InvalidInstance(std::string(to_string(id)) + " is missing parameter " + name);
    if (is_terminating(id) && !n.has_value())
        throw InvalidInstance(std::string(to_string(id)) + " requires an order n");
    if (!is_terminating(id) && n.has_value())
        throw InvalidInstance(std::string(to_string(id)) + " takes no order n");
    if (n.has_value() && *n < 0) throw InvalidInstance("order n must be nonnegative");
}

const Rational& IdentityInstance::at(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end())
        throw InvalidInstance(std::string("unknown parameter ") + name);
    return it->second;
}

const char* to_string(VerifyMode mode) {
    return mode == VerifyMode::Exact ? "exact" : "certified";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Invalid: return "Invalid";
    }
    return "unknown";
}

std::optional<std::string> validity_violation(const IdentityInstance& inst) {
    const QBase& base = inst.base;
    const Rational q = base.q;
    switch (inst.id) {
        case IdentityId::I1_1psi1: {
            const Rational a = inst.at("a"), b = inst.at("b"), z = inst.at("z");
            if (auto v = any_zero({{"a", a}, {"z", z}})) return v;
            if (!(rat_abs(b / a) < rat_abs(z))) return "requires |b/a| < |z|";
            if (!(rat_abs(z) < 1)) return "requires |z| < 1";
            return bilateral_poles({{"a", a}}, {{"b", b}}, base);
        }
        case IdentityId::I2_6psi6: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e");
            if (auto v = any_zero({{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}})) return v;
            const Rational arg = q * a * a / (b * c * d * e);
            if (!(rat_abs(arg) < 1)) return "requires |q a^2 / (b c d e)| < 1";
            if (even_lattice(a, base)) return "a lies on the even lattice q^{2m}";
            if (auto v = bilateral_poles({{"b", b}, {"c", c}, {"d", d}, {"e", e}},
                                         {{"aq/b", a * q / b},
                                          {"aq/c", a * q / c},
                                          {"aq/d", a * q / d},
                                          {"aq/e", a * q / e}},
                                         base))
                return v;
            return infinite_den_zeros({{"q/b", q / b}, {"q/c", q / c},
                                       {"q/d", q / d}, {"q/e", q / e}},
                                      base);
        }
        case IdentityId::I3_qPfaffSaalschutz: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c");
            const long n = *inst.n;
            if (auto v = any_zero({{"a", a}, {"b", b}, {"c", c}})) return v;
            return finite_lower_poles({{"c", c}, {"c/(ab)", c / (a * b)}}, n, base);
        }
        case IdentityId::I4_qBinomial:
            return std::nullopt;
        case IdentityId::I5_TripleProduct: {
            if (inst.at("z") == 0) return "z must be nonzero";
            return std::nullopt;
        }
        case IdentityId::I6_Jackson8phi7: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d");
            const long n = *inst.n;
            if (auto v = any_zero({{"a", a}, {"b", b}, {"c", c}, {"d", d}})) return v;
            if (a == 1) return "a = 1 degenerates the very-well-poised prefactor";
            return finite_lower_poles({{"aq/b", a * q / b},
                                       {"aq/c", a * q / c},
                                       {"aq/d", a * q / d},
                                       {"bcd q^{-n}/a", b * c * d * qpow(base, -n) / a},
                                       {"aq^{n+1}", a * qpow(base, n + 1)},
                                       {"aq/(bcd)", a * q / (b * c * d)}},
                                      n, base);
        }
        case IdentityId::I7_Bailey10phi9: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f");
            const long n = *inst.n;
            if (auto v = any_zero({{"a", a}, {"b", b}, {"c", c},
                                   {"d", d}, {"e", e}, {"f", f}}))
                return v;
            const Rational lam = q * a * a / (b * c * d);
            if (a == 1) return "a = 1 degenerates the very-well-poised prefactor";
            if (lam == 1) return "lambda = q a^2/(b c d) = 1 degenerates the transformed series";
            return finite_lower_poles({{"aq/b", a * q / b},
                                       {"aq/c", a * q / c},
                                       {"aq/d", a * q / d},
                                       {"aq/e", a * q / e},
                                       {"aq/f", a * q / f},
                                       {"ef q^{-n}/lambda", e * f * qpow(base, -n) / lam},
                                       {"aq^{n+1}", a * qpow(base, n + 1)},
                                       {"lambda q/e", lam * q / e},
                                       {"lambda q/f", lam * q / f},
                                       {"ef q^{-n}/a", e * f * qpow(base, -n) / a},
                                       {"lambda q^{n+1}", lam * qpow(base, n + 1)},
                                       {"lambda q/(ef)", lam * q / (e * f)},
                                       {"lambda q", lam * q}},
                                      n, base);
        }
        case IdentityId::I8_Transform6psi6:
        case IdentityId::I9_IteratedTransform: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f");
            if (auto v = any_zero({{"a", a}, {"b", b}, {"c", c},
                                   {"d", d}, {"e", e}, {"f", f}}))
                return v;
            const Rational arg = q * a * a / (c * d * e * f);
            if (!(rat_abs(arg) < 1)) return "requires |q a^2 / (c d e f)| < 1";
            const Rational lam = q * a * a / (b * c * d);
            if (even_lattice(a, base)) return "a lies on the even lattice q^{2m}";
            if (auto v = bilateral_poles({{"c", c}, {"d", d}, {"e", e}, {"f", f}},
                                         {{"aq/c", a * q / c},
                                          {"aq/d", a * q / d},
                                          {"aq/e", a * q / e},
                                          {"aq/f", a * q / f}},
                                         base))
                return v;
            if (inst.id == IdentityId::I8_Transform6psi6) {
                if (even_lattice(lam, base))
                    return "lambda = q a^2/(b c d) lies on the even lattice q^{2m}";
                if (auto v = bilateral_poles({{"lambda c/a", lam * c / a},
                                              {"lambda d/a", lam * d / a},
                                              {"e", e},
                                              {"f", f}},
                                             {{"aq/c", a * q / c},
                                              {"aq/d", a * q / d},
                                              {"lambda q/e", lam * q / e},
                                              {"lambda q/f", lam * q / f}},
                                             base))
                    return v;
                return infinite_den_zeros({{"q/c", q / c}, {"q/d", q / d},
                                           {"lambda q", lam * q}, {"q/lambda", q / lam},
                                           {"lambda q/(ef)", lam * q / (e * f)},
                                           {"b", b}},
                                          base);
            }
            const Rational bp = inst.at("bp");
            if (bp == 0) return "bp must be nonzero";
            const Rational lamp = a * q * lam / (bp * c * e);
            if (even_lattice(lamp, base))
                return "lambda' = a q lambda/(bp c e) lies on the even lattice q^{2m}";
            if (auto v = bilateral_poles({{"lambda' c/a", lamp * c / a},
                                          {"lambda' e/lambda", lamp * e / lam},
                                          {"lambda d/a", lam * d / a},
                                          {"f", f}},
                                         {{"aq/c", a * q / c},
                                          {"lambda q/e", lam * q / e},
                                          {"a lambda' q/(lambda d)", a * lamp * q / (lam * d)},
                                          {"lambda' q/f", lamp * q / f}},
                                         base))
                return v;
            return infinite_den_zeros({{"q/c", q / c}, {"q/d", q / d},
                                       {"lambda q/(ef)", lam * q / (e * f)}, {"b", b},
                                       {"q/e", q / e}, {"lambda' q", lamp * q},
                                       {"q/lambda'", q / lamp},
                                       {"a lambda' q/(lambda d f)", a * lamp * q / (lam * d * f)},
                                       {"bp", bp}},
                                      base);
        }
    }
    return std::nullopt;
}

EvalResult lhs(const IdentityInstance& inst, const TruncationPolicy& policy,
               const PrecisionContext& ctx) {
    const QBase& base = inst.base;
    const Rational q = base.q;
    switch (inst.id) {
        case IdentityId::I1_1psi1: {
            SeriesSpec spec(SeriesKind::Bilateral, {inst.at("a")}, {inst.at("b")},
                            inst.at("z"), base);
            return eval_bilateral(spec, policy, ctx);
        }
        case IdentityId::I2_6psi6: {
            const Rational a = inst.at("a");
            VWPSpec spec(a,
                         {inst.at("b"), inst.at("c"), inst.at("d"), inst.at("e")},
                         q * a * a / (inst.at("b") * inst.at("c") * inst.at("d") * inst.at("e")),
                         base);
            return eval_vwp_bilateral(spec, policy, ctx);
        }
        case IdentityId::I3_qPfaffSaalschutz: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c");
            const long n = *inst.n;
            SeriesSpec spec(SeriesKind::Unilateral, {a, b, qpow(base, -n)},
                            {c, a * b * qpow(base, 1 - n) / c}, q, base);
            return eval_terminating(spec);
        }
        case IdentityId::I4_qBinomial: {
            const long n = *inst.n;
            SeriesSpec spec(SeriesKind::Unilateral, {qpow(base, -n)}, {},
                            inst.at("z") * qpow(base, n), base);
            return eval_terminating(spec);
        }
        case IdentityId::I5_TripleProduct:
            return triple_product_sum(inst.at("z"), base, policy, ctx);
        case IdentityId::I6_Jackson8phi7: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d");
            const long n = *inst.n;
            const std::vector<Rational> tail = {
                b, c, d, a * a * qpow(base, n + 1) / (b * c * d), qpow(base, -n)};
            return vwp_unilateral_sum(a, tail, q, n, base);
        }
        case IdentityId::I7_Bailey10phi9: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f");
            const long n = *inst.n;
            const Rational lam = q * a * a / (b * c * d);
            const std::vector<Rational> tail = {
                b, c, d, e, f, lam * a * qpow(base, n + 1) / (e * f), qpow(base, -n)};
            return vwp_unilateral_sum(a, tail, q, n, base);
        }
        case IdentityId::I8_Transform6psi6:
        case IdentityId::I9_IteratedTransform: {
            const Rational a = inst.at("a");
            VWPSpec spec(a,
                         {inst.at("c"), inst.at("d"), inst.at("e"), inst.at("f")},
                         bilateral_arg(inst), base);
            return eval_vwp_bilateral(spec, policy, ctx);
        }
    }
    throw InvalidInstance("unknown identity");
}

EvalResult rhs(const IdentityInstance& inst, const TruncationPolicy& policy,
               const PrecisionContext& ctx) {
    const QBase& base = inst.base;
    const Rational q = base.q;
    switch (inst.id) {
        case IdentityId::I1_1psi1: {
            const Rational a = inst.at("a"), b = inst.at("b"), z = inst.at("z");
            return certified_ratio({q, b / a, a * z, q / (a * z)},
                                   {b, q / a, z, b / (a * z)}, base, ctx);
        }
        case IdentityId::I2_6psi6: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e");
            return certified_ratio(
                {q, a * q, q / a, a * q / (b * c), a * q / (b * d), a * q / (b * e),
                 a * q / (c * d), a * q / (c * e), a * q / (d * e)},
                {q / b, q / c, q / d, q / e, a * q / b, a * q / c, a * q / d, a * q / e,
                 q * a * a / (b * c * d * e)},
                base, ctx);
        }
        case IdentityId::I3_qPfaffSaalschutz: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c");
            return finite_ratio({c / a, c / b}, {c, c / (a * b)}, *inst.n, base);
        }
        case IdentityId::I4_qBinomial:
            return poch_finite(inst.at("z"), *inst.n, base);
        case IdentityId::I5_TripleProduct: {
            const Rational z = inst.at("z");
            return poch_multi_infinite(std::vector<Rational>{q, z, q / z}, base, ctx);
        }
        case IdentityId::I6_Jackson8phi7: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d");
            return finite_ratio(
                {a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)},
                {a * q / b, a * q / c, a * q / d, a * q / (b * c * d)}, *inst.n, base);
        }
        case IdentityId::I7_Bailey10phi9: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f");
            const long n = *inst.n;
            const Rational lam = q * a * a / (b * c * d);
            const Rational pref = finite_ratio(
                {a * q, a * q / (e * f), lam * q / e, lam * q / f},
                {a * q / e, a * q / f, lam * q / (e * f), lam * q}, n, base);
            const std::vector<Rational> tail = {
                lam * b / a, lam * c / a, lam * d / a, e, f,
                lam * a * qpow(base, n + 1) / (e * f), qpow(base, -n)};
            return pref * vwp_unilateral_sum(lam, tail, q, n, base);
        }
        case IdentityId::I8_Transform6psi6: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f");
            const Rational lam = q * a * a / (b * c * d);
            const ApproxValue pref = certified_ratio(
                {a * q, q / a, a * q / (e * f), a * q / (c * d), lam * q / e,
                 lam * q / f, a * q / (lam * c), a * q / (lam * d)},
                {a * q / e, a * q / f, q / c, q / d, lam * q, q / lam,
                 lam * q / (e * f), b},
                base, ctx);
            VWPSpec inner(lam, {lam * c / a, lam * d / a, e, f}, bilateral_arg(inst), base);
            return ApproxValue::mul(pref, eval_vwp_bilateral(inner, policy, ctx));
        }
        case IdentityId::I9_IteratedTransform: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f"),
                           bp = inst.at("bp");
            const Rational lam = q * a * a / (b * c * d);
            const Rational lamp = a * q * lam / (bp * c * e);
            const ApproxValue p1 = certified_ratio(
                {a * q, q / a, a * q / (e * f), a * q / (c * d), lam * q / e,
                 a * q / (lam * d)},
                {a * q / e, a * q / f, q / c, q / d, lam * q / (e * f), b},
                base, ctx);
            const ApproxValue p2 = certified_ratio(
                {a * q / (d * f), a * q / (e * c), a * lamp * q / (lam * d),
                 lamp * q / f, a * q / (lamp * c), lam * q / (lamp * e)},
                {a * q / d, q / e, lamp * q, q / lamp,
                 a * lamp * q / (lam * d * f), bp},
                base, ctx);
            VWPSpec inner(lamp, {lamp * c / a, lamp * e / lam, lam * d / a, f},
                          bilateral_arg(inst), base);
            return ApproxValue::mul(ApproxValue::mul(p1, p2),
                                    eval_vwp_bilateral(inner, policy, ctx));
        }
    }
    throw InvalidInstance("unknown identity");
}

VerificationReport verify(const IdentityInstance& inst, const VerifyOptions& opts) {
    VerificationReport rep{inst,
                           is_terminating(inst.id) ? VerifyMode::Exact : VerifyMode::Certified,
                           std::nullopt,
                           std::nullopt,
                           Rational(0),
                           Rational(0),
                           Verdict::Invalid,
                           ""};
    if (auto bad = validity_violation(inst)) {
        rep.detail = *bad;
        return rep;
    }
    try {
        EvalResult l = lhs(inst, opts.policy, opts.ctx);
        EvalResult r = rhs(inst, opts.policy, opts.ctx);
        rep.lhs = l;
        rep.rhs = r;
        if (rep.mode == VerifyMode::Exact) {
            rep.residual = rat_abs(std::get<Rational>(l) - std::get<Rational>(r));
            rep.verdict = rep.residual == 0 ? Verdict::Pass : Verdict::Fail;
        } else {
            const ApproxValue& la = std::get<ApproxValue>(l);
            const ApproxValue& ra = std::get<ApproxValue>(r);
            rep.residual = rat_abs(la.value().to_rational() - ra.value().to_rational());
            rep.budget = la.err_upper() + ra.err_upper();
            rep.verdict = rep.residual <= rep.budget + opts.tolerance ? Verdict::Pass
                                                                      : Verdict::Fail;
        }
    } catch (const MaxTermsExceeded& e) {
        rep.lhs.reset();
        rep.rhs.reset();
        rep.verdict = Verdict::Fail;
        rep.detail = e.what();
    } catch (const std::exception& e) {
        rep.lhs.reset();
        rep.rhs.reset();
        rep.verdict = Verdict::Invalid;
        rep.detail = e.what();
    }
    return rep;
}

namespace {

struct SampleRng {
    unsigned long long s;

    explicit SampleRng(unsigned long long seed) : s(seed) {}

    unsigned long long next() {
        s += 0x9e3779b97f4a7c15ULL;
        unsigned long long x = s;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    long range(long lo, long hi) {
        return lo + static_cast<long>(next() %
                                      static_cast<unsigned long long>(hi - lo + 1));
    }

    // Nonzero rational with numerator and denominator bounded by 64.
    Rational rat() {
        const long num = range(1, 64) * ((next() & 1u) ? 1 : -1);
        const long den = range(1, 64);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    // Nonzero rational with |x| <= 2/3, denominator bounded by 64.
    Rational small() {
        const long den = range(3, 64);
        const long cap = (2 * den) / 3;
        const long num = range(1, cap) * ((next() & 1u) ? 1 : -1);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
};

std::map<std::string, Rational> draw_params(IdentityId id, SampleRng& rng,
                                            const QBase& base) {
    std::map<std::string, Rational> p;
    switch (id) {
        case IdentityId::I1_1psi1: {
            // b = a z w with |w| <= 2/3 puts |b/a| strictly inside |z| and
            // keeps both summation directions decaying briskly.
            const Rational a = rng.rat();
            const Rational z = rng.small();
            const Rational w = rng.small();
            p = {{"a", a}, {"b", a * z * w}, {"z", z}};
            break;
        }
        case IdentityId::I2_6psi6:
            p = {{"a", rng.rat()}, {"b", rng.rat()}, {"c", rng.rat()},
                 {"d", rng.rat()}, {"e", rng.rat()}};
            break;
        case IdentityId::I3_qPfaffSaalschutz:
            p = {{"a", rng.rat()}, {"b", rng.rat()}, {"c", rng.rat()}};
            break;
        case IdentityId::I4_qBinomial:
        case IdentityId::I5_TripleProduct:
            p = {{"z", rng.rat()}};
            break;
        case IdentityId::I6_Jackson8phi7:
            p = {{"a", rng.rat()}, {"b", rng.rat()}, {"c", rng.rat()}, {"d", rng.rat()}};
            break;
        case IdentityId::I7_Bailey10phi9:
        case IdentityId::I8_Transform6psi6:
            p = {{"a", rng.rat()}, {"b", rng.rat()}, {"c", rng.rat()},
                 {"d", rng.rat()}, {"e", rng.rat()}, {"f", rng.rat()}};
            break;
        case IdentityId::I9_IteratedTransform:
            p = {{"a", rng.rat()}, {"b", rng.rat()}, {"c", rng.rat()},
                 {"d", rng.rat()}, {"e", rng.rat()}, {"f", rng.rat()},
                 {"bp", rng.rat()}};
            break;
    }
    (void)base;
    return p;
}

bool all_off_lattice(std::initializer_list<Rational> xs, const QBase& base) {
    for (const Rational& x : xs)
        if (as_q_power(x, base.q).has_value()) return false;
    return true;
}

// Rejections beyond validity: keep every product factor off the zero
// lattice so sampled reports compare two nonzero quantities, and keep
// bilateral arguments small enough for brisk certified convergence.
bool informative(const IdentityInstance& inst) {
    const QBase& base = inst.base;
    const Rational q = base.q;
    switch (inst.id) {
        case IdentityId::I1_1psi1: {
            const Rational a = inst.at("a"), b = inst.at("b"), z = inst.at("z");
            return all_off_lattice(
                {b / a, a * z, q / (a * z), b, q / a, z, b / (a * z)}, base);
        }
        case IdentityId::I2_6psi6: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e");
            if (!(rat_abs(q * a * a / (b * c * d * e)) <= Rational(2, 3))) return false;
            return all_off_lattice(
                {a, a * q / (b * c), a * q / (b * d), a * q / (b * e), a * q / (c * d),
                 a * q / (c * e), a * q / (d * e), q / b, q / c, q / d, q / e,
                 a * q / b, a * q / c, a * q / d, a * q / e},
                base);
        }
        case IdentityId::I3_qPfaffSaalschutz: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c");
            return all_off_lattice({c / a, c / b, c, c / (a * b), a, b}, base);
        }
        case IdentityId::I4_qBinomial:
            return true;
        case IdentityId::I5_TripleProduct:
            return all_off_lattice({inst.at("z")}, base);
        case IdentityId::I6_Jackson8phi7: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d");
            return all_off_lattice(
                {a, a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d),
                 a * q / b, a * q / c, a * q / d, a * q / (b * c * d)},
                base);
        }
        case IdentityId::I7_Bailey10phi9: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f");
            const Rational lam = q * a * a / (b * c * d);
            return all_off_lattice(
                {a, lam, a * q, a * q / (e * f), lam * q / e, lam * q / f,
                 a * q / e, a * q / f, lam * q / (e * f), lam * q,
                 lam * b / a, lam * c / a, lam * d / a},
                base);
        }
        case IdentityId::I8_Transform6psi6: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f");
            if (!(rat_abs(q * a * a / (c * d * e * f)) <= Rational(2, 3))) return false;
            const Rational lam = q * a * a / (b * c * d);
            return all_off_lattice(
                {a, lam, b, a * q / (e * f), a * q / (c * d), lam * q / e, lam * q / f,
                 a * q / (lam * c), a * q / (lam * d), a * q / e, a * q / f, q / c,
                 q / d, lam * q / (e * f), lam * c / a, lam * d / a, e, f,
                 a * q / c, a * q / d},
                base);
        }
        case IdentityId::I9_IteratedTransform: {
            const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                           d = inst.at("d"), e = inst.at("e"), f = inst.at("f"),
                           bp = inst.at("bp");
            if (!(rat_abs(q * a * a / (c * d * e * f)) <= Rational(2, 3))) return false;
            const Rational lam = q * a * a / (b * c * d);
            const Rational lamp = a * q * lam / (bp * c * e);
            return all_off_lattice(
                {a, lam, lamp, b, bp, a * q / (e * f), a * q / (c * d), lam * q / e,
                 a * q / (lam * d), a * q / e, a * q / f, q / c, q / d,
                 lam * q / (e * f), a * q / (d * f), a * q / (e * c),
                 a * lamp * q / (lam * d), lamp * q / f, a * q / (lamp * c),
                 lam * q / (lamp * e), a * q / d, q / e,
                 a * lamp * q / (lam * d * f), lamp * c / a, lamp * e / lam,
                 lam * d / a, f, a * q / c, lamp * q / f},
                base);
        }
    }
    return true;
}

}  // namespace

unsigned long long mix_seed(unsigned long long seed, unsigned long long stream,
                            unsigned long long index) {
    unsigned long long x = seed;
    x ^= stream * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL;
    x ^= index * 0xbf58476d1ce4e5b9ULL + 0x2545f4914f6cdd1dULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

IdentityInstance sample_valid_instance(IdentityId id, unsigned long long seed,
                                       const QBase& base) {
    SampleRng rng(seed);
    const long max_n = sample_max_n(id);
    for (long tries = 0; tries < kSampleTries; ++tries) {
        std::map<std::string, Rational> p = draw_params(id, rng, base);
        std::optional<long> n;
        if (is_terminating(id)) n = rng.range(0, max_n);
        IdentityInstance inst(id, std::move(p), n, base);
        if (validity_violation(inst)) continue;
        if (!informative(inst)) continue;
        return inst;
    }
    throw SamplingExhausted(std::string("sample_valid_instance: no admissible point for ") +
                            to_string(id) + " after " + std::to_string(kSampleTries) +
                            " tries");
}

}  // namespace qseries
