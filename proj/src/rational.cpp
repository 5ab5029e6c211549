// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qseries/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "qseries/errors.hpp"

namespace qseries {

Rational rational_pow(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    if (x == 0) {
        if (e < 0) throw DomainError("rational_pow: 0 raised to negative exponent");
        return Rational(0);
    }
    const unsigned long m = (e < 0) ? static_cast<unsigned long>(-(e + 1)) + 1UL
                                    : static_cast<unsigned long>(e);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), m);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), m);
    // num/den powers of a canonical input stay coprime; only the sign of an
    // inverted value needs renormalizing.
    if (e < 0) {
        mpz_swap(r.get_num_mpz_t(), r.get_den_mpz_t());
        r.canonicalize();
    }
    return r;
}

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational parse_decimal(const std::string& text) {
    // [sign] digits [. digits] [eE [sign] digits], evaluated exactly.
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = (text[i] == '-');
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits += text[i++];
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i++];
            ++frac_digits;
            any = true;
        }
    }
    long exp10 = 0;
    if (any && i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t mark = i++;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = (text[i] == '-');
            ++i;
        }
        if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
            i = mark;  // dangling exponent marker: reject below
        } else {
            long e = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                e = e * 10 + (text[i++] - '0');
                if (e > 1000000) throw DomainError("parse_rational: exponent out of range");
            }
            exp10 = eneg ? -e : e;
        }
    }
    if (!any || i != text.size())
        throw DomainError("parse_rational: malformed number '" + text + "'");
    if (digits.empty()) digits = "0";
    Rational r(mpz_class(digits, 10));
    const long net = exp10 - frac_digits;
    r *= rational_pow(Rational(10), net);
    if (neg) r = -r;
    return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string ns = text.substr(0, slash);
        const std::string ds = text.substr(slash + 1);
        if (!is_integer_token(ns) || !is_integer_token(ds))
            throw DomainError("parse_rational: malformed fraction '" + text + "'");
        mpz_class den(ds, 10);
        if (den == 0) throw DomainError("parse_rational: zero denominator in '" + text + "'");
        Rational r(mpz_class(ns, 10), den);
        r.canonicalize();
        return r;
    }
    if (is_integer_token(text)) return Rational(mpz_class(text, 10));
    return parse_decimal(text);
}

std::string to_string(const Rational& x) {
    return x.get_str();
}

namespace {

// Largest m with base^m dividing v exactly and v == base^m; nullopt otherwise.
// base >= 2.
std::optional<long> exact_log(const mpz_class& v, const mpz_class& base) {
    mpz_class rem = v;
    long m = 0;
    while (mpz_divisible_p(rem.get_mpz_t(), base.get_mpz_t())) {
        mpz_divexact(rem.get_mpz_t(), rem.get_mpz_t(), base.get_mpz_t());
        ++m;
        if (m > 1000000) return std::nullopt;
    }
    if (rem != 1 || m == 0) return std::nullopt;
    return m;
}

}  // namespace

std::optional<long> as_q_power(const Rational& x, const Rational& q) {
    if (x == 0) return std::nullopt;
    if (x == 1) return 0;
    const mpz_class& qn = q.get_num();
    const mpz_class& qd = q.get_den();  // >= 2, because 0 < |q| < 1
    const mpz_class qn_abs = abs(qn);
    const mpz_class& xn = x.get_num();
    const mpz_class& xd = x.get_den();
    const mpz_class xn_abs = abs(xn);

    // |q| < 1 forces |q^j| < 1 for j > 0 and > 1 for j < 0, so |x| vs 1
    // decides the sign of the exponent. |x| == 1 with x != 1 never matches.
    const bool abs_lt_one = (xn_abs < xd);
    if (xn_abs == xd) return std::nullopt;

    if (abs_lt_one) {
        // x == q^j, j >= 1: reduced form is qn^j / qd^j (coprime powers).
        auto j = exact_log(xd, qd);
        if (!j) return std::nullopt;
        mpz_class want;
        mpz_pow_ui(want.get_mpz_t(), qn.get_mpz_t(), static_cast<unsigned long>(*j));
        return (xn == want) ? j : std::nullopt;
    }

    // x == q^(-m), m >= 1: reduced form is sign(qn)^m * qd^m / qn_abs^m.
    long m;
    if (qn_abs == 1) {
        if (xd != 1) return std::nullopt;
        auto mm = exact_log(xn_abs, qd);
        if (!mm) return std::nullopt;
        m = *mm;
    } else {
        auto mm = exact_log(xd, qn_abs);
        if (!mm) return std::nullopt;
        m = *mm;
        mpz_class want;
        mpz_pow_ui(want.get_mpz_t(), qd.get_mpz_t(), static_cast<unsigned long>(m));
        if (xn_abs != want) return std::nullopt;
    }
    const bool want_neg = (qn < 0) && (m % 2 == 1);
    if (want_neg != (xn < 0)) return std::nullopt;
    return -m;
}

}  // namespace qseries
