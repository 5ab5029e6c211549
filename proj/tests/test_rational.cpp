// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "qseries/errors.hpp"
#include "qseries/rational.hpp"

using qseries::as_q_power;
using qseries::parse_rational;
using qseries::Rational;
using qseries::rational_pow;

TEST_CASE("rational_pow handles signs and negative exponents") {
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(rational_pow(Rational(2, 3), 0) == 1);
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(rational_pow(Rational(-1, 2), 3) == Rational(-1, 8));
    CHECK(rational_pow(Rational(-1, 2), -3) == Rational(-8));
    CHECK(rational_pow(Rational(0), 4) == 0);
    CHECK(rational_pow(Rational(0), 0) == 1);
    CHECK_THROWS_AS(rational_pow(Rational(0), -1), qseries::DomainError);
}

TEST_CASE("parse_rational accepts fractions, integers and exact decimals") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("-12") == -12);
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-2.5e-3") == Rational(-1, 400));
    CHECK(parse_rational("1e3") == 1000);
    CHECK(parse_rational("1e-30") ==
          Rational(1, mpz_class("1000000000000000000000000000000")));
    CHECK_THROWS_AS(parse_rational("1/0"), qseries::DomainError);
    CHECK_THROWS_AS(parse_rational("abc"), qseries::DomainError);
    CHECK_THROWS_AS(parse_rational(""), qseries::DomainError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), qseries::DomainError);
}

TEST_CASE("to_string round-trips through parse_rational") {
    for (const char* s : {"3/4", "-3/4", "7", "0", "1/1000000000000000000000000000000"}) {
        Rational r = parse_rational(s);
        CHECK(parse_rational(qseries::to_string(r)) == r);
    }
}

TEST_CASE("as_q_power finds exact lattice exponents") {
    const Rational q(1, 2);
    CHECK(as_q_power(Rational(1, 8), q) == 3);
    CHECK(as_q_power(Rational(1), q) == 0);
    CHECK(as_q_power(Rational(8), q) == -3);
    CHECK(as_q_power(Rational(1, 3), q) == std::nullopt);
    CHECK(as_q_power(Rational(-1, 8), q) == std::nullopt);
    CHECK(as_q_power(Rational(3, 4), q) == std::nullopt);
}

TEST_CASE("as_q_power works for non-unit-numerator bases") {
    const Rational q(2, 3);
    CHECK(as_q_power(Rational(4, 9), q) == 2);
    CHECK(as_q_power(Rational(3, 2), q) == -1);   // denominator of q^{-1} is not 1
    CHECK(as_q_power(Rational(27, 8), q) == -3);
    CHECK(as_q_power(Rational(8, 27), q) == 3);
    CHECK(as_q_power(Rational(9, 4), q) == -2);
    CHECK(as_q_power(Rational(2, 9), q) == std::nullopt);
    CHECK(as_q_power(Rational(3, 4), q) == std::nullopt);
}

TEST_CASE("as_q_power respects the sign of negative bases") {
    const Rational q(-1, 2);
    CHECK(as_q_power(Rational(1, 4), q) == 2);
    CHECK(as_q_power(Rational(-1, 8), q) == 3);
    CHECK(as_q_power(Rational(1, 8), q) == std::nullopt);
    CHECK(as_q_power(Rational(-4), q) == std::nullopt);  // (-1/2)^{-2} = 4
    CHECK(as_q_power(Rational(4), q) == -2);
    CHECK(as_q_power(Rational(-8), q) == -3);
}

TEST_CASE("as_q_power round-trips rational_pow across bases") {
    for (const Rational& q : {Rational(1, 2), Rational(2, 3), Rational(-3, 5), Rational(9, 10)}) {
        for (long e = -6; e <= 6; ++e) {
            CHECK(as_q_power(rational_pow(q, e), q) == e);
        }
    }
}
