// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "qseries/approx.hpp"
#include "qseries/errors.hpp"

using qseries::agree_within;
using qseries::ApproxValue;
using qseries::PrecisionContext;
using qseries::Rational;

namespace {

// True value as a rational, so enclosure checks are exact.
bool encloses(const ApproxValue& v, const Rational& truth) {
    const Rational mid = v.value().to_rational();
    const Rational rad = v.err().to_rational();
    return mid - rad <= truth && truth <= mid + rad;
}

}  // namespace

TEST_CASE("exact dyadic rationals carry zero error") {
    ApproxValue v = ApproxValue::of(Rational(3, 8), 64);
    CHECK(v.exact());
    CHECK(v.is_exactly(Rational(3, 8)));
    CHECK_FALSE(v.is_exactly(Rational(1, 2)));
}

TEST_CASE("non-dyadic rationals are enclosed within one rounding step") {
    ApproxValue v = ApproxValue::of(Rational(1, 3), 64);
    CHECK_FALSE(v.exact());
    CHECK(encloses(v, Rational(1, 3)));
    CHECK(v.err_upper() <= Rational(1, mpz_class("1000000000000000")));
}

TEST_CASE("arithmetic keeps enclosures valid") {
    const Rational a(1, 3), b(2, 7);
    ApproxValue va = ApproxValue::of(a, 64);
    ApproxValue vb = ApproxValue::of(b, 64);
    CHECK(encloses(ApproxValue::add(va, vb), a + b));
    CHECK(encloses(ApproxValue::sub(va, vb), a - b));
    CHECK(encloses(ApproxValue::mul(va, vb), a * b));
    CHECK(encloses(ApproxValue::div(va, vb), a / b));
    CHECK(encloses(ApproxValue::mul_exact(va, b), a * b));
    CHECK(encloses(ApproxValue::add_exact(va, b), a + b));
    CHECK(encloses(ApproxValue::div_exact(va, b), a / b));
    CHECK(encloses(ApproxValue::neg(va), -a));
}

TEST_CASE("enclosures survive long alternating chains") {
    // Interval arithmetic over a pseudo-random walk; the exact value runs
    // alongside in rational arithmetic.
    ApproxValue v = ApproxValue::of_long(1, 96);
    Rational truth(1);
    unsigned long long s = 88172645463325252ull;
    for (int i = 0; i < 200; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        const long num = static_cast<long>(s % 13) - 6;
        const long den = static_cast<long>(s % 9) + 2;
        const Rational step(num == 0 ? 1 : num, den);
        if (i % 3 == 0) {
            v = ApproxValue::mul(v, ApproxValue::of(step, 96));
            truth *= step;
        } else if (i % 3 == 1) {
            v = ApproxValue::add(v, ApproxValue::of(step, 96));
            truth += step;
        } else {
            v = ApproxValue::sub(v, ApproxValue::of(step, 96));
            truth -= step;
        }
    }
    CHECK(encloses(v, truth));
}

TEST_CASE("division by an interval containing zero is rejected") {
    ApproxValue num = ApproxValue::of_long(1, 64);
    ApproxValue tiny = ApproxValue::of(Rational(1, 3), 8);  // coarse: wide error
    ApproxValue nearly = ApproxValue::sub(tiny, ApproxValue::of(Rational(1, 3), 64));
    CHECK_THROWS_AS(ApproxValue::div(num, nearly), qseries::DomainError);
    CHECK_THROWS_AS(ApproxValue::div_exact(num, Rational(0)), qseries::DomainError);
}

TEST_CASE("agree_within accepts within budget and rejects beyond") {
    ApproxValue a = ApproxValue::of(Rational(1, 3), 128);
    ApproxValue b = ApproxValue::of(Rational(1, 3) + Rational(1, 1000), 128);
    CHECK(agree_within(a, a, Rational(0)));
    CHECK(agree_within(a, b, Rational(1, 100)));
    CHECK_FALSE(agree_within(a, b, Rational(1, 10000)));
}

TEST_CASE("widened adds exactly the requested slack") {
    ApproxValue v = ApproxValue::of_long(2, 64);
    ApproxValue w = v.widened(Rational(1, 16));
    CHECK(w.err_upper() >= Rational(1, 16));
    CHECK(encloses(w, Rational(2)));
}

TEST_CASE("precision context validates its inputs") {
    CHECK_THROWS_AS(PrecisionContext(16, Rational(1, 10)), qseries::DomainError);
    CHECK_THROWS_AS(PrecisionContext(256, Rational(0)), qseries::DomainError);
    CHECK_THROWS_AS(PrecisionContext(256, Rational(-1, 10)), qseries::DomainError);
    PrecisionContext ok;
    CHECK(ok.bits == 256);
}
