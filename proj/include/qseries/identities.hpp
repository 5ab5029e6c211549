// Copyright 2026 The qseries Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qseries/approx.hpp"
#include "qseries/qfactorial.hpp"
#include "qseries/rational.hpp"
#include "qseries/series.hpp"

namespace qseries {

// Catalog of classical basic hypergeometric identities. Terminating entries
// (I3, I4, I6, I7) compare two elements of Q and are checked exactly; the
// remaining entries involve infinite products or bilateral series and are
// checked against certified enclosures.
enum class IdentityId {
    I1_1psi1,              // Ramanujan's 1psi1 summation
    I2_6psi6,              // Bailey's very-well-poised 6psi6 summation
    I3_qPfaffSaalschutz,   // q-Pfaff-Saalschutz summation
    I4_qBinomial,          // terminating q-binomial theorem
    I5_TripleProduct,      // Jacobi's triple product identity
    I6_Jackson8phi7,       // Jackson's terminating 8phi7 summation
    I7_Bailey10phi9,       // Bailey's terminating 10phi9 transformation
    I8_Transform6psi6,     // transformation between two 6psi6 series
    I9_IteratedTransform,  // the 6psi6 transformation composed with itself
};

const char* to_string(IdentityId id);

// Accepts both the full enum spelling ("I3_qPfaffSaalschutz") and the short
// prefix ("I3").
std::optional<IdentityId> parse_identity_id(const std::string& name);

// True when both sides of the identity are finite sums and products in Q.
bool is_terminating(IdentityId id);

// Parameter names in canonical order. "bp" denotes the second auxiliary
// parameter of the iterated transformation.
const std::vector<std::string>& parameter_names(IdentityId id);

// Upper bound on the order n used by the instance sampler.
long sample_max_n(IdentityId id);

struct IdentityInstance {
    IdentityId id;
    std::map<std::string, Rational> params;
    std::optional<long> n;  // present iff the identity terminates
    QBase base;

    // Validates arity: params must hold exactly parameter_names(id), and n
    // must be present iff is_terminating(id). Throws InvalidInstance.
    IdentityInstance(IdentityId id_, std::map<std::string, Rational> params_,
                     std::optional<long> n_, QBase base_);

    const Rational& at(const std::string& name) const;
};

enum class VerifyMode { Exact, Certified };
enum class Verdict { Pass, Fail, Invalid };

const char* to_string(VerifyMode mode);
const char* to_string(Verdict v);

using EvalResult = std::variant<Rational, ApproxValue>;

struct VerifyOptions {
    TruncationPolicy policy;
    PrecisionContext ctx;
    // Slack added to the certified budget when comparing the two sides.
    Rational tolerance = Rational(1, mpz_class("1000000000000000000000000000000"));
};

struct VerificationReport {
    IdentityInstance instance;
    VerifyMode mode;
    std::optional<EvalResult> lhs;  // absent when the verdict is Invalid
    std::optional<EvalResult> rhs;
    Rational residual;  // |lhs - rhs| of the point values; 0 when Invalid
    Rational budget;    // sum of certified error bounds; 0 in Exact mode
    Verdict verdict;
    std::string detail;  // names the violated condition or the failure
};

// Names the violated domain condition, or nullopt when the instance is
// admissible. Checks the stated parameter constraints, pole avoidance for
// every factor appearing on either side, and the convergence classification
// of each bilateral series involved.
std::optional<std::string> validity_violation(const IdentityInstance& inst);

// Left and right sides. Terminating identities yield Rational; the others
// yield a certified ApproxValue. Throw on inadmissible instances.
EvalResult lhs(const IdentityInstance& inst, const TruncationPolicy& policy,
               const PrecisionContext& ctx);
EvalResult rhs(const IdentityInstance& inst, const TruncationPolicy& policy,
               const PrecisionContext& ctx);

VerificationReport verify(const IdentityInstance& inst, const VerifyOptions& opts);

// Deterministic pseudo-random admissible instance: equal (id, seed, q)
// triples give equal instances. Throws SamplingExhausted when rejection
// sampling fails to find an admissible point.
IdentityInstance sample_valid_instance(IdentityId id, unsigned long long seed,
                                       const QBase& base);

// Mixes a base seed with a stream tag and an index into an independent seed.
unsigned long long mix_seed(unsigned long long seed, unsigned long long stream,
                            unsigned long long index);

}  // namespace qseries
