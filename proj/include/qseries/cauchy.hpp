// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qseries/identities.hpp"
#include "qseries/qfactorial.hpp"
#include "qseries/rational.hpp"
#include "qseries/series.hpp"

namespace qseries {

// Finite identity families used by Cauchy's method: an identity in n that
// holds exactly in Q for every n >= 0 and tends to a bilateral summation as
// n -> infinity. The qps families come from the q-Pfaff-Saalschutz summation
// (parameters a, b, c), the Ba families from Bailey's 10phi9 transformation
// (parameters a, b, c, d, e, f).
//   *_shifted:     n replaced by 2n and the summation index recentred at 0,
//                  so the sum runs over -n <= k <= n.
//   *_substituted: the shifted family with parameters pushed down by powers
//                  of q (a -> a q^{-2n} and, where present, c, d, e, f by
//                  q^{-n}), the form whose termwise limit exists.
enum class FamilyId {
    F_qps_shifted,
    F_qps_substituted,
    F_Ba_shifted,
    F_Ba_substituted,
};

const char* to_string(FamilyId id);
std::optional<FamilyId> parse_family_id(const std::string& name);
const std::vector<std::string>& family_parameter_names(FamilyId id);

// One member of a family: the identity at a fixed n >= 0. Construction
// validates the parameter-name set and n; it does not scan for pole
// collisions (evaluation reports those as InvalidInstance).
struct FiniteIdentityFamily {
    FamilyId id;
    long n;
    std::map<std::string, Rational> params;
    QBase base;

    FiniteIdentityFamily(FamilyId id_, long n_, std::map<std::string, Rational> params_,
                         QBase base_);
    const Rational& at(const std::string& name) const;
};

enum class StepKind { Reindex, Substitute, TanneryLimit, Iterate, Specialize };

const char* to_string(StepKind kind);

// One checked step of a derivation. Exact steps carry a Rational residual
// and pass only when it is 0; approximate steps carry an ApproxValue whose
// err field is the certified comparison budget.
struct ProofStep {
    StepKind kind;
    std::string description;  // the mathematical operation performed
    EvalResult residual;
    bool exact;
    bool pass;
};

// A derivation replay: ordered steps toward a target identity. verdict is
// Pass exactly when every step passed.
struct ProofTrace {
    IdentityId target;
    std::vector<ProofStep> steps;
    Verdict verdict;
};

// Evaluates every expression of the family member exactly in Q and compares
// them pairwise. residual is the largest pairwise deviation (0 on pass).
// A pole in any factor raises InvalidInstance naming the family and factor.
ProofStep check_finite_identity(const FiniteIdentityFamily& fam);

// Verifies sum_{k=0}^{2n} t_k = t_n * sum_{j=-n}^{n} t_{n+j}/t_n for the
// terminating sum of the identity (I3_qPfaffSaalschutz or I7_Bailey10phi9,
// taken at order 2n), with the ratio t_{n+j}/t_n expanded through shifted
// factorials ((x; q)_{n+j} = (x; q)_n (x q^n; q)_j), not by cancelling raw
// terms. params uses the identity's letters; the order-2n instance must be
// valid.
ProofStep reindex_equivalence(IdentityId id, long n, const std::map<std::string, Rational>& params,
                              const QBase& base);

// Evaluates the substituted family's bilateral-sum expression at each n in
// ns (default {10, 20, 40}) and checks convergence to target: deviations
// must decrease strictly and, per doubling of n, by at least the family's
// asymptotic rate with a 3/2 slack factor (deviations already inside
// 4 * target.err are exempt, the comparison floor). residual is the final
// deviation widened by target's err. A non-decreasing deviation sequence
// yields a failing step with the measured sequence in the description.
// Requires a substituted family; single-entry ns only reports the deviation.
ProofStep tannery_limit(const FiniteIdentityFamily& fam, const ApproxValue& target,
                        const std::vector<long>& ns = {10, 20, 40});

// Replays the derivation of Ramanujan's 1psi1 summation from the
// q-Pfaff-Saalschutz summation: Reindex, Substitute, TanneryLimit. The
// internal letters are a, b/(a z), b; the limit step targets the 1psi1
// product side at (a, b, z). Throws DomainError when (a, b, z) violates
// |b/a| < |z| < 1 or any finite stage hits the q-power lattice.
ProofTrace replay_1psi1(const Rational& a, const Rational& b, const Rational& z,
                        const QBase& base, const TruncationPolicy& policy,
                        const PrecisionContext& ctx,
                        const std::vector<long>& ns = {10, 20, 40});

// Replays the derivation of Bailey's 6psi6 summation for the series rooted
// at a with parameters c, d, e, f: Reindex, Substitute, TanneryLimit (to the
// 6psi6 transformation), Iterate (second application at (a, c, d, e) ->
// (lambda, lambda c/a, e, lambda d/a)), Specialize (lambda = e and
// lambda' = a/c collapse the innermost series to 1). Auxiliary parameters b
// and b' are chosen deterministically from a fixed candidate list. Throws
// DomainError when |q a^2 / (c d e f)| >= 1 or a finite stage hits the
// q-power lattice.
ProofTrace replay_6psi6(const Rational& a, const Rational& c, const Rational& d,
                        const Rational& e, const Rational& f, const QBase& base,
                        const TruncationPolicy& policy, const PrecisionContext& ctx,
                        const std::vector<long>& ns = {10, 20, 40});

}  // namespace qseries
