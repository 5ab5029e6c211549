// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate for the library and command line. Each criterion prints
// one PASS/FAIL line; the process exits 0 only when every criterion passed.
// Tolerances and instance counts are pinned here on purpose: the gate is the
// contract, not a tunable.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qseries/cauchy.hpp"
#include "qseries/errors.hpp"
#include "qseries/identities.hpp"
#include "qseries/qfactorial.hpp"
#include "qseries/series.hpp"

namespace {

using namespace qseries;
using Clock = std::chrono::steady_clock;

const Rational kTol(1, mpz_class("1000000000000000000000000000000"));  // 1e-30
constexpr mpfr_prec_t kBits = 256;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

TruncationPolicy base_policy() {
    TruncationPolicy p;
    p.max_terms = 10000;
    p.target_eps = kTol;
    return p;
}

PrecisionContext base_ctx() { return PrecisionContext(kBits, kTol); }

VerifyOptions base_options() {
    VerifyOptions opts;
    opts.policy = base_policy();
    opts.ctx = base_ctx();
    opts.tolerance = kTol;
    return opts;
}

struct CliRun {
    int status;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(QSERIES_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[8192];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

bool report(int index, const std::string& name, bool ok, const std::string& note) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << index << ": " << name;
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << "\n" << std::flush;
    return ok;
}

// Runs one sweep through the command line and checks every emitted report.
// mode_name and max_n constrain each instance; residual_vs_budget switches on
// the certified residual <= budget + tol recheck from the printed decimals.
bool check_sweep(const std::string& id, long count, const std::string& q,
                 const std::string& mode_name, long max_n, bool residual_vs_budget,
                 std::string& why) {
    std::ostringstream cmd;
    cmd << "sweep " << id << " --count " << count << " --q " << q;
    const CliRun run = run_cli(cmd.str());
    if (run.status != 0) {
        why = id + " sweep exited " + std::to_string(run.status);
        return false;
    }
    const auto lines = lines_of(run.out);
    if (lines.size() != static_cast<std::size_t>(count) + 1) {
        why = id + " sweep printed " + std::to_string(lines.size()) + " lines";
        return false;
    }
    for (long i = 0; i < count; ++i) {
        const auto doc = nlohmann::json::parse(lines[i]);
        if (doc.at("verdict") != "Pass" || doc.at("mode") != mode_name) {
            why = id + " instance " + std::to_string(i) + " is " +
                  doc.at("verdict").get<std::string>() + "/" +
                  doc.at("mode").get<std::string>();
            return false;
        }
        if (max_n >= 0) {
            const long n = std::stol(doc.at("params").at("n").get<std::string>());
            if (n < 0 || n > max_n) {
                why = id + " sampled n = " + std::to_string(n);
                return false;
            }
        }
        if (residual_vs_budget) {
            const double residual = std::stod(doc.at("residual").get<std::string>());
            const double budget = std::stod(doc.at("budget").get<std::string>());
            // 2% slack absorbs the 3-digit rounding of the printed decimals.
            if (residual > (budget + 1e-30) * 1.02) {
                why = id + " instance " + std::to_string(i) + " residual " +
                      doc.at("residual").get<std::string>() + " > budget " +
                      doc.at("budget").get<std::string>();
                return false;
            }
        }
    }
    const auto summary = nlohmann::json::parse(lines[count]);
    if (summary.at("pass") != count) {
        why = id + " summary " + summary.dump();
        return false;
    }
    return true;
}

bool criterion_exact_sweeps() {
    const auto t0 = Clock::now();
    std::string why;
    bool ok = check_sweep("I3", 200, "1/2", "exact", 8, false, why) &&
              check_sweep("I4", 200, "1/2", "exact", 10, false, why) &&
              check_sweep("I6", 100, "1/2", "exact", 6, false, why) &&
              check_sweep("I7", 100, "1/2", "exact", 5, false, why);
    const double secs = seconds_since(t0);
    if (ok && secs > 300.0) {
        ok = false;
        why = "runtime over 300s";
    }
    std::ostringstream note;
    note << "I3 x200, I4 x200, I6 x100, I7 x100 all Pass in exact mode; "
         << std::fixed;
    note.precision(1);
    note << secs << "s of 300s";
    return report(1, "exact terminating sweeps", ok, ok ? note.str() : why);
}

Rational draw_letter(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-24, 24);
    std::uniform_int_distribution<int> den(1, 12);
    int p = 0;
    while (p == 0) p = num(rng);
    return Rational(p, den(rng));
}

QBase draw_base(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    switch (pick(rng)) {
        case 0: return QBase(Rational(1, 2));
        case 1: return QBase(Rational(1, 3));
        default: return QBase(Rational(1, 10));
    }
}

bool criterion_display_families() {
    const auto t0 = Clock::now();
    const FamilyId families[] = {FamilyId::F_qps_shifted, FamilyId::F_qps_substituted,
                                 FamilyId::F_Ba_shifted, FamilyId::F_Ba_substituted};
    std::string why;
    bool ok = true;
    long total_checks = 0;
    for (std::size_t fi = 0; ok && fi < 4; ++fi) {
        const FamilyId id = families[fi];
        std::mt19937_64 rng(0xC2000 + fi);
        const auto& names = family_parameter_names(id);
        int accepted = 0;
        int attempts = 0;
        while (accepted < 20 && attempts < 4000) {
            ++attempts;
            const QBase base = draw_base(rng);
            std::map<std::string, Rational> params;
            for (const auto& name : names) params.emplace(name, draw_letter(rng));
            bool point_ok = true;
            try {
                for (long n = 0; n <= 5 && point_ok; ++n) {
                    const ProofStep step =
                        check_finite_identity(FiniteIdentityFamily(id, n, params, base));
                    if (!step.pass || !step.exact ||
                        std::get<Rational>(step.residual) != 0) {
                        why = std::string(to_string(id)) + " at n = " + std::to_string(n) +
                              " has nonzero residual";
                        ok = false;
                        point_ok = false;
                    }
                    ++total_checks;
                }
            } catch (const InvalidInstance&) {
                continue;  // pole collision: resample the point
            }
            if (!ok) break;
            if (point_ok) ++accepted;
        }
        if (ok && accepted < 20) {
            ok = false;
            why = std::string(to_string(id)) + " accepted only " +
                  std::to_string(accepted) + " points in " + std::to_string(attempts) +
                  " attempts";
        }
    }
    std::ostringstream note;
    note << "4 families x 20 points x n in {0..5}, " << total_checks
         << " exact checks, residual 0 in every case; " << std::fixed;
    note.precision(1);
    note << seconds_since(t0) << "s";
    return report(2, "finite display families", ok, ok ? note.str() : why);
}

bool criterion_certified_sweeps() {
    const auto t0 = Clock::now();
    std::string why;
    bool ok = check_sweep("I1", 100, "1/10", "certified", -1, true, why) &&
              check_sweep("I1", 100, "1/2", "certified", -1, true, why) &&
              check_sweep("I2", 100, "1/2", "certified", -1, true, why) &&
              check_sweep("I5", 100, "1/2", "certified", -1, true, why) &&
              check_sweep("I8", 50, "1/2", "certified", -1, true, why) &&
              check_sweep("I9", 25, "1/2", "certified", -1, true, why);
    const double secs = seconds_since(t0);
    if (ok && secs > 900.0) {
        ok = false;
        why = "runtime over 900s";
    }
    std::ostringstream note;
    note << "I1 x100 at q=1/10 and q=1/2, I2 x100, I5 x100, I8 x50, I9 x25 all Pass "
            "with residual <= budget + 1e-30 at 256 bits; "
         << std::fixed;
    note.precision(1);
    note << secs << "s of 900s";
    return report(3, "certified bilateral sweeps", ok, ok ? note.str() : why);
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return pool[d(rng)];
}

bool criterion_replays() {
    const auto t0 = Clock::now();
    const QBase base(Rational(1, 10));
    const TruncationPolicy policy = base_policy();
    const PrecisionContext ctx = base_ctx();
    std::string why;

    std::mt19937_64 rng1(0xC41);
    const std::vector<Rational> as = {Rational(2),     Rational(3),     Rational(5),
                                      Rational(5, 2),  Rational(7, 2),  Rational(2, 3),
                                      Rational(4),     Rational(7)};
    const std::vector<Rational> bs = {Rational(1, 4), Rational(1, 5),  Rational(1, 7),
                                      Rational(2, 9), Rational(-1, 6), Rational(3, 11)};
    const std::vector<Rational> zs = {Rational(1, 3),  Rational(1, 2), Rational(2, 5),
                                      Rational(3, 7),  Rational(5, 8), Rational(-2, 5),
                                      Rational(-1, 3)};
    int done = 0, attempts = 0;
    while (done < 10 && attempts < 300) {
        ++attempts;
        try {
            const ProofTrace tr = replay_1psi1(pick(rng1, as), pick(rng1, bs),
                                               pick(rng1, zs), base, policy, ctx);
            if (tr.verdict != Verdict::Pass || tr.steps.size() != 3) {
                return report(4, "derivation replays", false,
                              "a 1psi1 replay did not pass with 3 steps");
            }
            ++done;
        } catch (const DomainError&) {
        } catch (const InvalidInstance&) {
        } catch (const IndeterminateError&) {
        }
    }
    if (done < 10)
        return report(4, "derivation replays", false,
                      "only " + std::to_string(done) + " valid 1psi1 points in " +
                          std::to_string(attempts) + " attempts");

    std::mt19937_64 rng2(0xC42);
    const std::vector<Rational> roots = {Rational(3), Rational(4), Rational(5),
                                         Rational(6), Rational(7)};
    const std::vector<Rational> tails = {Rational(2), Rational(3),  Rational(5),
                                         Rational(7), Rational(11), Rational(13)};
    done = 0;
    attempts = 0;
    while (done < 10 && attempts < 300) {
        ++attempts;
        const Rational a = pick(rng2, roots);
        const Rational c = pick(rng2, tails), d = pick(rng2, tails);
        const Rational e = pick(rng2, tails), f = pick(rng2, tails);
        try {
            const ProofTrace tr = replay_6psi6(a, c, d, e, f, base, policy, ctx);
            if (tr.verdict != Verdict::Pass || tr.steps.size() != 5) {
                return report(4, "derivation replays", false,
                              "a 6psi6 replay did not pass with 5 steps");
            }
            const ProofStep& last = tr.steps.back();
            if (last.kind != StepKind::Specialize ||
                last.description.find("collapses to 1 exactly") == std::string::npos) {
                return report(4, "derivation replays", false,
                              "the final step is not the collapsing specialization");
            }
            // Independent recomputation of the collapsed series: with
            // lambda = e and lambda' = a/c the innermost sum must be the
            // exact constant 1 (no enclosure width at all).
            const Rational root = a / c;
            const std::vector<Rational> tail = {Rational(1), Rational(a / c),
                                                Rational(d * e / a), f};
            const Rational arg = base.q * a * a / (c * d * e * f);
            const ApproxValue terminal =
                eval_vwp_bilateral(VWPSpec(root, tail, arg, base), policy, ctx);
            if (!terminal.is_exactly(Rational(1))) {
                return report(4, "derivation replays", false,
                              "the specialized series is not exactly 1 with err 0");
            }
            ++done;
        } catch (const DomainError&) {
        } catch (const InvalidInstance&) {
        } catch (const IndeterminateError&) {
        }
    }
    if (done < 10)
        return report(4, "derivation replays", false,
                      "only " + std::to_string(done) + " valid 6psi6 points in " +
                          std::to_string(attempts) + " attempts");

    std::ostringstream note;
    note << "10 sampled points per target all Pass; every specialized series is "
            "exactly 1 with err 0; "
         << std::fixed;
    note.precision(1);
    note << seconds_since(t0) << "s";
    return report(4, "derivation replays", true, note.str());
}

// Deviation of the substituted family from its bilateral target at one stage,
// read back from a single-stage limit step.
Rational stage_deviation(const FiniteIdentityFamily& fam, const ApproxValue& target,
                         long n) {
    const ProofStep step = tannery_limit(fam, target, {n});
    return std::get<ApproxValue>(step.residual).value().to_rational();
}

bool shrink_holds(const Rational& prev, const Rational& next, const Rational& rate,
                  long doubling_span, const Rational& floor) {
    Rational bound = prev * rational_pow(rate, doubling_span) * Rational(3, 2);
    if (bound < floor) bound = floor;
    return next <= bound;
}

bool criterion_tannery_decrease() {
    const auto t0 = Clock::now();
    const TruncationPolicy policy = base_policy();
    const PrecisionContext ctx = base_ctx();
    const QBase base(Rational(1, 10));

    struct Case {
        FamilyId family;
        std::map<std::string, Rational> letters;
        IdentityId target_id;
        std::map<std::string, Rational> target_params;
        Rational rate;  // termwise geometric ratio of the family tail
    };
    const Rational q = base.q;
    const std::vector<Case> cases = {
        // Letters (a, b, c) with the limit target at (a, c, b/(a c) ... ): the
        // bilateral target is the product side at (a = 2, b = 1/4, z = 1/3).
        {FamilyId::F_qps_substituted,
         {{"a", Rational(2)}, {"b", Rational(3, 8)}, {"c", Rational(1, 4)}},
         IdentityId::I1_1psi1,
         {{"a", Rational(2)}, {"b", Rational(1, 4)}, {"z", Rational(1, 3)}},
         Rational(3, 8)},
        {FamilyId::F_Ba_substituted,
         {{"a", Rational(3)}, {"b", Rational(5)}, {"c", Rational(2)},
          {"d", Rational(5)}, {"e", Rational(7)}, {"f", Rational(2)}},
         IdentityId::I8_Transform6psi6,
         {{"a", Rational(3)}, {"b", Rational(5)}, {"c", Rational(2)},
          {"d", Rational(5)}, {"e", Rational(7)}, {"f", Rational(2)}},
         Rational(9, 1400)},
    };

    for (const Case& c : cases) {
        const IdentityInstance target_inst(c.target_id, c.target_params, std::nullopt,
                                           base);
        const ApproxValue target =
            std::get<ApproxValue>(rhs(target_inst, policy, ctx));
        const FiniteIdentityFamily fam10(c.family, 0, c.letters, base);
        const ProofStep full = tannery_limit(fam10, target);
        if (!full.pass)
            return report(5, "limit deviations decrease geometrically", false,
                          std::string(to_string(c.family)) + " limit step failed");

        const Rational dev10 = stage_deviation(fam10, target, 10);
        const Rational dev20 = stage_deviation(fam10, target, 20);
        const Rational dev40 = stage_deviation(fam10, target, 40);
        if (!(dev40 < dev20 && dev20 < dev10))
            return report(5, "limit deviations decrease geometrically", false,
                          std::string(to_string(c.family)) +
                              " deviations are not strictly decreasing");

        Rational rate = c.rate;
        const Rational qabs = q < 0 ? Rational(-q) : q;
        if (rate < qabs) rate = qabs;
        const Rational floor = Rational(4) * target.err_upper();
        if (!shrink_holds(dev10, dev20, rate, 10, floor) ||
            !shrink_holds(dev20, dev40, rate, 20, floor))
            return report(5, "limit deviations decrease geometrically", false,
                          std::string(to_string(c.family)) +
                              " per-doubling shrink exceeds the geometric bound");
    }

    std::ostringstream note;
    note << "both substituted families: deviation(40) < deviation(20) < deviation(10) "
            "and each doubling shrinks by at least rate^n / 1.5 slack or reaches the "
            "certified floor; "
         << std::fixed;
    note.precision(1);
    note << seconds_since(t0) << "s";
    return report(5, "limit deviations decrease geometrically", true, note.str());
}

bool criterion_error_bounds() {
    const auto t0 = Clock::now();
    const TruncationPolicy policy1 = base_policy();
    const PrecisionContext ctx1 = base_ctx();
    TruncationPolicy policy2 = base_policy();
    policy2.max_terms = 100000;
    policy2.target_eps = kTol / 100;
    const PrecisionContext ctx2(2 * kBits, kTol / 100);

    long checked = 0;
    for (int i = 0; i < 25; ++i) {
        const QBase base(i % 2 == 0 ? Rational(1, 2) : Rational(1, 10));
        const IdentityInstance inst = sample_valid_instance(
            IdentityId::I1_1psi1, mix_seed(42, 6101, static_cast<unsigned long long>(i)),
            base);
        const SeriesSpec spec(SeriesKind::Bilateral, {inst.at("a")}, {inst.at("b")},
                              inst.at("z"), base);
        const ApproxValue first = eval_bilateral(spec, policy1, ctx1);
        const ApproxValue second = eval_bilateral(spec, policy2, ctx2);
        Rational gap = first.value().to_rational() - second.value().to_rational();
        if (gap < 0) gap = -gap;
        if (gap > first.err_upper())
            return report(6, "certified error bounds are sound", false,
                          "a refined bilateral evaluation left the first enclosure");
        ++checked;
    }
    for (int i = 0; i < 25; ++i) {
        const QBase base(i % 2 == 0 ? Rational(1, 2) : Rational(1, 10));
        const IdentityInstance inst = sample_valid_instance(
            IdentityId::I2_6psi6, mix_seed(42, 6202, static_cast<unsigned long long>(i)),
            base);
        const Rational a = inst.at("a"), b = inst.at("b"), c = inst.at("c"),
                       d = inst.at("d"), e = inst.at("e");
        const Rational arg = base.q * a * a / (b * c * d * e);
        const VWPSpec spec(a, {b, c, d, e}, arg, base);
        const ApproxValue first = eval_vwp_bilateral(spec, policy1, ctx1);
        const ApproxValue second = eval_vwp_bilateral(spec, policy2, ctx2);
        Rational gap = first.value().to_rational() - second.value().to_rational();
        if (gap < 0) gap = -gap;
        if (gap > first.err_upper())
            return report(6, "certified error bounds are sound", false,
                          "a refined very-well-poised evaluation left the first enclosure");
        ++checked;
    }

    std::ostringstream note;
    note << checked
         << " bilateral evaluations re-run at double precision and 100x tighter "
            "target stay inside the first run's err; "
         << std::fixed;
    note.precision(1);
    note << seconds_since(t0) << "s";
    return report(6, "certified error bounds are sound", true, note.str());
}

bool criterion_structural() {
    const auto t0 = Clock::now();
    const TruncationPolicy policy = base_policy();
    const PrecisionContext ctx = base_ctx();
    const VerifyOptions opts = base_options();
    const std::vector<Rational> aux = {Rational(3),    Rational(5),    Rational(7),
                                       Rational(11),   Rational(13),   Rational(2, 3),
                                       Rational(5, 2), Rational(7, 3), Rational(9, 4)};

    // The auxiliary parameter must not leak into the transformed series' own
    // side: enclosures across two b values must be bit-identical, and the two
    // transformed sides must agree within their certified budgets.
    const QBase base8(Rational(1, 2));
    for (int i = 0; i < 20; ++i) {
        const IdentityInstance inst = sample_valid_instance(
            IdentityId::I8_Transform6psi6,
            mix_seed(42, 7801, static_cast<unsigned long long>(i)), base8);
        std::optional<IdentityInstance> other;
        for (const Rational& b2 : aux) {
            if (b2 == inst.at("b")) continue;
            auto params = inst.params;
            params["b"] = b2;
            IdentityInstance cand(inst.id, params, std::nullopt, base8);
            if (!validity_violation(cand)) {
                other.emplace(std::move(cand));
                break;
            }
        }
        if (!other)
            return report(7, "structural specializations", false,
                          "no admissible second auxiliary parameter found");
        const ApproxValue l1 = std::get<ApproxValue>(lhs(inst, policy, ctx));
        const ApproxValue l2 = std::get<ApproxValue>(lhs(*other, policy, ctx));
        if (l1.value().to_rational() != l2.value().to_rational() ||
            l1.err_upper() != l2.err_upper())
            return report(7, "structural specializations", false,
                          "the untransformed side depends on the auxiliary parameter");
        const ApproxValue r1 = std::get<ApproxValue>(rhs(inst, policy, ctx));
        const ApproxValue r2 = std::get<ApproxValue>(rhs(*other, policy, ctx));
        if (!agree_within(r1, r2, kTol))
            return report(7, "structural specializations", false,
                          "the transformed side changed across auxiliary parameters");
    }

    // Tying b c = a q cancels one column pair, so the 10phi9 collapses onto
    // the 8phi7: the untransformed sides must be the same rational number and
    // both identities must verify exactly.
    const QBase base6(Rational(1, 2));
    std::mt19937_64 rng7(0xC73);
    int done = 0, attempts = 0;
    while (done < 20 && attempts < 600) {
        ++attempts;
        const IdentityInstance six = sample_valid_instance(
            IdentityId::I6_Jackson8phi7,
            mix_seed(42, 7802, static_cast<unsigned long long>(attempts)), base6);
        const Rational c_free = pick(rng7, aux);
        std::map<std::string, Rational> params = {
            {"a", six.at("a")},          {"b", six.at("a") * base6.q / c_free},
            {"c", c_free},               {"d", six.at("b")},
            {"e", six.at("c")},          {"f", six.at("d")}};
        const IdentityInstance ten(IdentityId::I7_Bailey10phi9, params, six.n, base6);
        if (validity_violation(ten)) continue;
        const VerificationReport rep10 = verify(ten, opts);
        const VerificationReport rep8 = verify(six, opts);
        if (rep10.verdict != Verdict::Pass || rep10.mode != VerifyMode::Exact ||
            rep8.verdict != Verdict::Pass)
            return report(7, "structural specializations", false,
                          "a tied 10phi9 instance failed to verify exactly");
        if (std::get<Rational>(lhs(ten, policy, ctx)) !=
            std::get<Rational>(lhs(six, policy, ctx)))
            return report(7, "structural specializations", false,
                          "the tied 10phi9 does not reproduce the 8phi7 sum");
        ++done;
    }
    if (done < 20)
        return report(7, "structural specializations", false,
                      "only " + std::to_string(done) + " tied instances in " +
                          std::to_string(attempts) + " attempts");

    // Tying b = a q/(c d) makes lambda = a, turning the transformation into
    // the identity map; verification must still pass.
    int trivial = 0;
    for (int i = 0; trivial < 20 && i < 200; ++i) {
        const IdentityInstance inst = sample_valid_instance(
            IdentityId::I8_Transform6psi6,
            mix_seed(42, 7803, static_cast<unsigned long long>(i)), base8);
        auto params = inst.params;
        params["b"] = inst.at("a") * base8.q / (inst.at("c") * inst.at("d"));
        const IdentityInstance tied(inst.id, params, std::nullopt, base8);
        if (validity_violation(tied)) continue;
        const VerificationReport rep = verify(tied, opts);
        if (rep.verdict != Verdict::Pass)
            return report(7, "structural specializations", false,
                          "an identity-map instance failed to verify");
        ++trivial;
    }
    if (trivial < 20)
        return report(7, "structural specializations", false,
                      "only " + std::to_string(trivial) + " identity-map instances");

    std::ostringstream note;
    note << "auxiliary-parameter independence at 20 points, 20 tied 10phi9/8phi7 "
            "cross-checks, 20 identity-map instances; "
         << std::fixed;
    note.precision(1);
    note << seconds_since(t0) << "s";
    return report(7, "structural specializations", true, note.str());
}

}  // namespace

int main() {
    bool all = true;
    all = criterion_exact_sweeps() && all;
    all = criterion_display_families() && all;
    all = criterion_certified_sweeps() && all;
    all = criterion_replays() && all;
    all = criterion_tannery_decrease() && all;
    all = criterion_error_bounds() && all;
    all = criterion_structural() && all;
    std::cout << (all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << "\n";
    return all ? 0 : 1;
}
