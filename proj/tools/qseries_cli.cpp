// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qseries/cauchy.hpp"
#include "qseries/errors.hpp"
#include "qseries/identities.hpp"
#include "qseries/json_io.hpp"
#include "qseries/qfactorial.hpp"
#include "qseries/series.hpp"

namespace {

using namespace qseries;

// Exit contract: 0 pass, 1 fail, 2 usage, 3 domain or invalid instance.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

// Malformed argument values (bad rationals, unknown names) are usage errors,
// distinct from domain errors raised by the mathematical layer.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RunConfig {
    long precision_bits = 256;
    std::string tolerance = "1e-30";
    std::string format = "json";
    unsigned long long seed = 42;
    long max_terms = 10000;

    bool json() const { return format == "json"; }
    TruncationPolicy policy() const {
        TruncationPolicy p;
        p.max_terms = max_terms;
        p.target_eps = parse_rational(tolerance);
        return p;
    }
    PrecisionContext ctx() const {
        return PrecisionContext(static_cast<mpfr_prec_t>(precision_bits),
                                parse_rational(tolerance));
    }
    VerifyOptions verify_options() const {
        VerifyOptions opts;
        opts.policy = policy();
        opts.ctx = ctx();
        opts.tolerance = parse_rational(tolerance);
        return opts;
    }
};

Rational arg_rational(const std::string& text, const std::string& flag) {
    try {
        return parse_rational(text);
    } catch (const DomainError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

QBase arg_base(const std::string& text) {
    const Rational q = arg_rational(text, "--q");
    try {
        return QBase(q);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--q: ") + e.what());
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(sep, start);
        if (end == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

// Comma-separated rationals; an empty string is an empty list.
std::vector<Rational> arg_rational_list(const std::string& text, const std::string& flag) {
    std::vector<Rational> values;
    if (text.empty()) return values;
    for (const std::string& part : split(text, ','))
        values.push_back(arg_rational(part, flag));
    return values;
}

std::map<std::string, Rational> arg_params(const std::string& text) {
    std::map<std::string, Rational> params;
    if (text.empty()) return params;
    for (const std::string& part : split(text, ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--params: expected name=value, got '" + part + "'");
        const std::string name = part.substr(0, eq);
        if (params.count(name)) throw UsageError("--params: duplicate name '" + name + "'");
        params.emplace(name, arg_rational(part.substr(eq + 1), "--params"));
    }
    return params;
}

long arg_long(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(flag + ": expected an integer, got '" + text + "'");
    }
}

void print_json(const OrderedJson& obj) { std::cout << obj.dump(2) << "\n"; }

void print_eval(const EvalResult& value, const RunConfig& cfg) {
    if (cfg.json())
        print_json(json_of(value));
    else
        std::cout << tsv_of(value) << "\n";
}

int run_eval_poch(const RunConfig& cfg, const std::string& a_text, const std::string& k_text,
                  const std::string& q_text) {
    const Rational a = arg_rational(a_text, "--a");
    const QBase base = arg_base(q_text);
    if (k_text == "inf") {
        print_eval(EvalResult(poch_infinite(a, base, cfg.ctx())), cfg);
        return kExitPass;
    }
    const long k = arg_long(k_text, "--k");
    const PochValue v = poch_int(a, k, base);
    if (v.is_pole()) {
        if (cfg.json()) {
            OrderedJson obj = OrderedJson::object();
            obj["value"] = "pole";
            print_json(obj);
        } else {
            std::cout << "pole\n";
        }
        return kExitPass;
    }
    print_eval(EvalResult(v.rational()), cfg);
    return kExitPass;
}

int run_eval_series(const RunConfig& cfg, const std::string& kind, const std::string& upper,
                    const std::string& lower, const std::string& arg_text,
                    const std::string& q_text) {
    const QBase base = arg_base(q_text);
    const SeriesKind sk = kind == "uni" ? SeriesKind::Unilateral : SeriesKind::Bilateral;
    const SeriesSpec spec(sk, arg_rational_list(upper, "--upper"),
                          arg_rational_list(lower, "--lower"),
                          arg_rational(arg_text, "--arg"), base);
    const ConvergenceDomain dom = convergence_domain(spec);
    if (dom == ConvergenceDomain::Terminating) {
        print_eval(EvalResult(eval_terminating(spec)), cfg);
        return kExitPass;
    }
    if (dom != ConvergenceDomain::Converges)
        throw DomainError(dom == ConvergenceDomain::DivergesAbove
                              ? "series diverges as k -> +infinity"
                              : "series diverges as k -> -infinity");
    const EvalResult value(sk == SeriesKind::Unilateral
                               ? eval_unilateral(spec, cfg.policy(), cfg.ctx())
                               : eval_bilateral(spec, cfg.policy(), cfg.ctx()));
    print_eval(value, cfg);
    return kExitPass;
}

int run_eval_vwp(const RunConfig& cfg, const std::string& a_text, const std::string& tail,
                 const std::string& arg_text, const std::string& q_text) {
    const QBase base = arg_base(q_text);
    const VWPSpec spec(arg_rational(a_text, "--a"), arg_rational_list(tail, "--tail"),
                       arg_rational(arg_text, "--arg"), base);
    const ConvergenceDomain dom = convergence_domain(spec);
    if (dom != ConvergenceDomain::Converges && dom != ConvergenceDomain::Terminating)
        throw DomainError("very-well-poised series diverges");
    print_eval(EvalResult(eval_vwp_bilateral(spec, cfg.policy(), cfg.ctx())), cfg);
    return kExitPass;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return kExitPass;
        case Verdict::Fail: return kExitFail;
        case Verdict::Invalid: return kExitDomain;
    }
    return kExitDomain;
}

int run_verify(const RunConfig& cfg, const std::string& id_text, const std::string& params_text,
               std::optional<long> n, const std::string& q_text) {
    const auto id = parse_identity_id(id_text);
    if (!id) throw UsageError("unknown identity id '" + id_text + "'");
    const QBase base = arg_base(q_text);
    const auto params = arg_params(params_text);
    std::optional<IdentityInstance> inst;
    try {
        inst.emplace(*id, params, n, base);
    } catch (const InvalidInstance& e) {
        throw UsageError(e.what());
    }
    const VerificationReport report = verify(*inst, cfg.verify_options());
    if (cfg.json())
        print_json(json_of(report));
    else
        std::cout << report_tsv_header() << "\n" << tsv_row(report) << "\n";
    return verdict_exit(report.verdict);
}

int run_sweep(const RunConfig& cfg, const std::string& id_text, long count,
              const std::string& q_text) {
    const auto id = parse_identity_id(id_text);
    if (!id) throw UsageError("unknown identity id '" + id_text + "'");
    if (count < 0) throw UsageError("--count must be >= 0");
    const QBase base = arg_base(q_text);
    const VerifyOptions opts = cfg.verify_options();
    long pass = 0, fail = 0, invalid = 0;
    if (!cfg.json()) std::cout << report_tsv_header() << "\n";
    for (long i = 0; i < count; ++i) {
        const unsigned long long seed =
            mix_seed(cfg.seed, static_cast<unsigned long long>(*id),
                     static_cast<unsigned long long>(i));
        const IdentityInstance inst = sample_valid_instance(*id, seed, base);
        const VerificationReport report = verify(inst, opts);
        switch (report.verdict) {
            case Verdict::Pass: ++pass; break;
            case Verdict::Fail: ++fail; break;
            case Verdict::Invalid: ++invalid; break;
        }
        if (cfg.json())
            std::cout << json_of(report).dump() << "\n";
        else
            std::cout << tsv_row(report) << "\n";
    }
    if (cfg.json()) {
        OrderedJson summary = OrderedJson::object();
        summary["count"] = count;
        summary["pass"] = pass;
        summary["fail"] = fail;
        summary["invalid"] = invalid;
        std::cout << summary.dump() << "\n";
    } else {
        std::cout << "# count=" << count << " pass=" << pass << " fail=" << fail
                  << " invalid=" << invalid << "\n";
    }
    return pass == count ? kExitPass : kExitFail;
}

std::vector<long> arg_ns(const std::string& text) {
    std::vector<long> ns;
    for (const std::string& part : split(text, ','))
        ns.push_back(arg_long(part, "--ns"));
    if (ns.empty()) throw UsageError("--ns: expected a comma-separated list of stages");
    return ns;
}

Rational named_param(const std::map<std::string, Rational>& params, const char* name) {
    auto it = params.find(name);
    if (it == params.end())
        throw UsageError(std::string("--params: missing parameter ") + name);
    return it->second;
}

int run_replay(const RunConfig& cfg, const std::string& target, const std::string& params_text,
               const std::string& ns_text, const std::string& q_text) {
    const QBase base = arg_base(q_text);
    const auto params = arg_params(params_text);
    const std::vector<long> ns = arg_ns(ns_text);
    ProofTrace trace;
    if (target == "1psi1") {
        if (params.size() != 3)
            throw UsageError("replay 1psi1 takes parameters a, b, z");
        trace = replay_1psi1(named_param(params, "a"), named_param(params, "b"),
                             named_param(params, "z"), base, cfg.policy(), cfg.ctx(), ns);
    } else if (target == "6psi6") {
        if (params.size() != 5)
            throw UsageError("replay 6psi6 takes parameters a, c, d, e, f");
        trace = replay_6psi6(named_param(params, "a"), named_param(params, "c"),
                             named_param(params, "d"), named_param(params, "e"),
                             named_param(params, "f"), base, cfg.policy(), cfg.ctx(), ns);
    } else {
        throw UsageError("unknown replay target '" + target + "' (expected 1psi1 or 6psi6)");
    }
    if (cfg.json())
        print_json(json_of(trace));
    else
        std::cout << trace_tsv(trace) << "\n";
    return trace.verdict == Verdict::Pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"exact and certified evaluation of q-series and their identities"};
    app.require_subcommand(1);

    app.add_option("--prec", cfg.precision_bits, "working precision in bits")
        ->default_val(256)
        ->check(CLI::Range(64L, 1000000L));
    app.add_option("--tol", cfg.tolerance, "certified tolerance (decimal or p/q)")
        ->default_val("1e-30");
    app.add_option("--format", cfg.format, "output format")
        ->default_val("json")
        ->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--seed", cfg.seed, "sampling seed")->default_val(42);
    app.add_option("--max-terms", cfg.max_terms, "summation term budget")
        ->default_val(10000)
        ->check(CLI::Range(1L, 100000000L));

    int code = kExitPass;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a q-factorial or series");
    eval->require_subcommand(1);
    eval->fallthrough();

    std::string poch_a, poch_k, poch_q = "1/2";
    CLI::App* poch = eval->add_subcommand("poch", "q-shifted factorial (a; q)_k");
    poch->fallthrough();
    poch->add_option("--a", poch_a, "first argument")->required();
    poch->add_option("--k", poch_k, "index: integer or inf")->required();
    poch->add_option("--q", poch_q, "base");
    poch->callback([&] { code = run_eval_poch(cfg, poch_a, poch_k, poch_q); });

    std::string ser_kind, ser_upper, ser_lower, ser_arg, ser_q = "1/2";
    CLI::App* series = eval->add_subcommand("series", "basic hypergeometric series");
    series->fallthrough();
    series->add_option("--kind", ser_kind, "uni or bi")
        ->required()
        ->check(CLI::IsMember({"uni", "bi"}));
    series->add_option("--upper", ser_upper, "comma-separated upper parameters");
    series->add_option("--lower", ser_lower, "comma-separated lower parameters");
    series->add_option("--arg", ser_arg, "series argument")->required();
    series->add_option("--q", ser_q, "base");
    series->callback(
        [&] { code = run_eval_series(cfg, ser_kind, ser_upper, ser_lower, ser_arg, ser_q); });

    std::string vwp_a, vwp_tail, vwp_arg, vwp_q = "1/2";
    CLI::App* vwp = eval->add_subcommand("vwp", "very-well-poised bilateral series");
    vwp->fallthrough();
    vwp->add_option("--a", vwp_a, "root parameter")->required();
    vwp->add_option("--tail", vwp_tail, "comma-separated tail parameters")->required();
    vwp->add_option("--arg", vwp_arg, "series argument")->required();
    vwp->add_option("--q", vwp_q, "base");
    vwp->callback([&] { code = run_eval_vwp(cfg, vwp_a, vwp_tail, vwp_arg, vwp_q); });

    std::string ver_id, ver_params, ver_q = "1/2";
    std::optional<long> ver_n;
    CLI::App* ver = app.add_subcommand("verify", "verify one identity instance");
    ver->fallthrough();
    ver->add_option("id", ver_id, "identity id (I1..I9)")->required();
    ver->add_option("--params", ver_params, "name=value,... parameter list")->required();
    ver->add_option("--n", ver_n, "order for terminating identities");
    ver->add_option("--q", ver_q, "base");
    ver->callback([&] { code = run_verify(cfg, ver_id, ver_params, ver_n, ver_q); });

    std::string sw_id, sw_q = "1/2";
    long sw_count = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "verify sampled valid instances");
    sweep->fallthrough();
    sweep->add_option("id", sw_id, "identity id (I1..I9)")->required();
    sweep->add_option("--count", sw_count, "number of instances")->required();
    sweep->add_option("--q", sw_q, "base");
    sweep->callback([&] { code = run_sweep(cfg, sw_id, sw_count, sw_q); });

    std::string rp_target, rp_params, rp_ns = "10,20,40", rp_q = "1/2";
    CLI::App* replay = app.add_subcommand("replay", "replay a derivation as a proof trace");
    replay->fallthrough();
    replay->add_option("target", rp_target, "1psi1 or 6psi6")->required();
    replay->add_option("--params", rp_params, "name=value,... parameter list")->required();
    replay->add_option("--ns", rp_ns, "Tannery stages, comma-separated");
    replay->add_option("--q", rp_q, "base");
    replay->callback([&] { code = run_replay(cfg, rp_target, rp_params, rp_ns, rp_q); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const InvalidInstance& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return kExitDomain;
    } catch (const IndeterminateError& e) {
        std::cerr << "indeterminate: " << e.what() << "\n";
        return kExitDomain;
    } catch (const SamplingExhausted& e) {
        std::cerr << "sampling exhausted: " << e.what() << "\n";
        return kExitDomain;
    } catch (const MaxTermsExceeded& e) {
        std::cerr << "term budget exceeded: " << e.what() << "\n";
        return kExitDomain;
    }
    return code;
}
