// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qseries/json_io.hpp"

#include <variant>

namespace qseries {

namespace {

std::string approx_value_string(const ApproxValue& v) { return decimal_string(v.value()); }

std::string approx_err_string(const ApproxValue& v) { return error_string(v.err_upper()); }

OrderedJson params_json(const IdentityInstance& inst) {
    OrderedJson obj = OrderedJson::object();
    for (const std::string& name : parameter_names(inst.id))
        obj[name] = to_string(inst.at(name));
    if (inst.n) obj["n"] = std::to_string(*inst.n);
    obj["q"] = to_string(inst.base.q);
    return obj;
}

std::string params_cell(const IdentityInstance& inst) {
    std::string cell;
    for (const std::string& name : parameter_names(inst.id)) {
        if (!cell.empty()) cell += ';';
        cell += name + "=" + to_string(inst.at(name));
    }
    if (inst.n) cell += ";n=" + std::to_string(*inst.n);
    cell += ";q=" + to_string(inst.base.q);
    return cell;
}

// Residuals and budgets are exact in exact mode and measurements otherwise.
std::string magnitude_string(const Rational& x, VerifyMode mode) {
    return mode == VerifyMode::Exact ? to_string(x) : error_string(x);
}

}  // namespace

long round_trip_digits(mpfr_prec_t prec) {
    const long bits = static_cast<long>(prec);
    return (bits * 30103 + 99999) / 100000 + 1;
}

std::string decimal_string(const BigFloat& x) { return x.str(round_trip_digits(x.prec())); }

std::string error_string(const Rational& err) {
    return BigFloat::of(err, 64, MPFR_RNDU).str(3);
}

OrderedJson json_of(const EvalResult& value) {
    OrderedJson obj = OrderedJson::object();
    if (std::holds_alternative<Rational>(value)) {
        obj["value"] = to_string(std::get<Rational>(value));
    } else {
        const ApproxValue& v = std::get<ApproxValue>(value);
        obj["value"] = approx_value_string(v);
        obj["err"] = approx_err_string(v);
    }
    return obj;
}

OrderedJson json_of(const VerificationReport& report) {
    OrderedJson obj = OrderedJson::object();
    obj["id"] = to_string(report.instance.id);
    obj["params"] = params_json(report.instance);
    obj["mode"] = to_string(report.mode);
    obj["lhs"] = report.lhs ? json_of(*report.lhs) : OrderedJson();
    obj["rhs"] = report.rhs ? json_of(*report.rhs) : OrderedJson();
    obj["residual"] = magnitude_string(report.residual, report.mode);
    obj["budget"] = magnitude_string(report.budget, report.mode);
    obj["verdict"] = to_string(report.verdict);
    if (!report.detail.empty()) obj["detail"] = report.detail;
    return obj;
}

OrderedJson json_of(const ProofTrace& trace) {
    OrderedJson obj = OrderedJson::object();
    obj["target"] = to_string(trace.target);
    OrderedJson steps = OrderedJson::array();
    for (const ProofStep& st : trace.steps) {
        OrderedJson step = OrderedJson::object();
        step["kind"] = to_string(st.kind);
        step["description"] = st.description;
        if (std::holds_alternative<Rational>(st.residual)) {
            step["residual"] = to_string(std::get<Rational>(st.residual));
        } else {
            const ApproxValue& v = std::get<ApproxValue>(st.residual);
            OrderedJson res = OrderedJson::object();
            res["value"] = approx_value_string(v);
            res["err"] = approx_err_string(v);
            step["residual"] = std::move(res);
        }
        step["exact"] = st.exact;
        step["pass"] = st.pass;
        steps.push_back(std::move(step));
    }
    obj["steps"] = std::move(steps);
    obj["verdict"] = to_string(trace.verdict);
    return obj;
}

std::string tsv_of(const EvalResult& value) {
    if (std::holds_alternative<Rational>(value)) return to_string(std::get<Rational>(value));
    const ApproxValue& v = std::get<ApproxValue>(value);
    return approx_value_string(v) + " ± " + approx_err_string(v);
}

std::string report_tsv_header() {
    return "id\tparams\tmode\tlhs\trhs\tresidual\tbudget\tverdict\tdetail";
}

std::string tsv_row(const VerificationReport& report) {
    std::string row = to_string(report.instance.id);
    row += '\t';
    row += params_cell(report.instance);
    row += '\t';
    row += to_string(report.mode);
    row += '\t';
    row += report.lhs ? tsv_of(*report.lhs) : std::string();
    row += '\t';
    row += report.rhs ? tsv_of(*report.rhs) : std::string();
    row += '\t';
    row += magnitude_string(report.residual, report.mode);
    row += '\t';
    row += magnitude_string(report.budget, report.mode);
    row += '\t';
    row += to_string(report.verdict);
    row += '\t';
    row += report.detail;
    return row;
}

std::string trace_tsv(const ProofTrace& trace) {
    std::string out = "target\tstep\tkind\tdescription\tresidual\texact\tpass\tverdict";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ProofStep& st = trace.steps[i];
        out += '\n';
        out += to_string(trace.target);
        out += '\t' + std::to_string(i + 1);
        out += '\t';
        out += to_string(st.kind);
        out += '\t' + st.description;
        out += '\t';
        if (std::holds_alternative<Rational>(st.residual)) {
            out += to_string(std::get<Rational>(st.residual));
        } else {
            const ApproxValue& v = std::get<ApproxValue>(st.residual);
            out += approx_value_string(v) + " ± " + approx_err_string(v);
        }
        out += st.exact ? "\ttrue" : "\tfalse";
        out += st.pass ? "\ttrue" : "\tfalse";
        out += '\t';
        out += to_string(trace.verdict);
    }
    return out;
}

}  // namespace qseries
