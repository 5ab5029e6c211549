// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

namespace {

struct RunResult {
    int status;
    std::string out;
};

// Runs the installed binary through the shell, capturing stdout only.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QSERIES_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int raw = pclose(pipe);
    REQUIRE(WIFEXITED(raw));
    return {WEXITSTATUS(raw), out};
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

}  // namespace

TEST_CASE("the command line evaluates shifted factorials exactly") {
    const RunResult r = run_cli("eval poch --a 1/2 --k 2 --q 1/2");
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("value").get<std::string>() == "3/8");
    CHECK_FALSE(doc.contains("err"));

    const RunResult pole = run_cli("eval poch --a 1/2 --k -1 --q 1/2");
    CHECK(pole.status == 0);
    CHECK(nlohmann::json::parse(pole.out).at("value").get<std::string>() == "pole");
}

TEST_CASE("certified evaluations carry an error field") {
    const RunResult r = run_cli("eval poch --a 0 --k inf --q 1/2");
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const std::string value = doc.at("value").get<std::string>();
    CHECK(value.substr(0, 2) == "1.");
    CHECK(doc.at("err").get<std::string>() == "0.00e+00");

    const RunResult bi = run_cli("eval series --kind bi --upper 2 --lower 1/4 --arg 1/2 --q 1/10");
    CHECK(bi.status == 0);
    CHECK(nlohmann::json::parse(bi.out).contains("err"));

    const RunResult term =
        run_cli("eval series --kind uni --upper 4,3 --lower 5 --arg 1/2 --q 1/2");
    CHECK(term.status == 0);
    CHECK(nlohmann::json::parse(term.out).at("value").get<std::string>() == "-1/6");
}

TEST_CASE("verification reports carry the contract keys in order") {
    const RunResult r = run_cli("verify I3 --params a=2,b=3,c=7 --n 2 --q 1/2");
    CHECK(r.status == 0);
    const auto doc = nlohmann::ordered_json::parse(r.out);
    const std::vector<std::string> expected = {"id",       "params", "mode",
                                               "lhs",      "rhs",    "residual",
                                               "budget",   "verdict"};
    std::vector<std::string> keys;
    for (const auto& item : doc.items()) keys.push_back(item.key());
    CHECK(keys == expected);
    CHECK(doc.at("id") == "I3_qPfaffSaalschutz");
    CHECK(doc.at("mode") == "exact");
    CHECK(doc.at("verdict") == "Pass");
    CHECK(doc.at("residual") == "0");
    CHECK(doc.at("params").at("n") == "2");
    CHECK(doc.at("params").at("q") == "1/2");

    const RunResult triv = run_cli("verify I4 --params z=1/3 --n 0 --q 1/2");
    CHECK(triv.status == 0);
    CHECK(nlohmann::json::parse(triv.out).at("verdict") == "Pass");
}

TEST_CASE("exit codes separate pass, usage, and domain errors") {
    CHECK(run_cli("verify I1 --params a=2,b=1/4,z=1/3 --q 1/10").status == 0);

    CHECK(run_cli("verify I99 --params a=2 --q 1/2").status == 2);
    CHECK(run_cli("verify I3 --params a=2,b=3 --n 2 --q 1/2").status == 2);
    CHECK(run_cli("verify I3 --params a=2x,b=3,c=7 --n 2 --q 1/2").status == 2);
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("eval series --kind sideways --upper 2 --arg 1/2").status == 2);

    // An instance outside its convergence region reports Invalid.
    const RunResult inv = run_cli("verify I1 --params a=2,b=1/4,z=3/2 --q 1/10");
    CHECK(inv.status == 3);
    CHECK(nlohmann::json::parse(inv.out).at("verdict") == "Invalid");
    CHECK(run_cli("eval series --kind bi --upper 2 --lower 1/4 --arg 3 --q 1/10").status == 3);
    CHECK(run_cli("eval vwp --a 3 --tail 2,5,7,2 --arg 1/2 --q 1/10").status == 3);
    CHECK(run_cli("replay 6psi6 --params a=3,c=1/2,d=1/2,e=1/2,f=1/2 --q 1/10").status == 3);
}

TEST_CASE("sweeps stream one report per instance with a trailing summary") {
    const RunResult r = run_cli("sweep I3 --count 3 --seed 1 --q 1/2");
    CHECK(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    for (int i = 0; i < 3; ++i) {
        const auto doc = nlohmann::json::parse(lines[i]);
        CHECK(doc.at("id") == "I3_qPfaffSaalschutz");
        CHECK(doc.at("verdict") == "Pass");
        CHECK(doc.at("mode") == "exact");
    }
    const auto summary = nlohmann::json::parse(lines[3]);
    CHECK(summary.at("count") == 3);
    CHECK(summary.at("pass") == 3);
    CHECK(summary.at("fail") == 0);
    CHECK(summary.at("invalid") == 0);

    const RunResult empty = run_cli("sweep I2 --count 0");
    CHECK(empty.status == 0);
    const auto empty_lines = lines_of(empty.out);
    REQUIRE(empty_lines.size() == 1);
    CHECK(nlohmann::json::parse(empty_lines[0]).at("count") == 0);
}

TEST_CASE("sweeps are byte deterministic for a fixed seed") {
    const std::string cmd = "sweep I1 --count 2 --seed 9 --q 1/10";
    const RunResult first = run_cli(cmd);
    const RunResult second = run_cli(cmd);
    CHECK(first.status == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
}

TEST_CASE("tab separated output flattens the report fields") {
    const RunResult r = run_cli("verify I3 --params a=2,b=3,c=7 --n 2 --q 1/2 --format tsv");
    CHECK(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "id\tparams\tmode\tlhs\trhs\tresidual\tbudget\tverdict\tdetail");
    CHECK(lines[1].find("I3_qPfaffSaalschutz\ta=2;b=3;c=7;n=2;q=1/2\texact") == 0);
    CHECK(lines[1].find("\tPass\t") != std::string::npos);

    const RunResult poch = run_cli("eval poch --a 1/2 --k 2 --q 1/2 --format tsv");
    CHECK(poch.status == 0);
    CHECK(poch.out == "3/8\n");
}

TEST_CASE("replay traces serialize their steps") {
    const RunResult r = run_cli("replay 1psi1 --params a=2,b=1/4,z=1/2 --q 1/10");
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("target") == "I1_1psi1");
    CHECK(doc.at("verdict") == "Pass");
    REQUIRE(doc.at("steps").size() == 3);
    for (const auto& step : doc.at("steps")) {
        CHECK(step.contains("kind"));
        CHECK(step.contains("description"));
        CHECK(step.contains("residual"));
        CHECK(step.at("pass") == true);
    }
    CHECK(doc.at("steps")[0].at("exact") == true);
    CHECK(doc.at("steps")[2].at("exact") == false);

    const RunResult full = run_cli("replay 6psi6 --params a=3,c=2,d=5,e=7,f=2 --q 1/10");
    CHECK(full.status == 0);
    const auto trace = nlohmann::json::parse(full.out);
    REQUIRE(trace.at("steps").size() == 5);
    CHECK(trace.at("verdict") == "Pass");
    CHECK(trace.at("steps")[4].at("kind") == "Specialize");

    const RunResult tsv =
        run_cli("replay 1psi1 --params a=2,b=1/4,z=1/2 --q 1/10 --ns 10 --format tsv");
    CHECK(tsv.status == 0);
    const auto tsv_lines = lines_of(tsv.out);
    REQUIRE(tsv_lines.size() == 4);
    CHECK(tsv_lines[0] ==
          "target\tstep\tkind\tdescription\tresidual\texact\tpass\tverdict");
}
