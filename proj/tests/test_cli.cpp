/* Copyright 2026 The dtower Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "dtower/dtower.hpp"
#include "dtower/serialize.hpp"

using namespace dtower;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(DTOWER_CLI) + " " + args + " 2>&1";
    CliRun r{-1, {}};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / ("dtower_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST(Serialize, ParseElementLiterals) {
    const FiniteField F = make_field(3, 2);
    const std::vector<std::int64_t> c12{1, 2};
    EXPECT_EQ(parse_element("1+2*g", F), F.from_coeffs(c12));
    EXPECT_EQ(parse_element("1+2i", F), F.from_coeffs(c12));
    EXPECT_EQ(parse_element(" 1 - g ", F), F.from_coeffs(c12));
    EXPECT_EQ(parse_element("g^2", F), -F.one());
    EXPECT_EQ(parse_element("2", F), F.from_int(2));
    EXPECT_EQ(parse_element("i", F), F.gen());
    EXPECT_THROW(parse_element("", F), Error);
    EXPECT_THROW(parse_element("1+2*g+i", F), Error);
    EXPECT_THROW(parse_element("1/2", F), Error);
    for (const auto& a : F.elements()) EXPECT_EQ(parse_element(a.str(), F), a);
}

TEST(Serialize, ElementJsonRoundTrip) {
    const FiniteField F = make_field(3, 4);
    for (std::uint32_t c : {0u, 5u, 80u}) EXPECT_EQ(element_from_json(to_json(F.element(c)), F), F.element(c));
    EXPECT_EQ(to_json(make_field(3, 2))["modulus"], json::parse("[1,0,1]"));
}

TEST(Serialize, GenusCsv) {
    const std::string csv = genus_csv(genus_table(3, 1, 3));
    EXPECT_EQ(csv,
              "k,epsilon,kappa,genus,ss_count,ratio_num,ratio_den\n"
              "1,4,2,0,16,,\n"
              "2,12,4,2,48,24,1\n"
              "3,36,6,12,144,12,1\n");
}

TEST(Serialize, AtomicWriteReplacesWholeFile) {
    const fs::path d = scratch_dir();
    const fs::path f = d / "out.json";
    atomic_write(f.string(), "first version, longer\n");
    atomic_write(f.string(), "second\n");
    EXPECT_EQ(slurp(f), "second\n");
    EXPECT_FALSE(fs::exists(d / "out.json.tmp"));
    fs::remove_all(d);
}

TEST(Serialize, ParamsDigestStable) {
    const FiniteField F9 = make_field(3, 2);
    const TowerParams a = build_params(3, F9.gen(), parse_element("1+2i", F9));
    const TowerParams b = build_params(3, F9.gen(), parse_element("1+2*g", F9));
    const TowerParams c = build_params(3, F9.gen(), parse_element("1+2*g", F9), 1);
    EXPECT_EQ(params_digest(a), params_digest(b));
    EXPECT_NE(params_digest(a), params_digest(c));
    EXPECT_EQ(params_digest(a).size(), 16u);
}

TEST(Cli, GenusCsv) {
    const CliRun r = run_cli("genus --q 3 --k 1..3 --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n1,4,2,0,16,,\n2,12,4,2,48,24,1\n3,36,6,12,144,12,1\n"), std::string::npos) << r.out;
}

TEST(Cli, EnumerateCountsAndDeterminism) {
    const fs::path d = scratch_dir();
    const CliRun a = run_cli("enumerate --q 3 --eta 1+2i --k 5 --format json --output " + (d / "a.json").string());
    ASSERT_EQ(a.code, 0) << a.out;
    const json j = json::parse(slurp(d / "a.json"));
    EXPECT_EQ(j["counts"], json::parse("[16,48,144,432,1296]"));
    EXPECT_EQ(j["seed"], 7);
    EXPECT_EQ(j["levels"][4]["points"].size(), 1296u);
    const CliRun b = run_cli("enumerate --q 3 --eta 1+2i --k 5 --format json --output " + (d / "b.json").string());
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(slurp(d / "a.json"), slurp(d / "b.json"));
    fs::remove_all(d);
}

TEST(Cli, SupersingularJson) {
    const CliRun r = run_cli("supersingular --q 3 --eta 1+2i");
    ASSERT_EQ(r.code, 0) << r.out;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["direct_in_Fq2"], json::parse(R"(["1","1+g","2*g","2+2*g"])"));
    EXPECT_TRUE(j["display_agrees"].get<bool>());
}

TEST(Cli, IharaTrend) {
    const CliRun r = run_cli("ihara --q 3 --k 30");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["above_bound"].get<bool>());
    EXPECT_TRUE(j["strictly_decreasing"].get<bool>());
}

TEST(Cli, ConfigFile) {
    const fs::path d = scratch_dir();
    std::ofstream(d / "ok.json") << R"({"p": 3, "q_exponent": 1, "eta": "1+2*g", "k": 2, "format": "csv"})";
    const CliRun ok = run_cli("enumerate --config " + (d / "ok.json").string());
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_NE(ok.out.find("2,48,48,0"), std::string::npos) << ok.out;
    std::ofstream(d / "bad.json") << R"({"q": 3, "eta": "1+2*g", "seed": "x"})";
    const CliRun bad = run_cli("enumerate --config " + (d / "bad.json").string());
    EXPECT_NE(bad.code, 0);
    EXPECT_NE(bad.out.find("'seed'"), std::string::npos) << bad.out;
    std::ofstream(d / "unk.json") << R"({"q": 3, "etta": "1+2*g"})";
    const CliRun unk = run_cli("enumerate --config " + (d / "unk.json").string());
    EXPECT_NE(unk.code, 0);
    EXPECT_NE(unk.out.find("'etta'"), std::string::npos) << unk.out;
    fs::remove_all(d);
}

TEST(Cli, BadInputsFailWithMessage) {
    const CliRun noeta = run_cli("enumerate --q 3 --k 2");
    EXPECT_NE(noeta.code, 0);
    EXPECT_NE(noeta.out.find("'eta'"), std::string::npos);
    const CliRun badq = run_cli("genus --q 6");
    EXPECT_NE(badq.code, 0);
    const CliRun badeta = run_cli("supersingular --q 3 --eta 2");
    EXPECT_NE(badeta.code, 0);
    const CliRun q2 = run_cli("supersingular --q 2 --eta g");
    EXPECT_NE(q2.code, 0);
    EXPECT_NE(q2.out.find("eta"), std::string::npos);
}
