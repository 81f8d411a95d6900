// Copyright 2026 The qdisturb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdisturb/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using qdisturb::cli::run;

namespace {

struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() /
               ("qdisturb_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    static int& counter() {
        static int value = 0;
        return value;
    }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

constexpr const char* kBiasedDoc =
    R"({"dimension": 2, "outcomes": [{"label": "m0", "p_given_a": [0.6, 0.4]}]})";
constexpr const char* kProjectiveDoc =
    R"({"dimension": 2, "outcomes": [
        {"label": "m0", "p_given_a": [1.0, 0.0]},
        {"label": "m1", "p_given_a": [0.0, 1.0]}]})";
constexpr const char* kIdentityDoc =
    R"({"dimension": 2, "outcomes": [{"label": "id", "p_given_a": [1.0, 1.0]}]})";

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("expand emits the spectrum and distribution") {
    TempDir dir;
    write_file(dir.file("in.json"), kBiasedDoc);
    CHECK(run({"expand", "-i", dir.file("in.json"), "-o", dir.file("out.json")}) == 0);

    const auto doc = json::parse(read_file(dir.file("out.json")));
    CHECK(doc["dimension"] == 2);
    CHECK(doc["outcomes"][0]["coefficients"][0]["re"].get<double>() ==
          doctest::Approx(0.70352610063757971).epsilon(1e-12));
    CHECK(doc["outcomes"][0]["coefficients"][1]["re"].get<double>() ==
          doctest::Approx(0.07107056860390376).epsilon(1e-12));
    CHECK(doc["outcomes"][0]["disturbance_distribution"][0].get<double>() ==
          doctest::Approx(0.98989794855663558).epsilon(1e-9));
}

TEST_CASE("expand of a projector spreads disturbance evenly") {
    TempDir dir;
    write_file(dir.file("in.json"),
               R"({"dimension": 2, "outcomes": [{"label": "m0", "p_given_a": [1.0, 0.0]}]})");
    CHECK(run({"expand", "-i", dir.file("in.json"), "-o", dir.file("out.json")}) == 0);
    const auto doc = json::parse(read_file(dir.file("out.json")));
    CHECK(doc["outcomes"][0]["disturbance_distribution"][0].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(doc["outcomes"][0]["disturbance_distribution"][1].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("malformed or invalid inputs exit with status 2") {
    TempDir dir;
    write_file(dir.file("bad.json"), "{ not json");
    CHECK(run({"expand", "-i", dir.file("bad.json")}) == 2);

    write_file(dir.file("invalid.json"),
               R"({"dimension": 2, "outcomes": [{"label": "m", "p_given_a": [1.5, 0.0]}]})");
    CHECK(run({"expand", "-i", dir.file("invalid.json")}) == 2);

    CHECK(run({"expand", "-i", dir.file("missing.json")}) == 2);
    CHECK(run({"unknowncommand"}) == 2);
    CHECK(run({}) == 2);
}

TEST_CASE("bound reports tightness for the biased and uniform likelihoods") {
    TempDir dir;
    write_file(dir.file("in.json"), kBiasedDoc);
    CHECK(run({"bound", "-i", dir.file("in.json"), "-o", dir.file("out.json")}) == 0);
    auto doc = json::parse(read_file(dir.file("out.json")));
    CHECK(doc["outcomes"][0]["bound"].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(doc["outcomes"][0]["tight"] == true);

    // uniform likelihood: point-mass disturbance, bound 1/d
    write_file(dir.file("flat.json"),
               R"({"dimension": 2, "outcomes": [{"label": "m0", "p_given_a": [0.37, 0.37]}]})");
    CHECK(run({"bound", "-i", dir.file("flat.json"), "-o", dir.file("out.json")}) == 0);
    doc = json::parse(read_file(dir.file("out.json")));
    CHECK(doc["outcomes"][0]["bound"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(doc["outcomes"][0]["max_posterior"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(doc["outcomes"][0]["tight"] == true);
}

TEST_CASE("bound reports the non-tight worked instance") {
    TempDir dir;
    write_file(dir.file("in.json"),
               R"({"dimension": 3, "outcomes": [{"label": "m0", "p_given_a": [0.04, 1.0, 0.09]}]})");
    CHECK(run({"bound", "-i", dir.file("in.json"), "-o", dir.file("out.json")}) == 0);
    const auto doc = json::parse(read_file(dir.file("out.json")));
    CHECK(doc["outcomes"][0]["tight"] == false);
    CHECK(doc["outcomes"][0]["slack"].get<double>() ==
          doctest::Approx(0.0058899371841152346).epsilon(1e-6));
}

TEST_CASE("simulate is deterministic per seed and respects the identity channel") {
    TempDir dir;
    write_file(dir.file("id.json"), kIdentityDoc);
    CHECK(run({"simulate", "-i", dir.file("id.json"), "-o", dir.file("a.json"), "--shots",
               "5000", "--seed", "3"}) == 0);
    CHECK(run({"simulate", "-i", dir.file("id.json"), "-o", dir.file("b.json"), "--shots",
               "5000", "--seed", "3"}) == 0);
    CHECK(read_file(dir.file("a.json")) == read_file(dir.file("b.json")));

    const auto doc = json::parse(read_file(dir.file("a.json")));
    CHECK(doc["outcomes"][0]["shift_counts"][0] == 5000);
    CHECK(doc["outcomes"][0]["shift_counts"][1] == 0);

    // an incomplete model cannot be simulated
    write_file(dir.file("half.json"),
               R"({"dimension": 2, "outcomes": [{"label": "m0", "p_given_a": [0.6, 0.4]}]})");
    CHECK(run({"simulate", "-i", dir.file("half.json"), "-o", dir.file("c.json")}) == 2);
}

TEST_CASE("simulate then assess closes the loop") {
    TempDir dir;
    write_file(dir.file("model.json"), kProjectiveDoc);
    CHECK(run({"simulate", "-i", dir.file("model.json"), "-o", dir.file("counts.json"),
               "--shots", "200000", "--seed", "11"}) == 0);
    CHECK(run({"assess", "-i", dir.file("counts.json"), "-o", dir.file("report.json")}) == 0);

    const auto report = json::parse(read_file(dir.file("report.json")));
    for (const auto& outcome : report["outcomes"]) {
        CHECK(outcome["leak_bound"].get<double>() == doctest::Approx(1.0).epsilon(2e-2));
        CHECK(outcome["wilson_high_bound"].get<double>() >=
              outcome["leak_bound"].get<double>());
    }
    CHECK(report["aggregate_bound"].get<double>() == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(report["input_digest"].get<std::string>().substr(0, 8) == "fnv1a64:");
}

TEST_CASE("assess accepts CSV counts, honoring --dims") {
    TempDir dir;
    write_file(dir.file("counts.csv"), "label,k,count\nm0,0,98\nm0,1,2\n");
    CHECK(run({"assess", "-i", dir.file("counts.csv"), "-o", dir.file("report.json")}) == 0);
    const auto report = json::parse(read_file(dir.file("report.json")));
    CHECK(report["dimension"] == 2);
    CHECK(report["outcomes"][0]["leak_bound"].get<double>() ==
          doctest::Approx(0.64).epsilon(1e-12));

    CHECK(run({"assess", "-i", dir.file("counts.csv"), "-o", dir.file("r3.json"), "--dims",
               "3"}) == 0);
    CHECK(json::parse(read_file(dir.file("r3.json")))["dimension"] == 3);

    // a --dims override conflicting with a JSON document is an error
    write_file(dir.file("counts.json"),
               R"({"dimension": 2, "outcomes": [{"label": "m0", "shift_counts": [9, 1]}]})");
    CHECK(run({"assess", "-i", dir.file("counts.json"), "--dims", "3"}) == 2);

    write_file(dir.file("empty.csv"), "");
    CHECK(run({"assess", "-i", dir.file("empty.csv")}) == 2);
}

TEST_CASE("verify passes with default options") {
    TempDir dir;
    // defaults: d = 2..8, 1000 instances each, fixed seed
    CHECK(run({"verify", "-o", dir.file("default.json")}) == 0);
    const auto doc = json::parse(read_file(dir.file("default.json")));
    CHECK(doc["passed"] == true);
    CHECK(doc["dims"].size() == 7);
    CHECK(doc["count_per_dim"] == 1000);
    CHECK(doc["generator"].get<std::string>().find("mt19937_64") != std::string::npos);
}

TEST_CASE("verify passes at the physics tolerance and fails at an absurd one") {
    TempDir dir;
    CHECK(run({"verify", "--dims", "2,3", "--count", "25", "--seed", "77", "-o",
               dir.file("ok.json")}) == 0);
    const auto ok = json::parse(read_file(dir.file("ok.json")));
    CHECK(ok["passed"] == true);
    CHECK(ok["failures"].empty());
    CHECK(ok["checks_run"].get<long>() == 2 * 25 * 8);
    CHECK(ok["min_bound_slack"].get<double>() >= -1e-9);

    // identical seeds give identical bytes
    CHECK(run({"verify", "--dims", "2,3", "--count", "25", "--seed", "77", "-o",
               dir.file("ok2.json")}) == 0);
    CHECK(read_file(dir.file("ok.json")) == read_file(dir.file("ok2.json")));

    CHECK(run({"verify", "--dims", "2", "--count", "5", "--tolerance", "1e-18", "-o",
               dir.file("bad.json")}) == 1);
    const auto bad = json::parse(read_file(dir.file("bad.json")));
    CHECK(bad["passed"] == false);
    CHECK_FALSE(bad["failures"].empty());
}

TEST_CASE("csv and table formats render for every subcommand") {
    TempDir dir;
    write_file(dir.file("in.json"), kProjectiveDoc);
    CHECK(run({"expand", "-i", dir.file("in.json"), "-o", dir.file("e.csv"), "--format",
               "csv"}) == 0);
    CHECK(read_file(dir.file("e.csv")).rfind("label,k,", 0) == 0);

    CHECK(run({"bound", "-i", dir.file("in.json"), "-o", dir.file("b.table"), "--format",
               "table"}) == 0);
    CHECK(read_file(dir.file("b.table")).find("max_posterior") != std::string::npos);

    CHECK(run({"simulate", "-i", dir.file("in.json"), "-o", dir.file("s.csv"), "--format",
               "csv", "--shots", "100"}) == 0);
    CHECK(run({"assess", "-i", dir.file("s.csv"), "-o", dir.file("a.table"), "--format",
               "table"}) == 0);
    CHECK(read_file(dir.file("a.table")).find("aggregate bound") != std::string::npos);

    CHECK(run({"verify", "--dims", "2", "--count", "2", "--format", "table", "-o",
               dir.file("v.txt")}) == 0);
    CHECK(read_file(dir.file("v.txt")).find("all checks passed") != std::string::npos);
}

TEST_SUITE_END();
