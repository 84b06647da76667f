#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fracl1/config.hpp"

using namespace fracl1;

TEST_CASE("TOML study config") {
    const char* text = R"(
# Test B study
[study]
problem = "test-b"   # built-in id
scheme = "imex2"
alpha = 0.4
sigma = 0.4
M = 128
levels = 5
N = 2_048
seed = 42
)";
    const StudyConfig c = parse_study_config(text, ConfigFormat::Toml);
    CHECK(c.problem == "test-b");
    CHECK(c.scheme == SchemeKind::IMEX2Newton);
    CHECK(c.alpha == 0.4);
    CHECK(c.M == 128);
    CHECK(c.levels == 5);
    CHECK(c.N == 2048);
    CHECK(c.seed == 42);
    CHECK(c.grading() == doctest::Approx(4.0));
}

TEST_CASE("flat TOML without a table") {
    const StudyConfig c = parse_study_config("problem = \"test-a\"\nr = 2.0\nalpha = 4e-1\n", ConfigFormat::Toml);
    CHECK(c.r == 2.0);
    CHECK(c.alpha == 0.4);
}

TEST_CASE("JSON fallback") {
    const StudyConfig c =
        parse_study_config(R"({"problem": "fisher-kolmogorov", "alpha": 0.3, "sigma": 0.3, "N": 4096})", ConfigFormat::Json);
    CHECK(c.problem == "fisher-kolmogorov");
    CHECK(c.N == 4096);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_study_config("alpha = \n", ConfigFormat::Toml), std::invalid_argument);
    CHECK_THROWS_AS(parse_study_config("beta = 1\n", ConfigFormat::Toml), std::invalid_argument);
    CHECK_THROWS_AS(parse_study_config("alpha = 0.3\nalpha = 0.4\n", ConfigFormat::Toml), std::invalid_argument);
    CHECK_THROWS_AS(parse_study_config("alpha = \"x\"\n", ConfigFormat::Toml), std::invalid_argument);
    CHECK_THROWS_AS(parse_study_config("alpha = 1.5\n", ConfigFormat::Toml), std::invalid_argument);
    CHECK_THROWS_AS(parse_study_config("{", ConfigFormat::Json), std::invalid_argument);
}

TEST_CASE("files pick the format by extension or content") {
    const auto dir = std::filesystem::temp_directory_path() / "fracl1_config_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "a.toml") << "M = 64\n";
        std::ofstream(dir / "b.json") << R"({"M": 32})";
        std::ofstream(dir / "c.cfg") << R"({"M": 16})";
    }
    CHECK(load_study_config((dir / "a.toml").string()).M == 64);
    CHECK(load_study_config((dir / "b.json").string()).M == 32);
    CHECK(load_study_config((dir / "c.cfg").string()).M == 16);
    CHECK_THROWS_AS(load_study_config((dir / "missing.toml").string()), std::invalid_argument);
    std::filesystem::remove_all(dir);
}
