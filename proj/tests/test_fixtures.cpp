#include "fujita/fixtures.hpp"

#include <doctest.h>

#include <fstream>

using namespace fujita;

namespace {

// A private copy of the corpus under the system temp dir.
std::filesystem::path copy_corpus(const std::string& tag)
{
    const auto dir = std::filesystem::temp_directory_path() / ("fujita-fixtures-" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::copy(fixture_dir(), dir, std::filesystem::copy_options::recursive);
    return dir;
}

void write(const std::filesystem::path& p, const Json& j)
{
    std::ofstream(p) << dump(j);
}

} // namespace

TEST_CASE("the whole corpus passes")
{
    const FixtureRun run = run_fixtures(fixture_dir(), "");
    CHECK(run.outcomes.size() >= 30);
    for (const FixtureOutcome& o : run.outcomes) {
        CAPTURE(o.id);
        CAPTURE(o.got);
        CHECK(o.passed);
    }
    CHECK(run.failures() == 0);
    const std::string table = format_fixture_table(run);
    CHECK(table.find("FAIL") == std::string::npos);
    CHECK(table.ends_with(std::to_string(run.outcomes.size()) + "/" + std::to_string(run.outcomes.size()) +
                          " fixtures passed\n"));
}

TEST_CASE("filter selects by id or tag")
{
    const FixtureRun toric = run_fixtures(fixture_dir(), "toric");
    REQUIRE_FALSE(toric.outcomes.empty());
    for (const FixtureOutcome& o : toric.outcomes)
        CHECK(o.kind == "toric");
    CHECK(toric.outcomes.size() < run_fixtures(fixture_dir(), "").outcomes.size());

    const FixtureRun one = run_fixtures(fixture_dir(), "biprojective-thin-set");
    REQUIRE(one.outcomes.size() == 1);
    CHECK(one.outcomes[0].passed);

    CHECK(run_fixtures(fixture_dir(), "no-such-fixture").outcomes.empty());
}

TEST_CASE("a corrupted expectation fails")
{
    const auto dir = copy_corpus("expect");
    Json manifest = read_json_file(dir / "manifest.json");
    for (Json& e : manifest["fixtures"])
        if (e["id"] == "projective-space-2-hyperplane")
            e["expect"]["a"] = "4";
    write(dir / "manifest.json", manifest);
    const FixtureRun run = run_fixtures(dir, "");
    CHECK(run.failures() == 1);
    CHECK(format_fixture_table(run).find("FAIL  projective-space-2-hyperplane") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("a corrupted data file fails every fixture that reads it")
{
    const auto dir = copy_corpus("data");
    Json p2 = read_json_file(dir / "p2.json");
    p2["K"] = Json::array({"-4"});
    write(dir / "p2.json", p2);
    const FixtureRun run = run_fixtures(dir, "");
    CHECK(run.failures() >= 2);
    for (const FixtureOutcome& o : run.outcomes)
        if (o.id == "projective-space-2-hyperplane")
            CHECK(o.got.find("\"3\"") == std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("broken entries are failures, not crashes")
{
    const auto dir = copy_corpus("broken");
    Json manifest = read_json_file(dir / "manifest.json");
    manifest["fixtures"][0]["variety"] = "missing.json";
    manifest["fixtures"][1]["kind"] = "mystery";
    write(dir / "manifest.json", manifest);
    const FixtureRun run = run_fixtures(dir, "");
    CHECK(run.failures() == 2);
    CHECK(run.outcomes[0].got.starts_with("error: "));
    std::filesystem::remove_all(dir);
}

TEST_CASE("subset matching")
{
    const Json got = Json::parse(R"({"a": "1", "b": 2, "list": [{"x": 1, "y": 2}]})");
    CHECK(json_subset(Json::parse(R"({"a": "1"})"), got));
    CHECK(json_subset(Json::parse(R"({"list": [{"y": 2}]})"), got));
    CHECK_FALSE(json_subset(Json::parse(R"({"list": []})"), got));
    CHECK_FALSE(json_subset(Json::parse(R"({"a": 1})"), got));
    CHECK_FALSE(json_subset(Json::parse(R"({"c": null})"), got));
}
