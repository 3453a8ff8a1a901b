#include "fujita/fixtures.hpp"

#include "fujita/errors.hpp"

#include <cstdlib>
#include <sstream>

#ifndef FUJITA_DEFAULT_FIXTURE_DIR
#define FUJITA_DEFAULT_FIXTURE_DIR "data/fixtures"
#endif

namespace fujita {

namespace {

// The part of `got` that `expected` talks about, for the report table.
Json project(const Json& expected, const Json& got)
{
    if (expected.is_object() && got.is_object()) {
        Json out = Json::object();
        for (auto it = expected.begin(); it != expected.end(); ++it)
            out[it.key()] = got.contains(it.key()) ? project(it.value(), got[it.key()]) : Json();
        return out;
    }
    if (expected.is_array() && got.is_array() && expected.size() == got.size()) {
        Json out = Json::array();
        for (std::size_t i = 0; i < got.size(); ++i)
            out.push_back(project(expected[i], got[i]));
        return out;
    }
    return got;
}

std::string text_field(const Json& entry, const char* key)
{
    if (!entry.contains(key) || !entry[key].is_string())
        throw InputError(std::string("fixture needs a string field \"") + key + "\"");
    return entry[key].get<std::string>();
}

bool selected(const Json& entry, std::string_view filter)
{
    if (filter.empty())
        return true;
    if (entry.value("id", std::string()).find(filter) != std::string::npos)
        return true;
    if (entry.contains("tags"))
        for (const Json& t : entry["tags"])
            if (t.is_string() && t.get<std::string>().find(filter) != std::string::npos)
                return true;
    return false;
}

} // namespace

std::filesystem::path fixture_dir()
{
    if (const char* env = std::getenv("FUJITA_FIXTURE_DIR"); env && *env)
        return env;
    return FUJITA_DEFAULT_FIXTURE_DIR;
}

int FixtureRun::failures() const
{
    int n = 0;
    for (const auto& o : outcomes)
        n += !o.passed;
    return n;
}

Json run_fixture_command(const Json& entry, const std::filesystem::path& dir)
{
    const std::string kind = text_field(entry, "kind");
    const std::string L = text_field(entry, "L");
    if (kind == "ab") {
        const PolarizedVariety X = load_variety(dir / text_field(entry, "variety"));
        return ab_json(X, resolve_class_flag(X, L));
    }
    if (kind == "toric") {
        const Fan f = load_fan(dir / text_field(entry, "fan"));
        return toric_json(f, resolve_divisor_flag(f, L));
    }
    if (kind == "classify") {
        const PolarizedVariety X = load_variety(dir / text_field(entry, "variety"));
        const MapBundle maps = load_maps(dir / text_field(entry, "maps"));
        const VecQ cls = resolve_class_flag(X, L);
        return report_json(ledger(for_polarization(X, cls), cls, maps.records, maps.closed_components));
    }
    throw InputError("unknown fixture kind \"" + kind + "\"");
}

bool json_subset(const Json& expected, const Json& got)
{
    if (expected.is_object()) {
        if (!got.is_object())
            return false;
        for (auto it = expected.begin(); it != expected.end(); ++it)
            if (!got.contains(it.key()) || !json_subset(it.value(), got[it.key()]))
                return false;
        return true;
    }
    if (expected.is_array()) {
        if (!got.is_array() || got.size() != expected.size())
            return false;
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (!json_subset(expected[i], got[i]))
                return false;
        return true;
    }
    return expected == got;
}

FixtureRun run_fixtures(const std::filesystem::path& dir, std::string_view filter)
{
    const Json manifest = read_json_file(dir / "manifest.json");
    if (!manifest.contains("fixtures") || !manifest["fixtures"].is_array())
        throw InputError("manifest.json needs a \"fixtures\" list");
    FixtureRun run;
    for (const Json& entry : manifest["fixtures"]) {
        if (!selected(entry, filter))
            continue;
        FixtureOutcome o;
        o.id = entry.value("id", std::string("?"));
        o.kind = entry.value("kind", std::string("?"));
        const Json expected = entry.value("expect", Json::object());
        o.expected = expected.dump();
        try {
            const Json got = run_fixture_command(entry, dir);
            o.passed = json_subset(expected, got);
            o.got = project(expected, got).dump();
        } catch (const std::exception& e) {
            o.got = std::string("error: ") + e.what();
        }
        run.outcomes.push_back(std::move(o));
    }
    return run;
}

std::string format_fixture_table(const FixtureRun& run)
{
    std::ostringstream out;
    for (const FixtureOutcome& o : run.outcomes) {
        out << (o.passed ? "PASS  " : "FAIL  ") << o.id << " [" << o.kind << "]\n";
        out << "      expected: " << o.expected << "\n";
        out << "      got:      " << o.got << "\n";
    }
    out << run.outcomes.size() - static_cast<std::size_t>(run.failures()) << "/" << run.outcomes.size()
        << " fixtures passed\n";
    return out.str();
}

} // namespace fujita
