#pragma once

#include "fujita/io.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fujita {

/// $FUJITA_FIXTURE_DIR if set, else the corpus shipped with the sources.
std::filesystem::path fixture_dir();

struct FixtureOutcome {
    std::string id;
    std::string kind;
    bool passed = false;
    /// Compact JSON of the expectation and of the matching part of the
    /// actual output (or the error message).
    std::string expected;
    std::string got;
};

struct FixtureRun {
    std::vector<FixtureOutcome> outcomes;
    int failures() const;
};

/// Output JSON of the command a manifest entry describes ("ab", "toric" or
/// "classify"), with file names resolved against dir.
Json run_fixture_command(const Json& entry, const std::filesystem::path& dir);

/// True when every field of `expected` appears in `got` with a matching
/// value. Arrays match element by element and must have equal length.
bool json_subset(const Json& expected, const Json& got);

/// Runs the manifest in dir. An empty filter selects everything; otherwise
/// an entry runs when its id or one of its tags contains the filter.
FixtureRun run_fixtures(const std::filesystem::path& dir, std::string_view filter = {});

std::string format_fixture_table(const FixtureRun& run);

} // namespace fujita
