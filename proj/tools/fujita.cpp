// fujita: command-line front end.
//
//   fujita ab VARIETY [--L 1,0] [--json]
//   fujita toric FAN [--L 1,0,0] [--json]
//   fujita classify VARIETY MAPS [--L 3,2] [--json]
//   fujita fixtures [--filter toric] [--json]
//
// --L defaults to "anticanonical". Exit codes: 0 success, 1 fixture
// failure, 2 input error.

#include "fujita/exceptional.hpp"
#include "fujita/fixtures.hpp"
#include "fujita/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace fujita;

namespace {

constexpr int kInputError = 2;

void emit(const Json& result, bool json, const std::string& text)
{
    if (json)
        std::cout << dump(result);
    else
        std::cout << text;
}

int run_ab(const std::string& path, const std::string& L, bool json)
{
    const PolarizedVariety X = load_variety(path);
    const Json result = ab_json(X, resolve_class_flag(X, L));
    emit(result, json, json ? "" : ab_text(result));
    return 0;
}

int run_toric(const std::string& path, const std::string& L, bool json)
{
    const Fan f = load_fan(path);
    const Json result = toric_json(f, resolve_divisor_flag(f, L));
    if (!json)
        for (const Json& b : result.value("boundary", Json::array()))
            if (b.contains("warning"))
                std::cerr << "warning: " << b["warning"].get<std::string>() << "\n";
    emit(result, json, json ? "" : toric_text(result));
    return 0;
}

int run_classify(const std::string& variety, const std::string& maps, const std::string& L, bool json)
{
    const PolarizedVariety X = load_variety(variety);
    const MapBundle bundle = load_maps(maps);
    const VecQ cls = resolve_class_flag(X, L);
    const Report report = ledger(for_polarization(X, cls), cls, bundle.records, bundle.closed_components);
    emit(report_json(report), json, json ? "" : format_report(report));
    return 0;
}

int run_fixture_suite(const std::string& filter, bool json)
{
    const FixtureRun run = run_fixtures(fixture_dir(), filter);
    if (json) {
        Json out;
        out["schema_version"] = kSchemaVersion;
        Json rows = Json::array();
        for (const FixtureOutcome& o : run.outcomes)
            rows.push_back({{"id", o.id}, {"kind", o.kind}, {"passed", o.passed}, {"expected", o.expected},
                            {"got", o.got}});
        out["fixtures"] = rows;
        out["failures"] = run.failures();
        std::cout << dump(out);
    } else {
        std::cout << format_fixture_table(run);
    }
    return run.failures() == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fujita invariants, b-invariants and exceptional-set strata from cone data"};
    app.require_subcommand(1);
    bool json = false;
    std::string L = "anticanonical";
    std::string variety, fan, maps, filter;

    auto* ab = app.add_subcommand("ab", "a- and b-invariants of a variety file");
    ab->add_option("variety", variety, "variety JSON file")->required();
    ab->add_option("--L", L, "class of L: comma-separated rationals or 'anticanonical'");
    ab->add_flag("--json", json, "emit JSON");

    auto* toric = app.add_subcommand("toric", "adjoint analysis, degree and boundary strata of a fan");
    toric->add_option("fan", fan, "fan JSON file")->required();
    toric->add_option("--L", L, "coefficients per ray or 'anticanonical'");
    toric->add_flag("--json", json, "emit JSON");

    auto* classify = app.add_subcommand("classify", "ledger of thin-map records");
    classify->add_option("variety", variety, "variety JSON file")->required();
    classify->add_option("maps", maps, "map JSON file")->required();
    classify->add_option("--L", L, "class of L: comma-separated rationals or 'anticanonical'");
    classify->add_flag("--json", json, "emit JSON");

    auto* fixtures = app.add_subcommand("fixtures", "run the fixture corpus");
    fixtures->add_option("--filter", filter, "run only fixtures whose id or tag contains this");
    fixtures->add_flag("--json", json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*ab)
            return run_ab(variety, L, json);
        if (*toric)
            return run_toric(fan, L, json);
        if (*classify)
            return run_classify(variety, maps, L, json);
        return run_fixture_suite(filter, json);
    } catch (const std::exception& e) {
        std::cerr << dump(error_json(e));
        return kInputError;
    } catch (...) {
        std::cerr << dump(Json{{"error", "unknown"}, {"message", "unexpected failure"}});
        return kInputError;
    }
}
