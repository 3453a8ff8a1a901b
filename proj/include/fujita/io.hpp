#pragma once

#include "fujita/exceptional.hpp"
#include "fujita/invariants.hpp"
#include "fujita/toric.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fujita {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Rationals are JSON strings "p/q" or "n"; plain JSON integers are also
/// accepted on input. Floats are rejected.
Rat rat_from_json(const Json& j, std::string_view what);
Json rat_to_json(const Rat& x);
VecQ vec_from_json(const Json& j, std::string_view what);
Json vec_to_json(const VecQ& v);

/// Variety file. eff is given by exactly one of eff_generators or
/// eff_inequalities; eff_lineality optionally adds a linear part to the
/// generators. The result is validated.
PolarizedVariety variety_from_json(const Json& j);
/// Writes eff (and nef) as canonical generators.
Json variety_to_json(const PolarizedVariety& X);

/// Fan file; the result is validated.
Fan fan_from_json(const Json& j);
Json fan_to_json(const Fan& f);

struct MapBundle {
    std::vector<std::string> closed_components;
    std::vector<ThinMapRecord> records;
    /// Parallel to records: the referenced source file, or empty when the
    /// source is inline.
    std::vector<std::string> source_files;
};

/// source_file references resolve relative to base_dir.
MapBundle maps_from_json(const Json& j, const std::filesystem::path& base_dir);
Json maps_to_json(const MapBundle& m);

/// Two-space indented, keys sorted, trailing newline.
std::string dump(const Json& j);

Json read_json_file(const std::filesystem::path& path);
PolarizedVariety load_variety(const std::filesystem::path& path);
Fan load_fan(const std::filesystem::path& path);
MapBundle load_maps(const std::filesystem::path& path);

/// Comma-separated rationals, e.g. "3/2,1,-2".
VecQ parse_vector_flag(std::string_view text);

/// L for a variety: a vector flag, or "anticanonical" for -K.
VecQ resolve_class_flag(const PolarizedVariety& X, std::string_view text);
/// L for a fan: coefficients per ray, or "anticanonical" for all ones.
ToricDivisor resolve_divisor_flag(const Fan& f, std::string_view text);

/// A variety file's kappa_adjoint and degree_L describe the anticanonical
/// polarization. They carry over to L = t(-K) with t > 0 (the degree scaled
/// by t^dim) and are dropped for any other L.
PolarizedVariety for_polarization(PolarizedVariety X, const VecQ& L);

/// Structured command results. The text renderers print the same data.
Json ab_json(const PolarizedVariety& X, const VecQ& L);
Json toric_json(const Fan& f, const ToricDivisor& L);
Json report_json(const Report& r);

std::string ab_text(const Json& result);
std::string toric_text(const Json& result);

/// Machine-readable error object: {"error": kind, "message": text}.
Json error_json(const std::exception& e);

} // namespace fujita
