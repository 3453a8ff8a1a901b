#include "fujita/io.hpp"

#include "fujita/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fujita {

namespace {

void require_object(const Json& j, std::string_view what)
{
    if (!j.is_object())
        throw InputError(std::string(what) + " must be a JSON object");
}

void require_keys(const Json& j, std::string_view what, const std::set<std::string>& allowed)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw InputError(std::string(what) + ": unknown field \"" + it.key() + "\"");
}

const Json& field(const Json& j, const std::string& key, std::string_view what)
{
    const auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

long integer_from_json(const Json& j, std::string_view what)
{
    if (!j.is_number_integer())
        throw InputError(std::string(what) + " must be an integer");
    return j.get<long>();
}

int small_int(const Json& j, std::string_view what)
{
    const long v = integer_from_json(j, what);
    if (v < 0 || v > 1000000)
        throw InputError(std::string(what) + " out of range");
    return static_cast<int>(v);
}

std::string string_from_json(const Json& j, std::string_view what)
{
    if (!j.is_string())
        throw InputError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

bool bool_from_json(const Json& j, std::string_view what)
{
    if (!j.is_boolean())
        throw InputError(std::string(what) + " must be true or false");
    return j.get<bool>();
}

void check_schema(const Json& j, std::string_view what)
{
    const long version = integer_from_json(field(j, "schema_version", what), "schema_version");
    if (version != kSchemaVersion)
        throw InputError(std::string(what) + ": unsupported schema_version " + std::to_string(version));
}

std::vector<VecQ> vecs_from_json(const Json& j, std::size_t len, std::string_view what)
{
    if (!j.is_array())
        throw InputError(std::string(what) + " must be a list of vectors");
    std::vector<VecQ> out;
    for (const Json& e : j) {
        VecQ v = vec_from_json(e, what);
        if (v.size() != len)
            throw InputError(std::string(what) + ": vector " + to_string(v) + " has length " +
                             std::to_string(v.size()) + ", expected " + std::to_string(len));
        out.push_back(std::move(v));
    }
    return out;
}

Json vecs_to_json(const std::vector<VecQ>& vs)
{
    Json out = Json::array();
    for (const VecQ& v : vs)
        out.push_back(vec_to_json(v));
    return out;
}

LinMapQ integer_matrix_from_json(const Json& j, std::size_t n, std::string_view what)
{
    if (!j.is_array() || j.size() != n)
        throw InputError(std::string(what) + " must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    LinMapQ m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n)
            throw InputError(std::string(what) + ": row " + std::to_string(r) + " has the wrong length");
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = Rat(integer_from_json(j[r][c], what));
    }
    return m;
}

Json integer_matrix_to_json(const LinMapQ& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).get_num().get_si());
        out.push_back(row);
    }
    return out;
}

std::string vec_text(const Json& j)
{
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i)
        s += (i ? ", " : "") + j[i].get<std::string>();
    return s + ")";
}

std::string json_scalar_text(const Json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_boolean())
        return j.get<bool>() ? "yes" : "no";
    return j.dump();
}

Json bounds_json(const BoundReport& report)
{
    Json out = Json::array();
    for (const BoundCheck& c : report.checks)
        out.push_back({{"name", c.name},
                       {"status", std::string(to_string(c.status))},
                       {"advisory", c.advisory},
                       {"attained", c.attained},
                       {"detail", c.detail}});
    return out;
}

void bounds_text(std::ostringstream& out, const Json& result)
{
    if (!result.contains("bounds"))
        return;
    for (const Json& b : result["bounds"])
        out << "bound " << b["name"].get<std::string>() << ": " << b["status"].get<std::string>()
            << (b["attained"].get<bool>() ? " (attained)" : "") << "; " << b["detail"].get<std::string>() << "\n";
}

} // namespace

Rat rat_from_json(const Json& j, std::string_view what)
{
    if (j.is_number_integer())
        return Rat(j.get<long>());
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    throw InputError(std::string(what) + ": rationals must be strings like \"3/2\" or integers");
}

Json rat_to_json(const Rat& x)
{
    return to_string(x);
}

VecQ vec_from_json(const Json& j, std::string_view what)
{
    if (!j.is_array())
        throw InputError(std::string(what) + " must be a list of rationals");
    VecQ out;
    for (const Json& e : j)
        out.push_back(rat_from_json(e, what));
    return out;
}

Json vec_to_json(const VecQ& v)
{
    Json out = Json::array();
    for (const Rat& x : v)
        out.push_back(rat_to_json(x));
    return out;
}

PolarizedVariety variety_from_json(const Json& j)
{
    const std::string what = "variety";
    require_object(j, what);
    require_keys(j, what,
                 {"schema_version", "name", "dim", "rho", "K", "eff_generators", "eff_inequalities", "eff_lineality",
                  "nef_generators", "nef_lineality", "galois_generators", "kappa_adjoint", "degree_L"});
    check_schema(j, what);
    PolarizedVariety X;
    X.name = string_from_json(field(j, "name", what), "name");
    X.dim = small_int(field(j, "dim", what), "dim");
    X.rho = small_int(field(j, "rho", what), "rho");
    const auto rho = static_cast<std::size_t>(X.rho);
    X.K = vec_from_json(field(j, "K", what), "K");
    require_length(X.K, rho, "K");

    const bool gens = j.contains("eff_generators"), ineqs = j.contains("eff_inequalities");
    if (gens == ineqs)
        throw InputError(X.name + ": give exactly one of eff_generators and eff_inequalities");
    if (gens) {
        const auto lin = j.contains("eff_lineality") ? vecs_from_json(j["eff_lineality"], rho, "eff_lineality")
                                                     : std::vector<VecQ>{};
        X.eff = Cone::from_generators(rho, vecs_from_json(j["eff_generators"], rho, "eff_generators"), lin);
    } else {
        if (j.contains("eff_lineality"))
            throw InputError(X.name + ": eff_lineality only goes with eff_generators");
        X.eff = Cone::from_inequalities(rho, vecs_from_json(j["eff_inequalities"], rho, "eff_inequalities"));
    }
    if (j.contains("nef_generators")) {
        const auto lin = j.contains("nef_lineality") ? vecs_from_json(j["nef_lineality"], rho, "nef_lineality")
                                                     : std::vector<VecQ>{};
        X.nef = Cone::from_generators(rho, vecs_from_json(j["nef_generators"], rho, "nef_generators"), lin);
    } else if (j.contains("nef_lineality")) {
        throw InputError(X.name + ": nef_lineality only goes with nef_generators");
    }
    if (j.contains("galois_generators")) {
        const Json& g = j["galois_generators"];
        if (!g.is_array())
            throw InputError(X.name + ": galois_generators must be a list of matrices");
        std::vector<LinMapQ> mats;
        for (const Json& m : g)
            mats.push_back(integer_matrix_from_json(m, rho, "galois generator"));
        X.galois = std::move(mats);
    }
    if (j.contains("kappa_adjoint"))
        X.kappa_adjoint = small_int(j["kappa_adjoint"], "kappa_adjoint");
    if (j.contains("degree_L"))
        X.degree_L = rat_from_json(j["degree_L"], "degree_L");
    validate(X);
    return X;
}

Json variety_to_json(const PolarizedVariety& X)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = X.name;
    j["dim"] = X.dim;
    j["rho"] = X.rho;
    j["K"] = vec_to_json(X.K);
    j["eff_generators"] = vecs_to_json(X.eff.rays());
    if (!X.eff.lineality().empty())
        j["eff_lineality"] = vecs_to_json(X.eff.lineality());
    if (X.nef) {
        j["nef_generators"] = vecs_to_json(X.nef->rays());
        if (!X.nef->lineality().empty())
            j["nef_lineality"] = vecs_to_json(X.nef->lineality());
    }
    if (X.galois) {
        Json g = Json::array();
        for (const LinMapQ& m : *X.galois)
            g.push_back(integer_matrix_to_json(m));
        j["galois_generators"] = g;
    }
    if (X.kappa_adjoint)
        j["kappa_adjoint"] = *X.kappa_adjoint;
    if (X.degree_L)
        j["degree_L"] = rat_to_json(*X.degree_L);
    return j;
}

Fan fan_from_json(const Json& j)
{
    const std::string what = "fan";
    require_object(j, what);
    require_keys(j, what, {"schema_version", "name", "rank", "rays", "max_cones"});
    check_schema(j, what);
    Fan f;
    f.name = string_from_json(field(j, "name", what), "name");
    f.rank = small_int(field(j, "rank", what), "rank");
    const Json& rays = field(j, "rays", what);
    if (!rays.is_array())
        throw InputError(f.name + ": rays must be a list of integer vectors");
    for (const Json& r : rays) {
        if (!r.is_array())
            throw InputError(f.name + ": rays must be a list of integer vectors");
        VecQ v;
        for (const Json& x : r)
            v.push_back(Rat(integer_from_json(x, "ray coordinate")));
        f.rays.push_back(std::move(v));
    }
    const Json& cones = field(j, "max_cones", what);
    if (!cones.is_array())
        throw InputError(f.name + ": max_cones must be a list of index lists");
    for (const Json& c : cones) {
        if (!c.is_array())
            throw InputError(f.name + ": max_cones must be a list of index lists");
        std::vector<std::size_t> idx;
        for (const Json& x : c)
            idx.push_back(static_cast<std::size_t>(small_int(x, "cone index")));
        f.max_cones.push_back(std::move(idx));
    }
    validate(f);
    return f;
}

Json fan_to_json(const Fan& f)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = f.name;
    j["rank"] = f.rank;
    Json rays = Json::array();
    for (const VecQ& r : f.rays) {
        Json row = Json::array();
        for (const Rat& x : r)
            row.push_back(x.get_num().get_si());
        rays.push_back(row);
    }
    j["rays"] = rays;
    j["max_cones"] = f.max_cones;
    return j;
}

MapBundle maps_from_json(const Json& j, const std::filesystem::path& base_dir)
{
    const std::string what = "map file";
    require_object(j, what);
    require_keys(j, what, {"schema_version", "closed_components", "records"});
    check_schema(j, what);
    MapBundle m;
    if (j.contains("closed_components")) {
        if (!j["closed_components"].is_array())
            throw InputError("closed_components must be a list of names");
        for (const Json& c : j["closed_components"])
            m.closed_components.push_back(string_from_json(c, "closed component"));
    }
    const Json& records = field(j, "records", what);
    if (!records.is_array())
        throw InputError("records must be a list");
    for (const Json& rj : records) {
        require_object(rj, "record");
        require_keys(rj, "record",
                     {"name", "source", "source_file", "pullback_L", "pushforward", "dim_Y", "dominant", "map_degree",
                      "kappa_Y", "in_closed_set", "note"});
        ThinMapRecord r;
        r.name = string_from_json(field(rj, "name", "record"), "record name");
        const std::string rwhat = "record " + r.name;
        std::string source_file;
        if (rj.contains("source") == rj.contains("source_file"))
            throw InputError(rwhat + ": give exactly one of source and source_file");
        if (rj.contains("source")) {
            r.source = variety_from_json(rj["source"]);
        } else {
            source_file = string_from_json(rj["source_file"], "source_file");
            r.source = load_variety(base_dir / source_file);
        }
        const auto rho_y = static_cast<std::size_t>(r.source.rho);
        r.pullback_L = vec_from_json(field(rj, "pullback_L", rwhat), "pullback_L");
        r.pushforward = LinMapQ::from_rows(vecs_from_json(field(rj, "pushforward", rwhat), rho_y, "pushforward"), rho_y);
        r.dim_Y = rj.contains("dim_Y") ? small_int(rj["dim_Y"], "dim_Y") : r.source.dim;
        r.dominant = bool_from_json(field(rj, "dominant", rwhat), "dominant");
        r.map_degree = small_int(field(rj, "map_degree", rwhat), "map_degree");
        if (rj.contains("kappa_Y"))
            r.kappa_Y = small_int(rj["kappa_Y"], "kappa_Y");
        if (rj.contains("in_closed_set"))
            r.in_closed_set = bool_from_json(rj["in_closed_set"], "in_closed_set");
        if (rj.contains("note"))
            r.note = string_from_json(rj["note"], "note");
        m.records.push_back(std::move(r));
        m.source_files.push_back(std::move(source_file));
    }
    return m;
}

Json maps_to_json(const MapBundle& m)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["closed_components"] = m.closed_components;
    Json records = Json::array();
    for (std::size_t i = 0; i < m.records.size(); ++i) {
        const ThinMapRecord& r = m.records[i];
        Json rj;
        rj["name"] = r.name;
        if (i < m.source_files.size() && !m.source_files[i].empty())
            rj["source_file"] = m.source_files[i];
        else
            rj["source"] = variety_to_json(r.source);
        rj["pullback_L"] = vec_to_json(r.pullback_L);
        rj["pushforward"] = vecs_to_json(r.pushforward.row_list());
        rj["dim_Y"] = r.dim_Y;
        rj["dominant"] = r.dominant;
        rj["map_degree"] = r.map_degree;
        if (r.kappa_Y)
            rj["kappa_Y"] = *r.kappa_Y;
        rj["in_closed_set"] = r.in_closed_set;
        if (!r.note.empty())
            rj["note"] = r.note;
        records.push_back(rj);
    }
    j["records"] = records;
    return j;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

PolarizedVariety load_variety(const std::filesystem::path& path)
{
    return variety_from_json(read_json_file(path));
}

Fan load_fan(const std::filesystem::path& path)
{
    return fan_from_json(read_json_file(path));
}

MapBundle load_maps(const std::filesystem::path& path)
{
    return maps_from_json(read_json_file(path), path.parent_path());
}

VecQ parse_vector_flag(std::string_view text)
{
    VecQ out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!part.empty() && part.front() == ' ')
            part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ')
            part.remove_suffix(1);
        out.push_back(parse_rat(part));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

VecQ resolve_class_flag(const PolarizedVariety& X, std::string_view text)
{
    VecQ L = text == "anticanonical" ? -X.K : parse_vector_flag(text);
    require_length(L, static_cast<std::size_t>(X.rho), "L");
    return L;
}

ToricDivisor resolve_divisor_flag(const Fan& f, std::string_view text)
{
    ToricDivisor L = text == "anticanonical" ? anticanonical(f) : parse_vector_flag(text);
    require_length(L, f.rays.size(), "L");
    return L;
}

PolarizedVariety for_polarization(PolarizedVariety X, const VecQ& L)
{
    const VecQ minus_k = -X.K;
    const auto pivot = std::find_if(minus_k.begin(), minus_k.end(), [](const Rat& x) { return x != 0; });
    bool multiple = pivot != minus_k.end();
    Rat t = 0;
    if (multiple) {
        t = L[static_cast<std::size_t>(pivot - minus_k.begin())] / *pivot;
        multiple = t > 0;
        for (std::size_t i = 0; multiple && i < L.size(); ++i)
            multiple = L[i] == t * minus_k[i];
    }
    if (!multiple) {
        X.kappa_adjoint.reset();
        X.degree_L.reset();
        return X;
    }
    if (X.degree_L) {
        Rat scale = 1;
        for (int i = 0; i < X.dim; ++i)
            scale *= t;
        X.degree_L = *X.degree_L * scale;
    }
    return X;
}

Json ab_json(const PolarizedVariety& file_X, const VecQ& L)
{
    const PolarizedVariety X = for_polarization(file_X, L);
    const ABResult r = compute_ab(X, L);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["variety"] = X.name;
    j["L"] = vec_to_json(L);
    j["a"] = to_string(r.a);
    j["uniruled"] = r.uniruled;
    if (r.a.is_infinite()) {
        j["b_geometric"] = "inf";
        return j;
    }
    j["b_geometric"] = r.b_geometric.value();
    if (r.b_arithmetic)
        j["b_arithmetic"] = *r.b_arithmetic;
    j["minimal_face"] = {{"dim", r.minimal_face->dim},
                         {"rays", vecs_to_json(r.minimal_face->rays())},
                         {"lineality", vecs_to_json(r.minimal_face->parent.lineality())}};
    j["adjoint_class"] = vec_to_json(r.adjoint_class);
    if (r.d)
        j["d"] = *r.d;
    if (r.adjoint_rigid)
        j["adjoint_rigid"] = *r.adjoint_rigid;
    j["bounds"] = bounds_json(bound_checks(X, L, r.a));
    return j;
}

Json toric_json(const Fan& f, const ToricDivisor& L)
{
    const AdjointAnalysis analysis = adjoint_analysis(f, L);
    PolarizedVariety X = variety_from_fan(f);
    const VecQ cls = class_lattice(f).project.apply(L);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["fan"] = f.name;
    j["L"] = vec_to_json(L);
    j["class"] = vec_to_json(cls);
    j["a"] = to_string(analysis.a);
    if (analysis.a.is_infinite()) {
        j["b"] = "inf";
        return j;
    }
    j["b"] = *analysis.b;
    j["kappa"] = *analysis.kappa;
    j["d"] = *analysis.d;
    j["adjoint_rigid"] = *analysis.adjoint_rigid;
    j["adjoint_divisor"] = vec_to_json(*analysis.adjoint_divisor);
    const Rat deg = degree(f, L);
    j["degree"] = rat_to_json(deg);
    X.degree_L = deg;
    X.kappa_adjoint = analysis.kappa;
    j["bounds"] = bounds_json(bound_checks(X, cls, analysis.a));

    Json boundary = Json::array();
    for (const BoundaryAValue& b : boundary_a_values(f, L)) {
        Json e;
        e["ray"] = b.ray;
        if (b.a)
            e["a"] = to_string(*b.a);
        else
            e["warning"] = b.warning;
        boundary.push_back(e);
    }
    j["boundary"] = boundary;
    return j;
}

Json report_json(const Report& r)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["variety"] = r.variety;
    j["L"] = vec_to_json(r.L);
    Json target = {{"a", to_string(r.target.a)},
                   {"b", r.target.b},
                   {"b_kind", r.target.b_arithmetic ? "arithmetic" : "geometric"}};
    if (r.target.d)
        target["d"] = *r.target.d;
    j["target"] = target;
    j["closed_components"] = r.closed_components;
    Json rows = Json::array();
    for (const LedgerRow& row : r.rows) {
        Json e;
        e["name"] = row.name;
        e["quarantined"] = row.quarantined;
        if (!row.note.empty())
            e["note"] = row.note;
        if (!row.result) {
            e["error"] = row.error;
            rows.push_back(e);
            continue;
        }
        const Classification& c = *row.result;
        e["stratum"] = std::string(to_string(c.stratum.tag));
        e["rule"] = c.stratum.rule;
        e["reason"] = c.stratum.reason;
        if (c.b_Y) {
            e["a"] = to_string(c.a_Y);
            e["b"] = *c.b_Y;
            e["b_kind"] = c.b_arithmetic ? "arithmetic" : "geometric";
        }
        if (c.d_Y)
            e["d"] = *c.d_Y;
        if (c.face_contracting)
            e["face_contracting"] = *c.face_contracting;
        if (!c.diagnostics.empty())
            e["diagnostics"] = c.diagnostics;
        rows.push_back(e);
    }
    j["records"] = rows;
    j["thin_set"] = {{"closed_set", r.closed_set},
                     {"families", r.retained_families},
                     {"empty", r.closed_set.empty() && r.retained_families.empty()}};
    return j;
}

std::string ab_text(const Json& result)
{
    std::ostringstream out;
    out << "variety: " << result["variety"].get<std::string>() << "\n";
    out << "L = " << vec_text(result["L"]) << "\n";
    out << "a = " << result["a"].get<std::string>() << "\n";
    out << "uniruled: " << json_scalar_text(result["uniruled"]) << "\n";
    out << "b (geometric) = " << json_scalar_text(result["b_geometric"]) << "\n";
    if (result.contains("b_arithmetic"))
        out << "b (arithmetic) = " << result["b_arithmetic"].get<int>() << "\n";
    if (result.contains("minimal_face")) {
        const Json& face = result["minimal_face"];
        out << "minimal face: dim " << face["dim"].get<int>() << ", rays";
        if (face["rays"].empty())
            out << " none";
        for (const Json& r : face["rays"])
            out << " " << vec_text(r);
        out << "\n";
        out << "adjoint class: " << vec_text(result["adjoint_class"]) << "\n";
    }
    if (result.contains("d"))
        out << "d = " << result["d"].get<int>() << "\n";
    if (result.contains("adjoint_rigid"))
        out << "adjoint rigid: " << json_scalar_text(result["adjoint_rigid"]) << "\n";
    bounds_text(out, result);
    return out.str();
}

std::string toric_text(const Json& result)
{
    std::ostringstream out;
    out << "fan: " << result["fan"].get<std::string>() << "\n";
    out << "L = " << vec_text(result["L"]) << ", class " << vec_text(result["class"]) << "\n";
    out << "a = " << result["a"].get<std::string>() << "\n";
    out << "b = " << json_scalar_text(result["b"]) << "\n";
    if (result.contains("kappa")) {
        out << "kappa = " << result["kappa"].get<int>() << "\n";
        out << "d = " << result["d"].get<int>() << "\n";
        out << "adjoint rigid: " << json_scalar_text(result["adjoint_rigid"]) << "\n";
        out << "L^n = " << result["degree"].get<std::string>() << "\n";
    }
    bounds_text(out, result);
    if (result.contains("boundary")) {
        for (const Json& b : result["boundary"]) {
            out << "boundary D" << b["ray"].get<std::size_t>() << ": ";
            if (b.contains("a"))
                out << "a = " << b["a"].get<std::string>() << "\n";
            else
                out << "warning: " << b["warning"].get<std::string>() << "\n";
        }
    }
    return out.str();
}

Json error_json(const std::exception& e)
{
    std::string kind = "error";
    if (dynamic_cast<const InputError*>(&e))
        kind = "input";
    else if (dynamic_cast<const ValidationError*>(&e))
        kind = "validation";
    else if (dynamic_cast<const PreconditionError*>(&e))
        kind = "precondition";
    else if (dynamic_cast<const ConsistencyError*>(&e))
        kind = "consistency";
    return {{"error", kind}, {"message", e.what()}};
}

} // namespace fujita
