#include "fujita/toric.hpp"

#include "fujita/cone.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace fujita {

namespace {

std::string fan_label(const Fan& f)
{
    return f.name.empty() ? std::string("fan") : f.name;
}

std::string index_list(const std::vector<std::size_t>& idx)
{
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i)
        s += (i ? ", " : "") + std::to_string(idx[i]);
    return s + "}";
}

LinMapQ cone_matrix(const Fan& f, const std::vector<std::size_t>& cone)
{
    std::vector<VecQ> cols;
    for (std::size_t i : cone)
        cols.push_back(f.rays[i]);
    return LinMapQ::from_columns(cols, static_cast<std::size_t>(f.rank));
}

std::vector<std::size_t> sorted_cone(std::vector<std::size_t> c)
{
    std::sort(c.begin(), c.end());
    return c;
}

// One entry per wall: the max cones on either side and the ray each adds.
struct WallSide {
    std::size_t cone;
    std::size_t extra_ray;
};

std::map<std::vector<std::size_t>, std::vector<WallSide>> walls_of(const Fan& f)
{
    std::map<std::vector<std::size_t>, std::vector<WallSide>> walls;
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        const auto cone = sorted_cone(f.max_cones[c]);
        for (std::size_t k = 0; k < cone.size(); ++k) {
            std::vector<std::size_t> wall;
            for (std::size_t j = 0; j < cone.size(); ++j)
                if (j != k)
                    wall.push_back(cone[j]);
            walls[wall].push_back({c, cone[k]});
        }
    }
    return walls;
}

void check_generic_cover(const Fan& f)
{
    const auto n = static_cast<std::size_t>(f.rank);
    std::vector<LinMapQ> inverses;
    for (const auto& cone : f.max_cones)
        inverses.push_back(*inverse(cone_matrix(f, cone)));

    std::mt19937 rng(20240611);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
    for (int attempt = 0; attempt < 32; ++attempt) {
        VecQ p(n);
        for (auto& x : p) {
            x = Rat(num(rng), den(rng));
            x.canonicalize();
        }
        bool generic = true;
        int containing = 0;
        for (const LinMapQ& inv : inverses) {
            const VecQ coords = inv.apply(p);
            if (std::any_of(coords.begin(), coords.end(), [](const Rat& x) { return sgn(x) == 0; })) {
                generic = false;
                break;
            }
            if (std::all_of(coords.begin(), coords.end(), [](const Rat& x) { return sgn(x) > 0; }))
                ++containing;
        }
        if (!generic)
            continue;
        if (containing != 1)
            throw ValidationError(fan_label(f) + ": max cones overlap or leave gaps (a generic point lies in " +
                                  std::to_string(containing) + " cones)");
        return;
    }
    throw ValidationError(fan_label(f) + ": could not find a generic point for the cover check");
}

} // namespace

void validate(const Fan& f)
{
    const std::string label = fan_label(f);
    if (f.rank < 1)
        throw ValidationError(label + ": rank must be positive");
    const auto n = static_cast<std::size_t>(f.rank);
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        const VecQ& r = f.rays[i];
        if (r.size() != n)
            throw ValidationError(label + ": ray " + std::to_string(i) + " has length " + std::to_string(r.size()));
        if (!is_integral(r) || is_zero(r) || primitive(r) != r)
            throw ValidationError(label + ": ray " + std::to_string(i) + " " + to_string(r) +
                                  " is not a primitive integer vector");
        for (std::size_t j = 0; j < i; ++j)
            if (f.rays[j] == r)
                throw ValidationError(label + ": rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
    if (f.max_cones.empty())
        throw ValidationError(label + ": no max cones");

    std::set<std::vector<std::size_t>> seen;
    for (const auto& cone : f.max_cones) {
        const auto s = sorted_cone(cone);
        if (s.size() != n)
            throw ValidationError(label + ": max cone " + index_list(cone) + " does not have " + std::to_string(n) +
                                  " rays");
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ValidationError(label + ": max cone " + index_list(cone) + " repeats a ray");
        if (s.back() >= f.rays.size())
            throw ValidationError(label + ": max cone " + index_list(cone) + " has an index out of range");
        if (!seen.insert(s).second)
            throw ValidationError(label + ": max cone " + index_list(cone) + " listed twice");
        const Rat det = determinant(cone_matrix(f, cone));
        if (abs(det) != 1)
            throw ValidationError(label + ": max cone " + index_list(cone) + " is not smooth (determinant " +
                                  to_string(det) + ")");
    }
    std::vector<bool> used(f.rays.size(), false);
    for (const auto& cone : f.max_cones)
        for (std::size_t i : cone)
            used[i] = true;
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i])
            throw ValidationError(label + ": ray " + std::to_string(i) + " lies in no max cone");

    for (const auto& [wall, sides] : walls_of(f)) {
        if (sides.size() != 2)
            throw ValidationError(label + ": wall " + index_list(wall) + " bounds " + std::to_string(sides.size()) +
                                  " max cones, not 2 (fan is not complete)");
        std::vector<VecQ> wall_rays;
        for (std::size_t i : wall)
            wall_rays.push_back(f.rays[i]);
        const VecQ normal = nullspace(wall_rays, n).at(0);
        const int s0 = sgn(dot(normal, f.rays[sides[0].extra_ray]));
        const int s1 = sgn(dot(normal, f.rays[sides[1].extra_ray]));
        if (s0 * s1 >= 0)
            throw ValidationError(label + ": the two max cones at wall " + index_list(wall) + " lie on the same side");
    }
    check_generic_cover(f);
}

ToricDivisor anticanonical(const Fan& f)
{
    return ToricDivisor(f.rays.size(), Rat(1));
}

ClassLattice class_lattice(const Fan& f)
{
    validate(f);
    const auto n = static_cast<std::size_t>(f.rank);
    const std::size_t N = f.rays.size();
    const HermiteForm rays_hnf = hermite_form(LinMapQ::from_rows(f.rays, n));
    // U * R = [H; 0], so the last N - n rows of U span the integer relations.
    std::vector<VecQ> relations;
    for (std::size_t i = n; i < N; ++i)
        relations.push_back(rays_hnf.U.row(i));
    ClassLattice out;
    out.rho = static_cast<int>(N - n);
    if (relations.empty()) {
        out.project = LinMapQ(0, N);
        return out;
    }
    const HermiteForm rel_hnf = hermite_form(LinMapQ::from_rows(relations, N));
    out.project = rel_hnf.H;
    return out;
}

std::vector<VecQ> wall_curve_classes(const Fan& f)
{
    const ClassLattice cl = class_lattice(f);
    const LinMapQ dual_basis = cl.project.transpose();
    std::vector<VecQ> curves;
    for (const auto& [wall, sides] : walls_of(f)) {
        VecQ intersections = zeros(f.rays.size());
        const VecQ target = -(f.rays[sides[0].extra_ray] + f.rays[sides[1].extra_ray]);
        intersections[sides[0].extra_ray] = 1;
        intersections[sides[1].extra_ray] = 1;
        if (!wall.empty()) {
            const auto c = solve(cone_matrix(f, wall), target);
            if (!c)
                throw ConsistencyError(fan_label(f) + ": no wall relation at " + index_list(wall));
            for (std::size_t i = 0; i < wall.size(); ++i)
                intersections[wall[i]] = (*c)[i];
        } else if (!is_zero(target)) {
            throw ConsistencyError(fan_label(f) + ": rank-one fan rays are not opposite");
        }
        const auto cls = solve(dual_basis, intersections);
        if (!cls)
            throw ConsistencyError(fan_label(f) + ": wall curve " + index_list(wall) + " has no class");
        curves.push_back(*cls);
    }
    std::sort(curves.begin(), curves.end(), lex_less);
    curves.erase(std::unique(curves.begin(), curves.end()), curves.end());
    return curves;
}

PolarizedVariety variety_from_fan(const Fan& f)
{
    const ClassLattice cl = class_lattice(f);
    const auto rho = static_cast<std::size_t>(cl.rho);
    PolarizedVariety X;
    X.name = f.name;
    X.dim = f.rank;
    X.rho = cl.rho;
    X.K = cl.project.apply(-anticanonical(f));
    std::vector<VecQ> eff_gens;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        eff_gens.push_back(cl.project.column(i));
    X.eff = Cone::from_generators(rho, eff_gens);
    X.nef = dual(Cone::from_generators(rho, wall_curve_classes(f)));
    return X;
}

Polytope polytope_from_inequalities(std::size_t ambient_dim, std::vector<HalfSpace> inequalities)
{
    std::vector<VecQ> normals;
    for (const HalfSpace& h : inequalities) {
        require_length(h.normal, ambient_dim, "polytope inequality");
        VecQ n = h.normal;
        n.push_back(h.offset);
        normals.push_back(std::move(n));
    }
    normals.push_back(unit_vector(ambient_dim + 1, ambient_dim));
    const Cone homog = Cone::from_inequalities(ambient_dim + 1, normals);

    Polytope P;
    P.ambient_dim = ambient_dim;
    P.inequalities = std::move(inequalities);
    bool recession = !homog.lineality().empty();
    for (const VecQ& r : homog.rays()) {
        const Rat& t = r.back();
        if (sgn(t) == 0) {
            recession = true;
            continue;
        }
        VecQ m(r.begin(), r.end() - 1);
        P.vertices.push_back((1 / t) * m);
    }
    if (P.vertices.empty())
        return P;
    if (recession)
        throw PreconditionError("polytope is unbounded");
    std::sort(P.vertices.begin(), P.vertices.end(), lex_less);
    P.empty = false;
    P.dim = homog.dim() - 1;
    return P;
}

Polytope polytope_of(const Fan& f, const ToricDivisor& D)
{
    validate(f);
    require_length(D, f.rays.size(), "toric divisor");
    std::vector<HalfSpace> ineqs;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        ineqs.push_back({f.rays[i], D[i]});
    return polytope_from_inequalities(static_cast<std::size_t>(f.rank), std::move(ineqs));
}

std::optional<int> iitaka_dim(const Fan& f, const ToricDivisor& D)
{
    const Polytope P = polytope_of(f, D);
    if (P.empty)
        return std::nullopt;
    return P.dim;
}

namespace {

// Pulling triangulation: cone the first vertex over a triangulation of every
// facet not containing it.
void triangulate(const std::vector<VecQ>& verts, std::size_t ambient, std::vector<std::vector<VecQ>>& out)
{
    std::vector<VecQ> lifted;
    for (const VecQ& v : verts) {
        VecQ w = v;
        w.push_back(Rat(1));
        lifted.push_back(std::move(w));
    }
    const Cone homog = Cone::from_generators(ambient + 1, lifted);
    if (verts.size() == static_cast<std::size_t>(homog.dim())) {
        out.push_back(verts);
        return;
    }
    for (const VecQ& facet : homog.facets()) {
        if (sgn(dot(facet, lifted[0])) == 0)
            continue;
        std::vector<VecQ> on_facet;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (sgn(dot(facet, lifted[i])) == 0)
                on_facet.push_back(verts[i]);
        std::vector<std::vector<VecQ>> sub;
        triangulate(on_facet, ambient, sub);
        for (auto& simplex : sub) {
            simplex.insert(simplex.begin(), verts[0]);
            out.push_back(std::move(simplex));
        }
    }
}

} // namespace

Rat normalized_volume(const Polytope& P)
{
    if (P.empty || P.dim < static_cast<int>(P.ambient_dim))
        return Rat(0);
    if (P.ambient_dim == 0)
        return Rat(1);
    std::vector<std::vector<VecQ>> simplices;
    triangulate(P.vertices, P.ambient_dim, simplices);
    Rat total = 0;
    for (const auto& s : simplices) {
        std::vector<VecQ> edges;
        for (std::size_t i = 1; i < s.size(); ++i)
            edges.push_back(s[i] - s[0]);
        total += abs(determinant(LinMapQ::from_rows(edges, P.ambient_dim)));
    }
    return total;
}

AdjointAnalysis adjoint_analysis(const Fan& f, const ToricDivisor& L)
{
    require_length(L, f.rays.size(), "toric divisor");
    const PolarizedVariety X = variety_from_fan(f);
    const VecQ cls = class_lattice(f).project.apply(L);
    AdjointAnalysis out;
    out.a = a_invariant(X, cls);
    if (out.a.is_infinite())
        return out;
    out.b = b_geometric(X, cls).b;
    // Any lift of K + aL differs from this one by a character, which only
    // translates the polytope.
    ToricDivisor D = -anticanonical(f) + out.a.value() * L;
    const auto kappa = iitaka_dim(f, D);
    if (!kappa)
        throw ConsistencyError(fan_label(f) + ": K + aL is pseudo-effective but its polytope is empty");
    out.kappa = *kappa;
    out.d = f.rank - *kappa;
    out.adjoint_rigid = *kappa == 0;
    out.adjoint_divisor = std::move(D);
    return out;
}

Rat degree(const Fan& f, const ToricDivisor& L)
{
    require_length(L, f.rays.size(), "toric divisor");
    const PolarizedVariety X = variety_from_fan(f);
    const VecQ cls = class_lattice(f).project.apply(L);
    if (!X.nef->contains(cls))
        throw PreconditionError(fan_label(f) + ": class " + to_string(cls) + " is not nef");
    return normalized_volume(polytope_of(f, L));
}

BoundaryRestriction boundary_restriction(const Fan& f, std::size_t ray_index, const ToricDivisor& L)
{
    validate(f);
    require_length(L, f.rays.size(), "toric divisor");
    if (f.rank < 2)
        throw PreconditionError(fan_label(f) + ": boundary restriction needs rank at least 2");
    if (ray_index >= f.rays.size())
        throw InputError(fan_label(f) + ": ray index " + std::to_string(ray_index) + " out of range");
    const auto n = static_cast<std::size_t>(f.rank);
    const VecQ& v = f.rays[ray_index];

    // U v = e_1; the other rows of U give N / Z v.
    const HermiteForm h = hermite_form(LinMapQ::from_columns({v}, n));
    const LinMapQ& U = h.U;
    if (h.H(0, 0) != 1)
        throw ConsistencyError("ray is not primitive");

    std::vector<std::vector<std::size_t>> star_cones;
    std::set<std::size_t> adjacent;
    for (const auto& cone : f.max_cones) {
        if (std::find(cone.begin(), cone.end(), ray_index) == cone.end())
            continue;
        std::vector<std::size_t> rest;
        for (std::size_t i : cone)
            if (i != ray_index) {
                rest.push_back(i);
                adjacent.insert(i);
            }
        star_cones.push_back(sorted_cone(rest));
    }

    BoundaryRestriction out;
    out.source_rays.assign(adjacent.begin(), adjacent.end());
    out.fan.name = fan_label(f) + "/D" + std::to_string(ray_index);
    out.fan.rank = f.rank - 1;
    for (std::size_t i : out.source_rays) {
        const VecQ w = U.apply(f.rays[i]);
        out.fan.rays.emplace_back(w.begin() + 1, w.end());
    }
    auto position = [&](std::size_t i) {
        return static_cast<std::size_t>(std::lower_bound(out.source_rays.begin(), out.source_rays.end(), i) -
                                        out.source_rays.begin());
    };
    for (const auto& rest : star_cones) {
        std::vector<std::size_t> local;
        for (std::size_t i : rest)
            local.push_back(position(i));
        out.fan.max_cones.push_back(local);
    }
    for (std::size_t c = 0; c < out.fan.max_cones.size(); ++c) {
        const Rat det = determinant(cone_matrix(out.fan, out.fan.max_cones[c]));
        if (abs(det) != 1) {
            std::vector<std::size_t> offending = star_cones[c];
            offending.push_back(ray_index);
            throw ResolutionRequired(out.fan.name + ": star fan cone " + index_list(sorted_cone(offending)) +
                                         " is singular; resolution required",
                                     sorted_cone(offending));
        }
    }

    // Move L off D_rho by a character with <m, v> = -a_rho.
    const VecQ m = (-L[ray_index]) * U.row(0);
    for (std::size_t i : out.source_rays)
        out.divisor.push_back(L[i] + dot(m, f.rays[i]));
    return out;
}

std::vector<BoundaryAValue> boundary_a_values(const Fan& f, const ToricDivisor& L)
{
    std::vector<BoundaryAValue> out;
    if (f.rank < 2)
        return out;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        BoundaryAValue entry;
        entry.ray = i;
        try {
            const BoundaryRestriction r = boundary_restriction(f, i, L);
            const PolarizedVariety Y = variety_from_fan(r.fan);
            entry.a = a_invariant(Y, class_lattice(r.fan).project.apply(r.divisor));
        } catch (const ResolutionRequired& e) {
            entry.warning = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<std::vector<std::size_t>> augmented_base_locus(const Fan& f, const ToricDivisor& L)
{
    require_length(L, f.rays.size(), "toric divisor");
    const PolarizedVariety X = variety_from_fan(f);
    const VecQ cls = class_lattice(f).project.apply(L);
    if (!X.nef->contains(cls))
        throw PreconditionError(fan_label(f) + ": class " + to_string(cls) + " is not nef");
    const Polytope P = polytope_of(f, L);
    if (P.dim < f.rank)
        return {{}};

    std::set<std::vector<std::size_t>> cones;
    for (const auto& cone : f.max_cones) {
        const auto s = sorted_cone(cone);
        for (std::size_t mask = 1; mask < (std::size_t{1} << s.size()); ++mask) {
            std::vector<std::size_t> tau;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (mask & (std::size_t{1} << j))
                    tau.push_back(s[j]);
            cones.insert(tau);
        }
    }

    std::vector<std::vector<std::size_t>> degenerate;
    for (const auto& tau : cones) {
        std::vector<HalfSpace> ineqs = P.inequalities;
        for (std::size_t i : tau)
            ineqs.push_back({-f.rays[i], -L[i]});
        const Polytope face = polytope_from_inequalities(P.ambient_dim, std::move(ineqs));
        if (face.dim < f.rank - static_cast<int>(tau.size()))
            degenerate.push_back(tau);
    }
    // Keep the largest strata: V(tau) contains V(tau') when tau is a face of tau'.
    std::vector<std::vector<std::size_t>> components;
    for (const auto& tau : degenerate) {
        const bool contained = std::any_of(degenerate.begin(), degenerate.end(), [&](const auto& other) {
            return other != tau && std::includes(tau.begin(), tau.end(), other.begin(), other.end());
        });
        if (!contained)
            components.push_back(tau);
    }
    std::sort(components.begin(), components.end());
    return components;
}

} // namespace fujita
