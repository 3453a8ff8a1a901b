#include "fujita/invariants.hpp"

#include "fujita/errors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace fujita {

namespace {

std::string matrix_string(const LinMapQ& m)
{
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r)
            out += ", ";
        out += to_string(m.row(r));
    }
    return out + "]";
}

void require_class(const PolarizedVariety& X, const VecQ& L)
{
    require_length(L, static_cast<std::size_t>(X.rho), "class L");
}

Rat power(const Rat& x, int n)
{
    Rat r = 1;
    for (int i = 0; i < n; ++i)
        r *= x;
    return r;
}

} // namespace

std::string to_string(const AValue& a)
{
    return a.is_infinite() ? "inf" : to_string(a.value());
}

std::string to_string(const BValue& b)
{
    return b.is_infinite() ? "inf" : std::to_string(b.value());
}

std::vector<LinMapQ> group_closure(const std::vector<LinMapQ>& generators, std::size_t dim, std::size_t limit)
{
    std::vector<LinMapQ> elements{LinMapQ::identity(dim)};
    std::deque<LinMapQ> frontier{LinMapQ::identity(dim)};
    while (!frontier.empty()) {
        const LinMapQ g = frontier.front();
        frontier.pop_front();
        for (const LinMapQ& s : generators) {
            LinMapQ h = s.compose(g);
            if (std::find(elements.begin(), elements.end(), h) != elements.end())
                continue;
            if (elements.size() >= limit)
                throw ValidationError("group action: generated group has more than " + std::to_string(limit)
                                      + " elements (not finite?)");
            elements.push_back(h);
            frontier.push_back(std::move(h));
        }
    }
    return elements;
}

void validate(const PolarizedVariety& X)
{
    if (X.dim < 0 || X.rho < 0)
        throw ValidationError(X.name + ": negative dimension or Picard rank");
    const auto rho = static_cast<std::size_t>(X.rho);
    require_length(X.K, rho, X.name + ": canonical class");
    if (X.eff.ambient_dim() != rho)
        throw ValidationError(X.name + ": effective cone lives in dimension " + std::to_string(X.eff.ambient_dim())
                              + " but rho = " + std::to_string(rho));
    if (X.nef) {
        if (X.nef->ambient_dim() != rho)
            throw ValidationError(X.name + ": nef cone has the wrong ambient dimension");
        std::vector<VecQ> gens = X.nef->rays();
        for (const VecQ& l : X.nef->lineality()) {
            gens.push_back(l);
            gens.push_back(-l);
        }
        for (const VecQ& r : gens)
            if (!X.eff.contains(r))
                throw ValidationError(X.name + ": nef generator " + to_string(r) + " is not pseudo-effective");
    }
    if (X.kappa_adjoint && (*X.kappa_adjoint < 0 || *X.kappa_adjoint > X.dim))
        throw ValidationError(X.name + ": kappa_adjoint must lie in [0, dim]");
    if (X.galois) {
        for (const LinMapQ& g : *X.galois) {
            if (g.rows() != rho || g.cols() != rho)
                throw ValidationError(X.name + ": group generator " + matrix_string(g) + " is not " + std::to_string(rho)
                                      + "x" + std::to_string(rho));
            if (!g.is_integral())
                throw ValidationError(X.name + ": group generator " + matrix_string(g) + " is not integral");
            const Rat det = determinant(g);
            if (det != 1 && det != -1)
                throw ValidationError(X.name + ": group generator " + matrix_string(g)
                                      + " is not invertible over the integers");
        }
        for (const LinMapQ& g : group_closure(*X.galois, rho)) {
            if (image(X.eff, g) != X.eff)
                throw ValidationError(X.name + ": group element " + matrix_string(g)
                                      + " does not map the effective cone onto itself");
            if (g.apply(X.K) != X.K)
                throw ValidationError(X.name + ": group element " + matrix_string(g) + " does not fix K");
        }
    }
}

bool is_big(const PolarizedVariety& X, const VecQ& L)
{
    require_class(X, L);
    return membership(X.eff, L) == Membership::Interior;
}

AValue a_invariant(const PolarizedVariety& X, const VecQ& L)
{
    require_class(X, L);
    if (X.nef && !X.nef->contains(L))
        throw PreconditionError(X.name + ": L = " + to_string(L) + " is not nef");
    if (!is_big(X, L))
        return AValue::infinity();
    if (X.eff.facets().empty())
        throw ConsistencyError(X.name + ": the effective cone is the whole space, a is unbounded below");
    std::optional<Rat> best;
    for (const VecQ& f : X.eff.facets()) {
        const Rat ratio = -dot(f, X.K) / dot(f, L);
        if (!best || *best < ratio)
            best = ratio;
    }
    return *best;
}

BGeometric b_geometric(const PolarizedVariety& X, const VecQ& L)
{
    const AValue a = a_invariant(X, L);
    if (a.is_infinite())
        throw PreconditionError(X.name + ": b is only defined when a is finite (L = " + to_string(L) + " is not big)");
    Face face = minimal_face_containing(X.eff, X.K + a.value() * L);
    const int b = X.rho - face.dim;
    return {b, std::move(face)};
}

int b_dual(const PolarizedVariety& X, const VecQ& L)
{
    const AValue a = a_invariant(X, L);
    if (a.is_infinite())
        throw PreconditionError(X.name + ": b is only defined when a is finite (L = " + to_string(L) + " is not big)");
    return intersect_subspace(dual(X.eff), {X.K + a.value() * L}).dim();
}

int b_arithmetic(const PolarizedVariety& X, const VecQ& L)
{
    if (!X.galois)
        throw PreconditionError(X.name + ": no group action attached");
    const AValue a = a_invariant(X, L);
    if (a.is_infinite())
        throw PreconditionError(X.name + ": b is only defined when a is finite (L = " + to_string(L) + " is not big)");
    const auto rho = static_cast<std::size_t>(X.rho);
    for (const LinMapQ& g : group_closure(*X.galois, rho)) {
        if (image(X.eff, g) != X.eff)
            throw ValidationError(X.name + ": group element " + matrix_string(g)
                                  + " does not map the effective cone onto itself");
        if (g.apply(X.K) != X.K)
            throw ValidationError(X.name + ": group element " + matrix_string(g) + " does not fix K");
        if (g.apply(L) != L)
            throw ValidationError(X.name + ": group element " + matrix_string(g) + " does not fix L");
    }
    // Curve classes fixed by the transposed action: ker(g^T - I) for each generator.
    std::vector<VecQ> normals{X.K + a.value() * L};
    for (const LinMapQ& g : *X.galois) {
        const LinMapQ gt = g.transpose();
        for (std::size_t r = 0; r < rho; ++r) {
            VecQ row = gt.row(r);
            row[r] -= 1;
            if (!is_zero(row))
                normals.push_back(row);
        }
    }
    return intersect_subspace(dual(X.eff), normals).dim();
}

int b_via_rigid_components(const PolarizedVariety& X, const VecQ& L, const std::vector<VecQ>& components)
{
    require_class(X, L);
    for (const VecQ& e : components)
        require_length(e, static_cast<std::size_t>(X.rho), "rigid component class");
    return X.rho - rank(components, static_cast<std::size_t>(X.rho));
}

std::string RigidComponentCheck::diagnostic() const
{
    if (consistent())
        return "rigid components agree with the face computation (b = " + std::to_string(b_geometric) + ")";
    return "inconsistent data: rigid components give b = " + std::to_string(b_components)
           + " but the minimal face gives b = " + std::to_string(b_geometric);
}

RigidComponentCheck check_rigid_components(const PolarizedVariety& X, const VecQ& L,
                                           const std::vector<VecQ>& components)
{
    return {b_via_rigid_components(X, L, components), b_geometric(X, L).b};
}

ABResult compute_ab(const PolarizedVariety& X, const VecQ& L)
{
    ABResult r;
    r.a = a_invariant(X, L);
    if (r.a.is_infinite())
        return r;
    r.uniruled = sgn(r.a.value()) > 0;
    BGeometric bg = b_geometric(X, L);
    r.b_geometric = bg.b;
    r.minimal_face = std::move(bg.face);
    r.adjoint_class = X.K + r.a.value() * L;
    if (X.galois)
        r.b_arithmetic = b_arithmetic(X, L);
    if (X.kappa_adjoint) {
        r.d = X.dim - *X.kappa_adjoint;
        r.adjoint_rigid = *X.kappa_adjoint == 0;
    }
    return r;
}

std::strong_ordering lex_compare(const InvariantPair& p, const InvariantPair& q)
{
    const auto first = compare(p.a, q.a);
    if (first != std::strong_ordering::equal)
        return first;
    return compare(p.b, q.b);
}

bool BoundReport::data_error() const
{
    return std::any_of(checks.begin(), checks.end(),
                       [](const BoundCheck& c) { return !c.advisory && c.status == BoundStatus::Fail; });
}

const BoundCheck* BoundReport::find(std::string_view name) const
{
    for (const BoundCheck& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

std::string_view to_string(BoundStatus s)
{
    switch (s) {
    case BoundStatus::Pass:
        return "pass";
    case BoundStatus::Fail:
        return "fail";
    case BoundStatus::Skipped:
        return "skipped";
    }
    return "?";
}

BoundReport bound_checks(const PolarizedVariety& X, const VecQ& L, const AValue& a)
{
    require_class(X, L);
    BoundReport report;
    const int n = X.dim;

    BoundCheck siu{"siu", BoundStatus::Skipped, false, false, ""};
    if (a.is_finite()) {
        const Rat limit = n + 1;
        siu.status = a.value() <= limit ? BoundStatus::Pass : BoundStatus::Fail;
        siu.attained = a.value() == limit;
        siu.detail = "a = " + to_string(a.value()) + (siu.status == BoundStatus::Pass ? " <= " : " > ")
                     + to_string(limit) + (siu.status == BoundStatus::Fail ? " (data error)" : "");
    } else {
        siu.detail = "a is infinite";
    }
    report.checks.push_back(siu);

    BoundCheck volume{"volume", BoundStatus::Skipped, true, false, ""};
    const std::optional<Rat> constant = n == 1 ? std::optional<Rat>(2)
                                        : n == 2 ? std::optional<Rat>(9)
                                        : n == 3 ? std::optional<Rat>(64)
                                                 : std::nullopt;
    if (a.is_infinite()) {
        volume.detail = "a is infinite";
    } else if (!X.degree_L) {
        volume.detail = "degree of L not supplied";
    } else if (!constant) {
        volume.detail = "no explicit constant in dimension " + std::to_string(n);
    } else {
        const Rat lhs = power(a.value(), n) * *X.degree_L;
        volume.status = lhs <= *constant ? BoundStatus::Pass : BoundStatus::Fail;
        volume.attained = lhs == *constant;
        std::ostringstream os;
        os << "a^" << n << " L^" << n << " = " << to_string(lhs) << (volume.status == BoundStatus::Pass ? " <= " : " > ")
           << to_string(*constant) << " (holds for adjoint rigid pairs)";
        volume.detail = os.str();
    }
    report.checks.push_back(volume);
    return report;
}

} // namespace fujita
