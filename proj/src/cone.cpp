#include "fujita/cone.hpp"

#include "fujita/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace fujita {

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (std::uint64_t w : words_)
            c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    Bits operator&(const Bits& o) const
    {
        Bits r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i)
            r.words_[i] &= o.words_[i];
        return r;
    }

    bool contains(const Bits& o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((o.words_[i] & ~words_[i]) != 0)
                return false;
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct DDRay {
    VecQ coords;
    Bits zeros;
};

// Extreme rays of the pointed cone { y : rows * y >= 0 } in Q^k. The rows
// must have rank k.
std::vector<VecQ> pointed_double_description(const std::vector<VecQ>& rows, std::size_t k)
{
    if (k == 0)
        return {};
    const std::size_t m = rows.size();

    // Seed with a simplicial cone cut out by k independent rows.
    std::vector<std::size_t> basis_rows;
    std::vector<VecQ> chosen;
    for (std::size_t i = 0; i < m && basis_rows.size() < k; ++i) {
        chosen.push_back(rows[i]);
        if (rank(chosen, k) == static_cast<int>(chosen.size()))
            basis_rows.push_back(i);
        else
            chosen.pop_back();
    }
    if (basis_rows.size() < k)
        throw ConsistencyError("double description: constraint system is not pointed");

    const auto inv = inverse(LinMapQ::from_rows(chosen, k));
    std::vector<DDRay> rays;
    std::vector<bool> processed(m, false);
    for (std::size_t i : basis_rows)
        processed[i] = true;
    for (std::size_t j = 0; j < k; ++j) {
        DDRay r{primitive(inv->column(j)), Bits(m)};
        for (std::size_t t = 0; t < k; ++t)
            if (t != j)
                r.zeros.set(basis_rows[t]);
        rays.push_back(std::move(r));
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (processed[i])
            continue;
        processed[i] = true;

        std::vector<Rat> value(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<DDRay> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = dot(rows[i], rays[r].coords);
            const int s = sgn(value[r]);
            if (s > 0)
                pos.push_back(r);
            else if (s < 0)
                neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (sgn(value[r]) == 0)
                    rays[r].zeros.set(i);
            continue;
        }

        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (sgn(value[r]) < 0)
                continue;
            DDRay kept = rays[r];
            if (sgn(value[r]) == 0)
                kept.zeros.set(i);
            next.push_back(std::move(kept));
        }
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                const Bits common = rays[p].zeros & rays[n].zeros;
                if (common.count() + 2 < k)
                    continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != n && rays[r].zeros.contains(common))
                        adjacent = false;
                if (!adjacent)
                    continue;
                DDRay fresh{primitive(value[p] * rays[n].coords - value[n] * rays[p].coords), common};
                fresh.zeros.set(i);
                next.push_back(std::move(fresh));
            }
        }
        rays = std::move(next);
    }

    std::vector<VecQ> out;
    out.reserve(rays.size());
    for (DDRay& r : rays)
        out.push_back(std::move(r.coords));
    return out;
}

struct Generators {
    std::vector<VecQ> rays;
    std::vector<VecQ> lineality;
};

// V-representation of { x : <a, x> >= 0 (a in ineqs), <e, x> = 0 (e in eqs) }.
// Rays come back orthogonal to the lineality space.
Generators enumerate_rays(std::size_t d, const std::vector<VecQ>& ineqs, const std::vector<VecQ>& eqs)
{
    std::vector<VecQ> all = ineqs;
    all.insert(all.end(), eqs.begin(), eqs.end());
    Generators g;
    g.lineality = canonical_span_basis(nullspace(all, d), d);

    // Work in U = ker(eqs) intersected with the orthogonal complement of the
    // lineality space, where the cone is pointed.
    std::vector<VecQ> cut = eqs;
    cut.insert(cut.end(), g.lineality.begin(), g.lineality.end());
    const std::vector<VecQ> u = nullspace(cut, d);
    const std::size_t k = u.size();

    std::vector<VecQ> restricted;
    for (const VecQ& a : ineqs) {
        VecQ row(k);
        for (std::size_t j = 0; j < k; ++j)
            row[j] = dot(a, u[j]);
        if (!is_zero(row))
            restricted.push_back(primitive(row));
    }

    for (const VecQ& y : pointed_double_description(restricted, k)) {
        VecQ x = zeros(d);
        for (std::size_t j = 0; j < k; ++j)
            if (sgn(y[j]) != 0)
                x = x + y[j] * u[j];
        g.rays.push_back(primitive(x));
    }
    return g;
}

std::vector<VecQ> sorted_unique(std::vector<VecQ> v)
{
    std::sort(v.begin(), v.end(), lex_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void check_lengths(const std::vector<VecQ>& vs, std::size_t d, std::string_view what)
{
    for (const VecQ& v : vs)
        require_length(v, d, what);
}

} // namespace

Cone Cone::from_generators(std::size_t ambient_dim, const std::vector<VecQ>& generators,
                           const std::vector<VecQ>& lineality_generators)
{
    check_lengths(generators, ambient_dim, "cone generator");
    check_lengths(lineality_generators, ambient_dim, "lineality generator");
    const Generators h = enumerate_rays(ambient_dim, generators, lineality_generators);
    const Generators v = enumerate_rays(ambient_dim, h.rays, h.lineality);
    Cone c;
    c.ambient_dim_ = ambient_dim;
    c.rays_ = sorted_unique(v.rays);
    c.lineality_ = v.lineality;
    c.facets_ = sorted_unique(h.rays);
    c.equations_ = h.lineality;
    return c;
}

Cone Cone::from_inequalities(std::size_t ambient_dim, const std::vector<VecQ>& normals,
                             const std::vector<VecQ>& equations)
{
    check_lengths(normals, ambient_dim, "inequality normal");
    check_lengths(equations, ambient_dim, "equation normal");
    const Generators v = enumerate_rays(ambient_dim, normals, equations);
    const Generators h = enumerate_rays(ambient_dim, v.rays, v.lineality);
    Cone c;
    c.ambient_dim_ = ambient_dim;
    c.rays_ = sorted_unique(v.rays);
    c.lineality_ = v.lineality;
    c.facets_ = sorted_unique(h.rays);
    c.equations_ = h.lineality;
    return c;
}

bool Cone::contains(const VecQ& p) const
{
    return membership(*this, p) != Membership::Outside;
}

std::string_view to_string(Membership m)
{
    switch (m) {
    case Membership::Outside:
        return "outside";
    case Membership::Boundary:
        return "boundary";
    case Membership::Interior:
        return "interior";
    case Membership::RelativeInterior:
        return "relative-interior";
    }
    return "?";
}

Cone dual(const Cone& c)
{
    // The canonical conventions for (rays, lineality) and (facets, equations)
    // coincide, so dualising swaps the two descriptions.
    Cone d;
    d.ambient_dim_ = c.ambient_dim_;
    d.rays_ = c.facets_;
    d.lineality_ = c.equations_;
    d.facets_ = c.rays_;
    d.equations_ = c.lineality_;
    return d;
}

Membership membership(const Cone& c, const VecQ& p)
{
    require_length(p, c.ambient_dim(), "membership query");
    for (const VecQ& e : c.equations())
        if (sgn(dot(e, p)) != 0)
            return Membership::Outside;
    bool strict = true;
    for (const VecQ& f : c.facets()) {
        const int s = sgn(dot(f, p));
        if (s < 0)
            return Membership::Outside;
        if (s == 0)
            strict = false;
    }
    if (!strict)
        return Membership::Boundary;
    return c.is_full_dimensional() ? Membership::Interior : Membership::RelativeInterior;
}

std::vector<VecQ> Face::rays() const
{
    std::vector<VecQ> out;
    for (const VecQ& r : parent.rays()) {
        bool on_face = true;
        for (std::size_t i : tight_facets)
            if (sgn(dot(parent.facets()[i], r)) != 0) {
                on_face = false;
                break;
            }
        if (on_face)
            out.push_back(r);
    }
    return out;
}

Cone Face::as_cone() const
{
    return Cone::from_generators(parent.ambient_dim(), rays(), parent.lineality());
}

Face minimal_face_containing(const Cone& c, const VecQ& p)
{
    if (membership(c, p) == Membership::Outside)
        throw PreconditionError("minimal face: point " + to_string(p) + " lies outside the cone");
    Face f{c, {}, 0};
    for (std::size_t i = 0; i < c.facets().size(); ++i)
        if (sgn(dot(c.facets()[i], p)) == 0)
            f.tight_facets.push_back(i);
    std::vector<VecQ> span = f.rays();
    span.insert(span.end(), c.lineality().begin(), c.lineality().end());
    f.dim = rank(span, c.ambient_dim());
    return f;
}

Cone image(const Cone& c, const LinMapQ& f)
{
    if (f.cols() != c.ambient_dim())
        throw InputError("image: map has " + std::to_string(f.cols()) + " columns but the cone lives in dimension "
                         + std::to_string(c.ambient_dim()));
    std::vector<VecQ> gens, lin;
    for (const VecQ& r : c.rays())
        gens.push_back(f.apply(r));
    for (const VecQ& l : c.lineality())
        lin.push_back(f.apply(l));
    return Cone::from_generators(f.rows(), gens, lin);
}

std::vector<VecQ> kernel(const LinMapQ& f)
{
    return canonical_span_basis(nullspace(f.row_list(), f.cols()), f.cols());
}

Cone intersect_subspace(const Cone& c, const std::vector<VecQ>& normals)
{
    check_lengths(normals, c.ambient_dim(), "subspace normal");
    std::vector<VecQ> eqs = c.equations();
    eqs.insert(eqs.end(), normals.begin(), normals.end());
    return Cone::from_inequalities(c.ambient_dim(), c.facets(), eqs);
}

int cone_dim(const Cone& c)
{
    return c.dim();
}

std::vector<VecQ> span_generators(const Cone& c)
{
    std::vector<VecQ> out = c.rays();
    out.insert(out.end(), c.lineality().begin(), c.lineality().end());
    return out;
}

} // namespace fujita
