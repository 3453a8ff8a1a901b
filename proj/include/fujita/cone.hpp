#pragma once

#include "fujita/linalg.hpp"
#include "fujita/rational.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace fujita {

/// A rational polyhedral cone held in both representations at once:
///
///   cone(rays) + span(lineality) = { x : <f, x> >= 0 for f in facets,
///                                        <e, x>  = 0 for e in equations }
///
/// The fields are canonical, so two cones are equal as sets iff they compare
/// equal. Rays are extreme rays of the pointed part taken orthogonal to the
/// lineality space; facets are irredundant normals taken inside the linear
/// span of the cone. Both are primitive integer vectors in lexicographic
/// order. Lineality and equations are RREF bases scaled to primitive
/// integers.
class Cone {
public:
    /// The zero cone in the zero-dimensional space.
    Cone() = default;

    /// cone(generators) + span(lineality_generators).
    static Cone from_generators(std::size_t ambient_dim, const std::vector<VecQ>& generators,
                                const std::vector<VecQ>& lineality_generators = {});

    /// { x : <n, x> >= 0 for n in normals, <e, x> = 0 for e in equations }.
    static Cone from_inequalities(std::size_t ambient_dim, const std::vector<VecQ>& normals,
                                  const std::vector<VecQ>& equations = {});

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<VecQ>& rays() const { return rays_; }
    const std::vector<VecQ>& lineality() const { return lineality_; }
    const std::vector<VecQ>& facets() const { return facets_; }
    const std::vector<VecQ>& equations() const { return equations_; }

    /// Dimension of the linear span.
    int dim() const { return static_cast<int>(ambient_dim_ - equations_.size()); }
    bool is_full_dimensional() const { return equations_.empty(); }
    bool is_pointed() const { return lineality_.empty(); }

    bool contains(const VecQ& p) const;

    bool operator==(const Cone&) const = default;

private:
    friend Cone dual(const Cone& c);

    std::size_t ambient_dim_ = 0;
    std::vector<VecQ> rays_;
    std::vector<VecQ> lineality_;
    std::vector<VecQ> facets_;
    std::vector<VecQ> equations_;
};

enum class Membership { Outside, Boundary, Interior, RelativeInterior };

std::string_view to_string(Membership m);

/// { l : <l, x> >= 0 for all x in c }.
Cone dual(const Cone& c);

Membership membership(const Cone& c, const VecQ& p);

/// Face of `parent` cut out by the facet normals indexed by `tight_facets`.
struct Face {
    Cone parent;
    std::vector<std::size_t> tight_facets;
    int dim = 0;

    /// Rays of the parent lying on this face; together with the parent's
    /// lineality they generate the face.
    std::vector<VecQ> rays() const;
    Cone as_cone() const;
};

/// The smallest face containing p; p lies in its relative interior.
/// Throws PreconditionError if p is outside c.
Face minimal_face_containing(const Cone& c, const VecQ& p);

/// f(c), computed by pushing generators forward.
Cone image(const Cone& c, const LinMapQ& f);

/// Canonical basis of ker f.
std::vector<VecQ> kernel(const LinMapQ& f);

/// c intersected with { x : <n, x> = 0 for n in normals }.
Cone intersect_subspace(const Cone& c, const std::vector<VecQ>& normals);

int cone_dim(const Cone& c);

/// A basis-sized generating set of span(c): rays and lineality together.
std::vector<VecQ> span_generators(const Cone& c);

} // namespace fujita
