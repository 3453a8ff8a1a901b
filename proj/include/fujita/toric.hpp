#pragma once

#include "fujita/errors.hpp"
#include "fujita/invariants.hpp"
#include "fujita/linalg.hpp"
#include "fujita/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fujita {

/// A smooth complete fan in N = Z^rank.
struct Fan {
    std::string name;
    int rank = 0;
    std::vector<VecQ> rays;
    std::vector<std::vector<std::size_t>> max_cones;

    bool operator==(const Fan&) const = default;
};

/// Coefficients of sum a_rho D_rho, one per ray.
using ToricDivisor = VecQ;

/// Raised when a star fan is singular. `cone` lists the offending rays.
class ResolutionRequired : public Error {
public:
    ResolutionRequired(const std::string& what, std::vector<std::size_t> cone)
        : Error(what), cone(std::move(cone))
    {
    }
    std::vector<std::size_t> cone;
};

/// Checks primitivity, smoothness and completeness. Completeness is the
/// wall-pairing test (every wall bounds exactly two max cones, one on each
/// side) plus a generic point lying in exactly one max cone.
void validate(const Fan& f);

/// All ones: the divisor sum D_rho, whose class is -K.
ToricDivisor anticanonical(const Fan& f);

struct ClassLattice {
    int rho = 0;
    /// Z^#rays -> N^1 = Pic, kernel = divisors of characters.
    LinMapQ project;
};

/// Basis of Pic from the Gale dual of the ray matrix, put in Hermite normal
/// form so the basis does not depend on incidental choices.
ClassLattice class_lattice(const Fan& f);

/// Classes (in the basis dual to class_lattice) of the torus-invariant
/// curves, one per wall, sorted and deduplicated.
std::vector<VecQ> wall_curve_classes(const Fan& f);

/// K, eff and nef of the toric variety, in the class_lattice basis.
PolarizedVariety variety_from_fan(const Fan& f);

struct HalfSpace {
    VecQ normal;
    Rat offset;  // <normal, m> >= -offset
    bool operator==(const HalfSpace&) const = default;
};

struct Polytope {
    std::size_t ambient_dim = 0;
    std::vector<HalfSpace> inequalities;
    bool empty = true;
    /// Dimension of the affine hull; -1 when empty.
    int dim = -1;
    /// Sorted lexicographically.
    std::vector<VecQ> vertices;
};

/// Throws PreconditionError when the region is unbounded.
Polytope polytope_from_inequalities(std::size_t ambient_dim, std::vector<HalfSpace> inequalities);

/// P_D = { m : <m, v_rho> >= -a_rho }.
Polytope polytope_of(const Fan& f, const ToricDivisor& D);

/// dim P_D, or nullopt for kappa = -infinity (empty polytope).
std::optional<int> iitaka_dim(const Fan& f, const ToricDivisor& D);

/// n! vol(P) for a full-dimensional polytope, by a pulling triangulation;
/// 0 when P is lower dimensional.
Rat normalized_volume(const Polytope& P);

struct AdjointAnalysis {
    AValue a = AValue::infinity();
    std::optional<int> b;
    std::optional<int> kappa;
    std::optional<int> d;
    std::optional<bool> adjoint_rigid;
    /// The representative -1 + a L of K + a L.
    std::optional<ToricDivisor> adjoint_divisor;
};

AdjointAnalysis adjoint_analysis(const Fan& f, const ToricDivisor& L);

/// L^n. Throws PreconditionError unless the class of L is nef.
Rat degree(const Fan& f, const ToricDivisor& L);

struct BoundaryRestriction {
    Fan fan;
    ToricDivisor divisor;
    /// source_rays[i] is the index in the parent fan of the star ray i.
    std::vector<std::size_t> source_rays;
};

/// The star fan of ray `ray_index` (the fan of D_rho) and L restricted to it.
/// Throws ResolutionRequired when the star fan is singular.
BoundaryRestriction boundary_restriction(const Fan& f, std::size_t ray_index, const ToricDivisor& L);

struct BoundaryAValue {
    std::size_t ray = 0;
    /// nullopt when the star fan needed a resolution.
    std::optional<AValue> a;
    std::string warning;
};

/// a(D_rho, L|D_rho) for every ray.
std::vector<BoundaryAValue> boundary_a_values(const Fan& f, const ToricDivisor& L);

/// Components of B_+(L) for nef L, as cones tau (sorted ray index sets)
/// whose orbit closures V(tau) have (L|V(tau))^dim = 0 and are maximal with
/// that property. The empty cone stands for X itself (L not big).
std::vector<std::vector<std::size_t>> augmented_base_locus(const Fan& f, const ToricDivisor& L);

} // namespace fujita
