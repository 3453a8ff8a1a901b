#pragma once

#include "fujita/cone.hpp"
#include "fujita/linalg.hpp"
#include "fujita/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace fujita {

/// A finite value or +infinity. The a- and b-invariants of a class that is
/// not big are +infinity by convention.
template <typename T>
class OrInfinity {
public:
    OrInfinity(T value) : value_(std::move(value)) {}

    static OrInfinity infinity() { return OrInfinity(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    const T& value() const { return value_.value(); }

    friend bool operator==(const OrInfinity& x, const OrInfinity& y) { return x.value_ == y.value_; }

    friend std::strong_ordering compare(const OrInfinity& x, const OrInfinity& y)
    {
        if (x.is_infinite() || y.is_infinite())
            return x.is_infinite() == y.is_infinite() ? std::strong_ordering::equal
                   : x.is_infinite()                  ? std::strong_ordering::greater
                                                      : std::strong_ordering::less;
        if (*x.value_ < *y.value_)
            return std::strong_ordering::less;
        if (*y.value_ < *x.value_)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    OrInfinity() = default;
    std::optional<T> value_;
};

using AValue = OrInfinity<Rat>;
using BValue = OrInfinity<int>;

std::string to_string(const AValue& a);
std::string to_string(const BValue& b);

/// X together with the cone data the invariants are read from. All classes
/// are coordinates in a fixed basis of N^1(X).
struct PolarizedVariety {
    std::string name;
    int dim = 0;
    int rho = 0;
    VecQ K;
    Cone eff;
    std::optional<Cone> nef;
    /// Generators of a finite group acting on N^1(X) (integer matrices).
    std::optional<std::vector<LinMapQ>> galois;
    /// kappa(K + a L), when known from outside.
    std::optional<int> kappa_adjoint;
    /// L^dim, when known from outside.
    std::optional<Rat> degree_L;

    bool operator==(const PolarizedVariety&) const = default;
};

/// Structural checks: lengths, nef inside eff, and a well-formed group
/// action (integral, unimodular, finite, preserving eff and K).
void validate(const PolarizedVariety& X);

/// Every element of the group generated by `generators`. Throws
/// ValidationError when the group has more than `limit` elements.
std::vector<LinMapQ> group_closure(const std::vector<LinMapQ>& generators, std::size_t dim, std::size_t limit = 4096);

bool is_big(const PolarizedVariety& X, const VecQ& L);

/// min { t : K + t L in eff }, +infinity when L is not big.
AValue a_invariant(const PolarizedVariety& X, const VecQ& L);

struct BGeometric {
    int b = 0;
    Face face;
};

/// Codimension of the minimal face of eff containing K + a L.
BGeometric b_geometric(const PolarizedVariety& X, const VecQ& L);

/// dim( dual(eff) intersected with (K + a L)^perp ); equals b_geometric.
int b_dual(const PolarizedVariety& X, const VecQ& L);

/// Same count restricted to the subspace of N_1 fixed by the group action.
int b_arithmetic(const PolarizedVariety& X, const VecQ& L);

/// rho - rank(span of the rigid components).
int b_via_rigid_components(const PolarizedVariety& X, const VecQ& L, const std::vector<VecQ>& components);

struct RigidComponentCheck {
    int b_components = 0;
    int b_geometric = 0;
    bool consistent() const { return b_components == b_geometric; }
    std::string diagnostic() const;
};

RigidComponentCheck check_rigid_components(const PolarizedVariety& X, const VecQ& L,
                                           const std::vector<VecQ>& components);

struct ABResult {
    AValue a = AValue::infinity();
    bool uniruled = false;
    BValue b_geometric = BValue::infinity();
    std::optional<Face> minimal_face;
    std::optional<int> b_arithmetic;
    /// K + a L; empty when a is infinite.
    VecQ adjoint_class;
    std::optional<int> d;
    std::optional<bool> adjoint_rigid;
};

ABResult compute_ab(const PolarizedVariety& X, const VecQ& L);

struct InvariantPair {
    AValue a;
    BValue b;
};

/// Lexicographic order on (a, b), +infinity above every finite value.
std::strong_ordering lex_compare(const InvariantPair& p, const InvariantPair& q);

enum class BoundStatus { Pass, Fail, Skipped };

struct BoundCheck {
    std::string name;
    BoundStatus status = BoundStatus::Skipped;
    /// Volume bounds only hold for adjoint rigid pairs (or pairs not covered
    /// by subvarieties with the same a); their failures are advisories.
    bool advisory = false;
    bool attained = false;
    std::string detail;
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    /// True when an unconditional bound fails (the input data is wrong).
    bool data_error() const;
    const BoundCheck* find(std::string_view name) const;
};

std::string_view to_string(BoundStatus s);

/// Siu's bound a <= n + 1 and the volume bounds a^n L^n <= C(n) for the
/// dimensions where C(n) is explicit (2 for curves, 9 for surfaces, 64 for
/// threefolds).
BoundReport bound_checks(const PolarizedVariety& X, const VecQ& L, const AValue& a);

} // namespace fujita
