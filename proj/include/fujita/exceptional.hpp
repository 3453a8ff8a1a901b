#pragma once

#include "fujita/cone.hpp"
#include "fujita/errors.hpp"
#include "fujita/invariants.hpp"
#include "fujita/toric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fujita {

/// A candidate thin map f: Y -> X, given by its numerical data.
struct ThinMapRecord {
    std::string name;
    PolarizedVariety source;
    /// f^*L in N^1(Y).
    VecQ pullback_L;
    /// f_*: N_1(Y) -> N_1(X), rho(X) rows by rho(Y) columns.
    LinMapQ pushforward;
    int dim_Y = 0;
    bool dominant = false;
    int map_degree = 1;
    /// kappa(K_Y + a f^*L).
    std::optional<int> kappa_Y;
    bool in_closed_set = false;
    /// Free-form annotation carried through to the report.
    std::string note;

    bool operator==(const ThinMapRecord&) const = default;
};

/// Raised for records whose pullback is not big on Y (a_Y infinite).
class Quarantined : public Error {
public:
    using Error::Error;
};

/// Shape checks on a record against X. With require_thin, a dominant map of
/// degree 1 is rejected.
void validate_record(const ThinMapRecord& r, const PolarizedVariety& X, bool require_thin = true);

/// dim - kappa. nullopt kappa means -infinity, which contradicts finite a.
int d_invariant(const PolarizedVariety& V, const VecQ& L, std::optional<int> kappa);

/// dual(eff) cut by (K + aL)^perp: the face of Nef_1 the b-invariant counts.
Cone adjoint_face_of_curves(const PolarizedVariety& V, const VecQ& L);

/// Whether f_* is not injective on span F_Y. Requires a(Y, f^*L) = a(X, L).
bool is_face_contracting(const ThinMapRecord& r, const PolarizedVariety& X, const VecQ& L);

enum class StratumTag { NotExceptional, Z0, Z1, Z2, Z3 };

std::string_view to_string(StratumTag t);

struct Stratum {
    StratumTag tag = StratumTag::NotExceptional;
    /// Short identifier of the rule that fired.
    std::string rule;
    std::string reason;

    bool operator==(const Stratum&) const = default;
};

/// The invariants of X the classifier compares against.
struct TargetInvariants {
    AValue a = AValue::infinity();
    int b = 0;
    bool b_arithmetic = false;
    std::optional<int> d;
};

TargetInvariants target_invariants(const PolarizedVariety& X, const VecQ& L);

struct Classification {
    Stratum stratum;
    AValue a_Y = AValue::infinity();
    std::optional<int> b_Y;
    bool b_arithmetic = false;
    std::optional<int> d_Y;
    std::optional<bool> face_contracting;
    /// Cross-check findings that do not change the tag.
    std::vector<std::string> diagnostics;
};

Classification classify_record(const ThinMapRecord& r, const PolarizedVariety& X, const VecQ& L,
                               bool require_thin = true);

Stratum classify(const ThinMapRecord& r, const PolarizedVariety& X, const VecQ& L);

struct LedgerRow {
    std::string name;
    std::optional<Classification> result;
    bool quarantined = false;
    /// Validation or computation failure, when result is empty.
    std::string error;
    std::string note;
};

/// Records whose names share the part before '#' are twists of one family.
std::string family_of(std::string_view record_name);

struct Report {
    std::string variety;
    VecQ L;
    TargetInvariants target;
    std::vector<std::string> closed_components;
    /// Sorted by record name.
    std::vector<LedgerRow> rows;
    /// The thin set: the closed components (Z0 records land inside them),
    /// then the families whose maps are retained (Z1, Z2, Z3). Sorted.
    std::vector<std::string> closed_set;
    std::vector<std::string> retained_families;
};

Report ledger(const PolarizedVariety& X, const VecQ& L, const std::vector<ThinMapRecord>& records,
              std::vector<std::string> closed_components);

std::string format_report(const Report& report);

/// One non-dominant record per boundary divisor D_rho, with pullback and
/// pushforward computed from the star fans. Records for divisors inside
/// B_+(L) are flagged in_closed_set.
std::vector<ThinMapRecord> boundary_records(const Fan& f, const ToricDivisor& L);

} // namespace fujita
