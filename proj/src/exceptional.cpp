#include "fujita/exceptional.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fujita {

namespace {

std::string pair_string(const AValue& a, const std::optional<int>& b)
{
    return "(" + to_string(a) + ", " + (b ? std::to_string(*b) : std::string("inf")) + ")";
}

std::string b_kind(bool arithmetic)
{
    return arithmetic ? "arithmetic" : "geometric";
}

int b_for(const PolarizedVariety& V, const VecQ& L)
{
    return V.galois ? b_arithmetic(V, L) : b_geometric(V, L).b;
}

Stratum make(StratumTag tag, std::string rule, std::string reason)
{
    return {tag, std::move(rule), std::move(reason)};
}

Classification classify_against(const ThinMapRecord& r, const PolarizedVariety& X, const VecQ& L,
                                const TargetInvariants& T, bool require_thin)
{
    validate_record(r, X, require_thin);
    Classification out;
    if (r.in_closed_set) {
        out.stratum = make(StratumTag::Z0, "closed-set", "image lies in the accumulated closed set");
        return out;
    }

    out.a_Y = a_invariant(r.source, r.pullback_L);
    if (out.a_Y.is_infinite())
        throw Quarantined(r.name + ": f^*L = " + to_string(r.pullback_L) +
                          " is not big on the source, so a = b = inf; record not classified");
    out.b_arithmetic = r.source.galois.has_value();
    out.b_Y = b_for(r.source, r.pullback_L);

    const std::string ours = pair_string(out.a_Y, out.b_Y);
    const std::string theirs = pair_string(T.a, T.b);
    const auto cmp = lex_compare({out.a_Y, *out.b_Y}, {T.a, T.b});
    if (cmp == std::strong_ordering::less) {
        out.stratum = make(StratumTag::NotExceptional, "lex-smaller", "(a, b) = " + ours + " < " + theirs);
        return out;
    }

    if (!T.d)
        throw InputError(X.name + ": kappa_adjoint is needed to compare d-invariants");
    if (!r.kappa_Y)
        throw InputError(r.name + ": kappa_Y is needed to compare d-invariants");
    out.d_Y = d_invariant(r.source, r.pullback_L, r.kappa_Y);
    const int dY = *out.d_Y, dX = *T.d;
    const std::string d_text = "d = " + std::to_string(dY) + " vs " + std::to_string(dX);

    if (dY < dX) {
        out.stratum = make(StratumTag::Z1, "d-smaller", d_text + ", (a, b) = " + ours + " >= " + theirs);
        return out;
    }
    if (dY > dX) {
        out.stratum = make(StratumTag::Z3, "d-larger", d_text + ", (a, b) = " + ours + " >= " + theirs);
        return out;
    }

    const bool same_a = out.a_Y == T.a;
    if (same_a) {
        out.face_contracting = is_face_contracting(r, X, L);
        if (!r.dominant)
            out.diagnostics.push_back("non-dominant map: face contraction uses the span-kernel test, "
                                      "which has no independent check in this case");
    }
    if (cmp == std::strong_ordering::greater) {
        if (same_a && *out.b_Y > T.b && !*out.face_contracting)
            out.diagnostics.push_back("inconsistent record: b_Y = " + std::to_string(*out.b_Y) + " > b_X = " +
                                      std::to_string(T.b) + " but the pushforward is injective on the face");
        out.stratum = make(StratumTag::Z2, "lex-greater", d_text + ", (a, b) = " + ours + " > " + theirs);
        return out;
    }
    if (*out.face_contracting)
        out.stratum = make(StratumTag::Z2, "face-contracting", d_text + ", (a, b) equal, f_* not injective on F_Y");
    else
        out.stratum =
            make(StratumTag::NotExceptional, "not-face-contracting", d_text + ", (a, b) equal, f_* injective on F_Y");
    return out;
}

} // namespace

void validate_record(const ThinMapRecord& r, const PolarizedVariety& X, bool require_thin)
{
    const auto rho_x = static_cast<std::size_t>(X.rho);
    const auto rho_y = static_cast<std::size_t>(r.source.rho);
    if (r.pushforward.rows() != rho_x || r.pushforward.cols() != rho_y)
        throw ValidationError(r.name + ": pushforward is " + std::to_string(r.pushforward.rows()) + "x" +
                              std::to_string(r.pushforward.cols()) + ", expected " + std::to_string(rho_x) + "x" +
                              std::to_string(rho_y));
    if (r.pullback_L.size() != rho_y)
        throw ValidationError(r.name + ": f^*L has length " + std::to_string(r.pullback_L.size()) + ", expected " +
                              std::to_string(rho_y));
    if (r.dim_Y != r.source.dim)
        throw ValidationError(r.name + ": dim_Y = " + std::to_string(r.dim_Y) + " but the source has dimension " +
                              std::to_string(r.source.dim));
    if (r.map_degree < 1)
        throw ValidationError(r.name + ": map degree must be at least 1");
    if (r.dominant && r.dim_Y != X.dim)
        throw ValidationError(r.name + ": dominant map with dim Y = " + std::to_string(r.dim_Y) + " != dim X = " +
                              std::to_string(X.dim));
    if (!r.dominant && r.dim_Y >= X.dim)
        throw ValidationError(r.name + ": non-dominant map needs dim Y < dim X");
    if (require_thin && r.dominant && r.map_degree == 1)
        throw ValidationError(r.name + ": dominant map of degree 1 is not thin");
    validate(r.source);
}

int d_invariant(const PolarizedVariety& V, const VecQ& L, std::optional<int> kappa)
{
    const AValue a = a_invariant(V, L);
    if (a.is_infinite())
        throw PreconditionError(V.name + ": d needs a finite a-invariant");
    if (!kappa)
        throw ConsistencyError(V.name + ": kappa = -inf contradicts finite a = " + to_string(a));
    if (*kappa < 0 || *kappa > V.dim)
        throw InputError(V.name + ": kappa = " + std::to_string(*kappa) + " outside [0, " + std::to_string(V.dim) +
                         "]");
    return V.dim - *kappa;
}

Cone adjoint_face_of_curves(const PolarizedVariety& V, const VecQ& L)
{
    const AValue a = a_invariant(V, L);
    if (a.is_infinite())
        throw PreconditionError(V.name + ": adjoint face needs a finite a-invariant");
    return intersect_subspace(dual(V.eff), {V.K + a.value() * L});
}

bool is_face_contracting(const ThinMapRecord& r, const PolarizedVariety& X, const VecQ& L)
{
    const AValue aX = a_invariant(X, L);
    const AValue aY = a_invariant(r.source, r.pullback_L);
    if (!(aX == aY))
        throw PreconditionError(r.name + ": face contraction compares equal a-values, got a(Y) = " + to_string(aY) +
                                " and a(X) = " + to_string(aX));
    if (r.pushforward.rows() != static_cast<std::size_t>(X.rho) ||
        r.pushforward.cols() != static_cast<std::size_t>(r.source.rho))
        throw InputError(r.name + ": pushforward has the wrong shape");
    const Cone face = adjoint_face_of_curves(r.source, r.pullback_L);
    const auto basis = canonical_span_basis(span_generators(face), face.ambient_dim());
    std::vector<VecQ> images;
    for (const VecQ& v : basis)
        images.push_back(r.pushforward.apply(v));
    return rank(images, static_cast<std::size_t>(X.rho)) < static_cast<int>(basis.size());
}

std::string_view to_string(StratumTag t)
{
    switch (t) {
    case StratumTag::NotExceptional:
        return "NotExceptional";
    case StratumTag::Z0:
        return "Z0";
    case StratumTag::Z1:
        return "Z1";
    case StratumTag::Z2:
        return "Z2";
    case StratumTag::Z3:
        return "Z3";
    }
    return "?";
}

TargetInvariants target_invariants(const PolarizedVariety& X, const VecQ& L)
{
    TargetInvariants T;
    T.a = a_invariant(X, L);
    if (T.a.is_infinite())
        throw PreconditionError(X.name + ": L = " + to_string(L) + " is not big, nothing to classify against");
    T.b_arithmetic = X.galois.has_value();
    T.b = b_for(X, L);
    if (X.kappa_adjoint)
        T.d = d_invariant(X, L, X.kappa_adjoint);
    return T;
}

Classification classify_record(const ThinMapRecord& r, const PolarizedVariety& X, const VecQ& L, bool require_thin)
{
    return classify_against(r, X, L, target_invariants(X, L), require_thin);
}

Stratum classify(const ThinMapRecord& r, const PolarizedVariety& X, const VecQ& L)
{
    return classify_record(r, X, L).stratum;
}

std::string family_of(std::string_view record_name)
{
    return std::string(record_name.substr(0, record_name.find('#')));
}

Report ledger(const PolarizedVariety& X, const VecQ& L, const std::vector<ThinMapRecord>& records,
              std::vector<std::string> closed_components)
{
    Report report;
    report.variety = X.name;
    report.L = L;
    report.target = target_invariants(X, L);
    std::sort(closed_components.begin(), closed_components.end());
    closed_components.erase(std::unique(closed_components.begin(), closed_components.end()),
                            closed_components.end());
    report.closed_components = closed_components;

    std::vector<const ThinMapRecord*> order;
    for (const ThinMapRecord& r : records)
        order.push_back(&r);
    std::stable_sort(order.begin(), order.end(),
                     [](const ThinMapRecord* x, const ThinMapRecord* y) { return x->name < y->name; });

    std::set<std::string> closed(closed_components.begin(), closed_components.end());
    std::set<std::string> retained;
    for (const ThinMapRecord* r : order) {
        LedgerRow row;
        row.name = r->name;
        row.note = r->note;
        try {
            row.result = classify_against(*r, X, L, report.target, true);
            switch (row.result->stratum.tag) {
            case StratumTag::Z1:
            case StratumTag::Z2:
            case StratumTag::Z3:
                retained.insert(family_of(r->name));
                break;
            case StratumTag::Z0:
            case StratumTag::NotExceptional:
                break;
            }
        } catch (const Quarantined& e) {
            row.quarantined = true;
            row.error = e.what();
        } catch (const Error& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    report.closed_set.assign(closed.begin(), closed.end());
    report.retained_families.assign(retained.begin(), retained.end());
    return report;
}

std::string format_report(const Report& report)
{
    std::ostringstream out;
    const TargetInvariants& T = report.target;
    out << "variety: " << report.variety << "\n";
    out << "L = " << to_string(report.L) << "\n";
    out << "a = " << to_string(T.a) << ", b = " << T.b << " (" << b_kind(T.b_arithmetic) << "), d = "
        << (T.d ? std::to_string(*T.d) : std::string("unknown")) << "\n";
    out << "closed components:";
    if (report.closed_components.empty())
        out << " none";
    for (const auto& c : report.closed_components)
        out << " " << c;
    out << "\n";

    out << "records:";
    if (report.rows.empty())
        out << " none";
    out << "\n";
    for (const LedgerRow& row : report.rows) {
        out << "  " << row.name << ": ";
        if (!row.result) {
            out << (row.quarantined ? "quarantined" : "error") << "; " << row.error << "\n";
            continue;
        }
        const Classification& c = *row.result;
        out << to_string(c.stratum.tag) << " [" << c.stratum.rule << "]";
        if (c.b_Y)
            out << " a = " << to_string(c.a_Y) << ", b = " << *c.b_Y << " (" << b_kind(c.b_arithmetic) << ")";
        if (c.d_Y)
            out << ", d = " << *c.d_Y;
        if (!c.stratum.reason.empty())
            out << "; " << c.stratum.reason;
        out << "\n";
        for (const auto& d : c.diagnostics)
            out << "    note: " << d << "\n";
        if (!row.note.empty())
            out << "    " << row.note << "\n";
    }

    out << "thin set:";
    if (report.closed_set.empty() && report.retained_families.empty()) {
        out << " empty\n";
        return out.str();
    }
    out << "\n  closed set:";
    if (report.closed_set.empty())
        out << " none";
    for (const auto& c : report.closed_set)
        out << " " << c;
    out << "\n  images of:";
    if (report.retained_families.empty())
        out << " none";
    for (const auto& f : report.retained_families)
        out << " " << f;
    out << "\n";
    return out.str();
}

std::vector<ThinMapRecord> boundary_records(const Fan& f, const ToricDivisor& L)
{
    std::vector<ThinMapRecord> out;
    validate(f);
    if (f.rank < 2)
        return out;
    const ClassLattice cl = class_lattice(f);
    const auto rho = static_cast<std::size_t>(cl.rho);
    const auto bplus = augmented_base_locus(f, L);

    // Rational torus-invariant lifts of the basis classes of N^1(X).
    std::vector<ToricDivisor> basis_lifts;
    for (std::size_t j = 0; j < rho; ++j)
        basis_lifts.push_back(*solve(cl.project, unit_vector(rho, j)));

    for (std::size_t ray = 0; ray < f.rays.size(); ++ray) {
        const BoundaryRestriction restr = boundary_restriction(f, ray, L);
        const ClassLattice star = class_lattice(restr.fan);
        const auto rho_y = static_cast<std::size_t>(star.rho);

        std::vector<VecQ> pullback_columns;
        for (const ToricDivisor& lift : basis_lifts)
            pullback_columns.push_back(star.project.apply(boundary_restriction(f, ray, lift).divisor));
        const LinMapQ pullback = LinMapQ::from_columns(pullback_columns, rho_y);

        ThinMapRecord r;
        r.name = "D" + std::to_string(ray);
        r.source = variety_from_fan(restr.fan);
        r.pullback_L = star.project.apply(restr.divisor);
        r.pushforward = pullback.transpose();
        r.dim_Y = f.rank - 1;
        r.dominant = false;
        r.map_degree = 1;
        const AdjointAnalysis analysis = adjoint_analysis(restr.fan, restr.divisor);
        r.kappa_Y = analysis.kappa;
        r.source.kappa_adjoint = analysis.kappa;
        r.in_closed_set = std::any_of(bplus.begin(), bplus.end(), [&](const std::vector<std::size_t>& tau) {
            return tau.empty() || (tau.size() == 1 && tau[0] == ray);
        });
        r.note = "boundary divisor of ray " + to_string(f.rays[ray]);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace fujita
