#include "fans.hpp"
#include "varieties.hpp"

#include "fujita/errors.hpp"

#include <doctest.h>

using namespace fujita;
using namespace fujita::testing;

namespace {

PolarizedVariety with_kappa(PolarizedVariety X, int kappa)
{
    X.kappa_adjoint = kappa;
    return X;
}

ThinMapRecord identity_record(const PolarizedVariety& X, const VecQ& L)
{
    const auto rho = static_cast<std::size_t>(X.rho);
    return make_record("identity", X, L, LinMapQ::identity(rho), true, 1, X.kappa_adjoint);
}

} // namespace

TEST_CASE("d_invariant examples")
{
    CHECK(d_invariant(p1xp1(), v({2, 2}), 0) == 2);
    CHECK(d_invariant(p1xp1(), v({2, 3}), 1) == 1);
    CHECK(d_invariant(biprojective(), v({3, 2}), 0) == 5);
    CHECK_THROWS_AS(d_invariant(p1xp1(), v({2, 2}), std::nullopt), ConsistencyError);
    CHECK_THROWS_AS(d_invariant(p1xp1(), v({2, 2}), 3), InputError);
    CHECK_THROWS_AS(d_invariant(p1xp1(), v({1, 0}), 0), PreconditionError);
}

TEST_CASE("adjoint_face_of_curves examples")
{
    CHECK(adjoint_face_of_curves(p1xp1(), v({2, 2})).dim() == 2);
    const Cone bl = adjoint_face_of_curves(blowup_p2(), v({1, 0}));
    CHECK(bl.dim() == 1);
    CHECK(bl.rays() == vs({{1, 0}}));
    CHECK(adjoint_face_of_curves(p1xp1(), v({1, 2})).dim() == 1);

    RandomData rnd(5);
    for (int i = 0; i < 40; ++i) {
        auto [X, L] = random_polarized(rnd, static_cast<std::size_t>(rnd.integer(1, 4)));
        CHECK(adjoint_face_of_curves(X, L).dim() == b_dual(X, L));
    }
}

TEST_CASE("is_face_contracting examples")
{
    const PolarizedVariety X = with_kappa(p1xp1(), 0);
    CHECK_FALSE(is_face_contracting(identity_record(X, v({2, 2})), X, v({2, 2})));

    // Y with rho 2 mapping to rank one X by (x, y) -> x + y.
    const PolarizedVariety P1 = rank_one("P1", 1, -2);
    const ThinMapRecord sum = make_record("sum", p1xp1(), v({2, 2}), LinMapQ::from_rows(vs({{1, 1}}), 2), false, 1, 0);
    CHECK(is_face_contracting(sum, projective_space(2), v({3})) == true);

    // Squaring the first factor of P1 x P1: f^*H1 = 2 H1, f_* doubles the
    // first curve class.
    const ThinMapRecord square = make_record("square", p1xp1(), v({4, 2}), LinMapQ::from_rows(vs({{2, 0}, {0, 1}}), 2),
                                             true, 2, 0);
    CHECK_FALSE(is_face_contracting(square, X, v({2, 2})));

    const ThinMapRecord mismatch = make_record("mismatch", P1, v({1}), LinMapQ::from_rows(vs({{1}, {0}}), 1), false, 1, 0);
    CHECK_THROWS_AS(is_face_contracting(mismatch, X, v({2, 2})), PreconditionError);
}

TEST_CASE("classify examples")
{
    const PolarizedVariety X = with_kappa(biprojective(), 0);
    const VecQ L = v({3, 2});
    const auto records = biprojective_records();
    CHECK(classify(records[0], X, L).tag == StratumTag::Z1);
    CHECK(classify(records[0], X, L).rule == "d-smaller");
    CHECK(classify(records[1], X, L).tag == StratumTag::NotExceptional);
    CHECK(classify(records[1], X, L).rule == "lex-smaller");
    CHECK(classify(records[2], X, L).tag == StratumTag::NotExceptional);
    CHECK(classify(records[3], X, L).tag == StratumTag::Z0);

    const Classification q = classify_record(records[0], X, L);
    CHECK(q.a_Y == AValue(Rat(1)));
    CHECK(q.b_Y == 2);
    CHECK(q.d_Y == 2);

    // (a, b) = (1, 1) against (1, 2).
    const PolarizedVariety Q = with_kappa(p1xp1(), 0);
    const ThinMapRecord smaller = make_record("smaller", rank_one("P1", 1, -2), v({2}),
                                              LinMapQ::from_rows(vs({{1}, {0}}), 1), false, 1, 0);
    CHECK(classify(smaller, Q, v({2, 2})).tag == StratumTag::NotExceptional);

    // dY > dX with equal (a, b): X = P1 x P1 with kappa 1 (d = 1) and Y with d = 2.
    const PolarizedVariety X1 = with_kappa(p1xp1(), 1);
    const ThinMapRecord larger = make_record("larger", p1xp1(), v({2, 2}), LinMapQ::identity(2), true, 2, 0);
    CHECK(classify(larger, X1, v({2, 2})).tag == StratumTag::Z3);
}

TEST_CASE("classify: validation and quarantine")
{
    const PolarizedVariety X = with_kappa(p1xp1(), 0);
    CHECK_THROWS_AS(classify(identity_record(X, v({2, 2})), X, v({2, 2})), ValidationError);

    ThinMapRecord bad_shape = make_record("bad", p1xp1(), v({2, 2}), LinMapQ::from_rows(vs({{1, 0}}), 2), true, 2, 0);
    CHECK_THROWS_AS(classify(bad_shape, X, v({2, 2})), ValidationError);

    ThinMapRecord not_big = make_record("not big", p1xp1(), v({2, 0}), LinMapQ::identity(2), true, 2, 0);
    CHECK_THROWS_AS(classify(not_big, X, v({2, 2})), Quarantined);

    ThinMapRecord no_kappa = make_record("no kappa", p1xp1(), v({2, 2}), LinMapQ::identity(2), true, 2, std::nullopt);
    CHECK_THROWS_AS(classify(no_kappa, X, v({2, 2})), InputError);
}

TEST_CASE("identity never contracts")
{
    RandomData rnd(8);
    for (int i = 0; i < 40; ++i) {
        auto [X, L] = random_polarized(rnd, static_cast<std::size_t>(rnd.integer(1, 4)));
        X.kappa_adjoint = 0;
        const Classification c = classify_record(identity_record(X, L), X, L, false);
        CHECK(c.stratum.tag == StratumTag::NotExceptional);
        CHECK(c.face_contracting == false);
    }
}

TEST_CASE("Z2 gating by mutation")
{
    const PolarizedVariety X = with_kappa(p1xp1(), 0);
    const VecQ L = v({2, 2});
    ThinMapRecord r = make_record("cover", p1xp1(), v({2, 2}), LinMapQ::from_rows(vs({{1, 1}, {1, 1}}), 2), true, 2, 0);
    CHECK(classify(r, X, L).tag == StratumTag::Z2);
    CHECK(classify(r, X, L).rule == "face-contracting");
    r.pushforward = LinMapQ::from_rows(vs({{1, 1}, {0, 1}}), 2);
    CHECK(classify(r, X, L).tag == StratumTag::NotExceptional);
    CHECK(classify(r, X, L).rule == "not-face-contracting");
}

TEST_CASE("b-dominance cross-check")
{
    // X = P2 with b = 1; Y = P1 x P1 dominant with b = 2 and an injective
    // pushforward is impossible (rho(X) = 1), so it must contract.
    const PolarizedVariety X = with_kappa(rank_one("surface", 2, -2), 0);
    ThinMapRecord r = make_record("cover", p1xp1(), v({2, 2}), LinMapQ::from_rows(vs({{1, 1}}), 2), true, 2, 0);
    Classification c = classify_record(r, X, v({2}));
    CHECK(c.stratum.tag == StratumTag::Z2);
    CHECK(c.face_contracting == true);
    CHECK(c.diagnostics.empty());

    // Same comparison against a rank-two X with an injective pushforward.
    const PolarizedVariety X2 = with_kappa(make_variety("X2", 2, v({-2, -1}), vs({{1, 0}, {0, 1}})), 0);
    r.pushforward = LinMapQ::identity(2);
    c = classify_record(r, X2, v({2, 2}));
    CHECK(c.stratum.tag == StratumTag::Z2);
    CHECK(c.face_contracting == false);
    REQUIRE(c.diagnostics.size() == 1);
    CHECK(c.diagnostics[0].find("inconsistent") != std::string::npos);
}

TEST_CASE("ledger on the biprojective bundle")
{
    const PolarizedVariety X = with_kappa(biprojective(), 0);
    const Report report = ledger(X, v({3, 2}), biprojective_records(), {"S"});
    CHECK(report.closed_set == std::vector<std::string>{"S"});
    CHECK(report.retained_families == std::vector<std::string>{"first-projection quadrics"});
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].name == "first-projection quadrics");

    auto reversed = biprojective_records();
    std::reverse(reversed.begin(), reversed.end());
    CHECK(format_report(ledger(X, v({3, 2}), reversed, {"S"})) == format_report(report));
}

TEST_CASE("ledger: empty, twists, and per-record errors")
{
    const PolarizedVariety P2 = with_kappa(projective_space(2), 0);
    const Report empty = ledger(P2, v({1}), {}, {});
    CHECK(empty.closed_set.empty());
    CHECK(empty.retained_families.empty());
    CHECK(format_report(empty).find("thin set: empty") != std::string::npos);

    const PolarizedVariety X = with_kappa(p1xp1(), 0);
    ThinMapRecord a = make_record("cover#1", p1xp1(), v({2, 2}), LinMapQ::from_rows(vs({{1, 1}, {1, 1}}), 2), true, 2, 0);
    ThinMapRecord b = a;
    b.name = "cover#2";
    ThinMapRecord broken = a;
    broken.name = "broken";
    broken.pullback_L = v({1});
    ThinMapRecord flat = a;
    flat.name = "flat";
    flat.pullback_L = v({2, 0});
    const Report report = ledger(X, v({2, 2}), {b, broken, a, flat}, {});
    CHECK(report.retained_families == std::vector<std::string>{"cover"});
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].name == "broken");
    CHECK_FALSE(report.rows[0].error.empty());
    CHECK(report.rows[3].name == "flat");
    CHECK(report.rows[3].quarantined);
}

TEST_CASE("toric boundary records")
{
    const Fan f1 = hirzebruch_fan(1);
    const auto records = boundary_records(f1, anticanonical(f1));
    REQUIRE(records.size() == 4);
    PolarizedVariety X = variety_from_fan(f1);
    X.kappa_adjoint = adjoint_analysis(f1, anticanonical(f1)).kappa;
    const VecQ L = class_lattice(f1).project.apply(anticanonical(f1));
    for (const auto& r : records) {
        // Projection formula: f^*L . C = L . f_*C for every curve class.
        for (std::size_t j = 0; j < static_cast<std::size_t>(r.source.rho); ++j) {
            const VecQ C = unit_vector(static_cast<std::size_t>(r.source.rho), j);
            CHECK(dot(r.pullback_L, C) == dot(L, r.pushforward.apply(C)));
        }
    }
    CHECK(classify(records[1], X, L).tag == StratumTag::Z1);
    CHECK(classify(records[0], X, L).tag == StratumTag::NotExceptional);
    CHECK(classify(records[3], X, L).tag == StratumTag::NotExceptional);

    // L = H contracts E, which then sits in B_+.
    const auto h_records = boundary_records(f1, v({0, 0, 0, 1}));
    CHECK(h_records[1].in_closed_set);
    CHECK_FALSE(h_records[0].in_closed_set);
}
