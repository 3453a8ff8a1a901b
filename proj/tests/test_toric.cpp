#include "fans.hpp"
#include "lattice_oracle.hpp"
#include "random_data.hpp"
#include "varieties.hpp"

#include "fujita/errors.hpp"

#include <doctest.h>

using namespace fujita;
using namespace fujita::testing;

TEST_CASE("fan validation")
{
    CHECK_NOTHROW(validate(projective_fan(3)));
    CHECK_NOTHROW(validate(hirzebruch_fan(2)));

    Fan missing = projective_fan(2);
    missing.max_cones.pop_back();
    CHECK_THROWS_AS(validate(missing), ValidationError);

    Fan singular = projective_fan(2);
    singular.rays[2] = v({-1, -2});
    CHECK_THROWS_AS(validate(singular), ValidationError);

    Fan not_primitive = projective_fan(2);
    not_primitive.rays[0] = v({2, 0});
    CHECK_THROWS_AS(validate(not_primitive), ValidationError);

    // Same walls, but both cones on one side of the wall {0}.
    Fan folded;
    folded.rank = 2;
    folded.rays = vs({{1, 0}, {0, 1}, {1, 1}});
    folded.max_cones = {{0, 1}, {0, 2}, {1, 2}};
    CHECK_THROWS_AS(validate(folded), ValidationError);

    Fan bad_index = projective_fan(2);
    bad_index.max_cones[0] = {0, 7};
    CHECK_THROWS_AS(validate(bad_index), ValidationError);
}

TEST_CASE("Hermite normal form")
{
    const LinMapQ A = LinMapQ::from_rows(vs({{2, 4}, {3, 5}, {1, 1}}), 2);
    const HermiteForm h = hermite_form(A);
    CHECK(h.U.compose(A) == h.H);
    CHECK(abs(determinant(h.U)) == 1);
    CHECK(h.H.row(0) == v({1, 1}));
    CHECK(h.H.row(1) == v({0, 2}));
    CHECK(is_zero(h.H.row(2)));
}

TEST_CASE("class lattice examples")
{
    const ClassLattice p2 = class_lattice(projective_fan(2));
    CHECK(p2.rho == 1);
    CHECK(p2.project.row(0) == v({1, 1, 1}));
    CHECK(class_lattice(p1xp1_fan()).rho == 2);
    const ClassLattice f1 = class_lattice(hirzebruch_fan(1));
    CHECK(f1.rho == 2);
    CHECK(f1.project == LinMapQ::from_rows(vs({{1, 0, 1, 1}, {0, 1, 0, 1}}), 4));
}

TEST_CASE("variety_from_fan reproduces the hand examples")
{
    for (int n = 1; n <= 4; ++n) {
        const PolarizedVariety X = variety_from_fan(projective_fan(n));
        const PolarizedVariety expected = projective_space(n);
        CHECK(X.K == expected.K);
        CHECK(X.eff == expected.eff);
        CHECK(X.nef == expected.nef);
        CHECK(a_invariant(X, v({1})) == AValue(Rat(n + 1)));
    }
    const PolarizedVariety Q = variety_from_fan(p1xp1_fan());
    CHECK(Q.K == p1xp1().K);
    CHECK(Q.eff == p1xp1().eff);
    CHECK(Q.nef == p1xp1().nef);

    // Basis (H - E, E) -> basis (H, E).
    const LinMapQ to_he = LinMapQ::from_rows(vs({{1, 0}, {-1, 1}}), 2);
    const PolarizedVariety F = variety_from_fan(hirzebruch_fan(1));
    const PolarizedVariety B = blowup_p2();
    CHECK(to_he.apply(F.K) == B.K);
    CHECK(image(F.eff, to_he) == B.eff);
    CHECK(image(*F.nef, to_he) == *B.nef);
}

TEST_CASE("polytope examples")
{
    const Polytope tri = polytope_of(projective_fan(2), v({1, 0, 0}));
    CHECK(tri.dim == 2);
    CHECK(tri.vertices == vs({{-1, 0}, {-1, 1}, {0, 0}}));
    CHECK(normalized_volume(tri) == 1);

    const Polytope point = polytope_of(projective_fan(2), v({0, 0, 0}));
    CHECK_FALSE(point.empty);
    CHECK(point.dim == 0);
    CHECK(point.vertices == vs({{0, 0}}));

    const Polytope segment = polytope_of(p1xp1_fan(), v({0, 0, 1, 0}));
    CHECK(segment.dim == 1);
    CHECK(segment.vertices == vs({{0, -1}, {0, 0}}));

    CHECK(polytope_of(projective_fan(2), v({-1, 0, 0})).empty);
    CHECK_THROWS_AS(polytope_from_inequalities(1, {{v({1}), Rat(0)}}), PreconditionError);
}

TEST_CASE("iitaka dimension examples")
{
    CHECK(iitaka_dim(projective_fan(2), v({1, 1, 1})) == 2);
    CHECK(iitaka_dim(projective_fan(2), v({0, 0, 0})) == 0);
    CHECK(iitaka_dim(p1xp1_fan(), v({1, 1, 0, 1})) == 2);
    // K + L for L = 2 H1 + 3 H2.
    CHECK(iitaka_dim(p1xp1_fan(), v({1, -1, 2, -1})) == 1);
    CHECK_FALSE(iitaka_dim(projective_fan(2), v({-1, 0, 0})).has_value());
}

TEST_CASE("adjoint analysis examples")
{
    const auto p2 = adjoint_analysis(projective_fan(2), v({1, 0, 0}));
    CHECK(p2.a == AValue(Rat(3)));
    CHECK(p2.b == 1);
    CHECK(p2.kappa == 0);
    CHECK(p2.d == 2);
    CHECK(p2.adjoint_rigid == true);

    const auto q = adjoint_analysis(p1xp1_fan(), anticanonical(p1xp1_fan()));
    CHECK(q.a == AValue(Rat(1)));
    CHECK(q.b == 2);
    CHECK(q.kappa == 0);
    CHECK(q.d == 2);
    CHECK(q.adjoint_rigid == true);

    // L = 2 H1 + 3 H2 as 2 D_{e1} + 3 D_{e2}.
    const auto r = adjoint_analysis(p1xp1_fan(), v({2, 0, 3, 0}));
    CHECK(r.a == AValue(Rat(1)));
    CHECK(r.b == 1);
    CHECK(r.kappa == 1);
    CHECK(r.d == 1);
    CHECK(r.adjoint_rigid == false);

    const auto inf = adjoint_analysis(p1xp1_fan(), v({1, 0, 0, 0}));
    CHECK(inf.a.is_infinite());
    CHECK_FALSE(inf.b.has_value());
    CHECK_FALSE(inf.kappa.has_value());
}

TEST_CASE("degree examples and the lattice-count oracle")
{
    CHECK(degree(projective_fan(2), v({1, 0, 0})) == 1);
    CHECK(degree(projective_fan(3), anticanonical(projective_fan(3))) == 64);
    CHECK(degree(p1xp1_fan(), anticanonical(p1xp1_fan())) == 8);
    CHECK(degree(hirzebruch_fan(1), anticanonical(hirzebruch_fan(1))) == 8);
    CHECK_THROWS_AS(degree(hirzebruch_fan(1), v({0, 1, 0, 0})), PreconditionError);

    struct Case {
        Fan fan;
        ToricDivisor L;
    };
    const std::vector<Case> cases = {
        {p1xp1_fan(), anticanonical(p1xp1_fan())},
        {hirzebruch_fan(1), anticanonical(hirzebruch_fan(1))},
        {hirzebruch_fan(2), v({1, 0, 1, 3})},
        {projective_fan(3), v({2, 0, 0, 1})},
        {product_fan(projective_fan(1), projective_fan(2)), v({1, 0, 1, 1, 0})},
    };
    for (const Case& c : cases) {
        const Rat vol = degree(c.fan, c.L);
        CHECK(vol == Rat(lattice_growth_degree(c.fan, c.L, 8)));
    }
}

TEST_CASE("property: polytope scaling and degree homogeneity")
{
    RandomData rnd(99);
    const std::vector<Fan> fans = {projective_fan(2), projective_fan(3), p1xp1_fan(), hirzebruch_fan(1),
                                   hirzebruch_fan(2), product_fan(projective_fan(1), projective_fan(2))};
    for (int trial = 0; trial < 60; ++trial) {
        const Fan& f = fans[static_cast<std::size_t>(rnd.integer(0, static_cast<long>(fans.size()) - 1))];
        const ToricDivisor D = rnd.vector(f.rays.size(), -1, 3);
        const long m = rnd.integer(1, 4);
        const Polytope P = polytope_of(f, D);
        const Polytope Pm = polytope_of(f, Rat(m) * D);
        REQUIRE(P.empty == Pm.empty);
        REQUIRE(P.vertices.size() == Pm.vertices.size());
        for (std::size_t i = 0; i < P.vertices.size(); ++i)
            CHECK(Pm.vertices[i] == Rat(m) * P.vertices[i]);
        CHECK(iitaka_dim(f, D) == iitaka_dim(f, Rat(m) * D));

        const PolarizedVariety X = variety_from_fan(f);
        const VecQ cls = class_lattice(f).project.apply(D);
        if (X.nef->contains(cls)) {
            const Rat deg = degree(f, D);
            if (is_big(X, cls))
                CHECK(sgn(deg) > 0);
            const Rat t = rnd.positive_rational(5, 3);
            Rat tn = 1;
            for (int i = 0; i < f.rank; ++i)
                tn *= t;
            CHECK(degree(f, t * D) == tn * deg);

            const auto analysis = adjoint_analysis(f, D);
            if (analysis.a.is_finite())
                CHECK(analysis.b == b_geometric(X, cls).b);
        }
    }
}

TEST_CASE("boundary restriction examples")
{
    const Fan p2 = projective_fan(2);
    for (std::size_t ray = 0; ray < 3; ++ray) {
        const BoundaryRestriction r = boundary_restriction(p2, ray, v({1, 0, 0}));
        CHECK(r.fan.rank == 1);
        CHECK(r.source_rays.size() == 2);
        CHECK(degree(r.fan, r.divisor) == 1);
        const auto a = adjoint_analysis(r.fan, r.divisor).a;
        CHECK(a == AValue(Rat(2)));
    }

    const BoundaryRestriction q = boundary_restriction(p1xp1_fan(), 0, v({1, 0, 1, 0}));
    CHECK(adjoint_analysis(q.fan, q.divisor).a == AValue(Rat(2)));

    const Fan f1 = hirzebruch_fan(1);
    const BoundaryRestriction e = boundary_restriction(f1, 1, anticanonical(f1));
    CHECK(degree(e.fan, e.divisor) == 1);
    CHECK(adjoint_analysis(e.fan, e.divisor).a == AValue(Rat(2)));

    const BoundaryRestriction plane = boundary_restriction(projective_fan(3), 2, v({1, 0, 0, 0}));
    CHECK(plane.fan.rank == 2);
    CHECK(adjoint_analysis(plane.fan, plane.divisor).a == AValue(Rat(3)));

    CHECK_THROWS_AS(boundary_restriction(projective_fan(1), 0, v({1, 0})), PreconditionError);
    CHECK_THROWS_AS(boundary_restriction(p2, 3, v({1, 0, 0})), InputError);
}

TEST_CASE("boundary a-values on F1 with L = -K")
{
    // Fibers have -K degree 2, E has 1, and the line D_4 = H has 3, so only
    // D_4 falls below a(X) = 1.
    const Fan f1 = hirzebruch_fan(1);
    const auto values = boundary_a_values(f1, anticanonical(f1));
    REQUIRE(values.size() == 4);
    CHECK(values[0].a == AValue(Rat(1)));
    CHECK(values[1].a == AValue(Rat(2)));
    CHECK(values[2].a == AValue(Rat(1)));
    CHECK(values[3].a == AValue(Rat(2, 3)));
}

TEST_CASE("augmented base locus")
{
    CHECK(augmented_base_locus(projective_fan(2), v({1, 0, 0})).empty());
    const Fan f1 = hirzebruch_fan(1);
    CHECK(augmented_base_locus(f1, anticanonical(f1)).empty());
    // H = D_4 contracts E = D_2.
    const auto bplus = augmented_base_locus(f1, v({0, 0, 0, 1}));
    REQUIRE(bplus.size() == 1);
    CHECK(bplus[0] == std::vector<std::size_t>{1});
    CHECK(augmented_base_locus(p1xp1_fan(), v({1, 0, 0, 0})) == std::vector<std::vector<std::size_t>>{{}});
}
