#include <doctest.h>

#include <vector>

#include "cohsys/curve.hpp"
#include "fixtures.hpp"

using namespace cohsys;

TEST_CASE("two-component reference curve invariants") {
    NodalCurve c = t1_curve();
    CHECK(c.component_count() == 2);
    CHECK(c.node_count() == 1);
    CHECK(c.arithmetic_genus() == 4);
    CHECK(c.chi_structure_sheaf() == -3);
    CHECK(c.genus(0) == 2);
    CHECK(c.genus(1) == 2);
    CHECK(c.vertex_degree(0) == 1);
    CHECK(c.vertex_degree(1) == 1);
    CHECK(c.leaf_component() == 0);
    CHECK(c.polarization().total == 2);
    REQUIRE(c.polarization().weights.size() == 2);
    CHECK(c.polarization().weights[0] == Rat(1, 2));
    CHECK(c.polarization().weights[1] == Rat(1, 2));
}

TEST_CASE("three-component chain invariants") {
    NodalCurve c = p3_curve();
    CHECK(c.component_count() == 3);
    CHECK(c.node_count() == 2);
    CHECK(c.arithmetic_genus() == 7);
    CHECK(c.chi_structure_sheaf() == -6);
    CHECK(c.vertex_degree(0) == 1);
    CHECK(c.vertex_degree(1) == 2);
    CHECK(c.vertex_degree(2) == 1);
    CHECK(c.leaf_component() == 0);
    CHECK(c.polarization().total == 4);
    CHECK(c.polarization().weights[0] == Rat(1, 4));
    CHECK(c.polarization().weights[1] == Rat(1, 4));
    CHECK(c.polarization().weights[2] == Rat(1, 2));
}

TEST_CASE("star tree picks the smallest one-node component as leaf") {
    NodalCurve c = NodalCurve::build({2, 2, 2, 2}, {{0, 1}, {0, 2}, {0, 3}}, {1, 1, 1, 1});
    CHECK(c.arithmetic_genus() == 8);
    CHECK(c.vertex_degree(0) == 3);
    CHECK(c.vertex_degree(1) == 1);
    CHECK(c.leaf_component() == 1);
    for (int i = 0; i < 4; ++i) CHECK(c.polarization().weights[i] == Rat(1, 4));
}

TEST_CASE("curve construction rejects malformed input") {
    CHECK_THROWS_AS(NodalCurve::build({}, {}, {}), ShapeError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2}, {{0, 1}}, {1}), ShapeError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2}, {{0, 2}}, {1, 1}), ShapeError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2}, {}, {1, 1}), DisconnectedError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2, 2}, {{0, 1}}, {1, 1, 1}), DisconnectedError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2}, {{0, 0}}, {1, 1}), CycleError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2}, {{0, 1}, {1, 0}}, {1, 1}), CycleError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2, 2}, {{0, 1}, {1, 2}, {2, 0}}, {1, 1, 1}), CycleError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2}, {{0, 1}}, {0, 1}), DegreeError);
    CHECK_THROWS_AS(NodalCurve::build({2, 2}, {{0, 1}}, {2, 4}), GcdError);
}

TEST_CASE("genus and smoothness gates") {
    CHECK_THROWS_AS(NodalCurve::build({2, 1}, {{0, 1}}, {1, 1}), GenusError);
    BuildOptions low;
    low.allow_low_genus = true;
    NodalCurve c = NodalCurve::build({2, 1}, {{0, 1}}, {1, 1}, low);
    CHECK(c.arithmetic_genus() == 3);
    CHECK_THROWS_AS(NodalCurve::build({2, -1}, {{0, 1}}, {1, 1}, low), GenusError);

    CHECK_THROWS_AS(NodalCurve::build({2}, {}, {1}), ValidationError);
    BuildOptions smooth;
    smooth.allow_smooth = true;
    NodalCurve s = NodalCurve::build({2}, {}, {1}, smooth);
    CHECK(s.component_count() == 1);
    CHECK(s.arithmetic_genus() == 2);
    CHECK(s.polarization().weights[0] == Rat(1));
    CHECK_THROWS_AS(s.leaf_component(), SingleComponentError);
}

TEST_CASE("subcurve data on the two-component curve") {
    NodalCurve c = t1_curve();
    SubcurveData d = subcurve_data(c, Subcurve{{0}});
    CHECK(d.genus == 2);
    CHECK(d.connected_pieces == 1);
    REQUIRE(d.boundary_nodes.size() == 1);
    CHECK(d.boundary_nodes[0] == 0);
    REQUIRE(d.complement.has_value());
    CHECK(d.complement->members == std::vector<int>{1});
    CHECK(d.complement_genus == 2);
    // pa(C) = pa(B) + pa(C-B) + #boundary - 1
    CHECK(c.arithmetic_genus() ==
          d.genus + d.complement_genus + static_cast<long long>(d.boundary_nodes.size()) - 1);
}

TEST_CASE("subcurve data for a disconnected pair of leaves") {
    NodalCurve c = p3_curve();
    SubcurveData d = subcurve_data(c, Subcurve{{0, 2}});
    CHECK(d.connected_pieces == 2);
    CHECK(d.genus == 4);  // 2 + 3 - (2 - 1)
    CHECK(d.boundary_nodes.size() == 2);
    REQUIRE(d.complement.has_value());
    CHECK(d.complement->members == std::vector<int>{1});
    CHECK(d.complement_genus == 2);
    CHECK(c.arithmetic_genus() == 4 + 2 + 2 - 1);
}

TEST_CASE("subcurve data for the whole curve and the star center") {
    NodalCurve c = t1_curve();
    SubcurveData whole = subcurve_data(c, Subcurve{{0, 1}});
    CHECK(whole.genus == 4);
    CHECK(whole.connected_pieces == 1);
    CHECK(whole.boundary_nodes.empty());
    CHECK_FALSE(whole.complement.has_value());
    CHECK(whole.complement_genus == 0);

    NodalCurve star = NodalCurve::build({2, 2, 2, 2}, {{0, 1}, {0, 2}, {0, 3}}, {1, 1, 1, 1});
    SubcurveData center = subcurve_data(star, Subcurve{{0}});
    CHECK(center.genus == 2);
    CHECK(center.boundary_nodes.size() == 3);
    CHECK(center.complement_genus == 4);  // three genus-2 pieces: 6 - (3 - 1)
    CHECK(star.arithmetic_genus() == 2 + 4 + 3 - 1);
}

TEST_CASE("subcurve validation") {
    NodalCurve c = t1_curve();
    CHECK_THROWS_AS(subcurve_data(c, Subcurve{{}}), EmptySubcurveError);
    CHECK_THROWS_AS(subcurve_data(c, Subcurve{{0, 0}}), ShapeError);
    CHECK_THROWS_AS(subcurve_data(c, Subcurve{{1, 0}}), ShapeError);
    CHECK_THROWS_AS(subcurve_data(c, Subcurve{{2}}), ShapeError);
    CHECK_THROWS_AS(subcurve_data(c, Subcurve{{-1}}), ShapeError);
}

TEST_CASE("genus additivity across every proper subcurve of a chain") {
    NodalCurve c = p3_curve();
    const int n = c.component_count();
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        Subcurve b;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) b.members.push_back(i);
        SubcurveData d = subcurve_data(c, b);
        REQUIRE(d.complement.has_value());
        CHECK(c.arithmetic_genus() ==
              d.genus + d.complement_genus + static_cast<long long>(d.boundary_nodes.size()) - 1);
        SubcurveData dc = subcurve_data(c, *d.complement);
        CHECK(dc.genus == d.complement_genus);
        CHECK(dc.boundary_nodes == d.boundary_nodes);
    }
}
