#include <catch2/catch_amalgamated.hpp>

#include "padyn/hensel.hpp"
#include "padyn/newton.hpp"
#include "padyn/poly.hpp"

using namespace padyn;

static Poly P(std::initializer_list<long> cs) {
    std::vector<mpq_class> v;
    for (long c : cs) v.emplace_back(c);
    return Poly(v);
}

TEST_CASE("polynomial arithmetic and rendering") {
    Poly f = P({125, -30, 0, 5});  // 5z^3 - 30z + 125
    CHECK(f.degree() == 3);
    CHECK(f.str() == "5*z^3 - 30*z + 125");
    CHECK(P({0}).is_zero());
    CHECK(P({0}).degree() == -1);
    CHECK((f - f).is_zero());
    CHECK((P({1, 1}) * P({-1, 1})).str() == "z^2 - 1");
    CHECK(P({0, -1, 5}).str() == "5*z^2 - z");
    CHECK(f.eval(mpq_class(1)) == 100);
    CHECK(f.eval(mpq_class(0)) == 125);
    CHECK(f.derivative().str() == "15*z^2 - 30");
    CHECK(f.ord() == 0);
    CHECK(P({0, 0, 3}).ord() == 2);
}

TEST_CASE("division with remainder is exact") {
    Poly f = P({5, -6, 1});  // (z-1)(z-5)
    auto [q, r] = f.divrem(P({-1, 1}));
    CHECK(q.str() == "z - 5");
    CHECK(r.is_zero());
    auto [q2, r2] = f.divrem(P({0, 1}));
    CHECK(q2.str() == "z - 6");
    CHECK(r2.str() == "5");
    CHECK_THROWS_AS(f.divrem(P({0})), std::invalid_argument);
}

TEST_CASE("argument shifts and scalings") {
    Poly f = P({0, 0, 1});  // z^2
    CHECK(f.shift(mpq_class(1)).str() == "z^2 + 2*z + 1");    // f(z + 1)
    CHECK(f.scale_arg(mpq_class(5)).str() == "25*z^2");       // f(5z)
    Poly g = P({5, -6, 1});
    CHECK(g.shift(mpq_class(1)).eval(mpq_class(0)) == 0);     // 1 is a root
}

TEST_CASE("gcd of exact rational polynomials") {
    Poly f = P({5, -6, 1});   // (z-1)(z-5)
    Poly g = P({-1, 0, 1});   // (z-1)(z+1)
    CHECK(poly_gcd(f, g).str() == "z - 1");
    CHECK(poly_gcd(f, P({1})).degree() == 0);
    CHECK(poly_gcd(P({0, 1}), P({0, 0, 1})).str() == "z");
}

TEST_CASE("resultants at true and formal degrees") {
    CHECK(resultant(P({5, -6, 1}), P({0, 1})) == 5);
    CHECK(resultant(P({-1, 0, 1}), P({0, 0, 1})) == 1);
    // common factor makes the resultant vanish
    CHECK(resultant(P({5, -6, 1}), P({-1, 1})) == 0);
    // formal padding to degree (2, 2): Res of homogenizations
    mpq_class r = resultant_formal(P({0, -1, 5}), P({-5, 0, 5}), 2, 2);
    CHECK(r == 600);
}

TEST_CASE("newton polygon of factored examples") {
    NewtonPolygon np = newton_polygon(P({5, -6, 1}), 5);  // roots 1, 5
    REQUIRE(np.segments.size() == 2);
    CHECK(np.zero_order == 0);
    CHECK(np.segments[0].slope == mpq_class(-1));
    CHECK(np.segments[0].length == 1);
    CHECK(np.segments[1].slope == 0);
    CHECK(np.segments[1].length == 1);
    CHECK(np.total_roots() == 2);

    // z^2 - z - 4/5: both roots of valuation -1/2
    NewtonPolygon np2 = newton_polygon(Poly({mpq_class(-4, 5), mpq_class(-1), mpq_class(1)}), 5);
    REQUIRE(np2.segments.size() == 1);
    CHECK(np2.segments[0].slope == mpq_class(1, 2));
    CHECK(np2.segments[0].length == 2);
    auto rv = np2.root_valuations();
    CHECK(rv[0].first == mpq_class(-1, 2));

    // 5z^2 + z + 5: one root of valuation 1, one of valuation -1
    NewtonPolygon np3 = newton_polygon(P({5, 1, 5}), 5);
    REQUIRE(np3.segments.size() == 2);
    CHECK(np3.segments[0].slope == mpq_class(-1));
    CHECK(np3.segments[1].slope == mpq_class(1));

    // zero roots are counted separately
    NewtonPolygon np4 = newton_polygon(P({0, 0, 5, 1}), 5);
    CHECK(np4.zero_order == 2);
    CHECK(np4.total_roots() == 3);
}

TEST_CASE("hensel lifting of the square roots of 6") {
    Poly f = P({-6, 0, 1});
    PadicApprox a = hensel_lift(f, 1, 5, 2);
    CHECK(a.residue == 16);
    CHECK(a.precision >= 2);
    PadicApprox b = hensel_lift(f, 4, 5, 2);
    CHECK(b.residue == 9);
    // precision doubles, so a deep request stays exact
    PadicApprox c = hensel_lift(f, 1, 5, 8);
    mpq_class val = f.eval(mpq_class(c.residue));
    CHECK(vp_rational(val, 5) >= Valuation::whole(8));
    CHECK_THROWS_AS(hensel_lift(f, 2, 5, 4), std::invalid_argument);  // not a root mod 5
    CHECK_THROWS_AS(hensel_lift(P({0, 0, 1}), 0, 5, 4), std::domain_error);  // double root
}

TEST_CASE("padic root analysis splits exact, lifted, and certified parts") {
    FieldContext ctx(5, 2);
    // z^3 - z^2 - (4/5) z = z * (z^2 - z - 4/5)
    Poly f = Poly({mpq_class(0), mpq_class(-4, 5), mpq_class(-1), mpq_class(1)});
    RootAnalysis ra = padic_roots(f, ctx, 8);
    REQUIRE(ra.rational_roots.size() == 1);
    CHECK(ra.rational_roots[0].value == 0);
    CHECK(ra.rational_roots[0].multiplicity == 1);
    CHECK(ra.lifted.empty());
    REQUIRE(ra.residual.size() == 1);
    CHECK(ra.residual[0].first == mpq_class(-1, 2));
    CHECK(ra.residual[0].second == 2);

    // (z-1)(z-5)(z^2-6): two rational roots, two lifted square roots
    Poly g = P({5, -6, 1}) * P({-6, 0, 1});
    RootAnalysis rb = padic_roots(g, ctx, 4);
    REQUIRE(rb.rational_roots.size() == 2);
    CHECK(rb.rational_roots[0].value == 1);
    CHECK(rb.rational_roots[1].value == 5);
    CHECK(rb.lifted.size() == 2);
    CHECK(rb.residual.empty());
}
