#include <doctest.h>

#include "crgeo/polynomial.hpp"
#include "properties.hpp"

using namespace crgeo;
using namespace crgeo::testutil;

TEST_CASE("conjugation swaps holomorphic and antiholomorphic parts") {
    CHECK(P("z2", 2).conjugated() == P("conj(z2)", 2));
    CHECK(P("i*z2^2*conj(z3)^3", 3).conjugated() == P("0-i*conj(z2)^2*z3^3", 3));
    const Polynomial paper_p = P("abs2(z2^2 - z3^3)", 3);
    CHECK(paper_p.conjugated() == paper_p);
    CHECK(paper_p.is_real_valued());
}

TEST_CASE("iterated Wirtinger derivatives") {
    const Polynomial p = P("z2*conj(z2)", 2);
    CHECK(p.derivative({0, 1}, {0, 1}) == P("1", 2));
    CHECK(P("conj(z2)", 2).derivative({0, 1}, {0, 0}).is_zero());
    // Hand oracle: (z2 zbar2)^2 = z2^2 zbar2^2, second derivatives give 2 * 2.
    CHECK(P("abs2(z2)^2", 2).derivative({0, 2}, {0, 2}) == P("4", 2));
}

TEST_CASE("vanishing order at points") {
    CHECK(P("z2*conj(z2)", 2).vanishing_order0() == QExt(2));
    CHECK(Polynomial(2).vanishing_order0().is_inf());
    const std::vector<Scalar> pt{Scalar(0), Scalar(1)};
    CHECK(P("z2*conj(z2)", 2).vanishing_order(pt) == QExt(0));
}

TEST_CASE("degree truncation") {
    const Polynomial rp = P("2*Re(z1) + abs2(z2^2 - z3^3)", 3);
    // Term degrees are 1,1,4,5,5,6; the degree-4 jet keeps 2Re z1 + |z2|^4.
    CHECK(rp.truncate_degree(4) == P("2*Re(z1) + abs2(z2)^2", 3));
    CHECK(rp.truncate_degree(rp.degree()) == rp);
    CHECK(P("z2^2*conj(z3)^3", 3).truncate_degree(4).is_zero());
}

TEST_CASE("origin shifts") {
    const std::vector<Scalar> a{Scalar(0), Scalar(1)};
    CHECK(P("z2", 2).shift_origin(a) == P("z2 + 1", 2));
    CHECK(P("z2*conj(z2)", 2).shift_origin(origin(2)) == P("z2*conj(z2)", 2));
    CHECK(P("z2*conj(z2)", 2).shift_origin(a) == P("z2*conj(z2) + z2 + conj(z2) + 1", 2));
    // Evaluation at 0 of the shift equals evaluation at the point.
    const Polynomial p = P("z1^2*conj(z2) + i*z2 - conj(i*z2)", 2);
    const std::vector<Scalar> b{Scalar(mpq_class(1, 2)), Scalar::i()};
    CHECK(p.shift_origin(b).eval(origin(2)) == p.eval(b));
}

TEST_CASE("canonical form is stable under merging") {
    Polynomial p(2);
    Monomial m{{1, 0}, {0, 1}};
    p.add_term(m, Scalar(1));
    p.add_term(m, Scalar(2));
    p.add_term(m, Scalar(-3));
    CHECK(p.is_zero());
    p.add_term(m, Scalar::i());
    CHECK(p.terms().size() == 1);
}

TEST_CASE("proportionality detection") {
    CHECK(proportional(P("2*z2", 2), P("i*z2", 2)));
    CHECK(proportional(Polynomial(2), Polynomial(2)));
    CHECK_FALSE(proportional(P("z2", 2), P("z2 + 1", 2)));
    CHECK_FALSE(proportional(P("z2", 2), Polynomial(2)));
}

TEST_CASE("algebra property suite") {
    const SuiteResult res = algebra_properties(200);
    INFO(res.detail);
    CHECK(res.pass);
}
