#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfloer/quantum.hpp"

using namespace qfloer;
using namespace qfloer::quantum;

TEST_CASE("unit and basis") {
    auto one = QuantumClass::unit();
    auto pt = QuantumClass::pt();
    QuantumClass v{Rational(3, 7), Rational(-2)};
    CHECK(qh4_mul(one, v) == v);
    CHECK(qh4_mul(v, one) == v);
    CHECK(qh4_mul(pt, pt) == one);
    CHECK(to_string(v) == "3/7 + -2*Pt");
    CHECK(to_string(QuantumClass{0, 0}) == "0 + 0*Pt");
}

TEST_CASE("idempotents") {
    auto [ep, em] = idempotents();
    CHECK(ep == QuantumClass{Rational(1, 2), Rational(1, 2)});
    CHECK(em == QuantumClass{Rational(1, 2), Rational(-1, 2)});
    CHECK(ep + em == QuantumClass::unit());
    CHECK(ep - em == QuantumClass::pt());
    CHECK(qh4_mul(ep, em) == QuantumClass{0, 0});
    CHECK(qh4_mul(ep, ep) == ep);
    CHECK(qh4_mul(em, em) == em);
    CHECK(check_idempotents().passed());
}

TEST_CASE("the relation (Pt)^2 = 1 is the only one making e+- idempotent") {
    auto derived = derive_pt_square();
    REQUIRE(derived.has_value());
    CHECK(derived->first == 1);
    CHECK(derived->second == 0);
    // Oracle: search (c, d) on a grid of small rationals.
    auto [ep, em] = idempotents();
    int hits = 0;
    for (int cn = -8; cn <= 8; ++cn)
        for (int dn = -8; dn <= 8; ++dn) {
            Rational c(cn, 4), d(dn, 4);
            c.canonicalize();
            d.canonicalize();
            if (multiply_with_relation(ep, ep, c, d) == ep && multiply_with_relation(em, em, c, d) == em) {
                ++hits;
                CHECK(c == 1);
                CHECK(d == 0);
            }
        }
    CHECK(hits == 1);
}

TEST_CASE("algebra axioms") {
    CHECK(check_algebra_axioms().passed());
    // Also on non-basis elements.
    QuantumClass u{Rational(1, 3), 2}, v{-1, Rational(5, 2)}, w{4, Rational(-1, 6)};
    CHECK(qh4_mul(u, v) == qh4_mul(v, u));
    CHECK(qh4_mul(qh4_mul(u, v), w) == qh4_mul(u, qh4_mul(v, w)));
    CHECK(qh4_mul(u, v + w) == qh4_mul(u, v) + qh4_mul(u, w));
}

TEST_CASE("eigenvectors of multiplication by Pt") {
    auto [ep, em] = idempotents();
    CHECK(pt_eigenvalue(ep) == Rational(1));
    CHECK(pt_eigenvalue(em) == Rational(-1));
    CHECK_FALSE(pt_eigenvalue(QuantumClass::unit()).has_value());
    CHECK_FALSE(pt_eigenvalue(QuantumClass{0, 0}).has_value());
    auto m = pt_multiplication_matrix();
    CHECK(m[0][0] == 0);
    CHECK(m[1][0] == 1);
    CHECK(m[0][1] == 1);
    CHECK(m[1][1] == 0);
}

TEST_CASE("grading") {
    CHECK(grading_check(0, 1) == 4);
    CHECK(grading_check(4, 0) == 4);
    CHECK(grading_check(0, 2) == 8);
}
