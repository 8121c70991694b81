#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfloer/linalg.hpp"
#include "qfloer/rational.hpp"

#include <random>

using namespace qfloer;
using namespace qfloer::linalg;

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
    SparseMatrix m(rows, cols);
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<int> val(-3, 3);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (coin(rng) < density) {
                Rational q(val(rng), 1 + (val(rng) + 3) % 3);
                q.canonicalize();
                m.set(i, j, q);
            }
    return m;
}

// Matrix of rank at most k as a product of random factors.
SparseMatrix low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t k) {
    auto a = random_matrix(rng, rows, k, 0.7);
    auto b = random_matrix(rng, k, cols, 0.7);
    return a.multiply(b);
}

}  // namespace

TEST_CASE("parse_rational forms") {
    CHECK(parse_rational("2/5") == Rational(2, 5));
    CHECK(parse_rational("-4/10") == Rational(-2, 5));
    CHECK(parse_rational(" 7 ") == 7);
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rational printing and rounding") {
    CHECK(to_string(Rational(3)) == "3/1");
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_display_string(Rational(3)) == "3");
    CHECK(to_display_string(Rational(-7, 2)) == "-7/2");
    CHECK(floor(Rational(-7, 2)) == -4);
    CHECK(ceil(Rational(-7, 2)) == -3);
    CHECK(floor_strict(Rational(450)) == 449);
    CHECK(floor_strict(Rational(9, 2)) == 4);
    CHECK(ceil_strict(Rational(450)) == 451);
    CHECK(ceil_strict(Rational(4989, 11)) == 454);
    CHECK(is_integer(parse_rational("10/5")));
}

TEST_CASE("sparse matrix basics") {
    SparseMatrix m(2, 3);
    m.set(0, 1, 2);
    m.add(0, 1, -2);
    CHECK(m.nonzeros() == 0);
    m.set(1, 2, Rational(1, 3));
    CHECK(m.at(1, 2) == Rational(1, 3));
    CHECK_THROWS_AS(m.set(2, 0, 1), std::out_of_range);
    CHECK_THROWS_AS((void)m.column(3), std::out_of_range);
    auto cols = m.columns();
    REQUIRE(cols.size() == 3);
    CHECK(cols[2].at(1) == Rational(1, 3));
    CHECK(m.apply({{2, 3}}) == SparseVector{{1, 1}});
    CHECK_THROWS_AS(m.multiply(m), std::invalid_argument);
    CHECK(SparseMatrix::identity(3).multiply(SparseMatrix::identity(3)) == SparseMatrix::identity(3));
}

TEST_CASE("rank of small matrices") {
    SparseMatrix m(3, 3);
    m.set(0, 0, 1);
    m.set(0, 1, 2);
    m.set(1, 0, 2);
    m.set(1, 1, 4);
    m.set(2, 2, 5);
    CHECK(rank(m) == 2);
    CHECK(dense_rank(m) == 2);
    CHECK(kernel_basis(m).size() == 1);
    CHECK(rank(SparseMatrix(0, 4)) == 0);
    CHECK(kernel_basis(SparseMatrix(0, 4)).size() == 4);
}

TEST_CASE("property: sparse rank equals dense rank, rank + nullity = cols") {
    std::mt19937_64 rng(20261017);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
        auto m = trial % 2 ? random_matrix(rng, rows, cols, 0.35) : low_rank(rng, rows, cols, 1 + rng() % 3);
        auto r = rank(m);
        CHECK(r == dense_rank(m));
        auto ker = kernel_basis(m);
        CHECK(r + ker.size() == cols);
        for (const auto& v : ker) CHECK(m.apply(v).empty());
        CHECK(span_rank(ker) == ker.size());
    }
}

TEST_CASE("echelon basis express and tracking") {
    EchelonBasis basis;
    CHECK(basis.insert({{0, 1}, {1, 1}}));
    CHECK(basis.insert({{1, 1}}));
    CHECK_FALSE(basis.insert({{0, 2}}));
    CHECK(basis.dimension() == 2);
    CHECK(basis.inserted() == 3);
    auto e = basis.express({{0, 3}, {1, 5}});
    REQUIRE(e.has_value());
    // Any valid combination reproduces the vector.
    SparseVector back;
    std::vector<SparseVector> inputs{{{0, 1}, {1, 1}}, {{1, 1}}, {{0, 2}}};
    for (const auto& [tag, c] : *e) add_scaled(back, inputs.at(tag), c);
    CHECK(back == SparseVector{{0, 3}, {1, 5}});
    CHECK_FALSE(basis.express({{2, 1}}).has_value());

    EchelonBasis plain(false);
    plain.insert({{0, 1}});
    CHECK(plain.contains({{0, -4}}));
    CHECK_THROWS_AS((void)plain.express({{0, 1}}), std::logic_error);
}

TEST_CASE("quotient dimension") {
    std::vector<SparseVector> kernel{{{0, 1}}, {{1, 1}}, {{2, 1}}};
    std::vector<SparseVector> image{{{0, 1}, {1, -1}}};
    auto q = quotient_dimension(image, kernel);
    CHECK(q.dimension == 2);
    CHECK(q.representatives.size() == 2);
    std::vector<SparseVector> bad{{{3, 1}}};
    CHECK_THROWS_AS(quotient_dimension(bad, kernel), QuotientError);
}
