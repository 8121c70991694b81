#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfloer/complex_json.hpp"
#include "qfloer/complexes.hpp"
#include "qfloer/spectral_sequence.hpp"

#include <random>

using namespace qfloer;
using namespace qfloer::complexes;

namespace {

// An edge a from q to p and a separate loop.
GradedFilteredComplex small_complex() {
    std::vector<BasisElement> basis{
        {"p", 0, 1, Rational(1)},
        {"q", 0, 0, Rational(2)},
        {"a", 1, 0, Rational(5)},
        {"loop", 1, 0, Rational(4)},
    };
    return GradedFilteredComplex(basis, {{2, 0, 1}, {2, 1, -1}});
}

// Four elements per degree 0..3 at random levels. The first two of each
// degree are cycles; the other two map into the cycles one degree down, so
// d^2 = 0 holds automatically.
GradedFilteredComplex random_complex(std::mt19937_64& rng, int levels) {
    std::vector<BasisElement> basis;
    for (int deg = 0; deg < 4; ++deg)
        for (int i = 0; i < 4; ++i) {
            int level = static_cast<int>(rng() % levels);
            basis.push_back({"g" + std::to_string(deg) + "_" + std::to_string(i), deg, level,
                             Rational(deg * 100 - level * 10 + i)});
        }
    std::vector<DifferentialEntry> entries;
    for (std::size_t i = 4; i < basis.size(); ++i) {
        if (i % 4 < 2) continue;
        std::size_t below = i - i % 4 - 4;
        for (std::size_t j = below; j < below + 2; ++j)
            if (basis[j].filtration >= basis[i].filtration && rng() % 2)
                entries.push_back({i, j, Rational(static_cast<int>(rng() % 5) - 2)});
    }
    return GradedFilteredComplex(basis, entries);
}

}  // namespace

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(GradedFilteredComplex({{"a", 0, -1, 0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(GradedFilteredComplex({{"a", 0, 0, 0}, {"a", 1, 0, 1}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(GradedFilteredComplex({{"a", 0, 0, 0}}, {{0, 3, 1}}), std::out_of_range);
    auto c = small_complex();
    CHECK_THROWS_AS((void)c.index_of("nope"), std::out_of_range);
    CHECK_FALSE(c.find("nope").has_value());
}

TEST_CASE("duplicate entries are summed") {
    GradedFilteredComplex c({{"x", 0, 0, 0}, {"y", 1, 0, 1}}, {{1, 0, 2}, {1, 0, -2}});
    CHECK(c.entries().empty());
}

TEST_CASE("homology of a small complex") {
    auto c = small_complex();
    CHECK(validate(c).valid());
    auto h0 = homology(c, 0);
    auto h1 = homology(c, 1);
    CHECK(h0.dimension == 1);
    CHECK(h1.dimension == 1);
    CHECK(is_cycle(c, h1.representatives[0]));
    Chain p{{0, 1}}, q{{1, 1}};
    CHECK(homologous_up_to_scalar(c, 0, p, q));
    Chain diff{{0, 1}, {1, -1}};
    CHECK(is_boundary(c, 0, diff));
    CHECK(describe(c, diff) == "p + -1*q");
}

TEST_CASE("validate reports each violation kind") {
    std::vector<BasisElement> basis{{"a", 1, 1, 5}, {"b", 0, 0, 6}, {"c", 2, 0, 1}, {"d", 0, 0, 0}};
    // a -> b lowers the level and raises the action; c -> d has the wrong degree.
    GradedFilteredComplex c(basis, {{0, 1, 1}, {2, 3, 1}});
    auto rep = validate(c);
    CHECK(rep.count(ViolationKind::filtration) == 1);
    CHECK(rep.count(ViolationKind::action) == 1);
    CHECK(rep.count(ViolationKind::degree) == 1);

    std::vector<BasisElement> sq{{"z", 2, 0, 3}, {"y", 1, 0, 2}, {"x", 0, 0, 1}};
    auto bad = GradedFilteredComplex(sq, {{0, 1, 1}, {1, 2, 1}});
    CHECK(validate(bad).count(ViolationKind::square) == 1);
    CHECK_THROWS_AS(homology(bad, 1), ChainComplexError);
}

TEST_CASE("quotients and truncations") {
    auto c = small_complex();
    auto t = truncate_filtration(c, 0);
    CHECK(t.size() == 3);
    CHECK_FALSE(t.find("p").has_value());
    CHECK_THROWS_AS(truncate_filtration(c, -1), std::invalid_argument);
    auto q = quotient_above_action(c, Rational(3));
    CHECK(q.size() == 2);
    auto r = restrict_degrees(c, 1, 1);
    CHECK(r.size() == 2);
    auto s1 = slice(c, 1);
    CHECK(s1.size() == 1);
    auto s0 = slice(c, 0);
    CHECK(s0.entries().size() == 1);  // a -> q only
}

TEST_CASE("label map and induced maps") {
    auto c = small_complex();
    auto q = truncate_filtration(c, 0);
    auto f = label_map(c, q);
    CHECK(is_chain_map(f, c, q));
    // Dropping p leaves a -> -q, so H_0 dies and the loop survives.
    CHECK(homology(q, 0).dimension == 0);
    auto m1 = induced_map_on_homology(f, c, q, 1);
    CHECK(m1.rows() == 1);
    CHECK(linalg::rank(m1) == 1);
    auto back = label_map(q, c);  // not a chain map: a -> q only, missing p
    CHECK_FALSE(is_chain_map(back, q, c));
    CHECK_THROWS_AS(induced_map_on_homology(back, q, c, 1), ChainComplexError);
}

TEST_CASE("json round trip is byte exact") {
    auto c = small_complex();
    auto text = serialize(c);
    auto parsed = deserialize(text);
    CHECK(parsed.basis() == c.basis());
    CHECK(parsed.entries() == c.entries());
    CHECK(serialize(parsed) == text);
    CHECK_THROWS_AS(deserialize("{"), std::invalid_argument);
    CHECK_THROWS_AS(deserialize(R"({"basis": [], "differential": [[0]]})"), std::invalid_argument);
    CHECK_THROWS_AS(deserialize(R"({"basis": [{"label": "a", "degree": 0, "filtration": 0, "action": "1/0"}], "differential": []})"),
                    std::invalid_argument);
}

TEST_CASE("property: json round trip on random complexes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto c = random_complex(rng, 3);
        auto text = serialize(c);
        CHECK(serialize(deserialize(text)) == text);
    }
}

TEST_CASE("spectral sequence of a two-level pair") {
    // a (level 0, degree 1) -> b (level 1, degree 0): E^1 has both, d^1 kills them.
    GradedFilteredComplex c({{"a", 1, 0, 2}, {"b", 0, 1, 1}}, {{0, 1, 1}});
    auto ss = spectral_sequence(c, 3);
    CHECK(ss.page(1).total(1) == 1);
    CHECK(ss.page(1).total(0) == 1);
    CHECK(ss.page(2).total(1) == 0);
    CHECK(ss.page(2).total(0) == 0);
    CHECK(ss.degeneration_page == 2);
}

TEST_CASE("spectral sequence with a d^2") {
    GradedFilteredComplex c({{"a", 1, 0, 3}, {"b", 0, 2, 1}}, {{0, 1, 1}});
    auto ss = spectral_sequence(c, 4);
    CHECK(ss.page(2).total(1) == 1);
    CHECK(ss.page(3).total(1) == 0);
    CHECK(ss.degeneration_page == 3);
}

TEST_CASE("property: E-infinity totals equal homology") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = random_complex(rng, 3);
        REQUIRE(validate(c).valid());
        auto ss = spectral_sequence(c, 4);
        for (int deg = 0; deg < 4; ++deg) CHECK(ss.infinity().total(deg) == homology(c, deg).dimension);
        // E^1 is the slice homology.
        for (int s = 0; s < 3; ++s)
            for (int deg = 0; deg < 4; ++deg)
                CHECK(ss.page(1).dimension(deg, s) == homology(slice(c, s), deg).dimension);
    }
}
