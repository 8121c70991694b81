#pragma once

// The Bourgeois-Oancea complex B of the disc bundle over the diagonal, its
// differentials d0 and d1, and the truncated quantum complex
// QB = B (x) Lambda with d = d0 + t^{-1} d1.
//
// B has one generator in degrees 0, 1 and two in every degree >= 2:
//   x0 (0), x2 (2), mc_k (2k-1), mh_k (2k), Mc_k (2k+1), Mh_k (2k+2).

#include "qfloer/complexes.hpp"
#include "qfloer/floer_model.hpp"
#include "qfloer/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

namespace qfloer::bo {

using complexes::GradedFilteredComplex;
using floer::CriticalPoint;
using floer::HamiltonianParams;

enum class BKind { x0, x2, orbit };

struct BGenerator {
    BKind kind = BKind::x0;
    CriticalPoint point = CriticalPoint::min_check;  // orbit only
    int k = 0;                                       // orbit only, >= 1

    static BGenerator x0() { return {}; }
    static BGenerator x2() { return {BKind::x2, CriticalPoint::min_check, 0}; }
    static BGenerator orbit(CriticalPoint p, int k);
    static BGenerator mc(int k) { return orbit(CriticalPoint::min_check, k); }
    static BGenerator mh(int k) { return orbit(CriticalPoint::min_hat, k); }
    static BGenerator Mc(int k) { return orbit(CriticalPoint::max_check, k); }
    static BGenerator Mh(int k) { return orbit(CriticalPoint::max_hat, k); }

    int degree() const;
    std::string label() const;  // "x0", "x2", "mc3", "Mh2", ...

    friend auto operator<=>(const BGenerator&, const BGenerator&) = default;
};

/// Generators of B in degree n, in a fixed order (n >= 0).
std::vector<BGenerator> generators_in_degree(int n);

/// Inverse of BGenerator::label.
BGenerator parse_generator(const std::string& label);

using BChain = std::map<BGenerator, Rational>;

std::string describe(const BChain& c);

/// The printed tables.
BChain standard_d0(const BGenerator& g);
BChain standard_d1(const BGenerator& g);

enum class Part { d0, d1 };

std::string to_string(Part part);

/// The two tables with optional per-coefficient overrides on top of the
/// standard values.
class DifferentialTable {
public:
    static DifferentialTable standard() { return {}; }

    BChain d0(const BGenerator& g) const { return apply(Part::d0, g); }
    BChain d1(const BGenerator& g) const { return apply(Part::d1, g); }
    BChain apply(Part part, const BGenerator& g) const;

    Rational coefficient(Part part, const BGenerator& from, const BGenerator& to) const;
    void set(Part part, const BGenerator& from, const BGenerator& to, const Rational& value);
    bool is_standard() const { return overrides_.empty(); }

private:
    std::map<std::tuple<Part, BGenerator, BGenerator>, Rational> overrides_;
};

/// Slots (from, to) of the right degree for `part`: d0 lowers the degree by
/// one and d1 raises it by three.
std::vector<BGenerator> degree_admissible_targets(Part part, const BGenerator& from);

struct SymbolicDefect {
    BGenerator generator;
    BChain value;
};

/// Generators g of degree <= max_degree with d0 d0 g != 0.
std::vector<SymbolicDefect> d0_square_defects(const DifferentialTable& table, int max_degree);
/// Generators g of degree <= max_degree with (d1 d0 + d0 d1) g != 0.
std::vector<SymbolicDefect> anticommutator_defects(const DifferentialTable& table, int max_degree);

/// Step of the Morse perturbation added to the action: index * step with
/// step = min(eps, r - eps) / 1000.
Rational morse_step(const HamiltonianParams& p);

struct QbOptions {
    int mu = 0;     // levels 0..mu
    int k_max = 8;  // B is kept through degree 2 k_max
    std::optional<int> min_degree;
    std::optional<int> max_degree;
};

struct QbComplex {
    GradedFilteredComplex complex;
    std::vector<std::pair<BGenerator, int>> generators;  // (g, s) per basis index
    std::vector<Rational> unperturbed_action;           // E + k(r - eps) - s, x: E - s
    int mu = 0;
    int k_max = 0;
    int top_degree = 0;     // min(2 k_max - 4 mu, max_degree)
    int bottom_degree = 0;  // lowest degree present
};

/// Least k_max for which degrees up to `top` are complete at every level 0..mu.
int required_k_max(int top, int mu);

/// Label of (g, s): "Mh3" at s = 0, "Mh3*t^-2" at s = 2.
std::string level_label(const BGenerator& g, int s);

/// Elements (g, s) with 0 <= s <= mu and total degree deg g - 4s inside
/// [min_degree, min(2 k_max - 4 mu, max_degree)]. This is a subquotient of
/// QB / QB^{(mu)} whose homology is exact strictly inside the degree window.
QbComplex build_qb(const DifferentialTable& table, const QbOptions& options, const HamiltonianParams& p);

/// build_qb followed by validation; throws ChainComplexError on any violation.
QbComplex assemble_qb(const DifferentialTable& table, const QbOptions& options, const HamiltonianParams& p);

/// Fixed parameters used when only degrees matter.
HamiltonianParams reference_params();

struct BHomologyRow {
    int degree = 0;
    std::size_t dimension = 0;
    std::string representative;  // computed, in labels
    std::string expected;        // the listed class
    bool matches = false;        // dimension 1 and [computed] = c [expected]
};

struct BHomologyReport {
    int j_max = 0;
    int k_max = 0;
    std::vector<BHomologyRow> rows;

    bool passed() const;
};

/// The listed class in degree j: x0, mc1, x2, Mc_k - mc_{k+1}, Mh_k.
BChain expected_b_class(int degree);

BHomologyReport homology_of_B(int j_max, std::optional<int> k_max = std::nullopt,
                              const DifferentialTable& table = DifferentialTable::standard());

struct PieceCheck {
    int s = 0;
    std::size_t h3_previous = 0;  // dim H_3(C_{s-1}), 0 when s = 0
    std::size_t h2 = 0;           // dim H_2(C_s)
    std::size_t h1_next = 0;      // dim H_1(C_{s+1}), 0 when s = mu
    std::size_t left_rank = 0;
    std::size_t right_rank = 0;
    std::size_t homology = 0;
    std::size_t expected = 0;     // 1 at s = 0, 0 otherwise
    bool left_onto = false;
    bool right_zero = false;

    bool passed() const { return homology == expected && right_zero && (s == 0 || left_onto); }
};

struct SqueezeCheck {
    bool applicable = false;
    Integer mu_minus;
    Integer mu_plus;
    int levels = 0;
    std::size_t basis_size = 0;
    std::size_t h2_dimension = 0;
    bool generated_by_x2 = false;
    bool sandwich = false;  // QB^{(mu_+)} in QD in QB^{(mu_-)} in degrees 1..3
    bool isomorphism = false;  // H_2(QB/QB^{(mu_+)}) -> H_2(QB/QB^{(mu_-)})
    bool factors = false;      // ... through H_2(QB/QD), both maps invertible
    std::vector<std::string> problems;

    bool passed() const;
};

struct MainLemmaReport {
    int mu = 0;
    int k_max = 0;
    int top_degree = 0;
    std::size_t basis_size = 0;

    // (a)
    std::size_t h2_dimension = 0;
    std::string h2_representative;
    bool generated_by_x2 = false;
    // (b)
    int degeneration_page = 0;
    std::size_t e_infinity_h2 = 0;
    std::size_t e_infinity_h2_level0 = 0;
    // (c)
    std::vector<PieceCheck> pieces;
    // (d)
    SqueezeCheck squeeze;

    bool direct_ok() const { return h2_dimension == 1 && generated_by_x2; }
    bool spectral_ok() const { return degeneration_page == 2 && e_infinity_h2 == 1 && e_infinity_h2_level0 == 1; }
    bool pieces_ok() const;
    bool passed() const;
};

/// Throws std::invalid_argument unless mu >= 1.
MainLemmaReport verify_main_lemma(int mu, const HamiltonianParams& p, std::optional<int> k_max = std::nullopt,
                                  const DifferentialTable& table = DifferentialTable::standard());

SqueezeCheck verify_squeeze(const HamiltonianParams& p, const DifferentialTable& table = DifferentialTable::standard());

/// H_2 of QB / QB^{(mu)} and whether it is spanned by x2 (no other checks).
std::pair<std::size_t, bool> quick_h2(const DifferentialTable& table, int mu, int k_max, const HamiltonianParams& p);

struct SignPatternResult {
    int sign_mc = 1;  // d1 mc_k = sign_mc * mh_{k+1}
    int sign_Mc = 1;  // d1 Mc_k = sign_Mc * Mh_{k+1}
    bool valid = false;
    std::vector<std::size_t> homology;  // dims of H_j(QB / QB^{(mu)}) for j in [lo, hi]
    bool matches_standard = false;
};

struct SignPatternStudy {
    int mu = 0;
    int k_max = 0;
    int lo = 0;
    int hi = 0;
    std::vector<SignPatternResult> patterns;
};

/// The four sign choices for the two d1 families on a small truncation.
SignPatternStudy sign_pattern_study(int mu, int k_max, int lo, int hi);

/// Standard table with d1 mc_k = sign_mc mh_{k+1} and d1 Mc_k = sign_Mc Mh_{k+1}
/// for k <= k_max.
DifferentialTable table_with_signs(int sign_mc, int sign_Mc, int k_max);

// Counterfactual suite: change one coefficient by +1 or -1 and see which
// checks notice.

struct Mutation {
    Part part = Part::d0;
    BGenerator from;
    BGenerator to;
    Rational original;
    Rational mutated;

    std::string describe() const;
};

struct MutationOutcome {
    Mutation mutation;
    bool d0_square = false;       // symbolic d0^2 != 0
    bool anticommutator = false;  // symbolic d1 d0 + d0 d1 != 0
    std::vector<std::string> validation;  // violation kinds found on QB
    bool h1_changed = false;      // H_1(B, d0) no longer spanned by [mc1]
    // Not part of the criterion; reported for context.
    std::vector<int> b_homology_changed;  // degrees where H(B, d0) changes dimension
    bool main_lemma_changed = false;      // H_2(QB/QB^{(mu)}) no longer [x2]

    bool detected() const { return d0_square || anticommutator || !validation.empty() || h1_changed; }
};

struct MutationSuiteOptions {
    int slot_max_degree = 13;  // mutate coefficients out of generators up to this degree
    int k_max = 10;            // truncation for the QB checks
    int mu = 2;
    HamiltonianParams params = reference_params();
};

struct MutationSuiteReport {
    MutationSuiteOptions options;
    std::vector<MutationOutcome> outcomes;

    std::vector<const MutationOutcome*> undetected() const;
};

std::vector<Mutation> enumerate_mutations(int slot_max_degree);
MutationOutcome evaluate_mutation(const Mutation& m, const MutationSuiteOptions& options);
MutationSuiteReport mutation_suite(const MutationSuiteOptions& options = {});

}  // namespace qfloer::bo
