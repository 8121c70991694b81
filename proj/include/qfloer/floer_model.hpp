#pragma once

// Generators of the Floer complex of the piecewise-linear Hamiltonian H_E:
// constant orbits on the maximum set U (x0, x2) and the minimum set V
// (y0, y-2), and the Morse critical points m-check, m-hat, M-check, M-hat on
// the orbit manifolds Z_k of the upper (|p| = r - eps) and lower (|p| = r)
// levels, each multiplied by t^{-N}.
//
// Conley-Zehnder indices and actions are taken as given (the index table and
// the action formulas); everything here is exact rational arithmetic.

#include "qfloer/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfloer::floer {

/// Critical points of the perfect-over-Z/2 Morse function on Z_k = RP^3, in
/// order of Morse index 0..3.
enum class CriticalPoint { min_check, min_hat, max_check, max_hat };

int morse_index(CriticalPoint p);
/// Offset j in CZ = 2k + j for upper orbits: -1, 0, 1, 2.
int upper_offset(CriticalPoint p);
std::optional<CriticalPoint> point_from_upper_offset(int j);
std::string short_name(CriticalPoint p);  // "mc", "mh", "Mc", "Mh"

enum class FamilyKind { x0, x2, y0, y_minus2, upper, lower };

struct GeneratorFamily {
    FamilyKind kind = FamilyKind::x0;
    CriticalPoint point = CriticalPoint::min_check;  // upper/lower only
    int multiplicity = 0;                            // k >= 1 for upper/lower, 0 otherwise

    static GeneratorFamily x0() { return {FamilyKind::x0, CriticalPoint::min_check, 0}; }
    static GeneratorFamily x2() { return {FamilyKind::x2, CriticalPoint::min_check, 0}; }
    static GeneratorFamily y0() { return {FamilyKind::y0, CriticalPoint::min_check, 0}; }
    static GeneratorFamily y_minus2() { return {FamilyKind::y_minus2, CriticalPoint::min_check, 0}; }
    static GeneratorFamily upper(CriticalPoint p, int k);
    static GeneratorFamily lower(CriticalPoint p, int k);

    bool is_orbit() const { return kind == FamilyKind::upper || kind == FamilyKind::lower; }
    friend bool operator==(const GeneratorFamily&, const GeneratorFamily&) = default;
};

struct Generator {
    GeneratorFamily family;
    int t_degree = 0;  // N in gamma * t^{-N}

    friend bool operator==(const Generator&, const Generator&) = default;
};

std::string label(const Generator& g);

class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Data (r, eps, E) of the Hamiltonian H_E.
struct HamiltonianParams {
    Rational r;
    Rational eps;
    Rational energy;

    /// Validated construction; throws InvalidParameters.
    static HamiltonianParams make(const Rational& r, const Rational& eps, const Rational& energy);
    static HamiltonianParams parse(const std::string& r, const std::string& eps, const std::string& energy);

    /// Non-resonance conditions that fail (1/r in Z, (E+eps)/eps in Z).
    std::vector<std::string> resonances() const;
    bool non_resonant() const { return resonances().empty(); }
};

/// Throws InvalidParameters unless 0 < r < 1/2, 0 < eps < r and E > 1.
void validate(const HamiltonianParams& p);

int cz_index(const Generator& g);
Rational action(const Generator& g, const HamiltonianParams& p);

/// The multiplicity bound k <= (E + eps)/eps.
bool multiplicity_admissible(long k, const HamiltonianParams& p);
Integer multiplicity_bound(const HamiltonianParams& p);

/// kappa = 1 - 2r + 2eps.
Rational kappa(const HamiltonianParams& p);

struct MuWindow {
    Rational kappa;
    Rational lower_bound;  // (E - 1)/kappa
    Rational upper_bound;  // (E - kappa)/kappa
    Integer mu_minus;      // greatest integer < lower_bound
    Integer mu_plus;       // least integer > upper_bound
};

MuWindow mu_window(const HamiltonianParams& p);

struct ClauseResult {
    std::string name;
    std::string statement;
    std::size_t checked = 0;
    std::vector<std::string> counterexamples;

    bool passed() const { return counterexamples.empty(); }
};

struct Lemma0Report {
    HamiltonianParams params;
    Integer multiplicity_bound;
    MuWindow window;
    int upper_k_limit = 0;
    int lower_k_limit = 0;
    std::size_t generators_enumerated = 0;
    std::vector<ClauseResult> clauses;  // (i) .. (iv)

    bool passed() const;
};

/// Enumerates every generator of CZ index 1, 2 or 3 and checks the four
/// clauses: lower/V actions < 1; upper/U actions < E + 1 with N >= 0; upper
/// generators of action > 1 obey the strict multiplicity bound; the mu window
/// separates actions above and below 1.
Lemma0Report verify_lemma0(const HamiltonianParams& p);

/// Lists all generators with CZ in [cz_lo, cz_hi] for orbit multiplicities up
/// to the given limits (x/y generators included).
std::vector<Generator> enumerate_generators(int cz_lo, int cz_hi, int upper_k_limit, int lower_k_limit);

// Index bookkeeping for a configuration from gamma_+ on Z_{k+} to gamma_- on
// Z_{k-} with l+ positive and l- negative punctures and projection degree
// Delta: 2(k+ - k-) + h + 4 l+ = 1 and (k+ + l+) - (k- + l-) = 2 Delta,
// hence l+ + l- = (1 - h)/2 - 2 Delta.

struct LPlusConstraint {
    int min = 0;
    std::optional<int> max;

    static LPlusConstraint exactly(int n) { return {n, n}; }
    static LPlusConstraint at_least(int n) { return {n, std::nullopt}; }
    bool admits(int l) const { return l >= min && (!max || l <= *max); }
};

inline constexpr const char* kFlagFiberCircle =
    "excluded: single-fiber curve; the fiber circle over the minimum generically misses the maximum (dimension count)";

struct IndexSolution {
    int h = 0;
    int delta = 0;
    int l_plus = 0;
    int l_minus = 0;
    Integer weight;  // 2^{l_minus}
    std::vector<std::string> flags;

    bool excluded() const { return !flags.empty(); }
    /// k- - k+.
    int k_shift() const { return l_plus - l_minus - 2 * delta; }
    friend bool operator==(const IndexSolution&, const IndexSolution&) = default;
};

std::vector<IndexSolution> index_case_analysis(LPlusConstraint constraint);

/// A matrix slot (source point on Z_k) -> (target point on Z_{k + k_shift}).
struct DifferentialSlot {
    CriticalPoint source;
    CriticalPoint target;
    int k_shift;
    int l_plus;
    int l_minus;

    friend bool operator==(const DifferentialSlot&, const DifferentialSlot&) = default;
};

/// Slots allowed by the non-excluded solutions.
std::vector<DifferentialSlot> admissible_slots(const std::vector<IndexSolution>& solutions);

}  // namespace qfloer::floer
