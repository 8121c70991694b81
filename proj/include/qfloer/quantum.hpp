#pragma once

// The degree-4 component QH_4 of the quantum homology of the quadric
// S^2 x S^2, with basis 1 = [W] and Pt = P t (the point class times t).

#include "qfloer/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace qfloer::quantum {

/// a * 1 + b * Pt.
struct QuantumClass {
    Rational a;
    Rational b;

    static QuantumClass unit() { return {1, 0}; }
    static QuantumClass pt() { return {0, 1}; }

    QuantumClass operator+(const QuantumClass& o) const { return {a + o.a, b + o.b}; }
    QuantumClass operator-(const QuantumClass& o) const { return {a - o.a, b - o.b}; }
    friend QuantumClass operator*(const Rational& s, const QuantumClass& x) { return {s * x.a, s * x.b}; }
    friend bool operator==(const QuantumClass&, const QuantumClass&) = default;
};

std::string to_string(const QuantumClass& x);

/// Product with (Pt)^2 = c + d Pt; the algebra of QH_4 has (c, d) = (1, 0).
QuantumClass multiply_with_relation(const QuantumClass& u, const QuantumClass& v, const Rational& c,
                                    const Rational& d);

QuantumClass qh4_mul(const QuantumClass& u, const QuantumClass& v);

/// e_+ = (1 + Pt)/2, e_- = (1 - Pt)/2.
std::pair<QuantumClass, QuantumClass> idempotents();

struct IdempotentCheck {
    bool sum_is_unit = false;        // e+ + e- = 1
    bool difference_is_pt = false;   // e+ - e- = Pt
    bool orthogonal = false;         // e+ e- = 0
    bool plus_idempotent = false;    // e+^2 = e+
    bool minus_idempotent = false;   // e-^2 = e-

    bool passed() const {
        return sum_is_unit && difference_is_pt && orthogonal && plus_idempotent && minus_idempotent;
    }
};

IdempotentCheck check_idempotents();

/// Solves for (c, d) in (Pt)^2 = c + d Pt from e_+^2 = e_+ and e_-^2 = e_-.
/// Returns nullopt when the two conditions disagree.
std::optional<std::pair<Rational, Rational>> derive_pt_square();

struct AlgebraCheck {
    bool commutative = false;
    bool associative = false;
    bool unital = false;

    bool passed() const { return commutative && associative && unital; }
};

/// Exhaustive check on the basis {1, Pt}.
AlgebraCheck check_algebra_axioms();

/// Matrix of x -> Pt * x in the basis (1, Pt); column j is the image of basis j.
std::array<std::array<Rational, 2>, 2> pt_multiplication_matrix();

/// lambda with Pt * x = lambda x, if x is an eigenvector.
std::optional<Rational> pt_eigenvalue(const QuantumClass& x);

/// deg(a t^N) = deg(a) + 4N.
int grading_check(int class_degree, int t_power);

}  // namespace qfloer::quantum
