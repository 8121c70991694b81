#include "qfloer/quantum.hpp"

#include "qfloer/novikov.hpp"

namespace qfloer::quantum {

std::string to_string(const QuantumClass& x) {
    return to_display_string(x.a) + " + " + to_display_string(x.b) + "*Pt";
}

QuantumClass multiply_with_relation(const QuantumClass& u, const QuantumClass& v, const Rational& c,
                                    const Rational& d) {
    const Rational pt_pt = u.b * v.b;
    return {u.a * v.a + c * pt_pt, u.a * v.b + u.b * v.a + d * pt_pt};
}

QuantumClass qh4_mul(const QuantumClass& u, const QuantumClass& v) { return multiply_with_relation(u, v, 1, 0); }

std::pair<QuantumClass, QuantumClass> idempotents() {
    const Rational half(1, 2);
    return {{half, half}, {half, -half}};
}

IdempotentCheck check_idempotents() {
    const auto [ep, em] = idempotents();
    IdempotentCheck c;
    c.sum_is_unit = ep + em == QuantumClass::unit();
    c.difference_is_pt = ep - em == QuantumClass::pt();
    c.orthogonal = qh4_mul(ep, em) == QuantumClass{0, 0};
    c.plus_idempotent = qh4_mul(ep, ep) == ep;
    c.minus_idempotent = qh4_mul(em, em) == em;
    return c;
}

std::optional<std::pair<Rational, Rational>> derive_pt_square() {
    // For e = a + b Pt, e^2 = (a^2 + c b^2) + (2ab + d b^2) Pt, so e^2 = e
    // is linear in (c, d) once b != 0.
    const auto [ep, em] = idempotents();
    std::optional<std::pair<Rational, Rational>> found;
    for (const auto& e : {ep, em}) {
        if (e.b == 0) return std::nullopt;
        const Rational bb = e.b * e.b;
        const Rational c = (e.a - e.a * e.a) / bb;
        const Rational d = (e.b - 2 * e.a * e.b) / bb;
        if (!(multiply_with_relation(e, e, c, d) == e)) return std::nullopt;
        if (found && (found->first != c || found->second != d)) return std::nullopt;
        found = std::make_pair(c, d);
    }
    return found;
}

AlgebraCheck check_algebra_axioms() {
    const QuantumClass basis[2] = {QuantumClass::unit(), QuantumClass::pt()};
    AlgebraCheck out{true, true, true};
    for (const auto& x : basis) {
        if (!(qh4_mul(QuantumClass::unit(), x) == x && qh4_mul(x, QuantumClass::unit()) == x)) out.unital = false;
        for (const auto& y : basis) {
            if (!(qh4_mul(x, y) == qh4_mul(y, x))) out.commutative = false;
            for (const auto& z : basis) {
                if (!(qh4_mul(qh4_mul(x, y), z) == qh4_mul(x, qh4_mul(y, z)))) out.associative = false;
            }
        }
    }
    return out;
}

std::array<std::array<Rational, 2>, 2> pt_multiplication_matrix() {
    const QuantumClass images[2] = {qh4_mul(QuantumClass::pt(), QuantumClass::unit()),
                                    qh4_mul(QuantumClass::pt(), QuantumClass::pt())};
    std::array<std::array<Rational, 2>, 2> m;
    for (int j = 0; j < 2; ++j) {
        m[0][j] = images[j].a;
        m[1][j] = images[j].b;
    }
    return m;
}

std::optional<Rational> pt_eigenvalue(const QuantumClass& x) {
    if (x.a == 0 && x.b == 0) return std::nullopt;
    const QuantumClass y = qh4_mul(QuantumClass::pt(), x);
    const Rational lambda = x.a != 0 ? y.a / x.a : y.b / x.b;
    if (!(y == lambda * x)) return std::nullopt;
    return lambda;
}

int grading_check(int class_degree, int t_power) { return novikov::graded_degree(class_degree, t_power); }

}  // namespace qfloer::quantum
