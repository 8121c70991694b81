#pragma once

// Truncated Laurent coefficients in t and the t-grading bookkeeping.
//
// deg t = 4 and the action drops by 1 per power of t^{-1}. Elements are
// finitely supported inside a window of allowed powers; products that would
// leave the window are dropped and the result remembers that it was cut.

#include "qfloer/rational.hpp"

#include <map>

namespace qfloer::novikov {

struct Window {
    int min_power;
    int max_power;

    bool contains(int power) const { return min_power <= power && power <= max_power; }
    friend bool operator==(const Window&, const Window&) = default;
};

/// Window of Λ truncated after t^{-mu}: powers -mu..0.
inline Window lambda_window(int mu) { return Window{-mu, 0}; }

class LaurentElement {
public:
    explicit LaurentElement(Window window);
    static LaurentElement monomial(int power, Rational coefficient, Window window);

    const Window& window() const { return window_; }
    const std::map<int, Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(int power) const;
    bool truncated() const { return truncated_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Adds c * t^power; out-of-window powers are dropped and flagged.
    void add_term(int power, const Rational& c);
    void mark_truncated() { truncated_ = true; }

    LaurentElement operator+(const LaurentElement& other) const;

    /// Equality of coefficients and windows; the truncation flag is metadata.
    friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
        return a.window_ == b.window_ && a.coeffs_ == b.coeffs_;
    }

private:
    Window window_;
    std::map<int, Rational> coeffs_;
    bool truncated_ = false;
};

/// Convolution product. The result window is the hull of the two operand
/// windows, so a power is dropped only when it lies outside both.
LaurentElement laurent_mul(const LaurentElement& a, const LaurentElement& b);

struct GradingRule {
    int degree_per_power = 4;
    Rational action_per_power = 1;

    int degree(int base_degree, int t_power) const { return base_degree + degree_per_power * t_power; }
    Rational action(const Rational& base_action, int t_power) const {
        return base_action + action_per_power * t_power;
    }
};

inline constexpr int kDegreePerPower = 4;

/// deg(a t^N) = deg(a) + 4N.
int graded_degree(int base_degree, int t_power);

}  // namespace qfloer::novikov
