#include "qfloer/novikov.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfloer::novikov {

LaurentElement::LaurentElement(Window window) : window_(window) {
    if (window.min_power > window.max_power) throw std::invalid_argument("empty Laurent window");
}

LaurentElement LaurentElement::monomial(int power, Rational coefficient, Window window) {
    LaurentElement e(window);
    e.add_term(power, coefficient);
    return e;
}

Rational LaurentElement::coefficient(int power) const {
    auto it = coeffs_.find(power);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void LaurentElement::add_term(int power, const Rational& c) {
    if (c == 0) return;
    if (!window_.contains(power)) {
        truncated_ = true;
        return;
    }
    auto [it, inserted] = coeffs_.emplace(power, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

LaurentElement LaurentElement::operator+(const LaurentElement& other) const {
    LaurentElement out(Window{std::min(window_.min_power, other.window_.min_power),
                              std::max(window_.max_power, other.window_.max_power)});
    out.truncated_ = truncated_ || other.truncated_;
    for (const auto& [p, c] : coeffs_) out.add_term(p, c);
    for (const auto& [p, c] : other.coeffs_) out.add_term(p, c);
    return out;
}

LaurentElement laurent_mul(const LaurentElement& a, const LaurentElement& b) {
    LaurentElement out(Window{std::min(a.window().min_power, b.window().min_power),
                              std::max(a.window().max_power, b.window().max_power)});
    for (const auto& [pa, ca] : a.coefficients()) {
        for (const auto& [pb, cb] : b.coefficients()) out.add_term(pa + pb, ca * cb);
    }
    if (a.truncated() || b.truncated()) out.mark_truncated();
    return out;
}

int graded_degree(int base_degree, int t_power) { return GradingRule{}.degree(base_degree, t_power); }

}  // namespace qfloer::novikov
