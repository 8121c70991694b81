#include "qfloer/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qfloer {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    const std::string original(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("malformed rational: '" + original + "'");
        }
        Integer d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator: '" + original + "'");
        result = Rational(Integer(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto whole = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
            throw std::invalid_argument("malformed decimal: '" + original + "'");
        }
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        const Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole), 10);
        result = Rational(w * scale + Integer(std::string(frac), 10), scale);
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed rational: '" + original + "'");
        result = Rational(Integer(std::string(s), 10));
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_display_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return to_string(value);
}

double to_double(const Rational& value) { return value.get_d(); }

Integer floor(const Rational& value) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& value) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Integer floor_strict(const Rational& value) {
    Integer f = floor(value);
    return Rational(f) == value ? Integer(f - 1) : f;
}

Integer ceil_strict(const Rational& value) {
    Integer c = ceil(value);
    return Rational(c) == value ? Integer(c + 1) : c;
}

}  // namespace qfloer
