#include "porosity/rational.hpp"

#include <stdexcept>

namespace porosity {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

bool is_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    return all_digits(s);
}

}  // namespace

Rational ratio(long num, long den) {
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    const std::string bad = "malformed rational: '" + std::string(text) + "'";

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!is_integer_text(num) || !all_digits(den)) {
            throw std::invalid_argument(bad);
        }
        mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        }
        Rational r(n, d);
        r.canonicalize();
        return r;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (!(whole.empty() || is_integer_text(whole)) || !all_digits(frac)) {
            throw std::invalid_argument(bad);
        }
        const bool negative = !whole.empty() && whole.front() == '-';
        mpz_class digits(std::string(whole.empty() || whole == "-" || whole == "+" ? "0" : whole) +
                             std::string(frac),
                         10);
        if (negative && digits > 0) {
            digits = -digits;
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Rational r(digits, scale);
        r.canonicalize();
        return r;
    }
    if (!is_integer_text(text)) {
        throw std::invalid_argument(bad);
    }
    return Rational(mpz_class(std::string(text[0] == '+' ? text.substr(1) : text), 10));
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) {
        return value.get_num().get_str();
    }
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const bool negative = value < 0;
    mpz_class scaled = abs(value.get_num()) * scale;
    mpz_class q = scaled / value.get_den();
    // round half up on the last digit
    if ((scaled % value.get_den()) * 2 >= value.get_den()) {
        q += 1;
    }
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative && q != 0 ? "-" + s : s;
}

Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) {
            throw std::domain_error("zero to a negative power");
        }
        return pow(Rational(1) / base, -exponent);
    }
    const auto e = static_cast<unsigned long>(exponent);
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    return Rational(num, den);
}

ExtRational ExtRational::infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
}

const Rational& ExtRational::value() const {
    if (infinite_) {
        throw std::logic_error("value() of an infinite ExtRational");
    }
    return value_;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) {
        return a.infinite_ == b.infinite_;
    }
    return a.value_ == b.value_;
}

bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_) {
        return false;
    }
    if (b.infinite_) {
        return true;
    }
    return a.value_ < b.value_;
}

ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }
ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

std::string to_string(const ExtRational& value) {
    return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

ExtRational parse_ext_rational(std::string_view text) {
    if (text == "inf" || text == "infinity") {
        return ExtRational::infinity();
    }
    return ExtRational(parse_rational(text));
}

}  // namespace porosity
