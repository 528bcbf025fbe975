#pragma once

// Exact rational arithmetic used by every verdict path.
//
// Rationals are GMP mpq values; text form is "p/q" (or "p" for integers).
// ExtRational adds +infinity for limsup/liminf values that diverge.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace porosity {

using Rational = mpq_class;

/// num/den in canonical form (mpq_class(num, den) alone does not reduce).
Rational ratio(long num, long den);

/// Parses "p/q", "p", or a plain decimal such as "0.25". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Fixed-point rendering for human-readable reports only.
std::string to_decimal(const Rational& value, int digits = 6);

/// base^exponent for any integer exponent (base must be nonzero when exponent < 0).
Rational pow(const Rational& base, long exponent);

/// A rational or +infinity.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    ExtRational(long value) : value_(value) {}                  // NOLINT(google-explicit-constructor)

    static ExtRational infinity();

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// Throws std::logic_error when infinite.
    const Rational& value() const;

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend bool operator<(const ExtRational& a, const ExtRational& b);
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

private:
    Rational value_{0};
    bool infinite_ = false;
};

ExtRational max(const ExtRational& a, const ExtRational& b);
ExtRational min(const ExtRational& a, const ExtRational& b);

/// "inf" or the rational text form.
std::string to_string(const ExtRational& value);
ExtRational parse_ext_rational(std::string_view text);

}  // namespace porosity
