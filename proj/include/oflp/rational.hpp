#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace oflp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown on malformed textual input (numbers, instance files).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline BigInt parse_integer(std::string_view s, std::string_view full) {
    if (s.empty()) throw ParseError("empty integer in '" + std::string(full) + "'");
    for (char c : s)
        if (c < '0' || c > '9') throw ParseError("bad digit in '" + std::string(full) + "'");
    BigInt v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

} // namespace detail

/// Parses "p/q", integers, and decimal/scientific forms ("0.1", "-3", "1e-4",
/// ".5e2") into an exact rational. Decimal strings are exact: "0.1" -> 1/10.
inline Rational parse_rational(std::string_view s) {
    const std::string_view full = s;
    // leading/trailing whitespace
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty number");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
        bool neg = false;
        if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
            neg = num.front() == '-';
            num.remove_prefix(1);
        }
        BigInt p = detail::parse_integer(num, full);
        BigInt q = detail::parse_integer(den, full);
        if (q == 0) throw ParseError("zero denominator in '" + std::string(full) + "'");
        Rational r(p, q);
        return neg ? -r : r;
    }

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string_view mantissa = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        std::string_view es = s.substr(e + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        BigInt ev = detail::parse_integer(es, full);
        if (ev > 100000) throw ParseError("exponent out of range in '" + std::string(full) + "'");
        exp10 = ev.convert_to<long>();
        if (eneg) exp10 = -exp10;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false, seen_digit = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_point) throw ParseError("two decimal points in '" + std::string(full) + "'");
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) ++frac_digits;
        } else {
            throw ParseError("bad character in '" + std::string(full) + "'");
        }
    }
    if (!seen_digit) throw ParseError("no digits in '" + std::string(full) + "'");
    BigInt p = detail::parse_integer(digits, full);
    long scale = exp10 - frac_digits;
    BigInt num = p, den = 1;
    if (scale > 0)
        num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale));
    else if (scale < 0)
        den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-scale));
    Rational r(num, den);
    return neg ? -r : r;
}

/// Exact fraction rendering: "17/70", "3", "-1/2".
inline std::string to_fraction(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Decimal rendering truncated to `sig` significant digits, trailing zeros
/// stripped. Exact when the value terminates within `sig` digits.
inline std::string to_decimal(const Rational& r, int sig = 12) {
    if (r == 0) return "0";
    BigInt a = numerator(r), b = denominator(r);
    std::string out;
    if (a < 0) {
        out = "-";
        a = -a;
    }
    BigInt q = a / b;
    BigInt rem = a % b;
    std::string ipart = q.str();
    out += ipart;
    int sig_used = (q == 0) ? 0 : static_cast<int>(ipart.size());
    if (rem == 0 || sig_used >= sig) return out;
    std::string frac;
    while (rem != 0) {
        rem *= 10;
        BigInt d = rem / b;
        rem %= b;
        frac.push_back(static_cast<char>('0' + d.convert_to<int>()));
        if (sig_used > 0 || d != 0) ++sig_used;
        if (sig_used >= sig) break;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return out;
}

/// "17/70 ~ 0.242857142857" style pairing used in reports.
inline std::string show(const Rational& r) {
    if (denominator(r) == 1) return to_fraction(r);
    return to_fraction(r) + " ~ " + to_decimal(r);
}

/// Rational enclosure [lo, hi] of sqrt(x) with hi - lo <= 2/10^digits.
/// pre: x >= 0.
inline std::pair<Rational, Rational> sqrt_enclosure(const Rational& x, unsigned digits) {
    if (x < 0) throw std::domain_error("sqrt of negative");
    BigInt p = numerator(x), q = denominator(x);
    BigInt scale = boost::multiprecision::pow(BigInt(10), digits);
    // sqrt(p/q) = sqrt(p*q)/q; floor integer sqrt gives the lower bound.
    BigInt radicand = p * q * scale * scale;
    BigInt s = boost::multiprecision::sqrt(radicand);
    return {Rational(s, q * scale), Rational(s + 1, q * scale)};
}

} // namespace oflp
