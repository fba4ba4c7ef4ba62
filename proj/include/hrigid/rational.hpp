#ifndef HRIGID_RATIONAL_HPP
#define HRIGID_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hrigid {

// GMP-backed rationals are kept canonical (lowest terms, positive denominator)
// by every arithmetic operation.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Exact "p/q" or "p" rendering; never decimal.
inline std::string to_string(const Rational& r) { return r.str(); }

namespace detail {

inline bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

} // namespace detail

/// Parses "p", "-p" or "p/q". Anything else (decimals, exponents, q = 0)
/// throws std::invalid_argument.
inline Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!detail::is_integer_literal(num_text)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    Integer num(std::string(num_text[0] == '+' ? num_text.substr(1) : num_text));
    if (slash == std::string_view::npos) return Rational(num);

    const auto den_text = text.substr(slash + 1);
    if (!detail::is_integer_literal(den_text)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    Integer den(std::string(den_text[0] == '+' ? den_text.substr(1) : den_text));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

} // namespace hrigid

#endif
