#ifndef KGT_RATIONAL_HPP
#define KGT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace kgt {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// floor(a / b) for b != 0
inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rational& r) { return floor_div(rat_num(r), rat_den(r)); }

inline Int ceil_rat(const Rational& r) {
    Int f = floor_rat(r);
    return (Rational(f) == r) ? f : f + 1;
}

// representative of r mod m*Z in [0, m), m > 0
inline Rational mod_interval(const Rational& r, const Rational& m) {
    Rational q = r / m;
    Rational out = r - Rational(floor_rat(q)) * m;
    if (out < 0) out += m;   // guard against exact-boundary floor
    if (out >= m) out -= m;
    return out;
}

// norms of discriminant-form elements live in Q/2Z, reduced into [0, 2)
inline Rational mod_2z(const Rational& r) { return mod_interval(r, Rational(2)); }

// pairings live in Q/Z, reduced into [0, 1)
inline Rational mod_1z(const Rational& r) { return mod_interval(r, Rational(1)); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string rat_to_string(const Rational& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// exact conversion of a decimal literal such as "0.25" or "-1.5e-2"
inline Rational parse_decimal(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_decimal: empty string");
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long long expo = 0;
    if (epos != std::string::npos) expo = std::stoll(s.substr(epos + 1));
    bool neg = false;
    std::size_t i = 0;
    if (i < mant.size() && (mant[i] == '+' || mant[i] == '-')) neg = (mant[i++] == '-');
    Int num = 0;
    Int den = 1;
    bool seen_dot = false, seen_digit = false;
    for (; i < mant.size(); ++i) {
        char c = mant[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("parse_decimal: bad literal " + s);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (seen_dot) den *= 10;
            seen_digit = true;
        } else {
            throw std::invalid_argument("parse_decimal: bad literal " + s);
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_decimal: bad literal " + s);
    Rational r(num, den);
    for (long long k = 0; k < expo; ++k) r *= 10;
    for (long long k = 0; k > expo; --k) r /= 10;
    return neg ? -r : r;
}

}  // namespace kgt

#endif
