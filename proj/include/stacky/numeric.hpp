// Exact arithmetic used throughout: arbitrary-precision integers and rationals.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stacky {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Floor division for arbitrary-precision integers (cpp_int division truncates).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }

// Reduce into [0,1).
inline Rat mod1(const Rat& q) { return q - Rat(floor_rat(q)); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a;
}

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }
inline double to_double(const Int& n) { return n.template convert_to<double>(); }

// Parse "p/q", "p", or a decimal string like "-0.25" into an exact rational.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        bool neg = !head.empty() && head[0] == '-';
        if (head.empty() || head == "-" || head == "+") head += '0';
        Int ip(head);
        Int fp(tail.empty() ? "0" : tail);
        Int scale = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Rat frac(fp, scale);
        return neg ? Rat(ip) - frac : Rat(ip) + frac;
    }
    return Rat(Int(s));
}

// Serialize exactly; integers print without the "/1".
inline std::string rat_to_string(const Rat& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

// Closest rational with denominator <= max_den (Stern–Brocot / continued fractions).
inline Rat snap_to_rational(double x, long max_den) {
    if (!(x == x)) throw std::invalid_argument("cannot snap NaN");
    bool neg = x < 0;
    double v = neg ? -x : x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e17) break;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rat r(p1, q1 == 0 ? 1 : q1);
    return neg ? -r : r;
}

}  // namespace stacky
