#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace pact {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Reduce r into [0, c).  Requires c > 0.
inline Rational mod_reduce(const Rational& r, const Rational& c) {
    Rational q = r / c;
    Int fl = rat_num(q) / rat_den(q);
    if (q < 0 && fl * rat_den(q) != rat_num(q)) --fl;
    return r - Rational(fl) * c;
}

inline std::string rat_to_string(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

/// Parses "p/q" or "p".  Throws std::invalid_argument on malformed input.
inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

inline double rat_to_double(const Rational& r) { return static_cast<double>(r); }

/// Gaussian rational a + bi with exact components.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm_sq() const { return re * re + im * im; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// |z| when it is rational, i.e. when re*re + im*im is a perfect square of rationals.
inline std::optional<Rational> exact_modulus(const GaussianRational& z) {
    if (z.im == 0) return z.re < 0 ? -z.re : z.re;
    if (z.re == 0) return z.im < 0 ? -z.im : z.im;
    Rational n = z.norm_sq();
    Int sn = boost::multiprecision::sqrt(rat_num(n));
    Int sd = boost::multiprecision::sqrt(rat_den(n));
    if (sn * sn == rat_num(n) && sd * sd == rat_den(n)) return Rational(sn, sd);
    return std::nullopt;
}

/// Smallest rational of the form k/2^60 that is >= |z|.  Used when |z| is irrational.
inline Rational modulus_upper_bound(const GaussianRational& z) {
    if (auto m = exact_modulus(z)) return *m;
    Rational n = z.norm_sq();
    // binary search k with (k/2^60)^2 >= n > ((k-1)/2^60)^2
    const Int scale = Int(1) << 60;
    Int lo = 0, hi = 1;
    auto sq_ge = [&](const Int& k) { return Rational(k * k, scale * scale) >= n; };
    while (!sq_ge(hi)) hi <<= 1;
    while (lo + 1 < hi) {
        Int mid = (lo + hi) / 2;
        if (sq_ge(mid)) hi = mid; else lo = mid;
    }
    return Rational(hi, scale);
}

/// A possibly outward-rounded nonnegative value (see i_norm / l_norm).
struct NormValue {
    Rational value;
    bool exact = true;  // false: value is an upper bound rounded at 2^-60

    friend bool operator==(const NormValue& a, const NormValue& b) {
        return a.value == b.value && a.exact == b.exact;
    }
};

inline std::string gaussian_to_string(const GaussianRational& z) {
    if (z.im == 0) return rat_to_string(z.re);
    std::string s = rat_to_string(z.re);
    s += (z.im < 0) ? "-" : "+";
    s += rat_to_string(z.im < 0 ? -z.im : z.im);
    s += "i";
    return s;
}

/// Parses "a/b+c/di", "a/b-c/di", "a/b", or "c/di".
inline GaussianRational gaussian_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i') return {rat_from_string(s), Rational(0)};
    std::string body = s.substr(0, s.size() - 1);
    // split at the last '+' or '-' that is not the leading sign
    for (size_t i = body.size(); i-- > 1;) {
        if (body[i] == '+' || body[i] == '-') {
            Rational re = rat_from_string(body.substr(0, i));
            std::string imlit = body.substr(i + 1);
            Rational im = imlit.empty() ? Rational(1) : rat_from_string(imlit);
            if (body[i] == '-') im = -im;
            return {re, im};
        }
    }
    if (body.empty() || body == "+") return {Rational(0), Rational(1)};
    if (body == "-") return {Rational(0), Rational(-1)};
    return {Rational(0), rat_from_string(body)};
}

}  // namespace pact
