#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <gmpxx.h>

namespace cmzv {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

inline Rational make_rational(long num, long den)
{
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

template <class R>
struct ring_traits;

template <>
struct ring_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
    // exact rings ignore the tolerance
    static bool negligible(const Rational& x, double) { return is_zero(x); }
};

template <>
struct ring_traits<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return Complex(0.0, 0.0); }
    static Complex one() { return Complex(1.0, 0.0); }
    static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
    static Complex from_rational(const Rational& q) { return Complex(q.get_d(), 0.0); }
    static bool is_zero(const Complex& x) { return x == 0.0; }
    static double magnitude(const Complex& x) { return std::abs(x); }
    static bool negligible(const Complex& x, double tol) { return std::abs(x) <= tol; }
};

template <class R>
concept CoefficientRing = requires(const R& a, const R& b, long n) {
    { R(a + b) } -> std::same_as<R>;
    { R(a - b) } -> std::same_as<R>;
    { R(a * b) } -> std::same_as<R>;
    { ring_traits<R>::from_int(n) } -> std::same_as<R>;
    { ring_traits<R>::is_zero(a) } -> std::same_as<bool>;
};

// 1/n as a ring element
template <CoefficientRing R>
R inverse_of(long n)
{
    return ring_traits<R>::from_rational(make_rational(1, n));
}

} // namespace cmzv
