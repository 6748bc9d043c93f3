#pragma once

#include <map>
#include <stdexcept>

#include "cmzv/algebra.hpp"

namespace cmzv {

template <CoefficientRing R>
bool is_zero_coefficient(const R& c)
{
    return ring_traits<R>::is_zero(c);
}

template <CoefficientRing R>
bool is_zero_coefficient(const AlgebraElement<R>& c)
{
    return c.is_zero();
}

// Polynomial in T with coefficients in C (a scalar ring or an algebra element).
template <class C>
class TPolynomial {
public:
    TPolynomial() = default;
    explicit TPolynomial(C constant) { add_term(0, std::move(constant)); }

    static TPolynomial monomial(int power, C c)
    {
        TPolynomial p;
        p.add_term(power, std::move(c));
        return p;
    }

    const std::map<int, C>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    const C* find(int power) const
    {
        auto it = coeffs_.find(power);
        return it == coeffs_.end() ? nullptr : &it->second;
    }

    C coefficient(int power, const C& zero) const
    {
        auto it = coeffs_.find(power);
        return it == coeffs_.end() ? zero : it->second;
    }

    void add_term(int power, const C& c)
    {
        if (power < 0)
            throw std::invalid_argument("negative power of T");
        if (is_zero_coefficient(c))
            return;
        auto it = coeffs_.find(power);
        if (it == coeffs_.end()) {
            coeffs_.emplace(power, c);
            return;
        }
        it->second += c;
        if (is_zero_coefficient(it->second))
            coeffs_.erase(it);
    }

    TPolynomial& operator+=(const TPolynomial& o)
    {
        for (const auto& [k, c] : o.coeffs_)
            add_term(k, c);
        return *this;
    }
    TPolynomial& operator-=(const TPolynomial& o)
    {
        for (const auto& [k, c] : o.coeffs_)
            add_term(k, negate(c));
        return *this;
    }
    template <class S>
    TPolynomial& scale(const S& s)
    {
        std::map<int, C> next;
        for (auto& [k, c] : coeffs_) {
            C v = scaled(c, s);
            if (!is_zero_coefficient(v))
                next.emplace(k, std::move(v));
        }
        coeffs_ = std::move(next);
        return *this;
    }

    // multiply by T
    TPolynomial shifted(int by = 1) const
    {
        TPolynomial p;
        for (const auto& [k, c] : coeffs_)
            p.coeffs_.emplace(k + by, c);
        return p;
    }

    friend TPolynomial operator+(TPolynomial a, const TPolynomial& b) { return a += b; }
    friend TPolynomial operator-(TPolynomial a, const TPolynomial& b) { return a -= b; }

    bool operator==(const TPolynomial& o) const
    {
        TPolynomial d = *this;
        d -= o;
        return d.is_zero();
    }

private:
    template <class X>
    static X negate(const X& c)
    {
        X out = c;
        out *= X(-1);
        return out;
    }
    template <CoefficientRing R>
    static AlgebraElement<R> negate(const AlgebraElement<R>& c)
    {
        return -c;
    }
    template <class S>
    static C scaled(const C& c, const S& s)
    {
        C out = c;
        out *= s;
        return out;
    }

    std::map<int, C> coeffs_;
};

using QTPoly = TPolynomial<QElement>;

// evaluation at T = 0
template <class C>
C at_zero(const TPolynomial<C>& p, const C& zero)
{
    return p.coefficient(0, zero);
}

// product with a caller supplied coefficient multiplication
template <class C, class Mul>
TPolynomial<C> multiply(const TPolynomial<C>& a, const TPolynomial<C>& b, Mul&& mul)
{
    TPolynomial<C> out;
    for (const auto& [i, ci] : a.terms())
        for (const auto& [j, cj] : b.terms())
            out.add_term(i + j, mul(ci, cj));
    return out;
}

template <CoefficientRing R>
TPolynomial<R> multiply(const TPolynomial<R>& a, const TPolynomial<R>& b)
{
    return multiply(a, b, [](const R& x, const R& y) { return R(x * y); });
}

template <CoefficientRing R>
TPolynomial<AlgebraElement<R>> shuffle_multiply(const TPolynomial<AlgebraElement<R>>& a,
                                                const TPolynomial<AlgebraElement<R>>& b)
{
    return multiply(a, b, [](const AlgebraElement<R>& x, const AlgebraElement<R>& y) { return shuffle(x, y); });
}

} // namespace cmzv
