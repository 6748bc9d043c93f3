#pragma once

#include <unordered_map>
#include <vector>

#include "cmzv/tpoly.hpp"
#include "cmzv/zmap.hpp"

namespace cmzv {

// Shuffle regularization with per-instance memo tables. Not thread-safe;
// use one instance per thread.
class ShuffleRegularizer {
public:
    // ℌ -> ℌ¹, shuffle-compatible, kills x_0
    QElement tilde(const Word& w);
    QElement tilde(const QElement& a);
    // ℌ -> ℌ⁰[T], shuffle-compatible, x_0 -> 0, x_1 -> T
    QTPoly bar_T(const Word& w);
    QTPoly bar_T(const QElement& a);
    // evaluation of bar_T at T = 0
    QElement bar(const Word& w);
    QElement bar(const QElement& a);

private:
    QTPoly bar_T_h1(const Word& w);
    std::unordered_map<Word, QElement, WordHash> tilde_memo_;
    std::unordered_map<Word, QTPoly, WordHash> bar_memo_;
};

QElement tilde_reg(const QElement& a);
QTPoly bar_reg_T(const QElement& a);
QElement bar_reg(const QElement& a);

// Coefficients of Γ(u) = exp(Σ_{n≥2} (-1)^n/n Z(x_0^{n-1}x_1) u^n) and of its inverse.
template <CoefficientRing R>
struct GammaSeries {
    std::vector<R> gamma;
    std::vector<R> inverse;
};

// exp of a power series with zero constant term, truncated at degree
template <CoefficientRing R>
std::vector<R> power_series_exp(const std::vector<R>& s, int degree)
{
    std::vector<R> e(static_cast<size_t>(degree) + 1, ring_traits<R>::zero());
    e[0] = ring_traits<R>::one();
    for (int n = 1; n <= degree; ++n) {
        R acc = ring_traits<R>::zero();
        for (int k = 1; k <= n && k < static_cast<int>(s.size()); ++k)
            acc += ring_traits<R>::from_int(k) * s[k] * e[n - k];
        e[n] = acc * inverse_of<R>(n);
    }
    return e;
}

inline Word zeta_word(int n)
{
    Word w(static_cast<size_t>(n - 1), kX0);
    w.push_back(x_letter(0));
    return w;
}

template <CoefficientRing R>
GammaSeries<R> gamma_series(const ZMap<R>& z, int degree)
{
    std::vector<R> s(static_cast<size_t>(degree) + 1, ring_traits<R>::zero());
    for (int n = 2; n <= degree; ++n) {
        R c = z(zeta_word(n)) * inverse_of<R>(n);
        s[n] = n % 2 == 0 ? c : R(-c);
    }
    std::vector<R> neg(s.size());
    for (size_t i = 0; i < s.size(); ++i)
        neg[i] = R(-s[i]);
    return {power_series_exp(s, degree), power_series_exp(neg, degree)};
}

namespace detail {

// T^l/l! -> Σ_j c_j T^{l-j}/(l-j)!
template <CoefficientRing R>
TPolynomial<R> apply_divided_powers(const TPolynomial<R>& p, const std::vector<R>& c)
{
    TPolynomial<R> out;
    for (const auto& [l, a] : p.terms()) {
        long falling = 1;  // l!/(l-j)!
        for (int j = 0; j <= l; ++j) {
            if (j > 0)
                falling *= (l - j + 1);
            if (j >= static_cast<int>(c.size()))
                throw std::out_of_range("series coefficients not available to this degree");
            out.add_term(l - j, R(a * c[j] * ring_traits<R>::from_int(falling)));
        }
    }
    return out;
}

} // namespace detail

template <CoefficientRing R>
TPolynomial<R> rho_apply(const ZMap<R>& z, const TPolynomial<R>& p, Direction dir)
{
    int deg = std::max(p.degree(), 0);
    auto gs = gamma_series(z, deg);
    return detail::apply_divided_powers(p, dir == Direction::Forward ? gs.gamma : gs.inverse);
}

// δ_1 = Σ_{g^d = 1, g ≠ 1} Z(x_g), δ_j = δ_1^j / j!
template <CoefficientRing R>
std::vector<R> delta_series(const ZMap<R>& z, const PowerStructure& ps, int degree)
{
    R d1 = ring_traits<R>::zero();
    for (int g : ps.kernel)
        if (g != ps.group.identity())
            d1 += z(Word{x_letter(g)});
    std::vector<R> out(static_cast<size_t>(degree) + 1);
    out[0] = ring_traits<R>::one();
    for (int j = 1; j <= degree; ++j)
        out[j] = out[j - 1] * d1 * inverse_of<R>(j);
    return out;
}

template <CoefficientRing R>
TPolynomial<R> sigma_apply(const ZMap<R>& z, const PowerStructure& ps, const TPolynomial<R>& p)
{
    return detail::apply_divided_powers(p, delta_series(z, ps, std::max(p.degree(), 0)));
}

// (Z ⊗ id) on T-polynomials with algebra coefficients
template <CoefficientRing R>
TPolynomial<R> apply_z(const ZMap<R>& z, const QTPoly& p)
{
    TPolynomial<R> out;
    for (const auto& [l, c] : p.terms())
        out.add_term(l, z(c));
    return out;
}

template <CoefficientRing R>
TPolynomial<R> extend_Z_sh(const ZMap<R>& z, const QElement& a, ShuffleRegularizer& reg)
{
    return apply_z(z, reg.bar_T(a));
}

template <CoefficientRing R>
TPolynomial<R> extend_Z_sh(const ZMap<R>& z, const QElement& a)
{
    ShuffleRegularizer reg;
    return extend_Z_sh(z, a, reg);
}

} // namespace cmzv
