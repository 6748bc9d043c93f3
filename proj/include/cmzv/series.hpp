#pragma once

#include <optional>
#include <string>

#include "cmzv/regularization.hpp"

namespace cmzv {

// Noncommutative power series truncated at a degree bound (length for X,
// weight for Y). Absent words have coefficient zero; asking for a word past
// the bound is an error.
template <CoefficientRing R>
class TruncatedSeries {
public:
    using Map = std::unordered_map<Word, R, WordHash>;

    TruncatedSeries(Alphabet a, FiniteAbelianGroup g, int degree)
        : alphabet_(a), group_(std::move(g)), degree_(degree)
    {
        if (degree < 0)
            throw std::invalid_argument("negative degree bound");
    }

    static TruncatedSeries unit(Alphabet a, const FiniteAbelianGroup& g, int degree)
    {
        TruncatedSeries s(a, g, degree);
        s.set({}, ring_traits<R>::one());
        return s;
    }

    // drops terms past the bound
    static TruncatedSeries from_element(const AlgebraElement<R>& e, const FiniteAbelianGroup& g, int degree)
    {
        TruncatedSeries s(e.alphabet(), g, degree);
        for (const auto& [w, c] : e.terms())
            if (word_degree(w, e.alphabet()) <= degree)
                s.add(w, c);
        return s;
    }

    Alphabet alphabet() const { return alphabet_; }
    const FiniteAbelianGroup& group() const { return group_; }
    int degree() const { return degree_; }
    const Map& terms() const { return coeffs_; }

    R coefficient(const Word& w) const
    {
        if (word_degree(w, alphabet_) > degree_)
            throw std::out_of_range("word beyond the truncation degree");
        auto it = coeffs_.find(w);
        return it == coeffs_.end() ? ring_traits<R>::zero() : it->second;
    }

    void set(const Word& w, const R& c)
    {
        if (word_degree(w, alphabet_) > degree_)
            throw std::out_of_range("word beyond the truncation degree");
        if (ring_traits<R>::is_zero(c))
            coeffs_.erase(w);
        else
            coeffs_[w] = c;
    }

    void add(const Word& w, const R& c)
    {
        if (word_degree(w, alphabet_) > degree_)
            return;
        if (ring_traits<R>::is_zero(c))
            return;
        auto [it, fresh] = coeffs_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (ring_traits<R>::is_zero(it->second))
                coeffs_.erase(it);
        }
    }

    void check_compatible(const TruncatedSeries& o) const
    {
        if (alphabet_ != o.alphabet_ || group_ != o.group_)
            throw std::invalid_argument("series over different alphabets");
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o)
    {
        check_compatible(o);
        degree_ = std::min(degree_, o.degree_);
        prune();
        for (const auto& [w, c] : o.coeffs_)
            add(w, c);
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o)
    {
        check_compatible(o);
        degree_ = std::min(degree_, o.degree_);
        prune();
        for (const auto& [w, c] : o.coeffs_)
            add(w, R(-c));
        return *this;
    }
    TruncatedSeries& operator*=(const R& s)
    {
        Map next;
        for (auto& [w, c] : coeffs_) {
            R v = c * s;
            if (!ring_traits<R>::is_zero(v))
                next.emplace(w, v);
        }
        coeffs_ = std::move(next);
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

    // concatenation product, truncated at the smaller bound
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        a.check_compatible(b);
        TruncatedSeries out(a.alphabet_, a.group_, std::min(a.degree_, b.degree_));
        for (const auto& [u, cu] : a.coeffs_) {
            int du = word_degree(u, a.alphabet_);
            for (const auto& [v, cv] : b.coeffs_) {
                if (du + word_degree(v, a.alphabet_) > out.degree_)
                    continue;
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                out.add(w, R(cu * cv));
            }
        }
        return out;
    }

    AlgebraElement<R> to_element() const
    {
        AlgebraElement<R> e(alphabet_);
        for (const auto& [w, c] : coeffs_)
            e.add_term(w, c);
        return e;
    }

private:
    void prune()
    {
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = word_degree(it->first, alphabet_) > degree_ ? coeffs_.erase(it) : std::next(it);
    }

    Alphabet alphabet_;
    FiniteAbelianGroup group_;
    int degree_;
    Map coeffs_;
};

template <CoefficientRing R>
R pairing(const TruncatedSeries<R>& s, const Word& w)
{
    return s.coefficient(w);
}

// (S | P) for a polynomial P
template <CoefficientRing R>
R pairing(const TruncatedSeries<R>& s, const QElement& p)
{
    R sum = ring_traits<R>::zero();
    for (const auto& [w, c] : p.terms())
        sum += ring_traits<R>::from_rational(c) * s.coefficient(w);
    return sum;
}

template <CoefficientRing R>
R pairing(const TruncatedSeries<R>& s, const AlgebraElement<R>& p)
    requires(!std::same_as<R, Rational>)
{
    R sum = ring_traits<R>::zero();
    for (const auto& [w, c] : p.terms())
        sum += c * s.coefficient(w);
    return sum;
}

template <CoefficientRing R>
TruncatedSeries<R> series_exp(const TruncatedSeries<R>& a)
{
    if (!ring_traits<R>::is_zero(a.coefficient({})))
        throw std::invalid_argument("exp needs a series without constant term");
    auto out = TruncatedSeries<R>::unit(a.alphabet(), a.group(), a.degree());
    auto power = out;
    for (int k = 1; k <= a.degree(); ++k) {
        power = power * a;
        power *= inverse_of<R>(k);
        out += power;
    }
    return out;
}

template <CoefficientRing R>
TruncatedSeries<R> series_log(const TruncatedSeries<R>& a)
{
    const R one = ring_traits<R>::one();
    if (!ring_traits<R>::is_zero(R(a.coefficient({}) - one)))
        throw std::invalid_argument("log needs a series with constant term 1");
    auto b = a;
    b.set({}, ring_traits<R>::zero());
    TruncatedSeries<R> out(a.alphabet(), a.group(), a.degree());
    auto power = TruncatedSeries<R>::unit(a.alphabet(), a.group(), a.degree());
    for (int k = 1; k <= a.degree(); ++k) {
        power = power * b;
        auto term = power;
        term *= R(inverse_of<R>(k) * ring_traits<R>::from_int(k % 2 == 1 ? 1 : -1));
        out += term;
    }
    return out;
}

// ---- grouplike check ----

template <CoefficientRing R>
struct GrouplikeReport {
    bool passed = true;
    bool unit_ok = true;
    int degree = 0;
    size_t pairs_checked = 0;
    double max_residual = 0.0;
    Word worst_u, worst_v;
};

// (Φ|1) = 1 and (Φ|u ⋆ v) = (Φ|u)(Φ|v) for all deg u + deg v ≤ D, where ⋆ is
// the quasi-shuffle with the given diamond (shuffle when the diamond is empty).
template <CoefficientRing R>
GrouplikeReport<R> grouplike_check(const TruncatedSeries<R>& phi, const DiamondProduct& diamond,
                                   double tol = kDefaultTolerance)
{
    GrouplikeReport<R> rep;
    rep.degree = phi.degree();
    R unit_res = R(phi.coefficient({}) - ring_traits<R>::one());
    rep.unit_ok = ring_traits<R>::negligible(unit_res, tol);
    rep.max_residual = ring_traits<R>::magnitude(unit_res);
    const Alphabet a = phi.alphabet();
    auto words = all_words(a, phi.group(), phi.degree());
    for (size_t i = 1; i < words.size(); ++i) {
        int du = word_degree(words[i], a);
        for (size_t j = i; j < words.size(); ++j) {
            if (du + word_degree(words[j], a) > phi.degree())
                continue;
            auto prod = quasi_shuffle_words<Rational>(words[i], words[j], a, diamond);
            R res = pairing(phi, prod) - phi.coefficient(words[i]) * phi.coefficient(words[j]);
            ++rep.pairs_checked;
            double m = ring_traits<R>::magnitude(res);
            if (!ring_traits<R>::negligible(res, tol))
                rep.passed = false;
            if (m > rep.max_residual) {
                rep.max_residual = m;
                rep.worst_u = words[i];
                rep.worst_v = words[j];
            }
        }
    }
    rep.passed = rep.passed && rep.unit_ok;
    return rep;
}

template <CoefficientRing R>
GrouplikeReport<R> shuffle_grouplike_check(const TruncatedSeries<R>& phi, double tol = kDefaultTolerance)
{
    return grouplike_check(phi, zero_diamond(), tol);
}

template <CoefficientRing R>
GrouplikeReport<R> harmonic_grouplike_check(const TruncatedSeries<R>& phi, double tol = kDefaultTolerance)
{
    if (phi.alphabet() != Alphabet::Y)
        throw std::invalid_argument("harmonic coproduct needs a Y series");
    return grouplike_check(phi, harmonic_diamond(phi.group()), tol);
}

// ---- maps on series ----

// dual of q_G on words: new[q(w)] = old[w]
template <CoefficientRing R>
TruncatedSeries<R> qg_hat(const TruncatedSeries<R>& s, Direction dir = Direction::Forward)
{
    TruncatedSeries<R> out(s.alphabet(), s.group(), s.degree());
    for (const auto& [w, c] : s.terms())
        out.add(qg_word(w, s.alphabet(), s.group(), dir), c);
    return out;
}

template <CoefficientRing R>
TruncatedSeries<R> project_piY(const TruncatedSeries<R>& s)
{
    if (s.alphabet() != Alphabet::X)
        throw std::invalid_argument("expected an X series");
    TruncatedSeries<R> out(Alphabet::Y, s.group(), s.degree());
    for (const auto& [w, c] : s.terms())
        if (word_in_h1(w))
            out.add(x_to_y_word(w), c);
    return out;
}

template <CoefficientRing R>
TruncatedSeries<R> y_to_x(const TruncatedSeries<R>& s)
{
    if (s.alphabet() != Alphabet::Y)
        throw std::invalid_argument("expected a Y series");
    TruncatedSeries<R> out(Alphabet::X, s.group(), s.degree());
    for (const auto& [w, c] : s.terms())
        out.add(y_to_x_word(w), c);
    return out;
}

// (Φ|w) = Z(reḡ(w)) for every word of length ≤ D
template <CoefficientRing R>
TruncatedSeries<R> phi_from_Z(const ZMap<R>& z, int degree)
{
    if (degree > z.degree_bound())
        throw std::out_of_range("Z is not available to this degree");
    ShuffleRegularizer reg;
    TruncatedSeries<R> phi(Alphabet::X, z.group(), degree);
    for (const auto& w : all_words(Alphabet::X, z.group(), degree))
        phi.set(w, z(reg.bar(w)));
    return phi;
}

// Φ_* = exp(Σ_{n≥2} (-1)^{n-1}/n (Φ|x_0^{n-1}x_1) y_{1,1}^n) · π_Y(q̂ Φ)
template <CoefficientRing R>
TruncatedSeries<R> phi_star(const TruncatedSeries<R>& phi)
{
    if (phi.alphabet() != Alphabet::X)
        throw std::invalid_argument("expected an X series");
    const int D = phi.degree();
    TruncatedSeries<R> corr(Alphabet::Y, phi.group(), D);
    for (int n = 2; n <= D; ++n) {
        R c = phi.coefficient(zeta_word(n)) * inverse_of<R>(n);
        corr.add(Word(static_cast<size_t>(n), y_letter(1, 0)), n % 2 == 1 ? c : R(-c));
    }
    return series_exp(corr) * project_piY(qg_hat(phi));
}

template <CoefficientRing R>
struct DmrReport {
    GrouplikeReport<R> shuffle;
    GrouplikeReport<R> harmonic;
    bool linear_terms_vanish = true;
    double linear_residual = 0.0;
    bool passed() const { return shuffle.passed && harmonic.passed && linear_terms_vanish; }
};

template <CoefficientRing R>
DmrReport<R> dmr_check(const TruncatedSeries<R>& phi, double tol = kDefaultTolerance)
{
    DmrReport<R> rep;
    rep.shuffle = shuffle_grouplike_check(phi, tol);
    rep.harmonic = harmonic_grouplike_check(phi_star(phi), tol);
    if (phi.degree() >= 1) {
        R a = phi.coefficient({kX0}), b = phi.coefficient({x_letter(0)});
        rep.linear_residual = std::max(ring_traits<R>::magnitude(a), ring_traits<R>::magnitude(b));
        rep.linear_terms_vanish = ring_traits<R>::negligible(a, tol) && ring_traits<R>::negligible(b, tol);
    }
    return rep;
}

// ---- functoriality in the group ----

enum class Variance { Upper, Lower };

namespace detail {

// image of a word under a letter-wise map x0 -> c x0, x_g -> Σ x_h
template <CoefficientRing R, class LetterImages>
void expand_word(const Word& w, const R& c, const LetterImages& images, Rational x0_scale,
                 std::unordered_map<Word, R, WordHash>& out)
{
    std::vector<std::pair<Word, R>> partial{{Word{}, c}};
    const R scale = ring_traits<R>::from_rational(x0_scale);
    for (Letter l : w) {
        std::vector<std::pair<Word, R>> next;
        if (is_x0(l)) {
            for (auto& [p, v] : partial) {
                p.push_back(kX0);
                next.emplace_back(std::move(p), R(v * scale));
            }
        } else {
            for (const auto& [p, v] : partial)
                for (int img : images(x_group(l))) {
                    Word q = p;
                    q.push_back(x_letter(img));
                    next.emplace_back(std::move(q), v);
                }
        }
        partial = std::move(next);
    }
    for (auto& [p, v] : partial) {
        auto [it, fresh] = out.try_emplace(p, v);
        if (!fresh)
            it->second += v;
    }
}

} // namespace detail

// Upper: series over X_{codomain} -> X_{domain}, x_h ↦ Σ_{φ(g)=h} x_g.
// Lower: series over X_{domain} -> X_{codomain}, x_0 ↦ |ker φ| x_0, x_g ↦ x_{φ(g)}.
template <CoefficientRing R>
TruncatedSeries<R> functor_star(const TruncatedSeries<R>& s, const GroupHom& hom, Variance v)
{
    if (s.alphabet() != Alphabet::X)
        throw std::invalid_argument("functors act on X series");
    const bool upper = v == Variance::Upper;
    if (s.group() != (upper ? hom.codomain() : hom.domain()))
        throw std::invalid_argument("series group does not match the homomorphism");
    TruncatedSeries<R> out(Alphabet::X, upper ? hom.domain() : hom.codomain(), s.degree());
    std::unordered_map<Word, R, WordHash> acc;
    for (const auto& [w, c] : s.terms()) {
        if (upper)
            detail::expand_word(w, c, [&](int h) { return hom.preimage(h); }, Rational(1), acc);
        else
            detail::expand_word(w, c, [&](int g) { return std::vector<int>{hom(g)}; },
                                Rational(hom.kernel_size()), acc);
    }
    for (const auto& [w, c] : acc)
        out.add(w, c);
    return out;
}

// Upper: ℌ_{domain} -> ℌ_{codomain}, x_g ↦ x_{φ(g)}.
// Lower: ℌ_{codomain} -> ℌ_{domain}, x_0 ↦ |ker φ| x_0, x_h ↦ Σ_{φ(g)=h} x_g.
template <CoefficientRing R>
AlgebraElement<R> functor_sharp(const AlgebraElement<R>& p, const GroupHom& hom, Variance v)
{
    if (p.alphabet() != Alphabet::X)
        throw std::invalid_argument("functors act on X elements");
    std::unordered_map<Word, R, WordHash> acc;
    for (const auto& [w, c] : p.terms()) {
        if (v == Variance::Upper)
            detail::expand_word(w, c, [&](int g) { return std::vector<int>{hom(g)}; }, Rational(1), acc);
        else
            detail::expand_word(w, c, [&](int h) { return hom.preimage(h); }, Rational(hom.kernel_size()), acc);
    }
    AlgebraElement<R> out(Alphabet::X);
    for (const auto& [w, c] : acc)
        out.add_term(w, c);
    return out;
}

// ---- distribution ----

template <CoefficientRing R>
struct DistributionReport {
    long d = 1;
    bool passed = true;
    double max_residual = 0.0;
    Word worst;
    size_t words_checked = 0;
};

// p^d_*(Φ) = exp(Σ_{g^d=1} (Φ|x_g) x_1) · i_d^*(Φ) over X_{G^d}
template <CoefficientRing R>
DistributionReport<R> dmrd_check(const TruncatedSeries<R>& phi, const PowerStructure& ps,
                                 double tol = kDefaultTolerance)
{
    if (phi.group() != ps.group)
        throw std::invalid_argument("series group does not match the power structure");
    DistributionReport<R> rep;
    rep.d = ps.d;
    auto lhs = functor_star(phi, ps.projection, Variance::Lower);
    R s = ring_traits<R>::zero();
    for (int g : ps.kernel)
        s += phi.coefficient({x_letter(g)});
    TruncatedSeries<R> lin(Alphabet::X, ps.power_group, phi.degree());
    lin.add({x_letter(0)}, s);
    auto rhs = series_exp(lin) * functor_star(phi, ps.inclusion, Variance::Upper);
    for (const auto& w : all_words(Alphabet::X, ps.power_group, phi.degree())) {
        R res = lhs.coefficient(w) - rhs.coefficient(w);
        ++rep.words_checked;
        double m = ring_traits<R>::magnitude(res);
        if (!ring_traits<R>::negligible(res, tol))
            rep.passed = false;
        if (m > rep.max_residual) {
            rep.max_residual = m;
            rep.worst = w;
        }
    }
    return rep;
}

template <CoefficientRing R>
std::vector<DistributionReport<R>> dmrd_check_all(const TruncatedSeries<R>& phi, double tol = kDefaultTolerance)
{
    std::vector<DistributionReport<R>> out;
    for (long d : phi.group().divisors_of_order())
        out.push_back(dmrd_check(phi, power_structure(phi.group(), d), tol));
    return out;
}

// ---- EDS vs DMR ----

template <CoefficientRing R>
struct EquationReport {
    bool passed = true;
    double max_residual = 0.0;
    Word worst;
    size_t words_checked = 0;
};

// (Φ_{Z∘reḡ})_* against w ↦ ev_0 ρ^{-1} Z^ш q^{-1}(w) on Y words of weight ≤ D
template <CoefficientRing R>
EquationReport<R> eds_dmr_equality_check(const ZMap<R>& z, int degree, double tol = kDefaultTolerance)
{
    EquationReport<R> rep;
    auto lhs = phi_star(phi_from_Z(z, degree));
    ShuffleRegularizer reg;
    const auto& g = z.group();
    for (const auto& w : all_words(Alphabet::Y, g, degree)) {
        Word xw = y_to_x_word(qg_word(w, Alphabet::Y, g, Direction::Inverse));
        auto poly = rho_apply(z, extend_Z_sh(z, QElement::word(xw), reg), Direction::Inverse);
        R res = lhs.coefficient(w) - at_zero(poly, ring_traits<R>::zero());
        ++rep.words_checked;
        double m = ring_traits<R>::magnitude(res);
        if (!ring_traits<R>::negligible(res, tol))
            rep.passed = false;
        if (m > rep.max_residual) {
            rep.max_residual = m;
            rep.worst = w;
        }
    }
    return rep;
}

} // namespace cmzv
