#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmzv/group.hpp"
#include "cmzv/ring.hpp"
#include "cmzv/word.hpp"

namespace cmzv {

// Finite linear combination of words over one alphabet.
template <CoefficientRing R>
class AlgebraElement {
public:
    using Map = std::unordered_map<Word, R, WordHash>;

    AlgebraElement() = default;
    explicit AlgebraElement(Alphabet a) : alphabet_(a) {}

    static AlgebraElement word(Word w, Alphabet a = Alphabet::X, R c = ring_traits<R>::one())
    {
        AlgebraElement e(a);
        e.add_term(w, c);
        return e;
    }
    static AlgebraElement unit(Alphabet a = Alphabet::X) { return word({}, a); }

    Alphabet alphabet() const { return alphabet_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    R coefficient(const Word& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? ring_traits<R>::zero() : it->second;
    }

    void add_term(const Word& w, const R& c)
    {
        if (ring_traits<R>::is_zero(c))
            return;
        auto [it, fresh] = terms_.try_emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (ring_traits<R>::is_zero(it->second))
                terms_.erase(it);
        }
    }

    AlgebraElement& operator+=(const AlgebraElement& o)
    {
        check_same(o);
        for (const auto& [w, c] : o.terms_)
            add_term(w, c);
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o)
    {
        check_same(o);
        for (const auto& [w, c] : o.terms_)
            add_term(w, R(-c));
        return *this;
    }
    AlgebraElement& operator*=(const R& s)
    {
        if (ring_traits<R>::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_)
            c *= s;
        return *this;
    }

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator-(AlgebraElement a) { return a *= R(-1); }
    friend AlgebraElement operator*(const R& s, AlgebraElement a) { return a *= s; }

    bool operator==(const AlgebraElement& o) const
    {
        if (alphabet_ != o.alphabet_ || terms_.size() != o.terms_.size())
            return false;
        for (const auto& [w, c] : terms_) {
            auto it = o.terms_.find(w);
            if (it == o.terms_.end() || !ring_traits<R>::is_zero(R(it->second - c)))
                return false;
        }
        return true;
    }

    std::vector<std::pair<Word, R>> sorted_terms() const
    {
        std::vector<std::pair<Word, R>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [this](const auto& a, const auto& b) {
            int da = word_degree(a.first, alphabet_), db = word_degree(b.first, alphabet_);
            return da != db ? da < db : a.first < b.first;
        });
        return v;
    }

    int max_degree() const
    {
        int d = -1;
        for (const auto& [w, c] : terms_)
            d = std::max(d, word_degree(w, alphabet_));
        return d;
    }

    void check_same(const AlgebraElement& o) const
    {
        if (alphabet_ != o.alphabet_)
            throw std::invalid_argument("alphabet mismatch");
    }

private:
    Alphabet alphabet_ = Alphabet::X;
    Map terms_;
};

using QElement = AlgebraElement<Rational>;

template <CoefficientRing R>
AlgebraElement<R> convert_coefficients(const QElement& a)
{
    AlgebraElement<R> out(a.alphabet());
    for (const auto& [w, c] : a.terms())
        out.add_term(w, ring_traits<R>::from_rational(c));
    return out;
}

// concatenation product
template <CoefficientRing R>
AlgebraElement<R> concat(const AlgebraElement<R>& a, const AlgebraElement<R>& b)
{
    a.check_same(b);
    AlgebraElement<R> out(a.alphabet());
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add_term(w, R(cu * cv));
        }
    return out;
}

// Letter-level commutative, associative product used by the quasi-shuffle.
struct DiamondTerm {
    Letter letter;
    long coefficient;
};
using DiamondProduct = std::function<std::vector<DiamondTerm>(Letter, Letter)>;

// zero diamond: quasi-shuffle reduces to shuffle
inline DiamondProduct zero_diamond()
{
    return {};
}

// y_{n1,g1} ⋄ y_{n2,g2} = y_{n1+n2, g1 g2}
inline DiamondProduct harmonic_diamond(const FiniteAbelianGroup& g)
{
    return [g](Letter a, Letter b) {
        return std::vector<DiamondTerm>{{y_letter(y_weight(a) + y_weight(b), g.mul(y_group(a), y_group(b))), 1}};
    };
}

namespace detail {

template <CoefficientRing R>
using WordMap = std::unordered_map<Word, R, WordHash>;

template <CoefficientRing R>
void prepend_into(WordMap<R>& dst, Letter l, const WordMap<R>& src, const R& scale)
{
    for (const auto& [w, c] : src) {
        Word nw;
        nw.reserve(w.size() + 1);
        nw.push_back(l);
        nw.insert(nw.end(), w.begin(), w.end());
        R v = c * scale;
        auto [it, fresh] = dst.try_emplace(std::move(nw), v);
        if (!fresh)
            it->second += v;
    }
}

} // namespace detail

// First-letter recursion over suffix pairs, memoized in an (|u|+1) x (|v|+1) table.
template <CoefficientRing R>
AlgebraElement<R> quasi_shuffle_words(const Word& u, const Word& v, Alphabet alpha, const DiamondProduct& diamond)
{
    const size_t nu = u.size(), nv = v.size();
    std::vector<detail::WordMap<R>> table((nu + 1) * (nv + 1));
    auto at = [&](size_t i, size_t j) -> detail::WordMap<R>& { return table[i * (nv + 1) + j]; };
    const R one = ring_traits<R>::one();
    for (size_t i = nu + 1; i-- > 0;) {
        for (size_t j = nv + 1; j-- > 0;) {
            auto& cell = at(i, j);
            if (i == nu) {
                cell.emplace(Word(v.begin() + static_cast<long>(j), v.end()), one);
                continue;
            }
            if (j == nv) {
                cell.emplace(Word(u.begin() + static_cast<long>(i), u.end()), one);
                continue;
            }
            detail::prepend_into(cell, u[i], at(i + 1, j), one);
            detail::prepend_into(cell, v[j], at(i, j + 1), one);
            if (diamond)
                for (const auto& t : diamond(u[i], v[j]))
                    detail::prepend_into(cell, t.letter, at(i + 1, j + 1), ring_traits<R>::from_int(t.coefficient));
        }
    }
    AlgebraElement<R> out(alpha);
    for (const auto& [w, c] : at(0, 0))
        out.add_term(w, c);
    return out;
}

template <CoefficientRing R>
AlgebraElement<R> shuffle_words(const Word& u, const Word& v, Alphabet alpha = Alphabet::X)
{
    return quasi_shuffle_words<R>(u, v, alpha, DiamondProduct{});
}

template <CoefficientRing R>
AlgebraElement<R> quasi_shuffle(const AlgebraElement<R>& a, const AlgebraElement<R>& b, const DiamondProduct& diamond)
{
    a.check_same(b);
    AlgebraElement<R> out(a.alphabet());
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            auto p = quasi_shuffle_words<R>(u, v, a.alphabet(), diamond);
            p *= R(cu * cv);
            out += p;
        }
    return out;
}

template <CoefficientRing R>
AlgebraElement<R> shuffle(const AlgebraElement<R>& a, const AlgebraElement<R>& b)
{
    return quasi_shuffle(a, b, DiamondProduct{});
}

template <CoefficientRing R>
AlgebraElement<R> harmonic(const AlgebraElement<R>& a, const AlgebraElement<R>& b, const FiniteAbelianGroup& g)
{
    if (a.alphabet() != Alphabet::Y)
        throw std::invalid_argument("harmonic product lives on the Y alphabet");
    return quasi_shuffle(a, b, harmonic_diamond(g));
}

template <CoefficientRing R, class F>
AlgebraElement<R> map_words(const AlgebraElement<R>& a, Alphabet target, F&& f)
{
    AlgebraElement<R> out(target);
    for (const auto& [w, c] : a.terms())
        out.add_term(f(w), c);
    return out;
}

template <CoefficientRing R>
AlgebraElement<R> qg_apply(const AlgebraElement<R>& a, const FiniteAbelianGroup& g, Direction dir)
{
    return map_words(a, a.alphabet(), [&](const Word& w) { return qg_word(w, a.alphabet(), g, dir); });
}

template <CoefficientRing R>
AlgebraElement<R> x_to_y(const AlgebraElement<R>& a)
{
    if (a.alphabet() != Alphabet::X)
        throw std::invalid_argument("expected an X element");
    return map_words(a, Alphabet::Y, [](const Word& w) { return x_to_y_word(w); });
}

template <CoefficientRing R>
AlgebraElement<R> y_to_x(const AlgebraElement<R>& a)
{
    if (a.alphabet() != Alphabet::Y)
        throw std::invalid_argument("expected a Y element");
    return map_words(a, Alphabet::X, [](const Word& w) { return y_to_x_word(w); });
}

// kills words ending in x_0, then rewrites in Y
template <CoefficientRing R>
AlgebraElement<R> project_piY(const AlgebraElement<R>& a)
{
    if (a.alphabet() != Alphabet::X)
        throw std::invalid_argument("expected an X element");
    AlgebraElement<R> out(Alphabet::Y);
    for (const auto& [w, c] : a.terms())
        if (word_in_h1(w))
            out.add_term(x_to_y_word(w), c);
    return out;
}

enum class Membership { H0, H1, Neither };

template <CoefficientRing R>
Membership membership(const AlgebraElement<R>& a)
{
    bool h0 = true, h1 = true;
    for (const auto& [w, c] : a.terms()) {
        h1 = h1 && word_in_h1(w);
        h0 = h0 && word_in_h0(w);
    }
    return h0 ? Membership::H0 : h1 ? Membership::H1 : Membership::Neither;
}

template <CoefficientRing R>
R pairing(const AlgebraElement<R>& a, const Word& w)
{
    return a.coefficient(w);
}

} // namespace cmzv
